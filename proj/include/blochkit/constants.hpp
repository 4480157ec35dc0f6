#pragma once

#include <string>
#include <vector>

#include "blochkit/domain.hpp"
#include "blochkit/symbols.hpp"

namespace blochkit {

/// Bloch constant c_D = sup { beta_f : f maps D into the unit disk }.
struct BlochConstantEntry {
  DomainDescriptor descriptor;
  double value = 0.0;
  std::string formula;
};

/// Closed-form value for an irreducible factor, together with its formula.
/// Balls resolve as cartan1:n,1 and polydisks as products of disks. Low
/// dimensions that coincide with the disk (cartan2:1, cartan3:2, cartan4:1)
/// resolve to the disk.
BlochConstantEntry bloch_constant_entry(const DomainDescriptor& d);

/// Products take the max over factors.
double bloch_constant(const DomainDescriptor& d);

/// True when the standard form has a factor biholomorphic to the unit disk.
bool has_disk_factor(const DomainDescriptor& d);

/// c_D < 1. Both characterisations (value below one, no disk factor) are
/// computed; a disagreement throws.
bool in_class_D(const DomainDescriptor& d);

/// The Bloch-constant table refers to the Bergman metric scaled so that the
/// disk keeps |u|^2/(1-|z|^2)^2; relative to the metric used by q_value this
/// multiplies a ball:n factor by (n+1)/2. Disk factors get 1.
double registry_metric_factor(const DomainDescriptor& atom);

/// Q_f(z) in the normalisation of the Bloch-constant table, so that
/// sup Q <= c_D for every f mapping D into the unit disk.
double registry_q_value(const DomainDescriptor& d, const SymbolExpr& f, const Point& z);

/// The table printed by `blochkit constants`: one representative per class.
std::vector<BlochConstantEntry> bloch_constant_table();

}  // namespace blochkit
