#include "blochkit/constants.hpp"

#include <algorithm>
#include <cmath>

namespace blochkit {

namespace {

bool is_disk_atom(const DomainDescriptor& a) {
  switch (a.kind()) {
    case DomainKind::Disk:
      return true;
    case DomainKind::Ball:
      return a.dims()[0] == 1;
    case DomainKind::CartanI:
      return a.dims()[0] == 1 && a.dims()[1] == 1;
    case DomainKind::CartanII:
      return a.dims()[0] == 1;
    case DomainKind::CartanIII:
      return a.dims()[0] == 2;
    case DomainKind::CartanIV:
      return a.dims()[0] == 1;
    default:
      return false;
  }
}

}  // namespace

BlochConstantEntry bloch_constant_entry(const DomainDescriptor& d) {
  if (d.kind() == DomainKind::Product || d.kind() == DomainKind::Polydisk) {
    BlochConstantEntry e{d, bloch_constant(d), "max over factors"};
    return e;
  }
  if (is_disk_atom(d)) return {d, 1.0, "1 (unit disk)"};
  const auto& k = d.dims();
  switch (d.kind()) {
    case DomainKind::Ball:
      return {d, std::sqrt(2.0 / (k[0] + 1)), "sqrt(2/(n+m)), ball:n = cartan1:n,1"};
    case DomainKind::CartanI:
      return {d, std::sqrt(2.0 / (k[0] + k[1])), "sqrt(2/(n+m))"};
    case DomainKind::CartanII:
      return {d, std::sqrt(2.0 / (k[0] + 1)), "sqrt(2/(n+1))"};
    case DomainKind::CartanIII:
      return {d, std::sqrt(1.0 / (k[0] - 1)), "sqrt(1/(n-1))"};
    case DomainKind::CartanIV:
      return {d, std::sqrt(2.0 / k[0]), "sqrt(2/n)"};
    case DomainKind::Exceptional1:
      return {d, 1.0 / std::sqrt(6.0), "1/sqrt(6)"};
    case DomainKind::Exceptional2:
      return {d, 1.0 / 3.0, "1/3"};
    default:
      break;
  }
  throw DomainError("no Bloch constant for " + d.to_string());
}

double bloch_constant(const DomainDescriptor& d) {
  if (d.kind() != DomainKind::Product && d.kind() != DomainKind::Polydisk) return bloch_constant_entry(d).value;
  double c = 0.0;
  for (const auto& a : atoms(d)) c = std::max(c, bloch_constant_entry(a.descriptor).value);
  return c;
}

bool has_disk_factor(const DomainDescriptor& d) {
  auto parts = atoms(d);
  return std::any_of(parts.begin(), parts.end(), [](const auto& a) { return is_disk_atom(a.descriptor); });
}

bool in_class_D(const DomainDescriptor& d) {
  const bool by_value = bloch_constant(d) < 1.0;
  const bool by_factor = !has_disk_factor(d);
  if (by_value != by_factor)
    throw Error("class-D characterisations disagree for " + d.to_string());
  return by_value;
}

double registry_metric_factor(const DomainDescriptor& atom) {
  switch (atom.kind()) {
    case DomainKind::Disk:
      return 1.0;
    case DomainKind::Ball:
      return 0.5 * (atom.dims()[0] + 1);
    default:
      throw UnsupportedMetric("no metric factor for " + atom.to_string());
  }
}

double registry_q_value(const DomainDescriptor& d, const SymbolExpr& f, const Point& z) {
  if (!metric_supported(d)) throw UnsupportedMetric("Bergman metric not implemented for " + d.to_string());
  if (!contains(d, z)) throw NumericalDomainError("point outside " + d.to_string());
  const Point c = f.gradient(z).conjugate();
  double s = 0.0;
  for (const auto& a : atoms(d))
    s += inverse_metric_form(a.descriptor, z.segment(a.offset, a.dim), c.segment(a.offset, a.dim)) /
         registry_metric_factor(a.descriptor);
  return std::sqrt(s);
}

std::vector<BlochConstantEntry> bloch_constant_table() {
  std::vector<BlochConstantEntry> t;
  for (const auto& d : {DomainDescriptor::disk(), DomainDescriptor::ball(2), DomainDescriptor::ball(5),
                        DomainDescriptor::cartan_i(3, 2), DomainDescriptor::cartan_ii(2),
                        DomainDescriptor::cartan_ii(4), DomainDescriptor::cartan_iii(5),
                        DomainDescriptor::cartan_iv(5), DomainDescriptor::exceptional1(),
                        DomainDescriptor::exceptional2(), DomainDescriptor::polydisk(3)})
    t.push_back(bloch_constant_entry(d));
  return t;
}

}  // namespace blochkit
