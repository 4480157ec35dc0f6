#include "blochkit/supremum.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace blochkit {

namespace {

double safe_eval(const std::function<double(const Point&)>& f, const Point& z) {
  try {
    double v = f(z);
    return std::isnan(v) ? -kInf : v;
  } catch (const NumericalDomainError&) {
    return -kInf;
  }
}

Point moved(const Point& z, int coord, double t) {
  Point p = z;
  int j = coord / 2;
  p[j] += coord % 2 == 0 ? cplx(t, 0.0) : cplx(0.0, t);
  return p;
}

// Largest t in [0, 2] (in direction `sign`) keeping z + sign t e_coord inside.
double reach(const DomainDescriptor& d, const Point& z, int coord, double sign) {
  double lo = 0.0, hi = 2.0;
  if (contains(d, moved(z, coord, sign * hi))) return hi;
  for (int i = 0; i < 40; ++i) {
    double mid = 0.5 * (lo + hi);
    (contains(d, moved(z, coord, sign * mid)) ? lo : hi) = mid;
  }
  return lo * (1.0 - 1e-9);
}

}  // namespace

SupResult refine_local_max(const DomainDescriptor& d, const std::function<double(const Point&)>& objective,
                           const Point& start, int iters, int sweeps) {
  constexpr double kInvPhi = 0.6180339887498949;
  SupResult best{safe_eval(objective, start), start};
  const int coords = 2 * static_cast<int>(start.size());
  for (int sweep = 0; sweep < sweeps; ++sweep) {
    for (int c = 0; c < coords; ++c) {
      double a = -reach(d, best.argmax, c, -1.0);
      double b = reach(d, best.argmax, c, 1.0);
      if (b - a <= 0.0) continue;
      auto line = [&](double t) { return safe_eval(objective, moved(best.argmax, c, t)); };
      double x1 = b - kInvPhi * (b - a), x2 = a + kInvPhi * (b - a);
      double f1 = line(x1), f2 = line(x2);
      for (int it = 0; it < iters; ++it) {
        if (f1 < f2) {
          a = x1;
          x1 = x2;
          f1 = f2;
          x2 = a + kInvPhi * (b - a);
          f2 = line(x2);
        } else {
          b = x2;
          x2 = x1;
          f2 = f1;
          x1 = b - kInvPhi * (b - a);
          f1 = line(x1);
        }
      }
      double t = f1 >= f2 ? x1 : x2;
      double v = std::max(f1, f2);
      if (v > best.value) best = {v, moved(best.argmax, c, t)};
    }
  }
  return best;
}

SupResult sampled_supremum(const DomainDescriptor& d, const std::function<double(const Point&)>& objective,
                           const SamplingConfig& cfg) {
  const auto pts = sample_interior(d, cfg.samples, cfg.seed, cfg.shells);
  std::vector<double> vals(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) vals[i] = safe_eval(objective, pts[i]);

  std::vector<std::size_t> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(std::max(cfg.restarts, 0)), order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<long>(k), order.end(),
                    [&](auto a, auto b) { return vals[a] > vals[b] || (vals[a] == vals[b] && a < b); });

  SupResult best{vals[order[0]], pts[order[0]]};
  for (std::size_t r = 0; r < k; ++r) {
    if (vals[order[r]] == -kInf) continue;
    auto local = refine_local_max(d, objective, pts[order[r]], cfg.refine_iters, cfg.sweeps);
    if (local.value > best.value) best = local;
  }
  return best;
}

}  // namespace blochkit
