#include "qrg/rg_flow.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "qrg/error.hpp"
#include "qrg/exact_diag.hpp"
#include "qrg/measures.hpp"

namespace qrg {

std::string_view measure_name(Measure measure) {
  return measure == Measure::Tau ? "tau" : "coherence";
}

std::optional<Measure> parse_measure(std::string_view name) {
  if (name == "tau") return Measure::Tau;
  if (name == "coherence") return Measure::Coherence;
  return std::nullopt;
}

double rg_map_derivative(const LatticeModel& model, double g) {
  const double value = rg_map(model, g);  // validates g
  if (g == 0.0) return 0.0;
  const double g2 = g * g;
  if (model.kind == LatticeKind::Triangular) {
    const double log_slope =
        2.0 / g + g / (3.0 * (1.0 + g2)) + 2.0 / (3.0 * std::sqrt(1.0 + g2));
    return value * log_slope;
  }
  const double kappa = model.kind == LatticeKind::SierpinskiTriangle ? 2.0 : 3.0;
  const double a = (3.0 * kappa + 1.0) / (kappa + 1.0);
  const double b = kappa * (kappa - 1.0) / (2.0 * (kappa + 1.0));
  return value * (a / g + 2.0 * b * g / (1.0 + g2));
}

double rg_iterate_derivative(const LatticeModel& model, double g, int n) {
  if (n < 0) throw DomainError("iteration count must be non-negative");
  double slope = 1.0;
  for (int i = 1; i <= n; ++i) {
    slope *= rg_map_derivative(model, g);
    g = rg_map(model, g);
    if (!std::isfinite(g) || !std::isfinite(slope))
      throw SaturationError(i, "coupling diverged at RG iteration " + std::to_string(i));
  }
  return slope;
}

double find_fixed_point(const LatticeModel& model, Bracket bracket) {
  auto excess = [&](double g) { return rg_map(model, g) - g; };
  double lo = bracket.lo, hi = bracket.hi;
  double f_lo = excess(lo);
  const double f_hi = excess(hi);
  if (!(f_lo < 0.0 && f_hi > 0.0))
    throw StructuralError("rg_map(g) - g has no sign change on [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "]");
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = excess(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }
  double g = 0.5 * (lo + hi);
  for (int step = 0; step < 3; ++step) {
    const double f = excess(g);
    const double next = g - f / (rg_map_derivative(model, g) - 1.0);
    if (!(std::abs(excess(next)) < std::abs(f))) break;
    g = next;
  }
  return g;
}

double correlation_exponent(const LatticeModel& model, double g_c) {
  const double slope = rg_map_derivative(model, g_c);
  const double h = 1e-6;
  const double fd = (rg_map(model, g_c + h) - rg_map(model, g_c - h)) / (2.0 * h);
  if (std::abs(fd - slope) > 1e-8)
    throw StructuralError("analytic rg_map derivative disagrees with finite difference");
  if (!(slope > 1.0)) throw StructuralError("fixed point is not repulsive (dg'/dg <= 1)");
  return std::log(model.rescale) / std::log(slope);
}

CriticalData critical_data(const LatticeModel& model) {
  CriticalData out;
  out.g_c = find_fixed_point(model);
  out.flow_slope = rg_map_derivative(model, out.g_c);
  out.nu = correlation_exponent(model, out.g_c);
  out.mu_analytic = 1.0 / (out.nu * model.dimension);
  return out;
}

double renormalized_coupling(const LatticeModel& model, double g, int n) {
  if (n < 0) throw DomainError("iteration count must be non-negative");
  if (!std::isfinite(g) || g < 0.0) throw DomainError("coupling must be finite and non-negative");
  for (int i = 0; i < n && g <= kCouplingCap; ++i) g = rg_map(model, g);
  return std::min(g, kCouplingCap);
}

double cluster_measure(const LatticeModel& model, double g, Measure measure) {
  const auto state = cluster_ground_state(model, g);
  if (measure == Measure::Tau) return multipartite_tau(state, model.node_site);
  const std::array<int, 2> pair{model.node_site, model.node_site + 1};
  return qjsd_coherence(partial_trace(state, pair));
}

double renormalized_measure(const LatticeModel& model, double g, int n, Measure measure) {
  return cluster_measure(model, renormalized_coupling(model, g, n), measure);
}

double renormalized_derivative(const LatticeModel& model, double g, int n, Measure measure,
                               double h) {
  double gn = g;
  double slope = 1.0;
  for (int i = 0; i < n; ++i) {
    slope *= rg_map_derivative(model, gn);
    gn = rg_map(model, gn);
    if (gn > kCouplingCap) return 0.0;
  }
  const double lo = std::max(gn - h, 0.0);
  const double hi = gn + h;
  const double df = (cluster_measure(model, hi, measure) - cluster_measure(model, lo, measure)) /
                    (hi - lo);
  return df * slope;
}

}  // namespace qrg
