#pragma once

#include <optional>
#include <string_view>

#include "qrg/lattice.hpp"

namespace qrg {

enum class Measure { Tau, Coherence };

std::string_view measure_name(Measure measure);  // "tau" | "coherence"
std::optional<Measure> parse_measure(std::string_view name);

struct CriticalData {
  double g_c = 0.0;
  double nu = 0.0;
  // 1 / (nu * dimension)
  double mu_analytic = 0.0;
  // dg'/dg at g_c
  double flow_slope = 0.0;
};

struct Bracket {
  double lo = 1e-6;
  double hi = 10.0;
};

// Closed-form dg'/dg.
double rg_map_derivative(const LatticeModel& model, double g);

// dg_n/dg for the n-fold composition, by the chain rule.
double rg_iterate_derivative(const LatticeModel& model, double g, int n);

// Nontrivial root of rg_map(g) = g: bisection to 1e-12, then Newton polish.
double find_fixed_point(const LatticeModel& model, Bracket bracket = {});

// nu from log_rescale(dg'/dg) = 1/nu at the fixed point.
double correlation_exponent(const LatticeModel& model, double g_c);

CriticalData critical_data(const LatticeModel& model);

// Couplings past this are deep in the ordered phase; the flow is frozen there
// instead of being followed to overflow. The cluster measures are saturated
// to roundoff at this scale.
inline constexpr double kCouplingCap = 1e6;

// rg_iterate, except that once the running coupling exceeds kCouplingCap it is
// held at kCouplingCap for the remaining steps.
double renormalized_coupling(const LatticeModel& model, double g, int n);

// Measure on the ground state of the basic cluster at coupling g.
double cluster_measure(const LatticeModel& model, double g, Measure measure);

// cluster_measure at renormalized_coupling(model, g, n).
double renormalized_measure(const LatticeModel& model, double g, int n, Measure measure);

// d/dg of renormalized_measure via the chain rule: the cluster-level
// derivative (central difference with step h) times dg_n/dg. Zero once the
// flow has frozen at the cap.
double renormalized_derivative(const LatticeModel& model, double g, int n, Measure measure,
                               double h = 1e-6);

}  // namespace qrg
