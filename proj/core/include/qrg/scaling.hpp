#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "qrg/lattice.hpp"
#include "qrg/rg_flow.hpp"

namespace qrg {

inline constexpr int kMinSweepSteps = 16;

struct SweepSample {
  double g;
  double value;
  double derivative;
};

// A renormalized measure sampled on a uniform g grid. The derivative is the
// grid central difference (one-sided at the two ends).
struct SweepCurve {
  LatticeKind model;
  Measure measure;
  int n;
  // 0 when N(n) does not fit in 64 bits; log_size is always valid.
  std::int64_t system_size;
  double log_size;
  std::vector<SweepSample> samples;
};

struct Window {
  double lo;
  double hi;
};

// `steps` grid points from g_min to g_max inclusive.
SweepCurve sweep(const LatticeModel& model, Measure measure, int n, double g_min, double g_max,
                 int steps, int threads = 1);

// [g_c - 0.5, g_c + 0.5], clipped at zero.
Window fixed_window(const CriticalData& critical);

// Window for the derivative peak at iteration n. The peak narrows by the flow
// slope per step, so the half-width is 0.5 / slope^(n-1) (0.5 for n <= 1),
// which keeps the number of grid points across the peak independent of n.
Window scaling_window(const CriticalData& critical, int n);

enum class ExtremumKind { Max, Min };

// Tau rises through the transition (derivative maximum); coherence falls
// (derivative minimum).
ExtremumKind derivative_extremum(Measure measure);

struct Extremum {
  double g;
  double value;
};

// Vertex of the parabola through three equally spaced samples (x0 - h, y0),
// (x0, y1), (x0 + h, y2).
Extremum parabolic_vertex(double x0, double h, double y0, double y1, double y2);

// Extremum of the sampled derivative, searched over the interior 90% of the
// window and refined by a parabola through the bracketing samples. Throws
// BoundaryExtremumError when the best sample sits on the edge of the search
// range.
Extremum locate_extremum(const SweepCurve& curve, ExtremumKind kind);

// Values where two curves on the same grid cross (linear interpolation
// between samples whose difference changes sign). Samples whose difference is
// below `noise` in magnitude carry no sign.
std::vector<double> curve_crossings(const SweepCurve& a, const SweepCurve& b, double noise = 1e-12);

enum class FitKind {
  // |df/dg| at the extremum ~ N^mu
  DerivativeGrowth,
  // |g_c - g_ext| ~ N^-mu
  PositionDrift,
};

struct FitPoint {
  double log_size;
  double log_quantity;
};

// OLS of ln(quantity) on ln(N). `exponent` is the positive mu': the slope for
// DerivativeGrowth and minus the slope for PositionDrift.
struct ScalingFit {
  FitKind kind;
  std::vector<FitPoint> points;
  double slope;
  double intercept;
  double stderr_slope;
  double exponent;
  double mu_analytic;
};

// `samples` holds (N, quantity) pairs with quantity > 0; at least three.
ScalingFit fit_exponent(std::span<const std::pair<double, double>> samples, FitKind kind,
                        double mu_analytic = std::numeric_limits<double>::quiet_NaN());

struct ScalingOptions {
  int n_min = 1;
  int n_max = 6;
  int steps = 512;
  int threads = 1;
  // Overrides the per-n scaling_window for every n.
  std::optional<Window> window;
};

struct ScalingAnalysis {
  CriticalData critical;
  std::vector<SweepCurve> curves;
  std::vector<Extremum> extrema;
  ScalingFit growth;
  ScalingFit drift;
};

ScalingAnalysis scaling_analysis(const LatticeModel& model, Measure measure,
                                 const ScalingOptions& options);

struct CollapsePoint {
  int n;
  std::int64_t system_size;
  // N^mu (g - g_ext), mu = 1 / (nu d)
  double x;
  // (f'(g) - f'(g_ext)) / N^mu
  double y;
};

struct CollapseResult {
  double nu;
  std::vector<CollapsePoint> points;
  double quality;
};

// Mean over a common x grid (the range all curves share) of the RMS spread of
// the linearly interpolated curves. Smaller is a better collapse.
double collapse_quality(std::span<const CollapsePoint> points, int grid = 256);

// Rescales already located curves with the given nu.
CollapseResult collapse_curves(const LatticeModel& model, std::span<const SweepCurve> curves,
                               std::span<const Extremum> extrema, double nu);

CollapseResult collapse(const LatticeModel& model, Measure measure, std::span<const int> n_list,
                        double nu, const ScalingOptions& options = {});

}  // namespace qrg
