#include "qrg/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "qrg/error.hpp"
#include "qrg/parallel.hpp"

namespace qrg {

SweepCurve sweep(const LatticeModel& model, Measure measure, int n, double g_min, double g_max,
                 int steps, int threads) {
  if (!(g_min >= 0.0 && g_min < g_max && std::isfinite(g_max)))
    throw DomainError("sweep window must satisfy 0 <= g_min < g_max");
  if (steps < kMinSweepSteps)
    throw DomainError("sweep needs at least " + std::to_string(kMinSweepSteps) + " grid points");
  if (n < 0) throw DomainError("iteration count must be non-negative");

  const double h = (g_max - g_min) / (steps - 1);
  auto grid = [&](std::size_t i) {
    return i + 1 == static_cast<std::size_t>(steps) ? g_max : g_min + static_cast<double>(i) * h;
  };
  const auto values = parallel_map(static_cast<std::size_t>(steps), threads, [&](std::size_t i) {
    return renormalized_measure(model, grid(i), n, measure);
  });

  SweepCurve curve{model.kind, measure, n, 0, log_system_size(model, n), {}};
  if (n <= max_size_iteration(model)) curve.system_size = system_size(model, n);
  curve.samples.resize(values.size());
  const std::size_t last = values.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    double d;
    if (i == 0)
      d = (values[1] - values[0]) / h;
    else if (i == last)
      d = (values[last] - values[last - 1]) / h;
    else
      d = (values[i + 1] - values[i - 1]) / (2.0 * h);
    curve.samples[i] = {grid(i), values[i], d};
  }
  return curve;
}

Window fixed_window(const CriticalData& critical) {
  return {std::max(0.0, critical.g_c - 0.5), critical.g_c + 0.5};
}

Window scaling_window(const CriticalData& critical, int n) {
  const double half = 0.5 / std::pow(critical.flow_slope, std::max(n - 1, 0));
  return {std::max(0.0, critical.g_c - half), critical.g_c + half};
}

ExtremumKind derivative_extremum(Measure measure) {
  return measure == Measure::Tau ? ExtremumKind::Max : ExtremumKind::Min;
}

Extremum parabolic_vertex(double x0, double h, double y0, double y1, double y2) {
  const double curvature = y0 - 2.0 * y1 + y2;
  if (curvature == 0.0) return {x0, y1};
  const double t = 0.5 * (y0 - y2) / curvature;
  return {x0 + t * h, y1 - 0.25 * (y0 - y2) * t};
}

Extremum locate_extremum(const SweepCurve& curve, ExtremumKind kind) {
  const auto& s = curve.samples;
  if (s.size() < 3) throw DomainError("curve too short for an extremum");
  const std::size_t last = s.size() - 1;
  const auto lo = static_cast<std::size_t>(std::ceil(0.05 * static_cast<double>(last)));
  const auto hi = static_cast<std::size_t>(std::floor(0.95 * static_cast<double>(last)));
  const double sign = kind == ExtremumKind::Max ? 1.0 : -1.0;
  std::size_t best = lo;
  for (std::size_t i = lo; i <= hi; ++i)
    if (sign * s[i].derivative > sign * s[best].derivative) best = i;
  if (best == lo || best == hi)
    throw BoundaryExtremumError("derivative extremum at the edge of the sweep near g=" +
                                std::to_string(s[best].g) + "; widen the sweep window");
  const double h = s[best + 1].g - s[best].g;
  return parabolic_vertex(s[best].g, h, s[best - 1].derivative, s[best].derivative,
                          s[best + 1].derivative);
}

std::vector<double> curve_crossings(const SweepCurve& a, const SweepCurve& b, double noise) {
  if (a.samples.size() != b.samples.size())
    throw DomainError("curves are sampled on different grids");
  std::vector<double> out;
  std::optional<std::size_t> prev;
  auto diff = [&](std::size_t i) { return a.samples[i].value - b.samples[i].value; };
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    const double d = diff(i);
    if (std::abs(d) < noise) continue;
    if (prev && (diff(*prev) < 0.0) != (d < 0.0)) {
      const double g0 = a.samples[*prev].g, g1 = a.samples[i].g;
      const double d0 = diff(*prev);
      out.push_back(g0 + (g1 - g0) * d0 / (d0 - d));
    }
    prev = i;
  }
  return out;
}

ScalingFit fit_exponent(std::span<const std::pair<double, double>> samples, FitKind kind,
                        double mu_analytic) {
  if (samples.size() < 3) throw DomainError("scaling fit needs at least three points");
  ScalingFit fit{kind, {}, 0.0, 0.0, 0.0, 0.0, mu_analytic};
  for (const auto& [size, quantity] : samples) {
    if (!(size > 0.0) || !(quantity > 0.0) || !std::isfinite(quantity))
      throw DomainError("scaling fit needs positive sizes and quantities");
    fit.points.push_back({std::log(size), std::log(quantity)});
  }
  const double m = static_cast<double>(fit.points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : fit.points) {
    mx += p.log_size;
    my += p.log_quantity;
  }
  mx /= m;
  my /= m;
  double sxx = 0.0, sxy = 0.0;
  for (const auto& p : fit.points) {
    sxx += (p.log_size - mx) * (p.log_size - mx);
    sxy += (p.log_size - mx) * (p.log_quantity - my);
  }
  if (!(sxx > 0.0)) throw DomainError("scaling fit needs distinct system sizes");
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ssr = 0.0;
  for (const auto& p : fit.points) {
    const double r = p.log_quantity - (fit.intercept + fit.slope * p.log_size);
    ssr += r * r;
  }
  fit.stderr_slope = std::sqrt(ssr / (m - 2.0) / sxx);
  fit.exponent = kind == FitKind::DerivativeGrowth ? fit.slope : -fit.slope;
  return fit;
}

ScalingAnalysis scaling_analysis(const LatticeModel& model, Measure measure,
                                 const ScalingOptions& options) {
  if (options.n_min < 0 || options.n_max - options.n_min < 2)
    throw DomainError("scaling needs n_min >= 0 and n_max - n_min >= 2");
  ScalingAnalysis out;
  out.critical = critical_data(model);
  std::vector<std::pair<double, double>> growth, drift;
  for (int n = options.n_min; n <= options.n_max; ++n) {
    const Window w = options.window.value_or(scaling_window(out.critical, n));
    auto curve = sweep(model, measure, n, w.lo, w.hi, options.steps, options.threads);
    const auto ext = locate_extremum(curve, derivative_extremum(measure));
    const double size = std::exp(curve.log_size);
    growth.emplace_back(size, std::abs(ext.value));
    drift.emplace_back(size, std::abs(out.critical.g_c - ext.g));
    out.curves.push_back(std::move(curve));
    out.extrema.push_back(ext);
  }
  out.growth = fit_exponent(growth, FitKind::DerivativeGrowth, out.critical.mu_analytic);
  out.drift = fit_exponent(drift, FitKind::PositionDrift, out.critical.mu_analytic);
  return out;
}

namespace {

double interpolate(std::span<const CollapsePoint> curve, double x) {
  auto it = std::lower_bound(curve.begin(), curve.end(), x,
                             [](const CollapsePoint& p, double v) { return p.x < v; });
  if (it == curve.begin()) return it->y;
  if (it == curve.end()) return std::prev(it)->y;
  const auto& right = *it;
  const auto& left = *std::prev(it);
  if (right.x == left.x) return right.y;
  const double t = (x - left.x) / (right.x - left.x);
  return left.y + t * (right.y - left.y);
}

}  // namespace

double collapse_quality(std::span<const CollapsePoint> points, int grid) {
  std::map<int, std::vector<CollapsePoint>> curves;
  for (const auto& p : points) curves[p.n].push_back(p);
  if (curves.size() < 2) throw DomainError("collapse quality needs at least two curves");
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();
  for (auto& [n, c] : curves) {
    std::sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
    lo = std::max(lo, c.front().x);
    hi = std::min(hi, c.back().x);
  }
  if (!(hi > lo)) throw StructuralError("collapsed curves share no x range");
  if (grid < 2) throw DomainError("collapse grid needs at least two points");

  double total = 0.0;
  std::vector<double> ys(curves.size());
  for (int i = 0; i < grid; ++i) {
    const double x = lo + (hi - lo) * i / (grid - 1);
    std::size_t k = 0;
    double mean = 0.0;
    for (const auto& [n, c] : curves) mean += ys[k++] = interpolate(c, x);
    mean /= static_cast<double>(ys.size());
    double var = 0.0;
    for (double y : ys) var += (y - mean) * (y - mean);
    total += std::sqrt(var / static_cast<double>(ys.size()));
  }
  return total / grid;
}

CollapseResult collapse_curves(const LatticeModel& model, std::span<const SweepCurve> curves,
                               std::span<const Extremum> extrema, double nu) {
  if (curves.size() != extrema.size()) throw DomainError("one extremum per curve required");
  if (!(nu > 0.0)) throw DomainError("nu must be positive");
  const double mu = 1.0 / (nu * model.dimension);
  CollapseResult out{nu, {}, 0.0};
  for (std::size_t c = 0; c < curves.size(); ++c) {
    const auto& curve = curves[c];
    const double scale = std::exp(mu * curve.log_size);
    // End samples carry one-sided derivatives; leave them out.
    for (std::size_t i = 1; i + 1 < curve.samples.size(); ++i) {
      const auto& s = curve.samples[i];
      out.points.push_back({curve.n, curve.system_size, scale * (s.g - extrema[c].g),
                            (s.derivative - extrema[c].value) / scale});
    }
  }
  out.quality = collapse_quality(out.points);
  return out;
}

CollapseResult collapse(const LatticeModel& model, Measure measure, std::span<const int> n_list,
                        double nu, const ScalingOptions& options) {
  if (n_list.size() < 2) throw DomainError("collapse needs at least two iteration counts");
  const auto critical = critical_data(model);
  std::vector<SweepCurve> curves;
  std::vector<Extremum> extrema;
  for (int n : n_list) {
    const Window w = options.window.value_or(scaling_window(critical, n));
    curves.push_back(sweep(model, measure, n, w.lo, w.hi, options.steps, options.threads));
    extrema.push_back(locate_extremum(curves.back(), derivative_extremum(measure)));
  }
  return collapse_curves(model, curves, extrema, nu);
}

}  // namespace qrg
