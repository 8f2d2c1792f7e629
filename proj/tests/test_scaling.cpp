#include <doctest.h>

#include <cmath>
#include <vector>

#include "qrg/error.hpp"
#include "qrg/scaling.hpp"

using namespace qrg;

TEST_CASE("parabolic refinement") {
  const auto v = parabolic_vertex(0.0, 1.0, 1.0, 2.0, 1.0);
  CHECK(v.g == 0.0);
  CHECK(v.value == 2.0);
  // y = 3 - (x - 0.3)^2 sampled at 0, 1, 2 around x0 = 1 with h = 1
  auto f = [](double x) { return 3.0 - (x - 0.3) * (x - 0.3); };
  const auto w = parabolic_vertex(0.0, 1.0, f(-1.0), f(0.0), f(1.0));
  CHECK(w.g == doctest::Approx(0.3));
  CHECK(w.value == doctest::Approx(3.0));
}

TEST_CASE("sweep preconditions") {
  const auto& m = lattice(LatticeKind::SierpinskiTriangle);
  CHECK_THROWS_AS(sweep(m, Measure::Tau, 1, 0.0, 1.0, 8), DomainError);
  CHECK_THROWS_AS(sweep(m, Measure::Tau, 1, 1.0, 0.5, 32), DomainError);
  CHECK_THROWS_AS(sweep(m, Measure::Tau, 1, -0.1, 0.5, 32), DomainError);
  CHECK_THROWS_AS(sweep(m, Measure::Tau, -1, 0.0, 0.5, 32), DomainError);
}

TEST_CASE("sweep grid and derivative") {
  const auto& m = lattice(LatticeKind::SierpinskiPyramid);
  const auto curve = sweep(m, Measure::Tau, 2, 0.5, 1.0, 64);
  REQUIRE(curve.samples.size() == 64);
  CHECK(curve.samples.front().g == 0.5);
  CHECK(curve.samples.back().g == 1.0);
  CHECK(curve.system_size == 64);
  for (std::size_t i = 1; i < curve.samples.size(); ++i) REQUIRE(curve.samples[i].g > curve.samples[i - 1].g);
  const double h = curve.samples[1].g - curve.samples[0].g;
  const auto& s = curve.samples;
  CHECK(s[10].derivative == doctest::Approx((s[11].value - s[9].value) / (2 * h)));
  CHECK(s[0].derivative == doctest::Approx((s[1].value - s[0].value) / h));
}

TEST_CASE("sweep is independent of the worker count") {
  const auto& m = lattice(LatticeKind::Triangular);
  const auto a = sweep(m, Measure::Coherence, 2, 0.4, 0.7, 40, 1);
  const auto b = sweep(m, Measure::Coherence, 2, 0.4, 0.7, 40, 3);
  for (std::size_t i = 0; i < a.samples.size(); ++i) {
    REQUIRE(a.samples[i].value == b.samples[i].value);
    REQUIRE(a.samples[i].derivative == b.samples[i].derivative);
  }
}

TEST_CASE("triangular tau at n = 0 rises to saturation") {
  const auto curve = sweep(lattice(LatticeKind::Triangular), Measure::Tau, 0, 0.0, 2.0, 256);
  CHECK(curve.samples.front().value == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(curve.samples.back().value > 0.9);
  // non-decreasing up to the roundoff of the eigen solver
  for (std::size_t i = 1; i < curve.samples.size(); ++i)
    REQUIRE(curve.samples[i].value >= curve.samples[i - 1].value - 1e-9);
}

TEST_CASE("plateau derivatives vanish deep in both phases") {
  const auto& m = lattice(LatticeKind::Triangular);
  const auto c = critical_data(m);
  const auto curve = sweep(m, Measure::Tau, 6, c.g_c - 0.3, c.g_c + 0.3, 128);
  CHECK(std::abs(curve.samples[2].derivative) < 1e-6);
  CHECK(std::abs(curve.samples[125].derivative) < 1e-6);
}

TEST_CASE("extremum location") {
  const auto& tri = lattice(LatticeKind::Triangular);
  const auto c = critical_data(tri);
  const auto curve = sweep(tri, Measure::Coherence, 3, 0.0, 2.0, 512);
  const auto e = locate_extremum(curve, ExtremumKind::Min);
  CHECK(std::abs(e.g - c.g_c) < 0.01);
  CHECK(e.value < 0.0);

  // a monotone derivative puts the extremum on the search edge
  const auto edge = sweep(tri, Measure::Tau, 1, 1.2, 2.0, 32);
  CHECK_THROWS_AS(locate_extremum(edge, ExtremumKind::Max), BoundaryExtremumError);
}

TEST_CASE("extrema drift toward the critical point") {
  const auto& st = lattice(LatticeKind::SierpinskiTriangle);
  const auto c = critical_data(st);
  double prev = 1.0;
  for (int n = 1; n <= 5; ++n) {
    const auto w = scaling_window(c, n);
    const auto e = locate_extremum(sweep(st, Measure::Coherence, n, w.lo, w.hi, 256), ExtremumKind::Min);
    const double distance = std::abs(e.g - c.g_c);
    CHECK(distance < prev);
    prev = distance;
  }
  CHECK(prev < 5e-3);
}

TEST_CASE("extremum location is grid converged") {
  const auto& sp = lattice(LatticeKind::SierpinskiPyramid);
  const auto c = critical_data(sp);
  for (auto which : {Measure::Tau, Measure::Coherence}) {
    for (int n : {1, 4, 6}) {
      const auto w = scaling_window(c, n);
      const auto kind = derivative_extremum(which);
      const auto coarse = locate_extremum(sweep(sp, which, n, w.lo, w.hi, 512), kind);
      const auto fine = locate_extremum(sweep(sp, which, n, w.lo, w.hi, 1024), kind);
      CHECK(std::abs(coarse.g - fine.g) < 1e-4);
    }
  }
}

TEST_CASE("fit_exponent on exact power laws") {
  std::vector<std::pair<double, double>> growth, drift;
  for (double n : {7.0, 21.0, 63.0, 189.0, 567.0}) {
    growth.emplace_back(n, 2.0 * std::pow(n, 0.81));
    drift.emplace_back(n, 0.3 * std::pow(n, -0.77));
  }
  const auto g = fit_exponent(growth, FitKind::DerivativeGrowth, 0.8);
  CHECK(std::abs(g.slope - 0.81) < 1e-10);
  CHECK(std::abs(g.exponent - 0.81) < 1e-10);
  CHECK(g.intercept == doctest::Approx(std::log(2.0)));
  CHECK(g.stderr_slope < 1e-10);
  CHECK(g.mu_analytic == 0.8);
  const auto d = fit_exponent(drift, FitKind::PositionDrift);
  CHECK(std::abs(d.exponent - 0.77) < 1e-10);
  CHECK(d.slope == doctest::Approx(-0.77));
  CHECK(g.points.size() == 5);
}

TEST_CASE("fit_exponent rejects bad input") {
  std::vector<std::pair<double, double>> two{{1.0, 1.0}, {2.0, 2.0}};
  CHECK_THROWS_AS(fit_exponent(two, FitKind::DerivativeGrowth), DomainError);
  std::vector<std::pair<double, double>> zero{{1.0, 1.0}, {2.0, 0.0}, {3.0, 2.0}};
  CHECK_THROWS_AS(fit_exponent(zero, FitKind::DerivativeGrowth), DomainError);
  std::vector<std::pair<double, double>> same{{2.0, 1.0}, {2.0, 2.0}, {2.0, 3.0}};
  CHECK_THROWS_AS(fit_exponent(same, FitKind::DerivativeGrowth), DomainError);
}

TEST_CASE("collapse quality of identical and shifted curves") {
  std::vector<CollapsePoint> pts;
  for (int n : {1, 2, 3})
    for (int i = 0; i <= 50; ++i) {
      const double x = -1.0 + i / 25.0;
      pts.push_back({n, 0, x, x * x});
    }
  CHECK(collapse_quality(pts) == doctest::Approx(0.0));
  for (auto& p : pts) p.y += 0.1 * p.n;
  // spread of {0.1, 0.2, 0.3}: sqrt(2/3) * 0.1
  CHECK(collapse_quality(pts) == doctest::Approx(std::sqrt(2.0 / 3.0) * 0.1));
  std::vector<CollapsePoint> one{{1, 0, 0.0, 0.0}, {1, 0, 1.0, 1.0}};
  CHECK_THROWS_AS(collapse_quality(one), DomainError);
}

TEST_CASE("collapse discriminates nu") {
  const auto& tri = lattice(LatticeKind::Triangular);
  const auto c = critical_data(tri);
  const std::vector<int> ns{2, 3, 4, 5, 6};
  ScalingOptions opts;
  opts.steps = 256;
  const auto good = collapse(tri, Measure::Tau, ns, c.nu, opts);
  const auto doubled = collapse(tri, Measure::Tau, ns, 2.0 * c.nu, opts);
  const auto low = collapse(tri, Measure::Tau, ns, 0.5 * c.nu, opts);
  const auto high = collapse(tri, Measure::Tau, ns, 1.5 * c.nu, opts);
  CHECK(doubled.quality >= 3.0 * good.quality);
  CHECK(good.quality < low.quality);
  CHECK(good.quality < high.quality);
  for (const auto& p : good.points) REQUIRE(std::isfinite(p.x));
  CHECK_THROWS_AS(collapse(tri, Measure::Tau, std::vector<int>{3}, c.nu, opts), DomainError);
}

TEST_CASE("curves cross at the fixed point") {
  const auto& sp = lattice(LatticeKind::SierpinskiPyramid);
  const auto c = critical_data(sp);
  const auto w = fixed_window(c);
  const auto a = sweep(sp, Measure::Tau, 2, w.lo, w.hi, 512);
  const auto b = sweep(sp, Measure::Tau, 3, w.lo, w.hi, 512);
  const auto xs = curve_crossings(a, b);
  REQUIRE_FALSE(xs.empty());
  double best = 1.0;
  for (double x : xs) best = std::min(best, std::abs(x - c.g_c));
  CHECK(best < 0.01);
}

TEST_CASE("scaling analysis preconditions") {
  ScalingOptions opts;
  opts.n_min = 2;
  opts.n_max = 3;
  CHECK_THROWS_AS(scaling_analysis(lattice(LatticeKind::SierpinskiTriangle), Measure::Tau, opts), DomainError);
}
