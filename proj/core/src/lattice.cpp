#include "qrg/lattice.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "qrg/error.hpp"

namespace qrg {
namespace {

std::vector<Edge> complete_graph(int sites) {
  std::vector<Edge> edges;
  for (int i = 0; i < sites; ++i)
    for (int j = i + 1; j < sites; ++j) edges.emplace_back(i, j);
  return edges;
}

// Hexagon with a centre: six spokes from site 0, then the ring 1-2-...-6-1.
std::vector<Edge> hexagon_edges() {
  std::vector<Edge> edges;
  for (int i = 1; i <= 6; ++i) edges.emplace_back(0, i);
  for (int i = 1; i < 6; ++i) edges.emplace_back(i, i + 1);
  edges.emplace_back(1, 6);
  return edges;
}

LatticeModel make_model(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Triangular:
      return {kind, 7, 0, hexagon_edges(), 2.0, std::sqrt(3.0), 7, 3};
    case LatticeKind::SierpinskiTriangle:
      return {kind, 3, 0, complete_graph(3), std::log(3.0) / std::log(2.0), 2.0, 3, 3};
    case LatticeKind::SierpinskiPyramid:
      return {kind, 4, 0, complete_graph(4), 2.0, 2.0, 4, 4};
  }
  throw DomainError("unknown lattice kind");
}

void check_coupling(double g) {
  if (!std::isfinite(g) || g < 0.0)
    throw DomainError("coupling must be finite and non-negative, got " + std::to_string(g));
}

// Spatial dimension kappa of the Sierpinski family member.
int fractal_kappa(LatticeKind kind) {
  return kind == LatticeKind::SierpinskiTriangle ? 2 : 3;
}

}  // namespace

const LatticeModel& lattice(LatticeKind kind) {
  static const LatticeModel triangular = make_model(LatticeKind::Triangular);
  static const LatticeModel triangle = make_model(LatticeKind::SierpinskiTriangle);
  static const LatticeModel pyramid = make_model(LatticeKind::SierpinskiPyramid);
  switch (kind) {
    case LatticeKind::Triangular: return triangular;
    case LatticeKind::SierpinskiTriangle: return triangle;
    case LatticeKind::SierpinskiPyramid: return pyramid;
  }
  throw DomainError("unknown lattice kind");
}

std::string_view lattice_name(LatticeKind kind) {
  switch (kind) {
    case LatticeKind::Triangular: return "triangular";
    case LatticeKind::SierpinskiTriangle: return "sierpinski-triangle";
    case LatticeKind::SierpinskiPyramid: return "sierpinski-pyramid";
  }
  return "unknown";
}

std::optional<LatticeKind> parse_lattice(std::string_view name) {
  for (auto kind : kAllLattices)
    if (lattice_name(kind) == name) return kind;
  return std::nullopt;
}

double rg_map(const LatticeModel& model, double g) {
  check_coupling(g);
  if (g == 0.0) return 0.0;
  const double g2 = g * g;
  if (model.kind == LatticeKind::Triangular) {
    return std::cbrt(2.0) * g2 * std::pow(1.0 + g2, 1.0 / 6.0) *
           std::pow(g + std::sqrt(1.0 + g2), 2.0 / 3.0);
  }
  const double kappa = fractal_kappa(model.kind);
  const double a = (3.0 * kappa + 1.0) / (kappa + 1.0);
  const double b = kappa * (kappa - 1.0) / (2.0 * (kappa + 1.0));
  return std::pow(g, a) * std::pow(1.0 + g2, b);
}

double rg_iterate(const LatticeModel& model, double g, int n) {
  check_coupling(g);
  if (n < 0) throw DomainError("iteration count must be non-negative");
  for (int i = 1; i <= n; ++i) {
    g = rg_map(model, g);
    if (!std::isfinite(g))
      throw SaturationError(i, "coupling diverged at RG iteration " + std::to_string(i));
  }
  return g;
}

int max_size_iteration(const LatticeModel& model) {
  constexpr auto kMax = std::numeric_limits<std::int64_t>::max();
  int n = 0;
  std::int64_t size = model.base_sites;
  while (size <= kMax / model.size_ratio) {
    size *= model.size_ratio;
    ++n;
  }
  return n;
}

std::int64_t system_size(const LatticeModel& model, int n) {
  if (n < 0) throw DomainError("iteration count must be non-negative");
  if (n > max_size_iteration(model))
    throw RangeError("system size at n=" + std::to_string(n) + " overflows 64-bit integers");
  std::int64_t size = model.base_sites;
  for (int i = 0; i < n; ++i) size *= model.size_ratio;
  return size;
}

double log_system_size(const LatticeModel& model, int n) {
  if (n < 0) throw DomainError("iteration count must be non-negative");
  return std::log(static_cast<double>(model.base_sites)) +
         n * std::log(static_cast<double>(model.size_ratio));
}

}  // namespace qrg
