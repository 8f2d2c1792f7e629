#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace qrg {

enum class LatticeKind { Triangular, SierpinskiTriangle, SierpinskiPyramid };

inline constexpr std::array<LatticeKind, 3> kAllLattices = {
    LatticeKind::Triangular, LatticeKind::SierpinskiTriangle,
    LatticeKind::SierpinskiPyramid};

using Edge = std::pair<int, int>;

// Geometry of one lattice family: its basic cluster, how lengths rescale per
// RG step, and the (effective or Hausdorff) dimension entering the scaling
// relations. Sites are 0-indexed; site 0 is the node.
struct LatticeModel {
  LatticeKind kind;
  int cluster_size;
  int node_site;
  std::vector<Edge> edges;
  double dimension;
  double rescale;
  std::int64_t base_sites;
  // Integer growth of N per RG step, rescale^dimension.
  std::int64_t size_ratio;
};

const LatticeModel& lattice(LatticeKind kind);

// CLI-facing names: "triangular", "sierpinski-triangle", "sierpinski-pyramid".
std::string_view lattice_name(LatticeKind kind);
std::optional<LatticeKind> parse_lattice(std::string_view name);

// One step of the coupling flow g -> g'.
double rg_map(const LatticeModel& model, double g);

// n-fold composition of rg_map. Throws SaturationError naming the offending
// iteration when the coupling overflows.
double rg_iterate(const LatticeModel& model, double g, int n);

// Number of lattice sites represented by the cluster after n RG steps.
// Throws RangeError once the count no longer fits in 64 bits.
std::int64_t system_size(const LatticeModel& model, int n);

// ln N(n); defined for every n, including those past the 64-bit cap.
double log_system_size(const LatticeModel& model, int n);

// Largest n accepted by system_size.
int max_size_iteration(const LatticeModel& model);

}  // namespace qrg
