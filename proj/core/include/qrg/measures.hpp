#pragma once

#include <map>

#include "qrg/exact_diag.hpp"

namespace qrg {

// Eigenvalues in [-kSpectralSlack, 0) are roundoff and read as zero; anything
// more negative is rejected.
inline constexpr double kSpectralSlack = 1e-12;

// Wootters concurrence max{0, s1 - s2 - s3 - s4}, s_i the square roots of the
// eigenvalues of rho (Y x Y) rho* (Y x Y) in decreasing order.
double concurrence(const DensityMatrix& rho);

// h(x) = -x log2 x - (1-x) log2(1-x), with 0 log 0 = 0.
double binary_entropy(double x);

// Two-qubit entanglement of formation h((1 + sqrt(1 - c^2)) / 2).
double eof_from_concurrence(double c);

// Concurrence of the node versus the rest of a pure state, sqrt(2 (1 - Tr rho_node^2)).
double one_vs_rest_concurrence(const ClusterState& state, int node);

// Squared-EoF monogamy indicator: E_f^2(node|rest) - sum_j E_f^2(rho_{node,j}).
double multipartite_tau(const ClusterState& state, int node);

// -Tr rho log2 rho.
double von_neumann_entropy(const DensityMatrix& rho);

// Square root of the quantum Jensen-Shannon divergence between rho and its
// diagonal part in the sigma^z product basis.
double qjsd_coherence(const DensityMatrix& rho);

struct MeasureSet {
  double tau = 0.0;
  double one_vs_rest_eof = 0.0;
  // partner site (0-indexed) -> E_f(rho_{node,partner})
  std::map<int, double> pairwise_eof;
  // C(rho) on the node and its first neighbour, sites 0 and 1.
  double coherence = 0.0;
};

MeasureSet measure_set(const ClusterState& state, int node = 0);

}  // namespace qrg
