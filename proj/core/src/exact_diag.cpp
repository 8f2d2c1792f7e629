#include "qrg/exact_diag.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "qrg/error.hpp"

namespace qrg {

DensityMatrix::DensityMatrix(Eigen::MatrixXcd entries) : entries_(std::move(entries)) {
  if (entries_.rows() != entries_.cols() || (entries_.rows() != 2 && entries_.rows() != 4))
    throw DomainError("density matrix must be 2x2 or 4x4");
}

void DensityMatrix::validate(double tol) const {
  const auto trace = entries_.trace();
  if (std::abs(trace - 1.0) > tol)
    throw DomainError("density matrix trace is " + std::to_string(trace.real()));
  if ((entries_ - entries_.adjoint()).cwiseAbs().maxCoeff() > tol)
    throw DomainError("density matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(entries_, Eigen::EigenvaluesOnly);
  if (solver.eigenvalues().minCoeff() < -tol)
    throw DomainError("density matrix has eigenvalue " +
                      std::to_string(solver.eigenvalues().minCoeff()));
}

DensityMatrix pure_density(const Eigen::VectorXcd& psi) {
  return DensityMatrix(psi * psi.adjoint());
}

ClusterHamiltonian build_hamiltonian(const LatticeModel& model, double g) {
  if (!std::isfinite(g) || g < 0.0)
    throw DomainError("coupling must be finite and non-negative");
  const int k = model.cluster_size;
  const std::uint32_t dim = 1u << k;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint32_t b = 0; b < dim; ++b) {
    double bonds = 0.0;
    for (const auto& [i, j] : model.edges)
      bonds += spin_value(b, i, k) * spin_value(b, j, k);
    h(b, b) = -g * bonds;
    for (int i = 0; i < k; ++i) h(b, b ^ (1u << spin_bit(i, k))) = -1.0;
  }
  return {&model, g, std::move(h)};
}

// H commutes with the global flip prod_i s^x_i, so it splits into an even and
// an odd block spanned by (|b> +- |~b>)/sqrt(2) with site 0 up in b. The
// Perron-Frobenius ground state is even; diagonalizing the blocks separately
// keeps it well defined in the Ising limit where the two blocks' lowest
// levels become degenerate.
ClusterState ground_state(const ClusterHamiltonian& hamiltonian) {
  const int k = hamiltonian.sites();
  const Eigen::Index full = Eigen::Index{1} << k;
  const Eigen::Index half = full / 2;
  const std::uint32_t mask = static_cast<std::uint32_t>(full - 1);
  const auto& h = hamiltonian.matrix;

  Eigen::MatrixXd even(half, half), odd(half, half);
  for (Eigen::Index r = 0; r < half; ++r) {
    for (Eigen::Index c = 0; c < half; ++c) {
      const auto flipped = static_cast<Eigen::Index>(static_cast<std::uint32_t>(c) ^ mask);
      even(r, c) = h(r, c) + h(r, flipped);
      odd(r, c) = h(r, c) - h(r, flipped);
    }
  }

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> even_solver(even);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> odd_solver(odd, Eigen::EigenvaluesOnly);
  if (even_solver.info() != Eigen::Success || odd_solver.info() != Eigen::Success)
    throw NumericalError("eigensolver failed to converge");

  ClusterState state;
  state.g = hamiltonian.g;
  state.sites = k;
  state.energy = even_solver.eigenvalues()(0);
  const double next_even = half > 1 ? even_solver.eigenvalues()(1) : odd_solver.eigenvalues()(0);
  state.gap = std::min(next_even, odd_solver.eigenvalues()(0)) - state.energy;
  state.degenerate = state.gap < kDegeneracyGap;

  const Eigen::VectorXd v = even_solver.eigenvectors().col(0);
  state.amplitudes.resize(full);
  const double s = 1.0 / std::sqrt(2.0);
  for (Eigen::Index r = 0; r < half; ++r) {
    state.amplitudes(r) = s * v(r);
    state.amplitudes(static_cast<std::uint32_t>(r) ^ mask) = s * v(r);
  }
  Eigen::Index largest = 0;
  state.amplitudes.cwiseAbs().maxCoeff(&largest);
  if (state.amplitudes(largest) < 0.0) state.amplitudes = -state.amplitudes;
  state.amplitudes.normalize();
  return state;
}

ClusterState cluster_ground_state(const LatticeModel& model, double g) {
  return ground_state(build_hamiltonian(model, g));
}

DensityMatrix partial_trace(std::span<const double> amplitudes, int sites,
                            std::span<const int> keep) {
  if (sites <= 0 || sites > 30 || amplitudes.size() != (std::size_t{1} << sites))
    throw DomainError("amplitude vector length must be 2^sites");
  if (keep.empty() || keep.size() > 2)
    throw DomainError("partial_trace keeps one or two sites");
  for (std::size_t a = 0; a < keep.size(); ++a) {
    if (keep[a] < 0 || keep[a] >= sites)
      throw DomainError("site index " + std::to_string(keep[a]) + " out of range");
    for (std::size_t b = a + 1; b < keep.size(); ++b)
      if (keep[a] == keep[b]) throw DomainError("kept sites must be distinct");
  }

  const int m = static_cast<int>(keep.size());
  std::vector<int> rest;
  for (int i = 0; i < sites; ++i)
    if (i != keep[0] && (m == 1 || i != keep[1])) rest.push_back(i);

  // Reshape psi into a (kept x rest) matrix; rho = M M^T.
  Eigen::MatrixXd reshaped(1 << m, Eigen::Index{1} << rest.size());
  for (std::uint32_t b = 0; b < amplitudes.size(); ++b) {
    std::uint32_t kept = 0, other = 0;
    for (int i = 0; i < m; ++i)
      kept = (kept << 1) | ((b >> spin_bit(keep[i], sites)) & 1u);
    for (int site : rest) other = (other << 1) | ((b >> spin_bit(site, sites)) & 1u);
    reshaped(kept, other) = amplitudes[b];
  }
  const Eigen::MatrixXd rho = reshaped * reshaped.transpose();
  return DensityMatrix(rho.cast<std::complex<double>>());
}

DensityMatrix partial_trace(const ClusterState& state, std::span<const int> keep) {
  return partial_trace(std::span<const double>(state.amplitudes.data(),
                                               static_cast<std::size_t>(state.amplitudes.size())),
                       state.sites, keep);
}

}  // namespace qrg
