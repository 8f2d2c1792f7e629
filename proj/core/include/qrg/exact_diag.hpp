#pragma once

#include <complex>
#include <cstdint>
#include <span>

#include <Eigen/Dense>

#include "qrg/lattice.hpp"

namespace qrg {

// Basis convention: configuration index b stores spin i in bit (k-1-i);
// bit value 0 is spin up (sigma^z = +1). Site 0 is the most significant bit.
inline int spin_bit(int site, int sites) { return sites - 1 - site; }
inline int spin_value(std::uint32_t config, int site, int sites) {
  return ((config >> spin_bit(site, sites)) & 1u) ? -1 : +1;
}

// H = -g sum_<ij> s^z_i s^z_j - sum_i s^x_i on one basic cluster (h = 1).
struct ClusterHamiltonian {
  const LatticeModel* model;
  double g;
  Eigen::MatrixXd matrix;

  int sites() const { return model->cluster_size; }
};

struct ClusterState {
  Eigen::VectorXd amplitudes;
  double energy = 0.0;
  double g = 0.0;
  int sites = 0;
  // E_1 - E_0 over the full spectrum.
  double gap = 0.0;
  // Set when gap < kDegeneracyGap: the returned vector is still the
  // flip-symmetric ground state, but the spectrum is numerically degenerate.
  bool degenerate = false;
};

inline constexpr double kDegeneracyGap = 1e-12;

// Hermitian, unit-trace, PSD operator on one or two qubits.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Eigen::MatrixXcd entries);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXcd& entries() const { return entries_; }
  std::complex<double> operator()(int i, int j) const { return entries_(i, j); }

  // Throws DomainError unless trace, hermiticity and spectrum are within tol.
  void validate(double tol = 1e-12) const;

 private:
  Eigen::MatrixXcd entries_;
};

DensityMatrix pure_density(const Eigen::VectorXcd& psi);

ClusterHamiltonian build_hamiltonian(const LatticeModel& model, double g);

ClusterState ground_state(const ClusterHamiltonian& hamiltonian);

// Convenience: build_hamiltonian followed by ground_state.
ClusterState cluster_ground_state(const LatticeModel& model, double g);

// Reduced density operator on `keep` (one or two distinct sites). The first
// kept site is the more significant qubit of the result.
DensityMatrix partial_trace(const ClusterState& state, std::span<const int> keep);
DensityMatrix partial_trace(std::span<const double> amplitudes, int sites,
                            std::span<const int> keep);

}  // namespace qrg
