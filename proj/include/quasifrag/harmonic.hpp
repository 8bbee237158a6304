#pragma once

#include <complex>

#include <Eigen/Dense>

#include "quasifrag/entropy.hpp"
#include "quasifrag/pattern.hpp"

namespace quasifrag {

// Periodic chain of coupled oscillators with dispersion
// omega_k = sqrt(m^2 + 4 sin^2(pi k / L)), k in [0, L). m > 0 strictly
// (the zero mode at m = 0 makes the ground state non-normalizable).
struct HarmonicModel {
  int L;
  double m;

  HarmonicModel(int L_, double m_);
  double omega(int k) const;
  // Ground-state quadratic-form kernel W_{jk} = (1/L) sum_q w_q cos(2 pi q (j-k)/L).
  Eigen::MatrixXd frequency_kernel() const;
};

// Hafnian of an even-dimensional symmetric matrix (diagonal ignored).
// Power-trace algorithm, O(2^(n/2) poly(n)); deterministic evaluation order.
std::complex<double> hafnian(const Eigen::MatrixXcd& A);
// Plain recursive perfect-matching expansion; reference for small n.
std::complex<double> hafnian_enumerate(const Eigen::MatrixXcd& A);

// Renyi-2 of the ground state from the reduced X/P covariance blocks.
EntropyResult harmonic_ground_renyi2(const HarmonicModel& model, int L_A);

// Renyi-2 of prod_{k in K} (creation at k) |ground>: the excitation
// prefactors are Wick-expanded over the two-replica Gaussian measure; the
// matching sum is a hafnian. Returns -log tr rho_A^2, plus diagnostics
// (squared norm of the excited state, which must be 1 for distinct modes).
EntropyResult harmonic_excited_renyi2(const HarmonicModel& model,
                                      const ModeSet& K, int L_A,
                                      int max_K = 6);

}  // namespace quasifrag
