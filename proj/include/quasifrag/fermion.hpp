#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "quasifrag/entropy.hpp"
#include "quasifrag/pattern.hpp"

namespace quasifrag {

// Hermitian Toeplitz matrix of two-point functions on the first L_A sites;
// entry (j1, j2) = correlation_value(L, j2 - j1, K).
struct CorrelationMatrix {
  int L;
  int L_A;
  Eigen::MatrixXcd m;
};

// (1/L) * sum_{k in K} exp(2*pi*i*j*k/L).
std::complex<double> correlation_value(int L, int j, const ModeSet& K);

CorrelationMatrix correlation_matrix(int L, int L_A, const ModeSet& K);

// Occupation eigenvalues of C are clipped to [0,1] when within 1e-10 of the
// boundary; farther out is a hard error. Returns sum of binary entropies.
EntropyResult entropy_from_correlation(const CorrelationMatrix& C, double n);

// Eigenvalue list of C after the clip policy (exposed for decomposition checks).
std::vector<double> correlation_occupations(const CorrelationMatrix& C);

// Closed form for one excited mode in a cell of l momenta and l_A kept sites:
// the binary entropy of l_A / l.
double single_mode_entropy(int l, int l_A, double n);

// Brute-force ground truth: builds the 2^L-dimensional Fock state
// (creation operators applied in increasing momentum order), partial-traces
// onto the first L_A sites, and returns the spectrum entropy. Cost 4^L.
EntropyResult fock_oracle_entropy(int L, int L_A, const ModeSet& K, double n,
                                  int max_L = 14);
// RDM spectrum of the Fock-oracle state (reused across Renyi indices).
std::vector<double> fock_oracle_spectrum(int L, int L_A, const ModeSet& K,
                                         int max_L = 14);

// The universal per-pattern entropy function s^{(n)}_{l,kappa}(x):
// piecewise linear in x with l pieces, built from the small-cell entropies.
double per_pattern_s(const UnitPattern& pattern, double n, const Rational& x);

// Exact decomposition for the fully occupied chain L = p*l,
// L_A = alpha*p + a:  a*S_{l,alpha+1,kappa} + (p-a)*S_{l,alpha,kappa}.
// Valid for L_A in [0, p*l - 1] (decomposition range); exact, not asymptotic.
double full_occupancy_entropy_exact(const UnitPattern& pattern, int p, int L_A,
                                    double n);

// Checks that eig(C_{pl,L_A,p*kappa}) equals the multiset union of a copies
// of eig(C_{l,alpha+1,kappa}) and (p-a) copies of eig(C_{l,alpha,kappa}).
struct BlockDecompositionReport {
  int alpha = 0;
  int a = 0;
  double max_distance = 0.0;
  bool pass = false;  // max_distance < 1e-10
};
BlockDecompositionReport verify_block_decomposition(const UnitPattern& pattern,
                                                    int p, int L_A);

// Predicted entropy density S/L in the scaling limit for one partially
// occupying pattern with repetition ratio z in [0, 1/l].
double predict_partial_density(const UnitPattern& pattern, double z, double n,
                               const Rational& x);

// Predicted entropy density for a mixed-occupancy spec:
// sum_i z_i * s_{l_i,kappa_i}(x).
double predict_mixed_density(const OccupancySpec& spec, double n,
                             const Rational& x);

// Magnon-pattern prediction for the spin chain at strong anisotropy: a
// length-l Bethe cell with one magnon maps to a length l-1 fermionic cell.
double predict_xxz(int l, double n, const Rational& x);

}  // namespace quasifrag
