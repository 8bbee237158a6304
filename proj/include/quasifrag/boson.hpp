#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "quasifrag/entropy.hpp"
#include "quasifrag/pattern.hpp"

namespace quasifrag {

// N bosons, one per distinct excited momentum (pattern states never repeat
// a momentum).
struct BosonState {
  int L;
  ModeSet K;

  BosonState(int L_, ModeSet K_);
  int particles() const { return K.size(); }
};

// Permanent by Ryser inclusion-exclusion with Gray-code row-sum updates and
// compensated accumulation. Exact-ish up to n ~ 10; we use n <= 8.
std::complex<double> permanent(const Eigen::MatrixXcd& A);

// Number-conserving reduced state: one Hermitian PSD block per subsystem
// particle count m, with block traces summing to 1.
struct SectorRDM {
  int N;
  std::vector<Eigen::MatrixXcd> blocks;  // index m in [0, N]
  std::vector<double> block_traces;
  std::vector<double> spectrum() const;
};

SectorRDM boson_sector_rdm(const BosonState& state, int L_A, int max_N = 8,
                           long long max_configs = 5'000'000);

// Canonical bosonic entropy path: expand the state over site occupations
// (amplitudes are permanents of plane-wave matrices), contract the
// complement, take the spectrum entropy of the sector blocks.
EntropyResult boson_sector_entropy(const BosonState& state, int L_A, double n,
                                   int max_N = 8,
                                   long long max_configs = 5'000'000);

// Independent oracle: builds the same state by sequential operator
// application over the occupation basis (no permanents) and diagonalizes
// the monolithic reduced density matrix. Small instances only.
EntropyResult brute_force_boson_entropy(const BosonState& state, int L_A,
                                        double n, int max_L = 8, int max_N = 4);

// Cell-interpolation formula that ignores inter-cell boson correlations:
// y*S_{l,alpha+1,kappa} + (1-y)*S_{l,alpha,kappa} with bosonic single-cell
// entropies. The computed per-pattern values differ from this in piece
// interiors; that difference is the point of the comparison.
double naive_prediction(const UnitPattern& pattern, double n, const Rational& x);

// Finite-p sequence S_{pl, x*p*l, p*kappa}/p plus a linear-in-1/p fit.
struct PatternExtrapolation {
  std::vector<int> p;              // the p values actually computed
  std::vector<double> s_over_p;
  double raw_last = 0.0;
  double extrapolated = 0.0;       // 1/p -> 0 intercept of the linear fit
  bool monotone = false;
  bool complete = false;           // false if any requested p hit a cap
};
PatternExtrapolation per_pattern_s_boson(const UnitPattern& pattern, double n,
                                         const Rational& x,
                                         const std::vector<int>& p_list,
                                         int max_N = 8,
                                         long long max_configs = 5'000'000);

}  // namespace quasifrag
