#include "quasifrag/fermion.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace quasifrag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Clip policy shared by all correlation-matrix paths: eigenvalues within
// tol of [0,1] are exact boundary values pushed out by round-off; anything
// farther signals a broken matrix.
double clip_occupation(double nu, double tol, int* clip_count) {
  if (nu < 0.0) {
    if (nu < -tol)
      throw NumericalError("correlation eigenvalue " + std::to_string(nu) +
                           " below 0 beyond tolerance");
    ++*clip_count;
    return 0.0;
  }
  if (nu > 1.0) {
    if (nu > 1.0 + tol)
      throw NumericalError("correlation eigenvalue " + std::to_string(nu) +
                           " above 1 beyond tolerance");
    ++*clip_count;
    return 1.0;
  }
  return nu;
}
}  // namespace

std::complex<double> correlation_value(int L, int j, const ModeSet& K) {
  if (K.L != L) throw SpecError("correlation_value: ModeSet built for different L");
  // exp(2*pi*i*j*k/L) depends on j*k mod L only; reducing the argument keeps
  // equal entries of the Toeplitz matrix bit-identical.
  const int jm = ((j % L) + L) % L;
  std::complex<double> acc(0.0, 0.0);
  for (int k : K.K) {
    const int r = static_cast<int>((static_cast<long long>(jm) * k) % L);
    const double angle = kTwoPi * r / L;
    acc += std::complex<double>(std::cos(angle), std::sin(angle));
  }
  return acc / static_cast<double>(L);
}

CorrelationMatrix correlation_matrix(int L, int L_A, const ModeSet& K) {
  if (L_A < 0 || L_A > L)
    throw SpecError("correlation_matrix: L_A must lie in [0, L]");
  std::vector<std::complex<double>> h(L_A);
  for (int d = 0; d < L_A; ++d) h[d] = correlation_value(L, d, K);
  Eigen::MatrixXcd m(L_A, L_A);
  for (int j1 = 0; j1 < L_A; ++j1)
    for (int j2 = 0; j2 < L_A; ++j2)
      m(j1, j2) = j2 >= j1 ? h[j2 - j1] : std::conj(h[j1 - j2]);
  return CorrelationMatrix{L, L_A, std::move(m)};
}

std::vector<double> correlation_occupations(const CorrelationMatrix& C) {
  if (C.L_A == 0) return {};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C.m, Eigen::EigenvaluesOnly);
  std::vector<double> nus(es.eigenvalues().data(),
                          es.eigenvalues().data() + C.L_A);
  int clips = 0;
  for (double& nu : nus) nu = clip_occupation(nu, 1e-10, &clips);
  return nus;
}

EntropyResult entropy_from_correlation(const CorrelationMatrix& C, double n) {
  EntropyResult res;
  res.n = n;
  res.L = C.L;
  res.L_A = C.L_A;
  res.method = Method::correlation;
  if (C.L_A == 0) return res;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C.m, Eigen::EigenvaluesOnly);
  int clips = 0;
  double value = 0.0;
  for (int i = 0; i < C.L_A; ++i)
    value += binary_entropy(clip_occupation(es.eigenvalues()(i), 1e-10, &clips), n);
  res.value = value < 0.0 ? 0.0 : value;
  res.diagnostics["clip_count"] = clips;
  return res;
}

double single_mode_entropy(int l, int l_A, double n) {
  if (l < 1 || l_A < 0 || l_A > l)
    throw SpecError("single_mode_entropy: need 0 <= l_A <= l");
  return binary_entropy(static_cast<double>(l_A) / l, n);
}

std::vector<double> fock_oracle_spectrum(int L, int L_A, const ModeSet& K,
                                         int max_L) {
  if (K.L != L) throw SpecError("fock_oracle: ModeSet built for different L");
  if (L_A < 0 || L_A > L) throw SpecError("fock_oracle: L_A must lie in [0, L]");
  if (L > max_L)
    throw CapError("fock_oracle: L = " + std::to_string(L) + " exceeds cap " +
                   std::to_string(max_L) + " (state dimension 2^L = " +
                   std::to_string(1LL << L) + ")");
  const std::size_t dim = std::size_t{1} << L;
  std::vector<std::complex<double>> psi(dim, 0.0), next(dim);
  psi[0] = 1.0;
  const double inv_sqrt_L = 1.0 / std::sqrt(static_cast<double>(L));
  // Creation operators applied in increasing momentum order; the site
  // operator on site j carries the parity of occupied sites below j.
  for (int k : K.K) {
    std::fill(next.begin(), next.end(), std::complex<double>(0.0, 0.0));
    for (std::size_t s = 0; s < dim; ++s) {
      if (psi[s] == std::complex<double>(0.0, 0.0)) continue;
      for (int j = 0; j < L; ++j) {
        if (s >> j & 1) continue;
        const int below = std::popcount(s & ((std::size_t{1} << j) - 1));
        const double sign = (below & 1) ? -1.0 : 1.0;
        const int r = static_cast<int>((static_cast<long long>(j) * k) % L);
        const double angle = kTwoPi * r / L;
        next[s | (std::size_t{1} << j)] +=
            psi[s] * sign * inv_sqrt_L *
            std::complex<double>(std::cos(angle), std::sin(angle));
      }
    }
    psi.swap(next);
  }
  // Partial trace onto the first L_A sites (low bits). The nonzero spectrum
  // of the reduced state equals that of the Gram matrix on the smaller side.
  const int La = std::min(L_A, L - L_A);
  const bool keep_low = (L_A <= L - L_A);
  const std::size_t dimA = std::size_t{1} << La;
  const std::size_t dimB = std::size_t{1} << (L - La);
  Eigen::MatrixXcd M(dimA, dimB);
  for (std::size_t s = 0; s < dim; ++s) {
    const std::size_t low = s & ((std::size_t{1} << L_A) - 1);
    const std::size_t high = s >> L_A;
    if (keep_low)
      M(static_cast<Eigen::Index>(low), static_cast<Eigen::Index>(high)) = psi[s];
    else
      M(static_cast<Eigen::Index>(high), static_cast<Eigen::Index>(low)) = psi[s];
  }
  Eigen::MatrixXcd rho = M * M.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return std::vector<double>(es.eigenvalues().data(),
                             es.eigenvalues().data() + dimA);
}

EntropyResult fock_oracle_entropy(int L, int L_A, const ModeSet& K, double n,
                                  int max_L) {
  EntropyResult res;
  res.n = n;
  res.L = L;
  res.L_A = L_A;
  res.method = Method::fock_oracle;
  res.value = entropy_from_spectrum(fock_oracle_spectrum(L, L_A, K, max_L), n);
  return res;
}

namespace {
double cell_entropy(const UnitPattern& pattern, int l_A, double n) {
  const ModeSet kappa(pattern.l, pattern.kappa);
  return entropy_from_correlation(correlation_matrix(pattern.l, l_A, kappa), n)
      .value;
}
}  // namespace

double per_pattern_s(const UnitPattern& pattern, double n, const Rational& x) {
  const CellCoordinates cc = cell_coords(pattern.l, x);
  const double s_hi = cell_entropy(pattern, cc.alpha + 1, n);
  const double s_lo = cc.y < 1.0 ? cell_entropy(pattern, cc.alpha, n) : 0.0;
  return cc.y * s_hi + (1.0 - cc.y) * s_lo;
}

double full_occupancy_entropy_exact(const UnitPattern& pattern, int p, int L_A,
                                    double n) {
  if (p < 1) throw SpecError("full_occupancy_entropy_exact: p must be >= 1");
  const int alpha = p > 0 ? L_A / p : 0;
  const int a = L_A - alpha * p;
  if (L_A < 0 || alpha >= pattern.l || a >= p)
    throw SpecError(
        "full_occupancy_entropy_exact: L_A = " + std::to_string(L_A) +
        " has no decomposition alpha*p + a with alpha in [0," +
        std::to_string(pattern.l) + "), a in [0," + std::to_string(p) + ")");
  const double s_hi = a > 0 ? cell_entropy(pattern, alpha + 1, n) : 0.0;
  const double s_lo = cell_entropy(pattern, alpha, n);
  return a * s_hi + (p - a) * s_lo;
}

BlockDecompositionReport verify_block_decomposition(const UnitPattern& pattern,
                                                    int p, int L_A) {
  if (p < 1) throw SpecError("verify_block_decomposition: p must be >= 1");
  const int L = p * pattern.l;
  if (L_A < 0 || L_A >= L)
    throw SpecError("verify_block_decomposition: L_A must lie in [0, p*l)");
  BlockDecompositionReport rep;
  rep.alpha = L_A / p;
  rep.a = L_A - rep.alpha * p;

  const OccupancySpec spec{L, {Block{pattern, p, 0}}};
  std::vector<double> lhs =
      correlation_occupations(correlation_matrix(L, L_A, expand(spec)));

  const ModeSet kappa(pattern.l, pattern.kappa);
  std::vector<double> rhs;
  const std::vector<double> hi =
      correlation_occupations(correlation_matrix(pattern.l, rep.alpha + 1, kappa));
  const std::vector<double> lo =
      correlation_occupations(correlation_matrix(pattern.l, rep.alpha, kappa));
  for (int c = 0; c < rep.a; ++c) rhs.insert(rhs.end(), hi.begin(), hi.end());
  for (int c = 0; c < p - rep.a; ++c) rhs.insert(rhs.end(), lo.begin(), lo.end());

  std::sort(lhs.begin(), lhs.end());
  std::sort(rhs.begin(), rhs.end());
  rep.max_distance = 0.0;
  if (lhs.size() != rhs.size()) {
    rep.max_distance = 1.0;
    rep.pass = false;
    return rep;
  }
  for (std::size_t i = 0; i < lhs.size(); ++i)
    rep.max_distance = std::max(rep.max_distance, std::abs(lhs[i] - rhs[i]));
  rep.pass = rep.max_distance < 1e-10;
  return rep;
}

double predict_partial_density(const UnitPattern& pattern, double z, double n,
                               const Rational& x) {
  if (z < 0.0 || z > 1.0 / pattern.l + 1e-12)
    throw SpecError("predict_partial_density: z must lie in [0, 1/l]");
  if (z == 0.0) return 0.0;
  return z * per_pattern_s(pattern, n, x);
}

double predict_mixed_density(const OccupancySpec& spec, double n,
                             const Rational& x) {
  const std::vector<double> z = repetition_ratios(spec);
  double acc = 0.0;
  for (std::size_t i = 0; i < spec.blocks.size(); ++i)
    acc += z[i] * per_pattern_s(spec.blocks[i].pattern, n, x);
  return acc;
}

double predict_xxz(int l, double n, const Rational& x) {
  if (l < 2)
    throw SpecError("predict_xxz: magnon cell length must be >= 2, got " +
                    std::to_string(l));
  return per_pattern_s(UnitPattern(l - 1, {0}), n, x);
}

}  // namespace quasifrag
