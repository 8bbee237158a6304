#include "quasifrag/boson.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numbers>
#include <string>

namespace quasifrag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Occupation configuration: one entry per site, summing to the sector count.
using Config = std::vector<int>;

// All configurations of `total` bosons on `sites` sites, lexicographic.
void enumerate_configs(int sites, int total, Config& cur,
                       std::vector<Config>& out) {
  if (sites == 1) {
    cur.push_back(total);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (int c = total; c >= 0; --c) {
    cur.push_back(c);
    enumerate_configs(sites - 1, total - c, cur, out);
    cur.pop_back();
  }
}

std::vector<Config> configs(int sites, int total) {
  std::vector<Config> out;
  if (sites == 0) {
    if (total == 0) out.push_back({});
    return out;
  }
  Config cur;
  enumerate_configs(sites, total, cur, out);
  return out;
}

long long binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double factorial(int n) {
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}
}  // namespace

BosonState::BosonState(int L_, ModeSet K_) : L(L_), K(std::move(K_)) {
  if (K.L != L) throw SpecError("BosonState: ModeSet built for different L");
  if (K.size() == 0) throw SpecError("BosonState: need at least one boson");
}

std::complex<double> permanent(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  if (A.cols() != n) throw SpecError("permanent: matrix must be square");
  if (n == 0) return {1.0, 0.0};
  // Ryser: perm(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_a sum_{b in S} A_{ab}.
  // Gray-code order updates the row sums by one column per step; Neumaier
  // compensation keeps the alternating accumulation stable.
  std::vector<std::complex<double>> rowsum(n, {0.0, 0.0});
  std::complex<double> total(0.0, 0.0), comp(0.0, 0.0);
  unsigned prev_gray = 0;
  for (unsigned s = 1; s < (1u << n); ++s) {
    const unsigned gray = s ^ (s >> 1);
    const unsigned changed = gray ^ prev_gray;
    const int col = std::countr_zero(changed);
    const double dir = (gray & changed) ? 1.0 : -1.0;
    for (int a = 0; a < n; ++a) rowsum[a] += dir * A(a, col);
    prev_gray = gray;
    std::complex<double> prod(1.0, 0.0);
    for (int a = 0; a < n; ++a) prod *= rowsum[a];
    const double sign = (std::popcount(gray) % 2 == n % 2) ? 1.0 : -1.0;
    const std::complex<double> term = sign * prod;
    const std::complex<double> t = total + term;
    // Neumaier: pick the larger-magnitude operand to recover the round-off.
    if (std::abs(total) >= std::abs(term))
      comp += (total - t) + term;
    else
      comp += (term - t) + total;
    total = t;
  }
  return total + comp;
}

namespace {
// Amplitude of an occupation configuration in the product state
// prod_k b^dag_k |0>:  perm(exp(2*pi*i*J_a*k_b/L)) / (L^{N/2} prod_j sqrt(n_j!)),
// J = site list with multiplicity.
std::complex<double> config_amplitude(const BosonState& st, const Config& cfg) {
  const int N = st.particles();
  std::vector<int> J;
  J.reserve(N);
  for (std::size_t j = 0; j < cfg.size(); ++j)
    for (int c = 0; c < cfg[j]; ++c) J.push_back(static_cast<int>(j));
  Eigen::MatrixXcd A(N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const int r = static_cast<int>(
          (static_cast<long long>(J[a]) * st.K.K[b]) % st.L);
      const double angle = kTwoPi * r / st.L;
      A(a, b) = std::complex<double>(std::cos(angle), std::sin(angle));
    }
  double denom = std::pow(static_cast<double>(st.L), N / 2.0);
  for (int nj : cfg) denom *= std::sqrt(factorial(nj));
  return permanent(A) / denom;
}
}  // namespace

std::vector<double> SectorRDM::spectrum() const {
  std::vector<double> out;
  for (const Eigen::MatrixXcd& b : blocks) {
    if (b.rows() == 0) continue;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(b, Eigen::EigenvaluesOnly);
    out.insert(out.end(), es.eigenvalues().data(),
               es.eigenvalues().data() + b.rows());
  }
  return out;
}

SectorRDM boson_sector_rdm(const BosonState& state, int L_A, int max_N,
                           long long max_configs) {
  const int L = state.L;
  const int N = state.particles();
  if (L_A < 0 || L_A > L) throw SpecError("boson_sector_rdm: L_A must lie in [0, L]");
  if (N > max_N)
    throw CapError("boson_sector_rdm: N = " + std::to_string(N) +
                   " exceeds cap " + std::to_string(max_N));
  const long long total_cfg = binomial(L + N - 1, N);
  if (total_cfg > max_configs)
    throw CapError("boson_sector_rdm: " + std::to_string(total_cfg) +
                   " configurations exceed the memory budget of " +
                   std::to_string(max_configs));

  SectorRDM rdm;
  rdm.N = N;
  rdm.blocks.resize(N + 1);
  rdm.block_traces.assign(N + 1, 0.0);
  const int L_B = L - L_A;
  for (int m = 0; m <= N; ++m) {
    const std::vector<Config> acfgs = configs(L_A, m);
    const std::vector<Config> bcfgs = configs(L_B, N - m);
    if (acfgs.empty() || bcfgs.empty()) {
      rdm.blocks[m].resize(0, 0);
      continue;
    }
    Eigen::MatrixXcd Psi(acfgs.size(), bcfgs.size());
    Config full(L);
    for (std::size_t ia = 0; ia < acfgs.size(); ++ia) {
      for (std::size_t ib = 0; ib < bcfgs.size(); ++ib) {
        std::copy(acfgs[ia].begin(), acfgs[ia].end(), full.begin());
        std::copy(bcfgs[ib].begin(), bcfgs[ib].end(), full.begin() + L_A);
        Psi(ia, ib) = config_amplitude(state, full);
      }
    }
    // Contract the complement: block = Psi Psi^dag on the A side (or we keep
    // the Gram on the smaller side — same nonzero spectrum, same trace).
    if (acfgs.size() <= bcfgs.size())
      rdm.blocks[m] = Psi * Psi.adjoint();
    else
      rdm.blocks[m] = (Psi.adjoint() * Psi).eval();
    rdm.block_traces[m] = rdm.blocks[m].trace().real();
  }
  double total = 0.0;
  for (double t : rdm.block_traces) total += t;
  if (std::abs(total - 1.0) > 1e-8)
    throw NumericalError("boson_sector_rdm: reduced state trace " +
                         std::to_string(total) + " deviates from 1");
  return rdm;
}

EntropyResult boson_sector_entropy(const BosonState& state, int L_A, double n,
                                   int max_N, long long max_configs) {
  EntropyResult res;
  res.n = n;
  res.L = state.L;
  res.L_A = L_A;
  res.method = Method::boson_sector;
  if (L_A == 0 || L_A == state.L) return res;
  const SectorRDM rdm = boson_sector_rdm(state, L_A, max_N, max_configs);
  res.value = entropy_from_spectrum(rdm.spectrum(), n);
  res.diagnostics["sector_count"] = static_cast<double>(rdm.blocks.size());
  return res;
}

EntropyResult brute_force_boson_entropy(const BosonState& state, int L_A,
                                        double n, int max_L, int max_N) {
  const int L = state.L;
  const int N = state.particles();
  if (L > max_L || N > max_N)
    throw CapError("brute_force_boson_entropy: caps are L <= " +
                   std::to_string(max_L) + ", N <= " + std::to_string(max_N));
  if (L_A < 0 || L_A > L)
    throw SpecError("brute_force_boson_entropy: L_A must lie in [0, L]");
  EntropyResult res;
  res.n = n;
  res.L = L;
  res.L_A = L_A;
  res.method = Method::fock_oracle;
  if (L_A == 0 || L_A == L) return res;

  // Sequential operator application over the occupation basis:
  // b^dag_k -> amp(cfg + e_j) += amp(cfg) * exp(2 pi i j k / L) sqrt(n_j+1) / sqrt(L).
  std::map<Config, std::complex<double>> amp;
  amp[Config(L, 0)] = 1.0;
  const double inv_sqrt_L = 1.0 / std::sqrt(static_cast<double>(L));
  for (int k : state.K.K) {
    std::map<Config, std::complex<double>> next;
    for (const auto& [cfg, a] : amp) {
      for (int j = 0; j < L; ++j) {
        Config c2 = cfg;
        c2[j] += 1;
        const double angle = kTwoPi * ((static_cast<long long>(j) * k) % L) / L;
        next[c2] += a * std::complex<double>(std::cos(angle), std::sin(angle)) *
                    std::sqrt(static_cast<double>(cfg[j] + 1)) * inv_sqrt_L;
      }
    }
    amp.swap(next);
  }

  // Monolithic reduced density matrix over all subsystem configurations of
  // 0..N particles, built by explicit index summation.
  std::map<Config, int> a_index;
  int dim_A = 0;
  for (int m = 0; m <= N; ++m)
    for (const Config& c : configs(L_A, m)) a_index[c] = dim_A++;
  std::map<Config, int> b_index;
  int dim_B = 0;
  for (int m = 0; m <= N; ++m)
    for (const Config& c : configs(L - L_A, m)) b_index[c] = dim_B++;

  Eigen::MatrixXcd Psi = Eigen::MatrixXcd::Zero(dim_A, dim_B);
  for (const auto& [cfg, a] : amp) {
    const Config ca(cfg.begin(), cfg.begin() + L_A);
    const Config cb(cfg.begin() + L_A, cfg.end());
    Psi(a_index.at(ca), b_index.at(cb)) = a;
  }
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_A, dim_A);
  for (int i = 0; i < dim_A; ++i)
    for (int j = 0; j < dim_A; ++j)
      for (int b = 0; b < dim_B; ++b) rho(i, j) += Psi(i, b) * std::conj(Psi(j, b));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  res.value = entropy_from_spectrum(
      std::vector<double>(es.eigenvalues().data(),
                          es.eigenvalues().data() + dim_A),
      n);
  return res;
}

double naive_prediction(const UnitPattern& pattern, double n, const Rational& x) {
  const CellCoordinates cc = cell_coords(pattern.l, x);
  const ModeSet kappa(pattern.l, pattern.kappa);
  const BosonState cell(pattern.l, kappa);
  const double s_hi =
      boson_sector_entropy(cell, cc.alpha + 1, n).value;
  const double s_lo =
      cc.alpha > 0 ? boson_sector_entropy(cell, cc.alpha, n).value : 0.0;
  return cc.y * s_hi + (1.0 - cc.y) * s_lo;
}

PatternExtrapolation per_pattern_s_boson(const UnitPattern& pattern, double n,
                                         const Rational& x,
                                         const std::vector<int>& p_list,
                                         int max_N, long long max_configs) {
  if (p_list.empty()) throw SpecError("per_pattern_s_boson: empty p grid");
  PatternExtrapolation rec;
  rec.complete = true;
  for (int p : p_list) {
    if (p < 1) throw SpecError("per_pattern_s_boson: p must be >= 1");
    const int L = p * pattern.l;
    const Rational LA_exact(x.num() * L, x.den());
    if (!LA_exact.is_integer())
      throw SpecError("per_pattern_s_boson: x*p*l = " + LA_exact.str() +
                      " is not an integer subsystem size at p = " +
                      std::to_string(p));
    const int L_A = static_cast<int>(LA_exact.num());
    OccupancySpec spec{L, {Block{pattern, p, 0}}};
    const BosonState state(L, expand(spec));
    try {
      const double S =
          boson_sector_entropy(state, L_A, n, max_N, max_configs).value;
      rec.p.push_back(p);
      rec.s_over_p.push_back(S / p);
    } catch (const CapError&) {
      rec.complete = false;
    }
  }
  if (rec.p.empty())
    throw CapError("per_pattern_s_boson: every requested p exceeds the caps");
  rec.raw_last = rec.s_over_p.back();
  // Least-squares fit s(p) = c0 + c1/p; the intercept is the estimate.
  const std::size_t npts = rec.p.size();
  if (npts == 1) {
    rec.extrapolated = rec.raw_last;
  } else {
    double su = 0, sv = 0, suu = 0, suv = 0;
    for (std::size_t i = 0; i < npts; ++i) {
      const double u = 1.0 / rec.p[i];
      su += u;
      sv += rec.s_over_p[i];
      suu += u * u;
      suv += u * rec.s_over_p[i];
    }
    const double det = npts * suu - su * su;
    rec.extrapolated = (suu * sv - su * suv) / det;
  }
  rec.monotone = true;
  for (std::size_t i = 2; i < npts; ++i) {
    const double d1 = rec.s_over_p[i - 1] - rec.s_over_p[i - 2];
    const double d2 = rec.s_over_p[i] - rec.s_over_p[i - 1];
    if (d1 * d2 < 0.0) rec.monotone = false;
  }
  return rec;
}

}  // namespace quasifrag
