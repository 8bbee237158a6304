#include "quasifrag/harmonic.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace quasifrag {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

HarmonicModel::HarmonicModel(int L_, double m_) : L(L_), m(m_) {
  if (L < 1) throw SpecError("HarmonicModel: L must be >= 1");
  if (!(m > 0.0)) throw SpecError("HarmonicModel: mass must be > 0");
}

double HarmonicModel::omega(int k) const {
  const double s = std::sin(std::numbers::pi * k / L);
  return std::sqrt(m * m + 4.0 * s * s);
}

Eigen::MatrixXd HarmonicModel::frequency_kernel() const {
  Eigen::MatrixXd W(L, L);
  for (int j = 0; j < L; ++j)
    for (int k = 0; k < L; ++k) {
      double acc = 0.0;
      for (int q = 0; q < L; ++q)
        acc += omega(q) * std::cos(kTwoPi * q * (j - k) / L);
      W(j, k) = acc / L;
    }
  return W;
}

std::complex<double> hafnian_enumerate(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  if (n % 2 != 0) throw SpecError("hafnian: dimension must be even");
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  // haf(A) = sum_j A_{0j} haf(A with rows/cols {0, j} removed).
  auto rec = [&A](auto&& self, std::vector<int> rem) -> std::complex<double> {
    if (rem.empty()) return {1.0, 0.0};
    const int i = rem[0];
    std::complex<double> tot(0.0, 0.0);
    for (std::size_t jj = 1; jj < rem.size(); ++jj) {
      std::vector<int> sub;
      sub.reserve(rem.size() - 2);
      for (std::size_t t = 1; t < rem.size(); ++t)
        if (t != jj) sub.push_back(rem[t]);
      tot += A(i, rem[jj]) * self(self, std::move(sub));
    }
    return tot;
  };
  return rec(rec, idx);
}

std::complex<double> hafnian(const Eigen::MatrixXcd& A) {
  const int n = static_cast<int>(A.rows());
  if (n % 2 != 0) throw SpecError("hafnian: dimension must be even");
  const int m = n / 2;
  if (m == 0) return {1.0, 0.0};
  // Inclusion-exclusion over index pairs (2i, 2i+1):
  // haf(A) = sum_Z (-1)^{m-|Z|} [eta^m] exp( sum_j tr((A_Z X)^j) eta^j / (2j) ).
  std::complex<double> total(0.0, 0.0);
  std::vector<int> idx;
  std::vector<std::complex<double>> f(m + 1), g(m + 1);
  for (unsigned mask = 1; mask < (1u << m); ++mask) {
    idx.clear();
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) {
        idx.push_back(2 * i);
        idx.push_back(2 * i + 1);
      }
    const int s = static_cast<int>(idx.size()) / 2;
    // B = A_Z X with X swapping the two columns of each kept pair.
    Eigen::MatrixXcd B(2 * s, 2 * s);
    for (int r = 0; r < 2 * s; ++r)
      for (int c = 0; c < s; ++c) {
        B(r, 2 * c) = A(idx[r], idx[2 * c + 1]);
        B(r, 2 * c + 1) = A(idx[r], idx[2 * c]);
      }
    Eigen::MatrixXcd P = Eigen::MatrixXcd::Identity(2 * s, 2 * s);
    for (int j = 1; j <= m; ++j) {
      P = (P * B).eval();
      f[j] = P.trace() / (2.0 * j);
    }
    // Coefficients of exp(sum f_j eta^j): k g_k = sum_{j<=k} j f_j g_{k-j}.
    g[0] = 1.0;
    for (int k = 1; k <= m; ++k) {
      std::complex<double> acc(0.0, 0.0);
      for (int j = 1; j <= k; ++j) acc += static_cast<double>(j) * f[j] * g[k - j];
      g[k] = acc / static_cast<double>(k);
    }
    total += ((m - s) % 2 == 0 ? 1.0 : -1.0) * g[m];
  }
  return total;
}

EntropyResult harmonic_ground_renyi2(const HarmonicModel& model, int L_A) {
  const int L = model.L;
  if (L_A < 0 || L_A > L)
    throw SpecError("harmonic_ground_renyi2: L_A must lie in [0, L]");
  EntropyResult res;
  res.n = 2.0;
  res.L = L;
  res.L_A = L_A;
  res.method = Method::gaussian_wick;
  if (L_A == 0 || L_A == L) return res;

  Eigen::MatrixXd X(L_A, L_A), P(L_A, L_A);
  for (int j = 0; j < L_A; ++j)
    for (int k = 0; k < L_A; ++k) {
      double x = 0.0, p = 0.0;
      for (int q = 0; q < L; ++q) {
        const double c = std::cos(kTwoPi * q * (j - k) / L);
        x += c / (2.0 * model.omega(q));
        p += c * model.omega(q) / 2.0;
      }
      X(j, k) = x / L;
      P(j, k) = p / L;
    }
  // Symplectic eigenvalues nu_i = sqrt(eig(X P)) via the Cholesky similarity
  // X = T T^t, M = T^t P T (symmetric PD, same spectrum as X P).
  Eigen::LLT<Eigen::MatrixXd> llt(X);
  if (llt.info() != Eigen::Success)
    throw NumericalError("harmonic_ground_renyi2: reduced covariance not PD");
  const Eigen::MatrixXd T = llt.matrixL();
  const Eigen::MatrixXd M = T.transpose() * P * T;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M, Eigen::EigenvaluesOnly);
  double s2 = 0.0;
  for (int i = 0; i < L_A; ++i) {
    const double nu2 = std::max(es.eigenvalues()(i), 0.25);
    s2 += std::log(2.0 * std::sqrt(nu2));
  }
  res.value = s2 < 0.0 ? 0.0 : s2;
  return res;
}

namespace {
// Scatter map of one wavefunction factor's site coordinates into the
// two-replica coordinate vector v = (A1, B1, A2, B2). Factors pair the
// replicas' half-chains as (A1,B1), (A2,B1), (A2,B2), (A1,B2): the glued
// cyclic order that realizes tr rho_A^2.
std::vector<int> factor_site_map(int group, int L, int L_A) {
  const int L_B = L - L_A;
  const int A1 = 0, B1 = L_A, A2 = L_A + L_B, B2 = 2 * L_A + L_B;
  int a_base = 0, b_base = 0;
  switch (group) {
    case 1: a_base = A1; b_base = B1; break;
    case 2: a_base = A2; b_base = B1; break;
    case 3: a_base = A2; b_base = B2; break;
    case 4: a_base = A1; b_base = B2; break;
    default: throw SpecError("factor_site_map: group must be 1..4");
  }
  std::vector<int> map(L);
  for (int s = 0; s < L_A; ++s) map[s] = a_base + s;
  for (int s = 0; s < L_B; ++s) map[L_A + s] = b_base + s;
  return map;
}
}  // namespace

EntropyResult harmonic_excited_renyi2(const HarmonicModel& model,
                                      const ModeSet& K, int L_A, int max_K) {
  const int L = model.L;
  if (K.L != L) throw SpecError("harmonic_excited_renyi2: ModeSet built for different L");
  if (K.size() > max_K)
    throw CapError("harmonic_excited_renyi2: |K| = " + std::to_string(K.size()) +
                   " exceeds cap " + std::to_string(max_K) +
                   " (hafnian dimension " + std::to_string(4 * K.size()) + ")");
  if (L_A < 0 || L_A > L)
    throw SpecError("harmonic_excited_renyi2: L_A must lie in [0, L]");

  const EntropyResult ground = harmonic_ground_renyi2(model, L_A);
  if (K.size() == 0) return ground;

  EntropyResult res;
  res.n = 2.0;
  res.L = L;
  res.L_A = L_A;
  res.method = Method::gaussian_wick;
  if (L_A == 0 || L_A == L) {
    res.diagnostics["norm_sq"] = 1.0;
    return res;
  }

  const Eigen::MatrixXd W = model.frequency_kernel();

  // Quadratic form of the glued four-factor integrand over v in R^{2L}.
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(2 * L, 2 * L);
  for (int g = 1; g <= 4; ++g) {
    const std::vector<int> sm = factor_site_map(g, L, L_A);
    for (int s1 = 0; s1 < L; ++s1)
      for (int s2 = 0; s2 < L; ++s2) M(sm[s1], sm[s2]) += W(s1, s2);
  }
  const Eigen::MatrixXd C = M.inverse();

  // One insertion per creation operator per factor. Conjugated factors (the
  // bra sides, groups 2 and 4) carry the reflected momentum.
  struct Insertion { int group; int k; int mk; };
  std::vector<Insertion> ins;
  const std::pair<int, bool> groups[4] = {{1, false}, {2, true}, {3, false}, {4, true}};
  for (const auto& [g, conj] : groups)
    for (int k : K.K) ins.push_back({g, k, conj ? (L - k) % L : k});

  const int nI = static_cast<int>(ins.size());
  std::vector<Eigen::VectorXcd> u(nI);
  for (int i = 0; i < nI; ++i) {
    const std::vector<int> sm = factor_site_map(ins[i].group, L, L_A);
    Eigen::VectorXcd ui = Eigen::VectorXcd::Zero(2 * L);
    const double pref = std::sqrt(2.0 * model.omega(ins[i].k) / L);
    for (int s = 0; s < L; ++s)
      ui(sm[s]) = pref * std::polar(1.0, kTwoPi * s * ins[i].mk / L);
    u[i] = ui;
  }
  const Eigen::MatrixXcd Cc = C.cast<std::complex<double>>();
  Eigen::MatrixXcd B(nI, nI);
  for (int i = 0; i < nI; ++i) {
    const Eigen::VectorXcd Cui = Cc * u[i];
    for (int j = 0; j < nI; ++j) {
      std::complex<double> val = u[j].transpose() * Cui;  // bilinear, no conjugation
      // Same-factor pairs of one raising and one lowering plane wave meet a
      // normal-ordering contact term.
      if (i != j && ins[i].group == ins[j].group &&
          (ins[i].mk + ins[j].mk) % L == 0)
        val -= 1.0;
      B(i, j) = val;
    }
  }
  const std::complex<double> rep = hafnian(B);

  // Squared norm of the excited state: the same Wick sum over the
  // single-copy measure exp(-v^t W v) with just a ket and a bra factor.
  const Eigen::MatrixXd C1 = (2.0 * W).inverse();
  const Eigen::MatrixXcd C1c = C1.cast<std::complex<double>>();
  const int nK = K.size();
  Eigen::MatrixXcd Bn(2 * nK, 2 * nK);
  std::vector<Eigen::VectorXcd> un(2 * nK);
  std::vector<int> mkn(2 * nK);
  std::vector<int> grpn(2 * nK);
  for (int i = 0; i < 2 * nK; ++i) {
    const bool conj = i >= nK;
    const int k = K.K[i % nK];
    mkn[i] = conj ? (L - k) % L : k;
    grpn[i] = conj ? 1 : 0;
    Eigen::VectorXcd ui(L);
    const double pref = std::sqrt(2.0 * model.omega(k) / L);
    for (int s = 0; s < L; ++s)
      ui(s) = pref * std::polar(1.0, kTwoPi * s * mkn[i] / L);
    un[i] = ui;
  }
  for (int i = 0; i < 2 * nK; ++i) {
    const Eigen::VectorXcd Cui = C1c * un[i];
    for (int j = 0; j < 2 * nK; ++j) {
      std::complex<double> val = un[j].transpose() * Cui;
      if (i != j && grpn[i] == grpn[j] && (mkn[i] + mkn[j]) % L == 0) val -= 1.0;
      Bn(i, j) = val;
    }
  }
  const std::complex<double> norm_sq = hafnian(Bn);

  const double tr_rho2_ground = std::exp(-ground.value);
  const double ratio = rep.real() / (norm_sq.real() * norm_sq.real());
  const double tr_rho2 = tr_rho2_ground * ratio;
  if (!(tr_rho2 > 0.0))
    throw NumericalError(
        "harmonic_excited_renyi2: tr rho_A^2 ratio = " + std::to_string(ratio) +
        " not positive (norm^2 = " + std::to_string(norm_sq.real()) + ")");
  res.value = -std::log(tr_rho2);
  if (res.value < 0.0 && res.value > -1e-12) res.value = 0.0;
  res.diagnostics["norm_sq"] = norm_sq.real();
  return res;
}

}  // namespace quasifrag
