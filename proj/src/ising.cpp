#include "quasifrag/ising.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace quasifrag {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}  // namespace

IsingModel::IsingModel(int L_, double h_) : L(L_), h(h_) {
  if (L < 2 || L % 2 != 0)
    throw SpecError("IsingModel: L must be even and >= 2, got " + std::to_string(L));
  if (h < 0.0) throw SpecError("IsingModel: h must be >= 0");
}

IsingExcitation::IsingExcitation(Sector sector_, std::vector<int> occupied_, int L)
    : sector(sector_), occupied(std::move(occupied_)) {
  for (std::size_t i = 0; i < occupied.size(); ++i) {
    if (occupied[i] < 0 || occupied[i] >= L)
      throw SpecError("IsingExcitation: slot " + std::to_string(occupied[i]) +
                      " outside [0, " + std::to_string(L) + ")");
    if (i > 0 && occupied[i] <= occupied[i - 1])
      throw SpecError("IsingExcitation: slots must be strictly increasing");
  }
  const bool even_count = occupied.size() % 2 == 0;
  if (sector == Sector::NS && !even_count)
    throw SpecError("IsingExcitation: even sector requires an even excitation count");
  if (sector == Sector::R && even_count)
    throw SpecError("IsingExcitation: odd sector requires an odd excitation count");
}

std::vector<double> momentum_grid(const IsingModel& model, Sector sector) {
  std::vector<double> qs(model.L);
  for (int m = 0; m < model.L; ++m)
    qs[m] = sector == Sector::NS ? kTwoPi * (m + 0.5) / model.L
                                 : kTwoPi * m / model.L;
  return qs;
}

double dispersion(double h, double q) {
  return std::sqrt(1.0 + h * h - 2.0 * h * std::cos(q));
}

double excitation_energy(const IsingModel& model, const IsingExcitation& exc) {
  const std::vector<double> qs = momentum_grid(model, exc.sector);
  const int L = model.L;
  const double h = model.h;
  if (exc.sector == Sector::NS) {
    double E = 0.0;
    for (double q : qs) E -= 0.5 * dispersion(h, q);
    for (int m : exc.occupied) E += dispersion(h, qs[m]);
    return E;
  }
  // Odd sector: the q=0 and q=pi modes are unpaired; their occupation
  // energies are h-1 and h+1 around a vacuum of filled negative modes.
  double E = -h;
  for (int m = 1; m < L; ++m)
    if (2 * m != L && qs[m] < kPi) E -= dispersion(h, qs[m]);
  for (int m : exc.occupied) {
    if (m == 0)
      E += h - 1.0;
    else if (2 * m == L)
      E += h + 1.0;
    else
      E += dispersion(h, qs[m]);
  }
  return E;
}

double total_momentum(const IsingModel& model, const IsingExcitation& exc) {
  const std::vector<double> qs = momentum_grid(model, exc.sector);
  double P = 0.0;
  for (int m : exc.occupied) P += qs[m];
  return std::fmod(P, kTwoPi);
}

EntropyResult ising_correlation_entropy(const IsingModel& model,
                                        const IsingExcitation& exc, int L_A,
                                        double n) {
  const int L = model.L;
  const double h = model.h;
  if (L_A < 0 || L_A > L)
    throw SpecError("ising_correlation_entropy: L_A must lie in [0, L]");
  EntropyResult res;
  res.n = n;
  res.L = L;
  res.L_A = L_A;
  res.method = Method::correlation;
  if (L_A == 0 || L_A == L) return res;

  const std::vector<double> qs = momentum_grid(model, exc.sector);
  std::vector<int> nocc(L, 0);
  for (int m : exc.occupied) nocc[m] = 1;

  // Mode occupations of the Bogoliubov-diagonal fermions, folded back to the
  // lattice fermions: N_q = u^2 n_q + v^2 (1 - n_{-q}); anomalous part
  // P_q = -i sin(q) (1 - n_q - n_{-q}) / (2 eps_q). Unpaired modes (q = 0,
  // pi in the odd sector) keep their occupation directly.
  std::vector<double> N(L);
  std::vector<std::complex<double>> P(L);
  for (int m = 0; m < L; ++m) {
    const double q = qs[m];
    const double A = h - std::cos(q);
    const double B = std::sin(q);
    const double e = std::sqrt(A * A + B * B);
    // Partner slot with q_mbar = -q (mod 2*pi).
    const int mbar = exc.sector == Sector::NS ? L - 1 - m : (L - m) % L;
    if (std::abs(B) < 1e-12) {
      N[m] = nocc[m];
      P[m] = 0.0;
    } else {
      const double u2 = 0.5 * (1.0 + A / e);
      const double v2 = 1.0 - u2;
      N[m] = u2 * nocc[m] + v2 * (1 - nocc[mbar]);
      P[m] = std::complex<double>(0.0, -1.0) * B *
             (1.0 - nocc[m] - nocc[mbar]) / (2.0 * e);
    }
  }

  Eigen::MatrixXcd F(L_A, L_A), G(L_A, L_A);
  for (int j = 0; j < L_A; ++j) {
    for (int k = 0; k < L_A; ++k) {
      std::complex<double> f(0.0, 0.0), g(0.0, 0.0);
      for (int m = 0; m < L; ++m) {
        const double q = qs[m];
        f += std::polar(N[m], q * (k - j));
        g += P[m] * std::polar(1.0, q * (j - k));
      }
      F(j, k) = f / static_cast<double>(L);
      G(j, k) = g / static_cast<double>(L);
    }
  }

  // Hermitian form i*Gamma of the Majorana correlation matrix; its
  // eigenvalues come in pairs +-nu with nu in [-1, 1].
  Eigen::MatrixXcd Gam(2 * L_A, 2 * L_A);
  const std::complex<double> I(0.0, 1.0);
  for (int j = 0; j < L_A; ++j) {
    for (int k = 0; k < L_A; ++k) {
      const double d = j == k ? 1.0 : 0.0;
      const double imF = F(j, k).imag(), reF = F(j, k).real();
      const double imG = G(j, k).imag(), reG = G(j, k).real();
      Gam(2 * j, 2 * k) = 2.0 * I * imF + 2.0 * I * imG;
      Gam(2 * j + 1, 2 * k + 1) = 2.0 * I * imF - 2.0 * I * imG;
      Gam(2 * j, 2 * k + 1) = -I * (2.0 * reG + 2.0 * reF - d);
      Gam(2 * j + 1, 2 * k) = -I * (2.0 * reG - 2.0 * reF + d);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(Gam, Eigen::EigenvaluesOnly);
  double value = 0.0;
  int clips = 0;
  for (int i = 0; i < 2 * L_A; ++i) {
    double nu = es.eigenvalues()(i);
    if (nu < -1.0 || nu > 1.0) {
      if (nu < -1.0 - 1e-8 || nu > 1.0 + 1e-8)
        throw NumericalError("ising_correlation_entropy: Majorana eigenvalue " +
                             std::to_string(nu) + " outside [-1, 1]");
      nu = std::clamp(nu, -1.0, 1.0);
      ++clips;
    }
    value += 0.5 * binary_entropy(0.5 * (1.0 + nu), n);
  }
  res.value = value < 0.0 ? 0.0 : value;
  res.diagnostics["clip_count"] = clips;
  return res;
}

IsingED::IsingED(const IsingModel& model, int max_L) : model_(model) {
  if (model.L > max_L)
    throw CapError("IsingED: L = " + std::to_string(model.L) + " exceeds cap " +
                   std::to_string(max_L) + " (dense dimension 2^L = " +
                   std::to_string(1LL << model.L) + ")");
  const int L = model.L;
  const std::size_t dim = std::size_t{1} << L;
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t s = 0; s < dim; ++s) {
    int zsum = 0;
    for (int j = 0; j < L; ++j) zsum += (s >> j & 1) ? -1 : 1;
    H(s, s) += -0.5 * model.h * zsum;
    for (int j = 0; j < L; ++j) {
      const int j2 = (j + 1) % L;
      const std::size_t s2 = s ^ (std::size_t{1} << j) ^ (std::size_t{1} << j2);
      H(s2, s) += -0.5;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
  evals_ = es.eigenvalues();
  evecs_ = es.eigenvectors();
}

Eigen::VectorXcd IsingED::select_state(const IsingExcitation& exc) const {
  const int L = model_.L;
  const std::size_t dim = std::size_t{1} << L;
  const double E_target = excitation_energy(model_, exc);

  std::vector<Eigen::Index> window;
  for (Eigen::Index i = 0; i < evals_.size(); ++i)
    if (std::abs(evals_(i) - E_target) < 1e-8) window.push_back(i);
  if (window.empty())
    throw AmbiguityError("ed_oracle: no eigenstate within 1e-8 of E = " +
                         std::to_string(E_target));

  // Split the energy window by fermion parity (diagonal (-1)^{#down spins});
  // exact cross-sector degeneracies would otherwise let the eigensolver mix.
  Eigen::MatrixXd V(dim, window.size());
  for (std::size_t c = 0; c < window.size(); ++c) V.col(c) = evecs_.col(window[c]);
  Eigen::VectorXd par(dim);
  for (std::size_t s = 0; s < dim; ++s)
    par(s) = (std::popcount(s) & 1) ? -1.0 : 1.0;
  Eigen::MatrixXd WP = V.transpose() * par.asDiagonal() * V;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esp(WP);
  const double target_par = exc.sector == Sector::NS ? 1.0 : -1.0;
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < esp.eigenvalues().size(); ++i)
    if (std::abs(esp.eigenvalues()(i) - target_par) < 1e-6) keep.push_back(i);
  if (keep.empty())
    throw AmbiguityError("ed_oracle: no candidate in the requested parity sector");
  Eigen::MatrixXd Vp(dim, keep.size());
  for (std::size_t c = 0; c < keep.size(); ++c)
    Vp.col(c) = V * esp.eigenvectors().col(keep[c]);

  // Resolve remaining degeneracy with the translation operator; the target
  // eigenvalue is exp(+-i P_tot) (conjugate partners carry equal entropy).
  const double P_tot = total_momentum(model_, exc);
  Eigen::MatrixXd WT(Vp.cols(), Vp.cols());
  {
    Eigen::MatrixXd TVp(dim, Vp.cols());
    const std::size_t mask = dim - 1;
    for (std::size_t s = 0; s < dim; ++s) {
      const std::size_t s2 = ((s << 1) | (s >> (L - 1))) & mask;
      TVp.row(s2) = Vp.row(s);
    }
    WT = Vp.transpose() * TVp;
  }
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> est(WT.cast<std::complex<double>>());
  const std::complex<double> phase_pos = std::polar(1.0, P_tot);
  const std::complex<double> phase_neg = std::polar(1.0, -P_tot);
  const bool self_conjugate = std::abs(phase_pos - phase_neg) < 1e-9;
  std::vector<Eigen::Index> cands;
  for (Eigen::Index i = 0; i < est.eigenvalues().size(); ++i) {
    const std::complex<double> lam = est.eigenvalues()(i);
    if (std::abs(lam - phase_pos) < 1e-6 || std::abs(lam - phase_neg) < 1e-6)
      cands.push_back(i);
  }
  const std::size_t expected = self_conjugate ? 1 : 2;
  if (cands.empty())
    throw AmbiguityError("ed_oracle: no translation eigenvalue matches exp(+-i P)");
  if (cands.size() > expected) {
    std::ostringstream os;
    os << "ed_oracle: eigenstate selection ambiguous (E = " << E_target
       << ", P = " << P_tot << "); translation candidates:";
    for (Eigen::Index i : cands) os << " " << est.eigenvalues()(i);
    throw AmbiguityError(os.str());
  }
  // Deterministic pick between the conjugate partners: positive imaginary part.
  Eigen::Index pick = cands[0];
  for (Eigen::Index i : cands)
    if (est.eigenvalues()(i).imag() > est.eigenvalues()(pick).imag()) pick = i;

  Eigen::VectorXcd psi = Vp.cast<std::complex<double>>() * est.eigenvectors().col(pick);
  psi /= psi.norm();
  return psi;
}

std::vector<double> IsingED::spectrum(const IsingExcitation& exc, int L_A) const {
  const int L = model_.L;
  if (L_A < 0 || L_A > L) throw SpecError("ed_oracle: L_A must lie in [0, L]");
  const Eigen::VectorXcd psi = select_state(exc);
  const int La = std::min(L_A, L - L_A);
  const bool keep_low = (L_A <= L - L_A);
  const std::size_t dimA = std::size_t{1} << La;
  const std::size_t dimB = std::size_t{1} << (L - La);
  Eigen::MatrixXcd M(dimA, dimB);
  const std::size_t dim = std::size_t{1} << L;
  for (std::size_t s = 0; s < dim; ++s) {
    const std::size_t low = s & ((std::size_t{1} << L_A) - 1);
    const std::size_t high = s >> L_A;
    if (keep_low)
      M(static_cast<Eigen::Index>(low), static_cast<Eigen::Index>(high)) = psi(s);
    else
      M(static_cast<Eigen::Index>(high), static_cast<Eigen::Index>(low)) = psi(s);
  }
  Eigen::MatrixXcd rho = M * M.adjoint();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho, Eigen::EigenvaluesOnly);
  return std::vector<double>(es.eigenvalues().data(),
                             es.eigenvalues().data() + dimA);
}

EntropyResult IsingED::entropy(const IsingExcitation& exc, int L_A, double n) const {
  EntropyResult res;
  res.n = n;
  res.L = model_.L;
  res.L_A = L_A;
  res.method = Method::ed_oracle;
  res.value = entropy_from_spectrum(spectrum(exc, L_A), n);
  return res;
}

EntropyResult ed_oracle_entropy(const IsingModel& model,
                                const IsingExcitation& exc, int L_A, double n,
                                int max_L) {
  return IsingED(model, max_L).entropy(exc, L_A, n);
}

IsingExcitation pattern_excitation(const IsingModel& model,
                                   const OccupancySpec& spec) {
  if (spec.L != model.L)
    throw SpecError("pattern_excitation: spec chain length differs from model");
  const ModeSet K = expand(spec);
  if (K.size() % 2 != 0)
    throw SpecError(
        "pattern_excitation: odd excitation count has no even-sector state; "
        "drop or add one cell");
  return IsingExcitation(Sector::NS, K.K, model.L);
}

bool ed_resolvable(const IsingModel& model, const IsingExcitation& exc) {
  const int L = model.L;
  if (L > 20)
    throw CapError("ed_resolvable: exhaustive subset scan is 2^L; L = " +
                   std::to_string(L) + " exceeds 20");
  const std::vector<double> qs = momentum_grid(model, exc.sector);
  // Per-slot energy increments; the sector vacuum offset is common to every
  // subset and drops out of the comparisons.
  std::vector<double> w(L);
  for (int m = 0; m < L; ++m) {
    if (exc.sector == Sector::R && m == 0)
      w[m] = model.h - 1.0;
    else if (exc.sector == Sector::R && 2 * m == L)
      w[m] = model.h + 1.0;
    else
      w[m] = dispersion(model.h, qs[m]);
  }
  double E_t = 0.0, P_t = 0.0;
  for (int m : exc.occupied) {
    E_t += w[m];
    P_t += qs[m];
  }
  const std::complex<double> ph_pos = std::polar(1.0, P_t);
  const std::complex<double> ph_neg = std::polar(1.0, -P_t);
  const bool self_conjugate = std::abs(ph_pos - ph_neg) < 1e-9;
  const int want_parity = static_cast<int>(exc.occupied.size() % 2);

  std::size_t hits = 0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << L); ++mask) {
    if ((std::popcount(mask) & 1) != want_parity) continue;
    double E = 0.0, P = 0.0;
    for (int m = 0; m < L; ++m)
      if (mask >> m & 1) {
        E += w[m];
        P += qs[m];
      }
    if (std::abs(E - E_t) > 1e-6) continue;
    const std::complex<double> lam = std::polar(1.0, P);
    if (std::abs(lam - ph_pos) < 1e-6 || std::abs(lam - ph_neg) < 1e-6) ++hits;
  }
  // The state itself always hits; away from 0/pi its reversed partner -K is a
  // distinct set with the conjugate phase and identical energy.
  return hits == (self_conjugate ? 1u : 2u);
}

std::vector<std::pair<std::string, IsingExcitation>> standard_catalog(
    const IsingModel& model) {
  const int L = model.L;
  std::vector<std::pair<std::string, IsingExcitation>> cat;
  cat.emplace_back("ground", IsingExcitation(Sector::NS, {}, L));

  // Beyond the exhaustive-scan range nothing diagonalizes the chain anyway;
  // accept candidates unchecked there.
  const bool verify = L <= 16;
  const auto ok = [&](const IsingExcitation& exc) {
    return !verify || ed_resolvable(model, exc);
  };

  // Alternating pattern (cell length 2, first slot excited), count kept even.
  // Dense fillings can hide exact multiplets: reflecting q -> -q on a subset
  // of modes whose momenta sum to 0 or pi costs nothing, so prefer the
  // largest p whose state the dense oracle can still single out, shifting
  // the offset before shrinking.
  for (int p = L / 2 - (L / 2) % 2; p >= 2; p -= 2) {
    bool placed = false;
    for (int o = 0; o <= 1 && !placed; ++o) {
      if (o + 2 * (p - 1) >= L) continue;
      std::vector<int> occ;
      for (int a = 0; a < p; ++a) occ.push_back(o + 2 * a);
      IsingExcitation exc(Sector::NS, std::move(occ), L);
      if (ok(exc)) {
        cat.emplace_back(
            p == L / 2 ? "alt_full" : "alt_p" + std::to_string(p),
            std::move(exc));
        placed = true;
      }
    }
    if (placed) break;
  }

  for (int o = 0; o + 1 < L; ++o) {
    IsingExcitation exc(Sector::NS, {o, o + 1}, L);
    if (ok(exc)) {
      cat.emplace_back("pair_adjacent", std::move(exc));
      break;
    }
  }

  // Two cells of a (l, {0,1}) pattern.
  {
    bool placed = false;
    for (int l : {5, 3, 4, 6, 2}) {
      if (2 * l > L) continue;
      for (int o = 0; o <= 2 && !placed; ++o) {
        if (o + l + 1 >= L) continue;
        IsingExcitation exc(Sector::NS, {o, o + 1, o + l, o + l + 1}, L);
        if (ok(exc)) {
          cat.emplace_back("two_cells_l" + std::to_string(l), std::move(exc));
          placed = true;
        }
      }
      if (placed) break;
    }
  }
  return cat;
}

}  // namespace quasifrag
