#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "quasifrag/ising.hpp"

using namespace quasifrag;

TEST_CASE("model and excitation validation") {
  CHECK_THROWS_AS(IsingModel(7, 1.0), SpecError);
  CHECK_THROWS_AS(IsingModel(0, 1.0), SpecError);
  CHECK_THROWS_AS(IsingModel(8, -0.5), SpecError);

  // Even sector holds even excitation counts, odd sector odd ones.
  CHECK_THROWS_AS(IsingExcitation(Sector::NS, {0}, 8), SpecError);
  CHECK_THROWS_AS(IsingExcitation(Sector::R, {0, 1}, 8), SpecError);
  CHECK_THROWS_AS(IsingExcitation(Sector::NS, {1, 0}, 8), SpecError);
  CHECK_THROWS_AS(IsingExcitation(Sector::NS, {0, 8}, 8), SpecError);
  CHECK_NOTHROW(IsingExcitation(Sector::NS, {0, 1}, 8));
  CHECK_NOTHROW(IsingExcitation(Sector::R, {3}, 8));
}

TEST_CASE("momentum grids and dispersion") {
  const IsingModel model(8, 1.0);
  const std::vector<double> ns = momentum_grid(model, Sector::NS);
  const std::vector<double> r = momentum_grid(model, Sector::R);
  CHECK(ns[0] == doctest::Approx(2 * M_PI * 0.5 / 8).epsilon(1e-15));
  CHECK(r[0] == 0.0);
  CHECK(r[4] == doctest::Approx(M_PI).epsilon(1e-15));
  // At the critical field the dispersion is 2|sin(q/2)|.
  for (double q : ns)
    CHECK(dispersion(1.0, q) ==
          doctest::Approx(2.0 * std::abs(std::sin(q / 2))).epsilon(1e-12));
}

TEST_CASE("closed-form energies match dense diagonalization") {
  for (double h : {0.5, 1.0, 2.0}) {
    const IsingModel model(8, h);
    const IsingED ed(model);
    // The global ground state lives in the even sector.
    CHECK(excitation_energy(model, IsingExcitation(Sector::NS, {}, 8)) ==
          doctest::Approx(ed.ground_energy()).epsilon(1e-10));
  }
}

TEST_CASE("strong transverse field freezes the chain into a product state") {
  const IsingModel model(8, 1000.0);
  const EntropyResult r = ising_correlation_entropy(
      model, IsingExcitation(Sector::NS, {}, 8), 4, 1.0);
  CHECK(r.value < 1e-4);
}

TEST_CASE("frozen half-chain anchors at L = 8") {
  const IsingExcitation ground(Sector::NS, {}, 8);
  CHECK(ising_correlation_entropy(IsingModel(8, 1.0), ground, 4, 1.0).value ==
        doctest::Approx(0.6350956655).epsilon(1e-8));
  CHECK(ising_correlation_entropy(IsingModel(8, 2.0), ground, 4, 1.0).value ==
        doctest::Approx(0.1789071371).epsilon(1e-8));
  const IsingExcitation one(Sector::R, {1}, 8);
  CHECK(ising_correlation_entropy(IsingModel(8, 1.0), one, 4, 2.0).value ==
        doctest::Approx(0.7518753697).epsilon(1e-8));
}

TEST_CASE("correlation method vs dense diagonalization across the catalog") {
  for (double h : {0.5, 1.0, 2.0}) {
    const IsingModel model(8, h);
    const IsingED ed(model);
    for (const auto& [name, exc] : standard_catalog(model)) {
      INFO("state ", name, " at h = ", h);
      for (int L_A = 0; L_A <= 8; ++L_A) {
        const std::vector<double> spec = ed.spectrum(exc, L_A);
        for (double n : {1.0, 2.0}) {
          const double fast =
              ising_correlation_entropy(model, exc, L_A, n).value;
          const double oracle = entropy_from_spectrum(spec, n);
          CHECK(std::abs(fast - oracle) < 1e-7);
        }
      }
    }
  }
}

TEST_CASE("odd-parity sector agrees with dense diagonalization") {
  const IsingModel model(10, 2.0);
  const IsingED ed(model);
  const IsingExcitation exc(Sector::R, {1}, 10);
  for (int L_A : {3, 5}) {
    const std::vector<double> spec = ed.spectrum(exc, L_A);
    for (double n : {1.0, 2.0})
      CHECK(std::abs(ising_correlation_entropy(model, exc, L_A, n).value -
                     entropy_from_spectrum(spec, n)) < 1e-7);
  }
}

TEST_CASE("selection refuses states it cannot disambiguate") {
  // Momentum-conjugate partner at total momentum pi with a different mode
  // content: two translation candidates where one is expected.
  const IsingModel model(8, 1.0);
  const IsingExcitation exc(Sector::NS, {0, 1, 4, 5}, 8);
  CHECK_THROWS_AS(ed_oracle_entropy(model, exc, 4, 1.0), AmbiguityError);
}

TEST_CASE("diagonalization cap") {
  CHECK_THROWS_AS(IsingED(IsingModel(14, 1.0)), CapError);
}

TEST_CASE("entropy is symmetric under subsystem complement") {
  const IsingModel model(8, 1.0);
  const IsingExcitation exc(Sector::NS, {0, 2, 4, 6}, 8);
  for (int L_A = 0; L_A <= 8; ++L_A)
    for (double n : {1.0, 2.0})
      CHECK(ising_correlation_entropy(model, exc, L_A, n).value ==
            doctest::Approx(
                ising_correlation_entropy(model, exc, 8 - L_A, n).value)
                .epsilon(1e-9)
                .scale(1.0));
}

TEST_CASE("pattern specs map onto sorted even-sector slots") {
  const IsingModel model(8, 1.0);
  const OccupancySpec spec{8, {Block{UnitPattern(2, {0}), 4, 0}}};
  const IsingExcitation exc = pattern_excitation(model, spec);
  CHECK(exc.sector == Sector::NS);
  CHECK(exc.occupied == std::vector<int>{0, 2, 4, 6});

  const OccupancySpec odd{8, {Block{UnitPattern(2, {0}), 3, 0}}};
  CHECK_THROWS_AS(pattern_excitation(model, odd), SpecError);
  const OccupancySpec wrong_L{6, {Block{UnitPattern(2, {0}), 2, 0}}};
  CHECK_THROWS_AS(pattern_excitation(model, wrong_L), SpecError);
}

TEST_CASE("the standard catalog stays within selectable momenta") {
  for (int L : {8, 10, 12}) {
    for (double h : {0.5, 1.0, 2.0}) {
      const IsingModel model(L, h);
      const auto cat = standard_catalog(model);
      CHECK(cat.size() == 4);  // ground + three excitation families
      for (const auto& [name, exc] : cat) {
        INFO("state ", name, " at L = ", L, ", h = ", h);
        CHECK(ed_resolvable(model, exc));
        if (exc.occupied.empty()) continue;
        // Away from the self-conjugate momenta 0 and pi, selection is unique.
        const double P = total_momentum(model, exc);
        const double d0 = std::min(P, 2 * M_PI - P);
        const double dpi = std::abs(P - M_PI);
        CHECK(std::min(d0, dpi) > 1e-9);
      }
    }
  }
}

TEST_CASE("resolvability scan rejects reflection multiplets") {
  // {pi/10, 5pi/10, 9pi/10, 13pi/10}: the subset {pi/10, 9pi/10} sums to pi,
  // so reflecting it yields a distinct equal-energy state at every h.
  const IsingModel model(10, 1.0);
  CHECK_FALSE(ed_resolvable(model, IsingExcitation(Sector::NS, {0, 2, 4, 6}, 10)));
  CHECK(ed_resolvable(model, IsingExcitation(Sector::NS, {0, 1}, 10)));
  CHECK(ed_resolvable(model, IsingExcitation(Sector::NS, {}, 10)));
  CHECK(ed_resolvable(IsingModel(10, 2.0), IsingExcitation(Sector::R, {1}, 10)));
  CHECK_THROWS_AS(
      ed_resolvable(IsingModel(22, 1.0), IsingExcitation(Sector::NS, {}, 22)),
      CapError);
}
