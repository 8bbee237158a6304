#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <functional>
#include <string>

#include <nlohmann/json.hpp>

#include "quasifrag/pattern.hpp"

using namespace quasifrag;

namespace {

bool throws_spec_error_containing(const std::function<void()>& f,
                                  const std::string& needle) {
  try {
    f();
  } catch (const SpecError& e) {
    return std::string(e.what()).find(needle) != std::string::npos;
  }
  return false;
}

}  // namespace

TEST_CASE("expand: single pattern block lays kappa into every cell") {
  OccupancySpec spec{8, {Block{UnitPattern(2, {0}), 4, 0}}};
  CHECK(expand(spec).K == std::vector<int>{0, 2, 4, 6});

  OccupancySpec spec2{6, {Block{UnitPattern(3, {0, 1}), 2, 0}}};
  CHECK(expand(spec2).K == std::vector<int>{0, 1, 3, 4});
}

TEST_CASE("expand: blocks at offsets combine into one sorted mode set") {
  OccupancySpec spec{18,
                     {Block{UnitPattern(2, {0}), 4, 0},
                      Block{UnitPattern(3, {0, 1}), 2, 12}}};
  CHECK(expand(spec).K == std::vector<int>{0, 2, 4, 6, 12, 13, 15, 16});

  // Listing the blocks in the other order expands to the same modes.
  OccupancySpec swapped{18, {spec.blocks[1], spec.blocks[0]}};
  CHECK(expand(swapped).K == expand(spec).K);
}

TEST_CASE("expand: colliding blocks are rejected, naming the momentum") {
  OccupancySpec spec{8,
                     {Block{UnitPattern(2, {0}), 3, 0},
                      Block{UnitPattern(2, {0}), 1, 4}}};
  CHECK(throws_spec_error_containing([&] { expand(spec); }, "4"));
  CHECK(throws_spec_error_containing([&] { expand(spec); }, "collide"));
}

TEST_CASE("expand: momenta past the end of the chain are rejected") {
  OccupancySpec spec{6, {Block{UnitPattern(3, {2}), 1, 5}}};
  CHECK(throws_spec_error_containing([&] { expand(spec); }, "outside"));
}

TEST_CASE("UnitPattern validates its excited subset") {
  CHECK_THROWS_AS(UnitPattern(2, {}), SpecError);
  CHECK_THROWS_AS(UnitPattern(2, {0, 1, 1}), SpecError);
  CHECK_THROWS_AS(UnitPattern(2, {2}), SpecError);
  CHECK_THROWS_AS(UnitPattern(2, {-1}), SpecError);
  CHECK_THROWS_AS(UnitPattern(0, {0}), SpecError);
  CHECK_THROWS_AS(UnitPattern(3, {1, 0}), SpecError);
  CHECK(UnitPattern(3, {0, 2}).weight() == 2);
}

TEST_CASE("OccupancySpec::validate covers geometry errors") {
  CHECK_THROWS_AS((OccupancySpec{4, {}}.validate()), SpecError);
  CHECK_THROWS_AS((OccupancySpec{4, {Block{UnitPattern(2, {0}), 0, 0}}}.validate()),
                  SpecError);
  CHECK_THROWS_AS((OccupancySpec{4, {Block{UnitPattern(2, {0}), 1, 4}}}.validate()),
                  SpecError);
  CHECK_THROWS_AS((OccupancySpec{4, {Block{UnitPattern(2, {0}), 3, 0}}}.validate()),
                  SpecError);
  CHECK_NOTHROW((OccupancySpec{4, {Block{UnitPattern(2, {0}), 2, 0}}}.validate()));
}

TEST_CASE("fully occupied chains have (L/l)|kappa| modes laid per cell") {
  OccupancySpec spec{12, {Block{UnitPattern(3, {0, 2}), 4, 0}}};
  CHECK(spec.fully_occupied());
  const ModeSet K = expand(spec);
  CHECK(K.size() == (12 / 3) * 2);
  for (int k : K.K) {
    const int in_cell = k % 3;
    CHECK((in_cell == 0 || in_cell == 2));
  }

  CHECK_FALSE(OccupancySpec{12, {Block{UnitPattern(3, {0}), 3, 0}}}.fully_occupied());
  CHECK_FALSE(OccupancySpec{12, {Block{UnitPattern(3, {0}), 3, 3}}}.fully_occupied());
  CHECK_FALSE(OccupancySpec{12,
                            {Block{UnitPattern(3, {0}), 2, 0},
                             Block{UnitPattern(3, {0}), 2, 6}}}
                  .fully_occupied());
}

TEST_CASE("cell_coords: floor/remainder split of the subsystem fraction") {
  const CellCoordinates c1 = cell_coords(2, 0.25);
  CHECK(c1.alpha == 0);
  CHECK(c1.y == doctest::Approx(0.5).epsilon(1e-14));

  const CellCoordinates c2 = cell_coords(2, 0.75);
  CHECK(c2.alpha == 1);
  CHECK(c2.y == doctest::Approx(0.5).epsilon(1e-14));

  // Exact-rational path lands exactly on the cell boundary.
  const CellCoordinates c3 = cell_coords(3, Rational(2, 3));
  CHECK(c3.alpha == 2);
  CHECK(c3.y == 0.0);

  CHECK_THROWS_AS(cell_coords(2, 0.0), SpecError);
  CHECK_THROWS_AS(cell_coords(2, 1.0), SpecError);
  CHECK_THROWS_AS(cell_coords(2, Rational(0, 1)), SpecError);
  CHECK_THROWS_AS(cell_coords(2, Rational(1, 1)), SpecError);
}

TEST_CASE("cell_coords: alpha + y reassembles l*x") {
  for (int l = 1; l <= 8; ++l)
    for (int i = 1; i < 40; ++i) {
      const double x = i / 40.0;
      const CellCoordinates c = cell_coords(l, x);
      CHECK(c.alpha >= 0);
      CHECK(c.alpha <= l - 1);
      CHECK(c.alpha + c.y == doctest::Approx(l * x).epsilon(1e-12));
    }
  for (int l = 1; l <= 8; ++l)
    for (int i = 1; i < 24; ++i) {
      const Rational x(i, 24);
      const CellCoordinates c = cell_coords(l, x);
      CHECK(c.alpha + c.y == doctest::Approx(l * x.value()).epsilon(1e-12));
      CHECK(c.y >= 0.0);
      CHECK(c.y < 1.0);
    }
}

TEST_CASE("repetition_ratios: z_i = p_i / L") {
  OccupancySpec full{12, {Block{UnitPattern(2, {0}), 6, 0}}};
  CHECK(repetition_ratios(full) == std::vector<double>{0.5});

  OccupancySpec partial{24, {Block{UnitPattern(2, {0}), 4, 0}}};
  CHECK(repetition_ratios(partial)[0] == doctest::Approx(1.0 / 6).epsilon(1e-15));

  OccupancySpec mixed{24,
                      {Block{UnitPattern(2, {0}), 4, 0},
                       Block{UnitPattern(3, {0, 1}), 2, 12}}};
  const std::vector<double> z = repetition_ratios(mixed);
  REQUIRE(z.size() == 2);
  CHECK(z[0] == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(z[1] == doctest::Approx(1.0 / 12).epsilon(1e-15));
}

TEST_CASE("JSON encoding round-trips and defaults offset to zero") {
  OccupancySpec spec{18,
                     {Block{UnitPattern(2, {0}), 4, 0},
                      Block{UnitPattern(3, {0, 1}), 2, 12}}};
  const nlohmann::json j = spec_to_json(spec);
  const OccupancySpec back = spec_from_json(j);
  CHECK(back.L == spec.L);
  REQUIRE(back.blocks.size() == spec.blocks.size());
  for (std::size_t i = 0; i < back.blocks.size(); ++i) {
    CHECK(back.blocks[i].pattern.l == spec.blocks[i].pattern.l);
    CHECK(back.blocks[i].pattern.kappa == spec.blocks[i].pattern.kappa);
    CHECK(back.blocks[i].p == spec.blocks[i].p);
    CHECK(back.blocks[i].offset == spec.blocks[i].offset);
  }
  CHECK(expand(back).K == expand(spec).K);

  const nlohmann::json no_offset = {
      {"L", 8}, {"blocks", {{{"l", 2}, {"kappa", {0}}, {"p", 4}}}}};
  CHECK(spec_from_json(no_offset).blocks[0].offset == 0);

  CHECK_THROWS_AS(spec_from_json(nlohmann::json::array()), SpecError);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json{{"L", 8}}), SpecError);
}

TEST_CASE("ModeSet validates its momenta") {
  CHECK_THROWS_AS(ModeSet(4, {4}), SpecError);
  CHECK_THROWS_AS(ModeSet(4, {-1}), SpecError);
  CHECK_THROWS_AS(ModeSet(4, {1, 1}), SpecError);
  CHECK_THROWS_AS(ModeSet(4, {2, 1}), SpecError);
  CHECK_THROWS_AS(ModeSet(0, {}), SpecError);
  CHECK(ModeSet(4, {}).size() == 0);
  CHECK(ModeSet(4, {0, 3}).size() == 2);
}

TEST_CASE("Rational: normalization, ordering, exact floor/remainder") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(-2, -4) == Rational(1, 2));
  CHECK(Rational(1, -2).value() == doctest::Approx(-0.5));
  CHECK(Rational(3, 1).is_integer());
  CHECK_FALSE(Rational(1, 3).is_integer());
  CHECK_THROWS_AS(Rational(1, 0), SpecError);

  CHECK(Rational(1, 3) < Rational(1, 2));
  CHECK(Rational(1, 2) <= Rational(1, 2));
  CHECK(Rational(1, 2).str() == "1/2");
  CHECK(Rational(4, 2).str() == "2");

  // floor(l*x) and the remainder reassemble l*x exactly.
  CHECK(Rational(2, 3).floor_scaled(3) == 2);
  CHECK(Rational(2, 3).frac_scaled(3) == Rational(0, 1));
  CHECK(Rational(1, 2).floor_scaled(5) == 2);
  CHECK(Rational(1, 2).frac_scaled(5) == Rational(1, 2));
  CHECK(Rational(-1, 4).floor_scaled(2) == -1);
  CHECK(Rational(-1, 4).frac_scaled(2) == Rational(1, 2));
}
