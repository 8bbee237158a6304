#include "quasifrag/pattern.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include <nlohmann/json.hpp>

namespace quasifrag {

UnitPattern::UnitPattern(int l_, std::vector<int> kappa_) : l(l_), kappa(std::move(kappa_)) {
  if (l < 1) throw SpecError("UnitPattern: l must be >= 1, got " + std::to_string(l));
  if (kappa.empty() || static_cast<int>(kappa.size()) > l)
    throw SpecError("UnitPattern: need 1 <= |kappa| <= l");
  for (std::size_t i = 0; i < kappa.size(); ++i) {
    if (kappa[i] < 0 || kappa[i] >= l)
      throw SpecError("UnitPattern: kappa element " + std::to_string(kappa[i]) +
                      " outside [0, " + std::to_string(l) + ")");
    if (i > 0 && kappa[i] <= kappa[i - 1])
      throw SpecError("UnitPattern: kappa must be strictly increasing");
  }
}

void OccupancySpec::validate() const {
  if (L < 1) throw SpecError("OccupancySpec: L must be >= 1");
  if (blocks.empty()) throw SpecError("OccupancySpec: need at least one block");
  for (const Block& b : blocks) {
    if (b.p < 1) throw SpecError("OccupancySpec: repetitions p must be >= 1");
    if (b.offset < 0 || b.offset >= L)
      throw SpecError("OccupancySpec: offset " + std::to_string(b.offset) +
                      " outside [0, " + std::to_string(L) + ")");
    if (b.p * b.pattern.l > L)
      throw SpecError("OccupancySpec: block span p*l = " +
                      std::to_string(b.p * b.pattern.l) + " exceeds L = " +
                      std::to_string(L));
  }
  expand(*this);  // surfaces collisions / out-of-range momenta
}

bool OccupancySpec::fully_occupied() const {
  return blocks.size() == 1 && blocks[0].offset == 0 &&
         blocks[0].p * blocks[0].pattern.l == L;
}

ModeSet::ModeSet(int L_, std::vector<int> K_) : L(L_), K(std::move(K_)) {
  if (L < 1) throw SpecError("ModeSet: L must be >= 1");
  for (std::size_t i = 0; i < K.size(); ++i) {
    if (K[i] < 0 || K[i] >= L)
      throw SpecError("ModeSet: momentum " + std::to_string(K[i]) +
                      " outside [0, " + std::to_string(L) + ")");
    if (i > 0 && K[i] <= K[i - 1])
      throw SpecError("ModeSet: momenta must be strictly increasing");
  }
}

ModeSet expand(const OccupancySpec& spec) {
  std::set<int> seen;
  for (const Block& b : spec.blocks) {
    for (int a = 0; a < b.p; ++a) {
      for (int kj : b.pattern.kappa) {
        const int momentum = b.offset + a * b.pattern.l + kj;
        if (momentum < 0 || momentum >= spec.L)
          throw SpecError("expand: momentum " + std::to_string(momentum) +
                          " outside [0, " + std::to_string(spec.L) + ")");
        if (!seen.insert(momentum).second)
          throw SpecError("expand: blocks collide at momentum " +
                          std::to_string(momentum));
      }
    }
  }
  return ModeSet(spec.L, std::vector<int>(seen.begin(), seen.end()));
}

CellCoordinates cell_coords(int l, double x) {
  if (l < 1) throw SpecError("cell_coords: l must be >= 1");
  if (!(x > 0.0 && x < 1.0))
    throw SpecError("cell_coords: x must lie in (0,1), got " + std::to_string(x));
  int alpha = static_cast<int>(std::floor(l * x));
  alpha = std::min(std::max(alpha, 0), l - 1);
  return CellCoordinates{alpha, l * x - alpha};
}

CellCoordinates cell_coords(int l, const Rational& x) {
  if (l < 1) throw SpecError("cell_coords: l must be >= 1");
  if (!(Rational(0, 1) < x && x < Rational(1, 1)))
    throw SpecError("cell_coords: x must lie in (0,1), got " + x.str());
  const int alpha = static_cast<int>(x.floor_scaled(l));  // in [0, l-1] since 0<x<1
  return CellCoordinates{alpha, x.frac_scaled(l).value()};
}

std::vector<double> repetition_ratios(const OccupancySpec& spec) {
  spec.validate();
  std::vector<double> z;
  z.reserve(spec.blocks.size());
  for (const Block& b : spec.blocks)
    z.push_back(static_cast<double>(b.p) / static_cast<double>(spec.L));
  return z;
}

nlohmann::json spec_to_json(const OccupancySpec& spec) {
  nlohmann::json blocks = nlohmann::json::array();
  for (const Block& b : spec.blocks) {
    blocks.push_back({{"l", b.pattern.l},
                      {"kappa", b.pattern.kappa},
                      {"p", b.p},
                      {"offset", b.offset}});
  }
  return {{"L", spec.L}, {"blocks", blocks}};
}

OccupancySpec spec_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("L") || !j.contains("blocks"))
    throw SpecError("spec_from_json: need object with \"L\" and \"blocks\"");
  OccupancySpec spec{j.at("L").get<int>(), {}};
  for (const auto& jb : j.at("blocks")) {
    UnitPattern pat(jb.at("l").get<int>(), jb.at("kappa").get<std::vector<int>>());
    spec.blocks.push_back(Block{pat, jb.at("p").get<int>(),
                                jb.value("offset", 0)});
  }
  spec.validate();
  return spec;
}

}  // namespace quasifrag
