#pragma once

#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "quasifrag/errors.hpp"
#include "quasifrag/rational.hpp"

namespace quasifrag {

// A length-l momentum cell with an excited subset kappa; the atom of all
// pattern states. kappa is strictly increasing, elements in [0, l).
struct UnitPattern {
  int l;
  std::vector<int> kappa;

  UnitPattern(int l_, std::vector<int> kappa_);
  int weight() const { return static_cast<int>(kappa.size()); }
};

// One contiguous run of p copies of a pattern, starting at `offset`.
struct Block {
  UnitPattern pattern;
  int p;
  int offset;
};

// An ordered list of disjoint blocks inside a chain of L momenta.
struct OccupancySpec {
  int L;
  std::vector<Block> blocks;

  void validate() const;  // throws SpecError
  bool fully_occupied() const;  // single block, offset 0, p*l == L
};

// The explicit set K of excited momenta; input to every entropy engine.
struct ModeSet {
  int L;
  std::vector<int> K;  // strictly increasing, distinct, in [0, L)

  ModeSet(int L_, std::vector<int> K_);
  int size() const { return static_cast<int>(K.size()); }
};

// Floor/mod coordinates of the subsystem fraction inside a cell:
// alpha = floor(l*x), y = l*x - alpha.
struct CellCoordinates {
  int alpha;
  double y;
};

ModeSet expand(const OccupancySpec& spec);

CellCoordinates cell_coords(int l, double x);
CellCoordinates cell_coords(int l, const Rational& x);

std::vector<double> repetition_ratios(const OccupancySpec& spec);

// Canonical JSON interchange encoding:
// {"L": int, "blocks": [{"l": int, "kappa": [int], "p": int, "offset": int}]}
nlohmann::json spec_to_json(const OccupancySpec& spec);
OccupancySpec spec_from_json(const nlohmann::json& j);

}  // namespace quasifrag
