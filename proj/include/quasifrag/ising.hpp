#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "quasifrag/entropy.hpp"
#include "quasifrag/pattern.hpp"

namespace quasifrag {

// Transverse-field chain H = -(1/2) sum_j (sx_j sx_{j+1} + h sz_j), periodic.
struct IsingModel {
  int L;     // even, so both fermion-parity sectors have conventional grids
  double h;  // transverse field, >= 0

  IsingModel(int L_, double h_);
};

// NS = even fermion parity (antiperiodic), momenta 2*pi*(m+1/2)/L;
// R = odd parity (periodic), momenta 2*pi*m/L. Slot labels m in [0, L).
enum class Sector { NS, R };

struct IsingExcitation {
  Sector sector;
  std::vector<int> occupied;  // strictly increasing slot labels

  IsingExcitation(Sector sector_, std::vector<int> occupied_, int L);
};

std::vector<double> momentum_grid(const IsingModel& model, Sector sector);
double dispersion(double h, double q);  // sqrt(1 + h^2 - 2 h cos q)
double excitation_energy(const IsingModel& model, const IsingExcitation& exc);
double total_momentum(const IsingModel& model, const IsingExcitation& exc);  // mod 2*pi

// Entropy from the 2L_A x 2L_A Majorana correlation matrix of the excited
// eigenstate (Bogoliubov-rotated occupations -> real-space two-point blocks).
EntropyResult ising_correlation_entropy(const IsingModel& model,
                                        const IsingExcitation& exc, int L_A,
                                        double n);

// Dense 2^L diagonalization of the spin chain, reusable across state
// selections (the solve is the expensive part; selections are cheap).
class IsingED {
 public:
  explicit IsingED(const IsingModel& model, int max_L = 12);
  EntropyResult entropy(const IsingExcitation& exc, int L_A, double n) const;
  // RDM spectrum of the selected eigenstate (reused across Renyi indices).
  std::vector<double> spectrum(const IsingExcitation& exc, int L_A) const;
  double ground_energy() const { return evals_(0); }

 private:
  Eigen::VectorXcd select_state(const IsingExcitation& exc) const;
  IsingModel model_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
};

// One-shot oracle; prefer IsingED when evaluating a catalog.
EntropyResult ed_oracle_entropy(const IsingModel& model,
                                const IsingExcitation& exc, int L_A, double n,
                                int max_L = 12);

// Lays a momentum-space occupancy spec onto the sorted NS grid (slot i of
// the spec's expanded ModeSet excites NS slot i). Requires even count.
IsingExcitation pattern_excitation(const IsingModel& model,
                                   const OccupancySpec& spec);

// True when (energy, fermion parity, translation phase) pin the state down
// uniquely among all same-sector mode subsets, up to the momentum-reversed
// partner. Reflecting a subset of modes whose momenta sum to 0 or pi costs
// no energy, so such subsets spawn exact multiplets the dense-diagonalization
// selection cannot split. Exhaustive over 2^L subsets; ED-scale L only.
bool ed_resolvable(const IsingModel& model, const IsingExcitation& exc);

// The excitation catalog used by the method-agreement checks: pattern-flavored
// states chosen per (L, h) so that eigenstate selection is unambiguous.
std::vector<std::pair<std::string, IsingExcitation>> standard_catalog(
    const IsingModel& model);

}  // namespace quasifrag
