#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "quasifrag/pattern.hpp"

namespace quasifrag {

// Every cost cap in one place. Raising a value above its default requires
// the explicit --i-accept-the-cost guard in the CLI.
struct Caps {
  int fock_max_L = 14;
  int ed_max_L = 12;
  int boson_max_N = 8;
  long long boson_max_configs = 5'000'000;
  int brute_boson_max_L = 8;
  int brute_boson_max_N = 4;
  int harmonic_max_K = 6;
};

enum class Task { compute, sweep, reproduce_fig, oracle_check };
enum class Model { fermion, ising, boson, harmonic };
enum class OutputFormat { csv, json, svg };

struct JobSpec {
  Task task = Task::compute;
  Model model = Model::fermion;
  std::optional<OccupancySpec> spec;
  std::vector<int> L_A_list;        // empty -> all L_A in [0, L]
  std::vector<double> n_list = {1.0};
  double h = 1.0;                   // ising transverse field
  double mass = 1.0;                // harmonic mass
  int fig = 0;                      // reproduce-fig target (2,3,4,6,7)
  int max_L = 8;                    // oracle-check sweep bound
  std::filesystem::path out;        // empty -> task default name
  OutputFormat format = OutputFormat::csv;
  Caps caps;

  void validate() const;  // throws SpecError
};

struct RunReport {
  int exit_code = 0;
  double max_abs_err = 0.0;
  std::string summary;  // the one-line summary printed by the CLI
};

RunReport run(const JobSpec& job);

}  // namespace quasifrag
