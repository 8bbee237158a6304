#include <fstream>
#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "quasifrag/jobs.hpp"

namespace {

quasifrag::OccupancySpec load_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw quasifrag::SpecError("cannot open spec file: " + path);
  nlohmann::json j;
  in >> j;
  return quasifrag::spec_from_json(j);
}

}  // namespace

int main(int argc, char** argv) {
  using namespace quasifrag;
  CLI::App app{
      "quasifrag: entanglement entropies of momentum-pattern excited states "
      "of one-dimensional chains, with exact methods and brute-force oracles"};
  // -h is taken by the transverse-field option --h; keep only --help.
  app.set_help_flag("--help", "print usage and exit");
  app.require_subcommand(1);

  JobSpec job;
  std::string spec_path, model_str = "fermion", format_str = "csv", out_str;
  std::vector<int> grid;
  std::vector<double> n_list;
  bool accept_cost = false;
  int fock_max_L = job.caps.fock_max_L;
  int ed_max_L = job.caps.ed_max_L;
  int boson_max_N = job.caps.boson_max_N;
  int harmonic_max_K = job.caps.harmonic_max_K;

  auto add_common = [&](CLI::App* cmd, bool needs_model) {
    cmd->set_help_flag("--help", "print usage and exit");
    if (needs_model)
      cmd->add_option("--model", model_str, "fermion | ising | boson | harmonic")
          ->check(CLI::IsMember({"fermion", "ising", "boson", "harmonic"}));
    cmd->add_option("--spec", spec_path, "occupancy spec JSON file");
    cmd->add_option("--grid", grid, "subsystem sizes L_A (default: all)")
        ->delimiter(',');
    cmd->add_option("--n", n_list, "Renyi indices (default 1; harmonic: 2)")
        ->delimiter(',');
    cmd->add_option("--h", job.h, "transverse field (ising)");
    cmd->add_option("--m", job.mass, "oscillator mass (harmonic)");
    cmd->add_option("--out", out_str, "output path");
    cmd->add_option("--format", format_str, "csv | json | svg")
        ->check(CLI::IsMember({"csv", "json", "svg"}));
    cmd->add_flag("--i-accept-the-cost", accept_cost,
                  "allow cap overrides beyond the audited defaults");
    cmd->add_option("--max-fock-L", fock_max_L, "fermion oracle cap (default 14)");
    cmd->add_option("--max-ed-L", ed_max_L, "spin-chain ED cap (default 12)");
    cmd->add_option("--max-boson-N", boson_max_N, "boson count cap (default 8)");
    cmd->add_option("--max-harmonic-K", harmonic_max_K,
                    "oscillator insertion cap (default 6)");
  };

  CLI::App* compute = app.add_subcommand("compute", "single entropy computation");
  add_common(compute, true);
  CLI::App* sweep = app.add_subcommand("sweep", "entropy sweep over L_A");
  add_common(sweep, true);
  CLI::App* fig = app.add_subcommand("reproduce-fig", "figure-reproduction job");
  fig->add_option("figure", job.fig, "figure number: 2, 3, 4, 6 or 7")->required();
  add_common(fig, false);
  CLI::App* oracle = app.add_subcommand("oracle-check", "oracle cross-check suite");
  oracle->add_option("--max-L", job.max_L, "largest chain length (default 8)");
  add_common(oracle, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (compute->parsed()) job.task = Task::compute;
    if (sweep->parsed()) job.task = Task::sweep;
    if (fig->parsed()) job.task = Task::reproduce_fig;
    if (oracle->parsed()) job.task = Task::oracle_check;

    const std::map<std::string, Model> models = {{"fermion", Model::fermion},
                                                 {"ising", Model::ising},
                                                 {"boson", Model::boson},
                                                 {"harmonic", Model::harmonic}};
    job.model = models.at(model_str);
    if (!spec_path.empty()) job.spec = load_spec(spec_path);
    job.L_A_list = grid;
    if (!n_list.empty())
      job.n_list = n_list;
    else
      job.n_list = {job.model == Model::harmonic ? 2.0 : 1.0};
    job.out = out_str;
    if (format_str == "json") job.format = OutputFormat::json;
    if (format_str == "svg") job.format = OutputFormat::svg;

    Caps defaults;
    if (!accept_cost &&
        (fock_max_L > defaults.fock_max_L || ed_max_L > defaults.ed_max_L ||
         boson_max_N > defaults.boson_max_N ||
         harmonic_max_K > defaults.harmonic_max_K)) {
      std::cerr << "error: raising a cost cap requires --i-accept-the-cost\n";
      return 2;
    }
    job.caps.fock_max_L = fock_max_L;
    job.caps.ed_max_L = ed_max_L;
    job.caps.boson_max_N = boson_max_N;
    job.caps.harmonic_max_K = harmonic_max_K;

    const RunReport rep = run(job);
    std::cout << rep.summary << "\n";
    return rep.exit_code;
  } catch (const SpecError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const CapError& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
