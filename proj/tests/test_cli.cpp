#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "quasifrag/jobs.hpp"
#include "quasifrag/output.hpp"

using namespace quasifrag;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

std::size_t count_substr(const std::string& hay, const std::string& needle) {
  std::size_t count = 0, pos = 0;
  while ((pos = hay.find(needle, pos)) != std::string::npos) {
    ++count;
    pos += needle.size();
  }
  return count;
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / "quasifrag_cli_test") {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

OccupancySpec alt_spec(int L) {
  return OccupancySpec{L, {Block{UnitPattern(2, {0}), L / 2, 0}}};
}

}  // namespace

TEST_CASE("format_g12 renders up to 12 significant digits") {
  CHECK(format_g12(0.5) == "0.5");
  CHECK(format_g12(0.0) == "0");
  CHECK(format_g12(1e-07) == "1e-07");
  CHECK(format_g12(0.693147180559945) == "0.69314718056");
}

TEST_CASE("Table enforces row width and renders CSV/JSON") {
  Table t;
  t.columns = {"a", "b"};
  t.add_row({"1", "x"});
  t.add_row({"2", "y"});
  CHECK_THROWS_AS(t.add_row({"only one"}), SpecError);

  const std::string csv = t.to_csv();
  CHECK(csv.substr(0, 4) == "a,b\n");
  CHECK(count_substr(csv, "\n") == 3);

  const nlohmann::json j = nlohmann::json::parse(t.to_json());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 2);
  CHECK(j[0].at("a") == "1");
  CHECK(j[1].at("b") == "y");
}

TEST_CASE("atomic_write leaves no temporary droppings") {
  TempDir tmp;
  const fs::path target = tmp.path / "nested" / "out.csv";
  atomic_write(target, "hello\n");
  CHECK(slurp(target) == "hello\n");
  for (const auto& e : fs::recursive_directory_iterator(tmp.path))
    CHECK(e.path().extension() != ".tmp");
}

TEST_CASE("plot_svg: polylines, legends, auto labels, NaN rejection") {
  Series a{{0.0, 1.0}, {0.0, 1.0}, "up"};
  Series b{{0.0, 1.0}, {1.0, 0.0}, "down"};
  const std::string svg = plot_svg({a, b});
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(count_substr(svg, "<polyline") == 2);
  CHECK(svg.find("up") != std::string::npos);
  CHECK(svg.find("down") != std::string::npos);

  Series anon{{0.0, 1.0}, {0.0, 1.0}, ""};
  const std::string svg2 = plot_svg({anon});
  CHECK(svg2.find("series 1") != std::string::npos);

  CHECK(plot_svg({a, b}) == svg);  // deterministic bytes

  Series bad{{0.0, 1.0}, {0.0, std::nan("")}, "bad"};
  CHECK_THROWS_AS(plot_svg({bad}), SpecError);
  CHECK_THROWS_AS(plot_svg({}), SpecError);
}

TEST_CASE("compute job: CSV columns and prediction errors") {
  TempDir tmp;
  JobSpec job;
  job.task = Task::compute;
  job.model = Model::fermion;
  job.spec = alt_spec(12);
  job.L_A_list = {3, 6};
  job.n_list = {1.0, 2.0};
  job.out = (tmp.path / "out.csv").string();

  const RunReport rep = run(job);
  CHECK(rep.exit_code == 0);
  CHECK(rep.summary.find("compute") != std::string::npos);

  const std::string csv = slurp(tmp.path / "out.csv");
  CHECK(csv.rfind("method,n,L,L_A,x,S,S_per_L,prediction,abs_err\n", 0) == 0);
  CHECK(count_substr(csv, "\n") == 5);  // header + 2 L_A times 2 n
  CHECK(csv.find("correlation") != std::string::npos);
}

TEST_CASE("sweep job: empty grid covers every subsystem size") {
  TempDir tmp;
  JobSpec job;
  job.task = Task::sweep;
  job.model = Model::fermion;
  job.spec = alt_spec(8);
  job.out = (tmp.path / "sweep.csv").string();
  run(job);
  const std::string csv = slurp(tmp.path / "sweep.csv");
  CHECK(count_substr(csv, "\n") == 1 + 9);  // header + L_A in [0, 8]
}

TEST_CASE("JSON output parses and carries the same fields") {
  TempDir tmp;
  JobSpec job;
  job.task = Task::compute;
  job.model = Model::fermion;
  job.spec = alt_spec(8);
  job.L_A_list = {4};
  job.format = OutputFormat::json;
  job.out = (tmp.path / "out.json").string();
  run(job);
  const nlohmann::json j = nlohmann::json::parse(slurp(tmp.path / "out.json"));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0].at("L") == "8");
  CHECK(j[0].at("L_A") == "4");
  CHECK(j[0].at("method") == "correlation");
}

TEST_CASE("SVG output draws one curve per Renyi index") {
  TempDir tmp;
  JobSpec job;
  job.task = Task::sweep;
  job.model = Model::fermion;
  job.spec = alt_spec(8);
  job.n_list = {1.0, 2.0};
  job.format = OutputFormat::svg;
  job.out = (tmp.path / "sweep.svg").string();
  run(job);
  const std::string svg = slurp(tmp.path / "sweep.svg");
  CHECK(count_substr(svg, "<polyline") == 2);
  CHECK(svg.find("n=1") != std::string::npos);
  CHECK(svg.find("n=2") != std::string::npos);
}

TEST_CASE("identical jobs produce byte-identical outputs") {
  TempDir tmp;
  for (int fig : {2}) {
    JobSpec job;
    job.task = Task::reproduce_fig;
    job.fig = fig;
    std::vector<std::string> outs;
    for (int rep = 0; rep < 2; ++rep) {
      job.out = (tmp.path / ("fig_run" + std::to_string(rep) + ".csv")).string();
      run(job);
      outs.push_back(slurp(job.out));
      outs.push_back(slurp(fs::path(job.out).replace_extension(".svg")));
    }
    CHECK(outs[0] == outs[2]);
    CHECK(outs[1] == outs[3]);
    CHECK(outs[0].size() > 1000);
  }
}

TEST_CASE("ising sweep carries field and sector columns") {
  TempDir tmp;
  JobSpec job;
  job.task = Task::compute;
  job.model = Model::ising;
  job.spec = alt_spec(8);
  job.L_A_list = {4};
  job.h = 1.0;
  job.out = (tmp.path / "ising.csv").string();
  run(job);
  const std::string csv = slurp(tmp.path / "ising.csv");
  CHECK(csv.rfind("method,n,L,L_A,x,S,S_per_L,prediction,abs_err,h,sector\n",
                  0) == 0);
  CHECK(csv.find(",NS") != std::string::npos);
}

TEST_CASE("harmonic jobs accept only the order-2 index") {
  JobSpec job;
  job.task = Task::compute;
  job.model = Model::harmonic;
  job.spec = alt_spec(6);
  job.L_A_list = {3};
  job.n_list = {1.0};
  CHECK_THROWS_AS(run(job), SpecError);
  job.n_list = {2.0};
  TempDir tmp;
  job.out = (tmp.path / "h.csv").string();
  CHECK(run(job).exit_code == 0);
}

TEST_CASE("JobSpec validation rejects malformed requests") {
  JobSpec job;
  job.n_list = {};
  CHECK_THROWS_AS(run(job), SpecError);
  job.n_list = {-1.0};
  CHECK_THROWS_AS(run(job), SpecError);
  job.n_list = {1.0};
  job.task = Task::compute;
  job.spec.reset();
  CHECK_THROWS_AS(run(job), SpecError);
  job.task = Task::reproduce_fig;
  job.fig = 5;
  CHECK_THROWS_AS(run(job), SpecError);
}

TEST_CASE("caps surface as refusals, not wrong answers") {
  JobSpec job;
  job.task = Task::compute;
  job.model = Model::boson;
  job.spec = alt_spec(12);  // six bosons
  job.L_A_list = {6};
  job.caps.boson_max_N = 4;
  CHECK_THROWS_AS(run(job), CapError);
}

TEST_CASE("oracle suite passes at small sizes") {
  JobSpec job;
  job.task = Task::oracle_check;
  job.model = Model::fermion;
  job.max_L = 5;
  const RunReport rep = run(job);
  CHECK(rep.exit_code == 0);
  CHECK(rep.max_abs_err < 1e-8);
  CHECK(rep.summary.find("oracle-check") != std::string::npos);

  job.model = Model::harmonic;
  CHECK(run(job).exit_code == 0);
}
