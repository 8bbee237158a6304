#include "quasifrag/jobs.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <sstream>

#include "quasifrag/boson.hpp"
#include "quasifrag/fermion.hpp"
#include "quasifrag/harmonic.hpp"
#include "quasifrag/ising.hpp"
#include "quasifrag/output.hpp"

namespace quasifrag {

namespace {

std::vector<int> resolve_LA(const JobSpec& job, int L) {
  if (!job.L_A_list.empty()) {
    for (int a : job.L_A_list)
      if (a < 0 || a > L)
        throw SpecError("L_A = " + std::to_string(a) + " outside [0, " +
                        std::to_string(L) + "]");
    return job.L_A_list;
  }
  std::vector<int> all(L + 1);
  for (int a = 0; a <= L; ++a) all[a] = a;
  return all;
}

std::string fmt_x(int L_A, int L) {
  return format_g12(static_cast<double>(L_A) / L);
}

void write_table(const JobSpec& job, const Table& table,
                 const std::filesystem::path& fallback) {
  const std::filesystem::path out = job.out.empty() ? fallback : job.out;
  if (job.format == OutputFormat::json)
    atomic_write(out, table.to_json());
  else
    atomic_write(out, table.to_csv());
}

// Companion SVG path: the table's target with the extension swapped.
std::filesystem::path svg_sibling(const JobSpec& job, const char* fallback) {
  std::filesystem::path p = job.out.empty() ? std::filesystem::path(fallback)
                                            : job.out;
  p.replace_extension(".svg");
  return p;
}

// Prediction for the scaling-limit entropy density of a spec (per site).
double density_prediction(const OccupancySpec& spec, double n, int L_A) {
  if (L_A == 0 || L_A == spec.L) return 0.0;
  return predict_mixed_density(spec, n, Rational(L_A, spec.L));
}

RunReport run_compute_or_sweep(const JobSpec& job) {
  if (!job.spec) throw SpecError("compute/sweep: --spec is required");
  const OccupancySpec& spec = *job.spec;
  spec.validate();
  const int L = spec.L;
  const std::vector<int> las = resolve_LA(job, L);
  RunReport rep;

  Table table;
  table.columns = {"method", "n", "L", "L_A", "x", "S", "S_per_L",
                   "prediction", "abs_err"};
  if (job.model == Model::ising) {
    table.columns.push_back("h");
    table.columns.push_back("sector");
  } else if (job.model == Model::boson) {
    table.columns.push_back("N");
    table.columns.push_back("p");
    table.columns.push_back("extrapolated");
  } else if (job.model == Model::harmonic) {
    table.columns.push_back("m");
  }

  const ModeSet K = expand(spec);
  for (int L_A : las) {
    for (double n : job.n_list) {
      EntropyResult r;
      std::vector<std::string> extra;
      double pred_density = 0.0;
      switch (job.model) {
        case Model::fermion:
          r = entropy_from_correlation(correlation_matrix(L, L_A, K), n);
          pred_density = density_prediction(spec, n, L_A);
          break;
        case Model::ising: {
          const IsingModel model(L, job.h);
          r = ising_correlation_entropy(model, pattern_excitation(model, spec),
                                        L_A, n);
          pred_density = density_prediction(spec, n, L_A);
          extra = {format_g12(job.h), "NS"};
          break;
        }
        case Model::boson: {
          const BosonState state(L, K);
          r = boson_sector_entropy(state, L_A, n, job.caps.boson_max_N,
                                   job.caps.boson_max_configs);
          // The cell-interpolation comparison line only applies to a single
          // repeated pattern.
          if (spec.blocks.size() == 1 && L_A > 0 && L_A < L)
            pred_density = static_cast<double>(spec.blocks[0].p) / L *
                           naive_prediction(spec.blocks[0].pattern, n,
                                            Rational(L_A, L));
          extra = {std::to_string(state.particles()),
                   std::to_string(spec.blocks[0].p), "false"};
          break;
        }
        case Model::harmonic: {
          const HarmonicModel model(L, job.mass);
          if (n != 2.0)
            throw SpecError("harmonic supports Renyi index 2 only");
          r = harmonic_excited_renyi2(model, K, L_A, job.caps.harmonic_max_K);
          pred_density = 0.0;
          extra = {format_g12(job.mass)};
          break;
        }
      }
      const double per_site = L > 0 ? r.value / L : 0.0;
      const bool has_pred = job.model != Model::harmonic;
      const double err = std::abs(per_site - pred_density);
      if (has_pred) rep.max_abs_err = std::max(rep.max_abs_err, err);
      std::vector<std::string> row = {method_name(r.method),
                                      format_g12(n),
                                      std::to_string(L),
                                      std::to_string(L_A),
                                      fmt_x(L_A, L),
                                      format_g12(r.value),
                                      format_g12(per_site),
                                      has_pred ? format_g12(pred_density) : "",
                                      has_pred ? format_g12(err) : ""};
      row.insert(row.end(), extra.begin(), extra.end());
      table.add_row(std::move(row));
    }
  }

  if (job.format == OutputFormat::svg) {
    std::map<std::string, Series> curves;
    for (const auto& row : table.rows) {
      Series& s = curves["n=" + row[1]];
      s.label = "n=" + row[1];
      s.x.push_back(std::stod(row[4]));
      s.y.push_back(std::stod(row[6]));
    }
    std::vector<Series> series;
    for (auto& [k, s] : curves) series.push_back(std::move(s));
    atomic_write(job.out.empty() ? "sweep.svg" : job.out,
                 plot_svg(series, "x", "S/L"));
  } else {
    write_table(job, table,
                job.task == Task::sweep ? "sweep.csv" : "compute.csv");
  }
  std::ostringstream os;
  os << (job.task == Task::sweep ? "sweep" : "compute") << ": " << table.rows.size()
     << " rows, max |S/L - prediction| = " << format_g12(rep.max_abs_err);
  rep.summary = os.str();
  return rep;
}

// ---- figure recipes (data fidelity at desk scale; table + SVG) ----

RunReport reproduce_fig2(const JobSpec& job) {
  Table table;
  table.columns = {"pattern", "l", "n", "x", "s"};
  std::vector<Series> series;
  for (int two : {0, 1}) {
    for (int l = 2; l <= 8; ++l) {
      const UnitPattern pat(l, two ? std::vector<int>{0, 1} : std::vector<int>{0});
      Series s;
      s.label = (two ? "k={0,1} l=" : "k={0} l=") + std::to_string(l);
      for (int i = 0; i < 200; ++i) {
        const Rational x(2 * i + 1, 400);
        const double v = per_pattern_s(pat, 1.0, x);
        table.add_row({two ? "{0,1}" : "{0}", std::to_string(l), "1",
                       format_g12(x.value()), format_g12(v)});
        s.x.push_back(x.value());
        s.y.push_back(v);
      }
      series.push_back(std::move(s));
    }
  }
  write_table(job, table, "fig2.csv");
  const std::filesystem::path svg = svg_sibling(job, "fig2.csv");
  atomic_write(svg, plot_svg(series, "x", "s(x)"));
  RunReport rep;
  rep.summary = "reproduce-fig 2: " + std::to_string(table.rows.size()) + " rows";
  return rep;
}

RunReport reproduce_fig3(const JobSpec& job) {
  // Partially occupied chains vs the per-pattern prediction, z = 1/6.
  Table table;
  table.columns = {"pattern", "L", "x", "S_per_L", "prediction", "abs_err"};
  std::vector<Series> series;
  RunReport rep;
  const std::vector<std::pair<UnitPattern, std::string>> pats = {
      {UnitPattern(2, {0}), "l2_k0"}, {UnitPattern(3, {0, 1}), "l3_k01"}};
  for (const auto& [pat, name] : pats) {
    for (int L : {24, 48, 96}) {
      const int p = L / 6;
      const OccupancySpec spec{L, {Block{pat, p, 0}}};
      const ModeSet K = expand(spec);
      Series s;
      s.label = name + " L=" + std::to_string(L);
      for (int L_A = 1; L_A < L; ++L_A) {
        const double S =
            entropy_from_correlation(correlation_matrix(L, L_A, K), 1.0).value;
        const double pred =
            predict_partial_density(pat, 1.0 / 6.0, 1.0, Rational(L_A, L));
        const double err = std::abs(S / L - pred);
        rep.max_abs_err = std::max(rep.max_abs_err, err);
        table.add_row({name, std::to_string(L), fmt_x(L_A, L),
                       format_g12(S / L), format_g12(pred), format_g12(err)});
        s.x.push_back(static_cast<double>(L_A) / L);
        s.y.push_back(S / L);
      }
      series.push_back(std::move(s));
    }
    Series pred_curve;
    pred_curve.label = name + " prediction";
    for (int i = 1; i < 192; ++i) {
      const Rational x(i, 192);
      pred_curve.x.push_back(x.value());
      pred_curve.y.push_back(predict_partial_density(pat, 1.0 / 6.0, 1.0, x));
    }
    series.push_back(std::move(pred_curve));
  }
  write_table(job, table, "fig3.csv");
  const std::filesystem::path svg = svg_sibling(job, "fig3.csv");
  atomic_write(svg, plot_svg(series, "x", "S/L"));
  rep.summary = "reproduce-fig 3: " + std::to_string(table.rows.size()) +
                " rows, max |S/L - prediction| = " + format_g12(rep.max_abs_err);
  return rep;
}

RunReport reproduce_fig4(const JobSpec& job) {
  // Transverse-field chain at h=1: correlation-method entropies of pattern
  // analogs vs the fragmentation prediction, fully occupied and z = 1/4.
  Table table;
  table.columns = {"pattern", "L", "n", "x", "S_per_L", "prediction", "abs_err"};
  std::vector<Series> series;
  RunReport rep;
  const UnitPattern pat(2, {0});
  for (const bool full : {true, false}) {
    for (int L : {16, 24, 32}) {
      const IsingModel model(L, 1.0);
      const int p = full ? L / 2 : L / 4;
      std::vector<int> occ;
      for (int a = 0; a < p; ++a) occ.push_back(2 * a);
      const IsingExcitation exc(Sector::NS, occ, L);
      const double z = static_cast<double>(p) / L;
      Series s;
      s.label = std::string(full ? "full" : "z=1/4") + " L=" + std::to_string(L);
      for (int L_A = 1; L_A < L; ++L_A) {
        const double S = ising_correlation_entropy(model, exc, L_A, 1.0).value;
        const double pred = predict_partial_density(pat, z, 1.0, Rational(L_A, L));
        const double err = std::abs(S / L - pred);
        rep.max_abs_err = std::max(rep.max_abs_err, err);
        table.add_row({full ? "full" : "z=1/4", std::to_string(L), "1",
                       fmt_x(L_A, L), format_g12(S / L), format_g12(pred),
                       format_g12(err)});
        s.x.push_back(static_cast<double>(L_A) / L);
        s.y.push_back(S / L);
      }
      series.push_back(std::move(s));
    }
  }
  write_table(job, table, "fig4.csv");
  const std::filesystem::path svg = svg_sibling(job, "fig4.csv");
  atomic_write(svg, plot_svg(series, "x", "S/L"));
  rep.summary = "reproduce-fig 4: " + std::to_string(table.rows.size()) +
                " rows, max |S/L - prediction| = " + format_g12(rep.max_abs_err);
  return rep;
}

RunReport reproduce_fig6(const JobSpec& job) {
  // Bosonic per-pattern entropies S/p vs the cell-interpolation line.
  Table table;
  table.columns = {"panel", "p", "L", "x", "s_over_p", "naive", "abs_err"};
  std::vector<Series> series;
  RunReport rep;
  struct Panel { UnitPattern pat; std::vector<int> ps; const char* name; };
  const std::vector<Panel> panels = {
      {UnitPattern(2, {0}), {1, 2, 3, 4, 5, 6}, "a_l2_k0"},
      {UnitPattern(3, {0, 1}), {1, 2, 3}, "b_l3_k01"}};
  for (const Panel& panel : panels) {
    for (int p : panel.ps) {
      const int L = p * panel.pat.l;
      const OccupancySpec spec{L, {Block{panel.pat, p, 0}}};
      const BosonState state(L, expand(spec));
      Series s;
      s.label = std::string(panel.name) + " p=" + std::to_string(p);
      for (int L_A = 1; L_A < L; ++L_A) {
        const double v = boson_sector_entropy(state, L_A, 2.0,
                                              job.caps.boson_max_N,
                                              job.caps.boson_max_configs)
                             .value / p;
        const double nv = naive_prediction(panel.pat, 2.0, Rational(L_A, L));
        rep.max_abs_err = std::max(rep.max_abs_err, std::abs(v - nv));
        table.add_row({panel.name, std::to_string(p), std::to_string(L),
                       fmt_x(L_A, L), format_g12(v), format_g12(nv),
                       format_g12(std::abs(v - nv))});
        s.x.push_back(static_cast<double>(L_A) / L);
        s.y.push_back(v);
      }
      series.push_back(std::move(s));
    }
    Series naive_curve;
    naive_curve.label = std::string(panel.name) + " naive";
    for (int i = 1; i < 120; ++i) {
      const Rational x(i, 120);
      naive_curve.x.push_back(x.value());
      naive_curve.y.push_back(naive_prediction(panel.pat, 2.0, x));
    }
    series.push_back(std::move(naive_curve));
  }
  write_table(job, table, "fig6.csv");
  const std::filesystem::path svg = svg_sibling(job, "fig6.csv");
  atomic_write(svg, plot_svg(series, "x", "S/p"));
  rep.summary = "reproduce-fig 6: " + std::to_string(table.rows.size()) +
                " rows, max |S/p - naive| = " + format_g12(rep.max_abs_err);
  return rep;
}

RunReport reproduce_fig7(const JobSpec& job) {
  // Coupled-oscillator chain: excitation contribution to Renyi-2 vs the
  // free-boson per-pattern values, masses 2 and 10, L = 12.
  Table table;
  table.columns = {"m", "p", "x", "delta_s2_over_p", "free_boson", "abs_err"};
  std::vector<Series> series;
  RunReport rep;
  const int L = 12;
  const UnitPattern pat(2, {0});
  for (const double m : {2.0, 10.0}) {
    const HarmonicModel model(L, m);
    for (int p : {1, 2, 3}) {
      std::vector<int> kk;
      for (int a = 0; a < p; ++a) kk.push_back(2 * a);
      const ModeSet K(L, kk);
      const BosonState free_state(L, K);
      Series s;
      s.label = "m=" + format_g12(m) + " p=" + std::to_string(p);
      for (int L_A = 1; L_A < L; ++L_A) {
        const double exc =
            harmonic_excited_renyi2(model, K, L_A, job.caps.harmonic_max_K).value;
        const double gs = harmonic_ground_renyi2(model, L_A).value;
        const double delta = (exc - gs) / p;
        const double ref = boson_sector_entropy(free_state, L_A, 2.0,
                                                job.caps.boson_max_N,
                                                job.caps.boson_max_configs)
                               .value / p;
        rep.max_abs_err = std::max(rep.max_abs_err, std::abs(delta - ref));
        table.add_row({format_g12(m), std::to_string(p), fmt_x(L_A, L),
                       format_g12(delta), format_g12(ref),
                       format_g12(std::abs(delta - ref))});
        s.x.push_back(static_cast<double>(L_A) / L);
        s.y.push_back(delta);
      }
      series.push_back(std::move(s));
    }
  }
  write_table(job, table, "fig7.csv");
  const std::filesystem::path svg = svg_sibling(job, "fig7.csv");
  atomic_write(svg, plot_svg(series, "x", "(S2 - S2_ground)/p"));
  rep.summary = "reproduce-fig 7: " + std::to_string(table.rows.size()) +
                " rows, max |delta - free boson| = " + format_g12(rep.max_abs_err);
  return rep;
}

// ---- oracle cross-check suites ----

RunReport oracle_check(const JobSpec& job) {
  RunReport rep;
  Table table;
  table.columns = {"case", "max_err"};
  double tol = 1e-8;
  switch (job.model) {
    case Model::fermion: {
      tol = 1e-8;
      for (int L = 1; L <= job.max_L; ++L) {
        double worst = 0.0;
        for (unsigned mask = 0; mask < (1u << L); ++mask) {
          std::vector<int> kk;
          for (int k = 0; k < L; ++k)
            if (mask >> k & 1) kk.push_back(k);
          const ModeSet K(L, kk);
          for (int L_A = 0; L_A <= L; ++L_A) {
            const std::vector<double> spec_oracle =
                fock_oracle_spectrum(L, L_A, K, job.caps.fock_max_L);
            const CorrelationMatrix C = correlation_matrix(L, L_A, K);
            for (double n : {1.0, 2.0}) {
              const double a = entropy_from_correlation(C, n).value;
              const double b = entropy_from_spectrum(spec_oracle, n);
              worst = std::max(worst, std::abs(a - b));
            }
          }
        }
        table.add_row({"fermion L=" + std::to_string(L), format_g12(worst)});
        rep.max_abs_err = std::max(rep.max_abs_err, worst);
      }
      break;
    }
    case Model::boson: {
      tol = 1e-9;
      for (int L = 2; L <= std::min(job.max_L, job.caps.brute_boson_max_L); ++L) {
        double worst = 0.0;
        for (unsigned mask = 1; mask < (1u << L); ++mask) {
          if (std::popcount(mask) > job.caps.brute_boson_max_N) continue;
          std::vector<int> kk;
          for (int k = 0; k < L; ++k)
            if (mask >> k & 1) kk.push_back(k);
          const BosonState state(L, ModeSet(L, kk));
          for (int L_A = 0; L_A <= L; ++L_A) {
            for (double n : {1.0, 2.0, 3.0}) {
              const double a = boson_sector_entropy(state, L_A, n).value;
              const double b =
                  brute_force_boson_entropy(state, L_A, n,
                                            job.caps.brute_boson_max_L,
                                            job.caps.brute_boson_max_N)
                      .value;
              worst = std::max(worst, std::abs(a - b));
            }
          }
        }
        table.add_row({"boson L=" + std::to_string(L), format_g12(worst)});
        rep.max_abs_err = std::max(rep.max_abs_err, worst);
      }
      break;
    }
    case Model::ising: {
      tol = 1e-7;
      const int L = std::min(job.max_L % 2 == 0 ? job.max_L : job.max_L - 1,
                             job.caps.ed_max_L);
      for (double h : {0.5, 1.0, 2.0}) {
        const IsingModel model(L, h);
        const IsingED ed(model, job.caps.ed_max_L);
        double worst = 0.0;
        for (const auto& [name, exc] : standard_catalog(model)) {
          for (int L_A = 0; L_A <= L; ++L_A) {
            const std::vector<double> spec_ed = ed.spectrum(exc, L_A);
            for (double n : {1.0, 2.0}) {
              const double a = ising_correlation_entropy(model, exc, L_A, n).value;
              const double b = entropy_from_spectrum(spec_ed, n);
              worst = std::max(worst, std::abs(a - b));
            }
          }
        }
        table.add_row({"ising L=" + std::to_string(L) + " h=" + format_g12(h),
                       format_g12(worst)});
        rep.max_abs_err = std::max(rep.max_abs_err, worst);
      }
      break;
    }
    case Model::harmonic: {
      tol = 1e-10;
      const HarmonicModel model(6, 3.0);
      double worst = 0.0;
      for (int L_A = 1; L_A < 6; ++L_A) {
        const double a = harmonic_excited_renyi2(model, ModeSet(6, {}), L_A).value;
        const double b = harmonic_ground_renyi2(model, L_A).value;
        worst = std::max(worst, std::abs(a - b));
      }
      table.add_row({"harmonic no-insertion vs ground", format_g12(worst)});
      rep.max_abs_err = std::max(rep.max_abs_err, worst);
      break;
    }
  }
  if (!job.out.empty()) write_table(job, table, "oracle_check.csv");
  std::ostringstream os;
  os << "oracle-check: max error = " << format_g12(rep.max_abs_err)
     << " (tolerance " << format_g12(tol) << ")";
  rep.summary = os.str();
  rep.exit_code = rep.max_abs_err < tol ? 0 : 1;
  return rep;
}

}  // namespace

void JobSpec::validate() const {
  if (n_list.empty()) throw SpecError("JobSpec: empty Renyi index list");
  for (double n : n_list)
    if (!(n > 0.0)) throw SpecError("JobSpec: Renyi index must be > 0");
  if (task == Task::reproduce_fig && fig != 2 && fig != 3 && fig != 4 &&
      fig != 6 && fig != 7)
    throw SpecError("reproduce-fig: supported figures are 2, 3, 4, 6, 7");
  if ((task == Task::compute || task == Task::sweep) && !spec)
    throw SpecError("compute/sweep: an occupancy spec is required");
}

RunReport run(const JobSpec& job) {
  job.validate();
  switch (job.task) {
    case Task::compute:
    case Task::sweep:
      return run_compute_or_sweep(job);
    case Task::reproduce_fig:
      switch (job.fig) {
        case 2: return reproduce_fig2(job);
        case 3: return reproduce_fig3(job);
        case 4: return reproduce_fig4(job);
        case 6: return reproduce_fig6(job);
        default: return reproduce_fig7(job);
      }
    case Task::oracle_check:
      return oracle_check(job);
  }
  throw SpecError("run: unknown task");
}

}  // namespace quasifrag
