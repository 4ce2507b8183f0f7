#include "morop/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "morop/io.hpp"
#include "morop/parallel.hpp"
#include "morop/problems.hpp"
#include "morop/rng.hpp"
#include "morop/sampling.hpp"

namespace morop::pipeline {

namespace {

using ordered_json = nlohmann::ordered_json;

std::string resolve(const std::string& base_dir, const std::string& path) {
  if (path.empty()) return path;
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return path;
  return (std::filesystem::path(base_dir) / p).string();
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

ScenarioSet parse_scenarios(const ordered_json& j,
                                        const DepVector& dep_nominal) {
  ScenarioSet set;
  if (j.contains("bin_normal")) {
    const auto& bn = j.at("bin_normal");
    BinMethod method = BinMethod::Pdf;
    if (bn.contains("method")) {
      std::string name = bn.at("method").get<std::string>();
      if (name == "pdf")
        method = BinMethod::Pdf;
      else if (name == "mass")
        method = BinMethod::Mass;
      else
        throw Error("config-error", "bin_normal method must be pdf or mass");
    }
    return bin_normal_scenarios(
        dep_nominal, bn.at("dep_index").get<std::size_t>(),
        bn.at("mean").get<double>(), bn.at("sigma").get<double>(),
        bn.at("lo").get<double>(), bn.at("hi").get<double>(),
        bn.at("count").get<std::size_t>(), method);
  }
  if (!j.contains("dep") || !j.contains("h"))
    throw Error("config-error", "scenarios need dep and h arrays");
  const auto& dep = j.at("dep");
  const auto& h = j.at("h");
  if (!dep.is_array() || !h.is_array() || dep.size() != h.size())
    throw Error("config-error", "scenario dep and h sizes differ");
  for (std::size_t k = 0; k < dep.size(); ++k) {
    Scenario s;
    s.p = dep[k].get<DepVector>();
    s.probability = h[k].get<double>();
    set.scenarios.push_back(std::move(s));
  }
  for (std::size_t k = 0; k < set.scenarios.size(); ++k)
    if (set.scenarios[k].probability >
        set.scenarios[set.initial_index].probability)
      set.initial_index = k;
  if (j.contains("initial_index"))
    set.initial_index = j.at("initial_index").get<std::size_t>();
  return set;
}

}  // namespace

RunConfig RunConfig::from_json_text(const std::string& text,
                                    const std::string& base_dir) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error("config-error", std::string("bad config JSON: ") + e.what());
  }

  RunConfig cfg;
  try {
    cfg.problem = j.value("problem", cfg.problem);
    cfg.polar_path = resolve(base_dir, j.value("polar", std::string()));
    cfg.archive_csv = resolve(base_dir, j.value("archive", std::string()));
    cfg.samples = j.value("samples", cfg.samples);
    cfg.seed = j.value("seed", cfg.seed);
    cfg.threads = j.value("threads", cfg.threads);
    cfg.out_dir = j.value("out", cfg.out_dir);
    if (j.contains("weights"))
      cfg.weights = j.at("weights").get<std::vector<double>>();

    cfg.ga.seed = cfg.seed;
    if (j.contains("ga")) {
      const auto& g = j.at("ga");
      cfg.ga.population_size = g.value("population_size", cfg.ga.population_size);
      cfg.ga.generations = g.value("generations", cfg.ga.generations);
      cfg.ga.crossover_prob = g.value("crossover_prob", cfg.ga.crossover_prob);
      cfg.ga.crossover_eta = g.value("crossover_eta", cfg.ga.crossover_eta);
      cfg.ga.mutation_prob = g.value("mutation_prob", cfg.ga.mutation_prob);
      cfg.ga.mutation_eta = g.value("mutation_eta", cfg.ga.mutation_eta);
      cfg.ga.seed = g.value("seed", cfg.ga.seed);
      cfg.ga.feasibility_first =
          g.value("feasibility_first", cfg.ga.feasibility_first);
    }

    if (j.contains("bemt")) {
      const auto& bo = j.at("bemt");
      cfg.bemt.n_elements = bo.value("n_elements", cfg.bemt.n_elements);
      cfg.bemt.relaxation = bo.value("relaxation", cfg.bemt.relaxation);
      cfg.bemt.tolerance = bo.value("tolerance", cfg.bemt.tolerance);
      cfg.bemt.max_iterations =
          bo.value("max_iterations", cfg.bemt.max_iterations);
    }

    if (j.contains("scenarios")) {
      DepVector nominal = cfg.problem == "bemt_rotor"
                              ? problems::wind_scenarios().initial().p
                              : problems::numerical_example_scenarios()
                                    .initial()
                                    .p;
      cfg.scenarios = parse_scenarios(j.at("scenarios"), nominal);
      cfg.has_scenarios = true;
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error("config-error", std::string("bad config value: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

RunConfig RunConfig::from_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("config-error", "cannot open config file: " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str(),
                        std::filesystem::path(path).parent_path().string());
}

void RunConfig::validate() const {
  if (problem != "numerical_eg1" && problem != "bemt_rotor")
    throw Error("config-error", "unknown problem: " + problem);
  if (problem == "bemt_rotor" && polar_path.empty())
    throw Error("config-error", "bemt_rotor needs a polar file");
  if (samples < 2)
    throw Error("config-error", "sample count must be >= 2");
  ga.validate();
}

std::vector<std::string> RunReport::robust_ids() const {
  std::vector<std::string> ids;
  ids.reserve(robust_indices.size());
  for (std::size_t s : robust_indices) ids.push_back(records[s].id);
  return ids;
}

RunReport run_pipeline(const RunConfig& config) {
  config.validate();
  RunReport report;

  ProblemDef problem;
  if (config.problem == "bemt_rotor") {
    auto polar = std::make_shared<const bemt::PolarTable>(
        bemt::load_polar(config.polar_path));
    problem = problems::wind_turbine_problem(polar, config.bemt);
  } else {
    problem = problems::numerical_example_problem();
  }
  problem.validate();

  report.scenarios = config.has_scenarios
                         ? config.scenarios
                         : (config.problem == "bemt_rotor"
                                ? problems::wind_scenarios()
                                : problems::numerical_example_scenarios());
  report.scenarios.validate(problem.r);
  const DepVector& p0 = report.scenarios.initial().p;

  auto t0 = std::chrono::steady_clock::now();
  if (!config.archive_csv.empty()) {
    auto rows = io::read_archive_csv(config.archive_csv, problem.n);
    for (auto& [id, x] : rows) {
      Evaluation e = evaluate(problem, x, p0);
      if (!e.ok())
        throw Error("model-failure",
                    "archive member " + id + " fails to evaluate at p0");
      report.archive.entries.push_back({id, std::move(x), std::move(e)});
    }
  } else {
    report.archive =
        nsga2::optimize(problem, config.ga, {}, config.threads);
    // The GA ran at dep_nominal; pin the stored nominals to p0 so the
    // robustness stages stay consistent under custom scenario tables.
    for (auto& entry : report.archive.entries)
      entry.nominal = evaluate(problem, entry.x, p0);
  }
  report.timings_ms["archive"] = elapsed_ms(t0);

  report.extremes = extremes_from_archive(report.archive);

  const std::size_t S = report.archive.size();
  report.records.resize(S);
  for (std::size_t s = 0; s < S; ++s) {
    report.records[s].id = report.archive.entries[s].id;
    report.records[s].f0 = report.archive.entries[s].nominal.f;
  }

  t0 = std::chrono::steady_clock::now();
  bool irs_ok = !report.extremes.degenerate();
  if (!irs_ok)
    std::fprintf(stderr,
                 "warning: an objective has zero range on the Pareto front "
                 "(single-point archive?); skipping the I_RS stage\n");
  if (irs_ok) {
    const std::size_t d = problem.n + problem.r;
    parallel_for(S, config.threads, [&](std::size_t s) {
      const ArchiveEntry& entry = report.archive.entries[s];
      UnitSampleMatrix u = lhs(config.samples, d,
                               derive_seed(config.seed, s));
      std::vector<Evaluation> evals;
      evals.reserve(config.samples);
      std::size_t failed = 0;
      for (std::size_t k = 0; k < config.samples; ++k) {
        std::span<const double> row = u.row(k);
        DesignVector xs = apply_noise(entry.x, problem.dv_noise,
                                      row.subspan(0, problem.n));
        DepVector ps = apply_noise(p0, problem.dep_noise,
                                   row.subspan(problem.n, problem.r));
        Evaluation e = evaluate(problem, xs, ps);
        if (e.ok())
          evals.push_back(std::move(e));
        else
          ++failed;
      }
      if (evals.size() < 2)
        throw Error("model-failure",
                    "almost all noise samples failed for " + entry.id);
      SmallVariationStats st =
          i_rs(evals, entry.nominal, report.extremes, config.weights);
      RobustnessRecord& rec = report.records[s];
      rec.i_rs = st.i_rs;
      rec.sigma_f = std::move(st.sigma);
      rec.mu_f = std::move(st.mu);
      rec.delta_f_small = max_deviation(evals, entry.nominal);
      rec.failed_samples = failed;
    });
    if (std::any_of(report.records.begin(), report.records.end(),
                    [](const RobustnessRecord& r) {
                      return r.failed_samples > 0;
                    }))
      std::fprintf(stderr,
                   "warning: some noise samples failed to evaluate and were "
                   "skipped\n");
  } else {
    for (auto& rec : report.records) rec.i_rs_valid = false;
  }
  report.timings_ms["i_rs"] = elapsed_ms(t0);

  t0 = std::chrono::steady_clock::now();
  LargeVariationResult lv = large_variation_analysis(
      problem, report.archive, report.scenarios, config.threads);
  for (std::size_t s = 0; s < S; ++s) {
    RobustnessRecord& rec = report.records[s];
    rec.i_f = lv.i_f[s];
    rec.i_p = std::move(lv.i_p[s]);
    rec.i_rank = std::move(lv.i_rank[s]);
    rec.i_rl = lv.i_rl[s];
    rec.delta_f_large = std::move(lv.delta_f_large[s]);
  }
  report.scenario_evals = std::move(lv.scenario_evals);
  report.timings_ms["i_rl"] = elapsed_ms(t0);

  if (irs_ok) {
    report.robust_indices = robust_pareto_filter(rf_space(report.records));
  } else {
    // Without I_RS coordinates the RF-Space degenerates to the I_RL axis.
    double best = report.records[0].i_rl;
    for (const auto& rec : report.records) best = std::min(best, rec.i_rl);
    for (std::size_t s = 0; s < S; ++s)
      if (report.records[s].i_rl == best) report.robust_indices.push_back(s);
  }
  return report;
}

RunReport analyze_archive(const std::string& archive_path, RunConfig config) {
  if (archive_path.empty())
    throw Error("config-error", "analyze needs an archive path");
  config.archive_csv = archive_path;
  return run_pipeline(config);
}

namespace {

std::string format_or_nan(double v) {
  return std::isnan(v) ? "nan" : io::format_double(v);
}

ordered_json summary_json(std::size_t archive_size, std::size_t scenarios,
                          std::size_t samples, const std::string& problem,
                          std::uint64_t seed, bool i_rs_valid,
                          const std::vector<std::string>& robust_ids,
                          const std::map<std::string, double>* timings) {
  ordered_json j;
  j["problem"] = problem;
  j["seed"] = seed;
  j["samples"] = samples;
  j["archive_size"] = archive_size;
  j["scenario_count"] = scenarios;
  j["i_rs_valid"] = i_rs_valid;
  j["robust_pareto"] = robust_ids;
  if (timings) {
    ordered_json t;
    for (const auto& [k, v] : *timings) t[k] = v;
    j["timings_ms"] = t;
  }
  return j;
}

}  // namespace

void write_outputs(const RunReport& report, const RunConfig& config) {
  namespace fs = std::filesystem;
  fs::create_directories(config.out_dir);
  const fs::path out(config.out_dir);
  const std::size_t S = report.archive.size();
  const std::size_t n = S ? report.archive.entries[0].x.size() : 0;
  const std::size_t m = S ? report.archive.entries[0].nominal.f.size() : 0;
  const std::size_t q = S ? report.archive.entries[0].nominal.g.size() : 0;
  const std::size_t N = report.scenarios.size();

  {
    std::vector<std::string> header = {"id"};
    for (std::size_t l = 0; l < n; ++l)
      header.push_back("x" + std::to_string(l + 1));
    for (std::size_t i = 0; i < m; ++i)
      header.push_back("f" + std::to_string(i + 1));
    for (std::size_t k = 0; k < q; ++k)
      header.push_back("g" + std::to_string(k + 1));
    std::vector<std::vector<std::string>> rows;
    for (const auto& entry : report.archive.entries) {
      std::vector<std::string> row = {entry.id};
      for (double v : entry.x) row.push_back(io::format_double(v));
      for (double v : entry.nominal.f) row.push_back(io::format_double(v));
      for (double v : entry.nominal.g) row.push_back(io::format_double(v));
      rows.push_back(std::move(row));
    }
    io::write_csv((out / "pareto.csv").string(), header, rows);
  }

  {
    std::vector<std::string> header = {"id"};
    for (std::size_t l = 0; l < n; ++l)
      header.push_back("x" + std::to_string(l + 1));
    for (std::size_t i = 0; i < m; ++i)
      header.push_back("f" + std::to_string(i + 1));
    header.push_back("i_rs");
    header.push_back("i_f");
    for (std::size_t j = 0; j < N; ++j)
      header.push_back("i_p_" + std::to_string(j + 1));
    header.push_back("i_rl");
    for (std::size_t i = 0; i < m; ++i)
      header.push_back("delta_f_small_" + std::to_string(i + 1));
    for (std::size_t i = 0; i < m; ++i)
      header.push_back("delta_f_large_" + std::to_string(i + 1));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t s = 0; s < S; ++s) {
      const auto& entry = report.archive.entries[s];
      const auto& rec = report.records[s];
      std::vector<std::string> row = {entry.id};
      for (double v : entry.x) row.push_back(io::format_double(v));
      for (double v : entry.nominal.f) row.push_back(io::format_double(v));
      row.push_back(rec.i_rs_valid ? io::format_double(rec.i_rs) : "nan");
      row.push_back(std::to_string(rec.i_f));
      for (std::size_t j = 0; j < N; ++j) row.push_back(format_or_nan(rec.i_p[j]));
      row.push_back(io::format_double(rec.i_rl));
      for (std::size_t i = 0; i < m; ++i)
        row.push_back(rec.i_rs_valid ? io::format_double(rec.delta_f_small[i])
                                     : "nan");
      for (double v : rec.delta_f_large) row.push_back(io::format_double(v));
      rows.push_back(std::move(row));
    }
    io::write_csv((out / "robustness.csv").string(), header, rows);
  }

  {
    std::vector<std::string> header = {"id", "i_rs", "i_rl"};
    std::vector<std::vector<std::string>> rows;
    for (const auto& rec : report.records)
      rows.push_back({rec.id,
                      rec.i_rs_valid ? io::format_double(rec.i_rs) : "nan",
                      io::format_double(rec.i_rl)});
    io::write_csv((out / "rfspace.csv").string(), header, rows);
  }

  {
    std::vector<std::string> header = {"scenario", "h"};
    const std::size_t r = report.scenarios.scenarios.empty()
                              ? 0
                              : report.scenarios.scenarios[0].p.size();
    for (std::size_t k = 0; k < r; ++k)
      header.push_back("p" + std::to_string(k + 1));
    header.push_back("id");
    for (std::size_t i = 0; i < m; ++i)
      header.push_back("f" + std::to_string(i + 1));
    header.push_back("feasible");
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = 0; j < N; ++j) {
      const auto& sc = report.scenarios.scenarios[j];
      for (std::size_t s = 0; s < S; ++s) {
        const Evaluation& e = report.scenario_evals[j][s];
        std::vector<std::string> row = {std::to_string(j + 1),
                                        io::format_double(sc.probability)};
        for (double v : sc.p) row.push_back(io::format_double(v));
        row.push_back(report.archive.entries[s].id);
        if (e.ok()) {
          for (double v : e.f) row.push_back(io::format_double(v));
          row.push_back(is_feasible(e) ? "1" : "0");
        } else {
          for (std::size_t i = 0; i < m; ++i) row.push_back("nan");
          row.push_back("0");
        }
        rows.push_back(std::move(row));
      }
    }
    io::write_csv((out / "scenario_fronts.csv").string(), header, rows);
  }

  {
    ordered_json j = summary_json(S, N, config.samples, config.problem,
                                  config.seed,
                                  S ? report.records[0].i_rs_valid : true,
                                  report.robust_ids(), &report.timings_ms);
    std::ofstream f(out / "summary.json");
    if (!f) throw Error("config-error", "cannot write summary.json");
    f << j.dump(2) << '\n';
  }
}

std::string rederive_summary(const std::string& out_dir) {
  namespace fs = std::filesystem;
  const fs::path out(out_dir);
  io::Csv pareto = io::read_csv((out / "pareto.csv").string());
  io::Csv rf = io::read_csv((out / "rfspace.csv").string());
  io::Csv fronts = io::read_csv((out / "scenario_fronts.csv").string());

  int id_col = rf.column("id"), rs_col = rf.column("i_rs"),
      rl_col = rf.column("i_rl");
  if (id_col < 0 || rs_col < 0 || rl_col < 0)
    throw Error("schema-mismatch", "rfspace.csv is missing columns");

  bool i_rs_valid = true;
  std::vector<std::pair<double, double>> points;
  std::vector<std::string> ids;
  for (const auto& row : rf.rows) {
    double rs = std::strtod(row[rs_col].c_str(), nullptr);
    double rl = std::strtod(row[rl_col].c_str(), nullptr);
    if (std::isnan(rs)) i_rs_valid = false;
    points.emplace_back(rs, rl);
    ids.push_back(row[id_col]);
  }

  std::vector<std::string> robust;
  if (i_rs_valid) {
    for (std::size_t s : robust_pareto_filter(points)) robust.push_back(ids[s]);
  } else if (!points.empty()) {
    double best = points[0].second;
    for (const auto& p : points) best = std::min(best, p.second);
    for (std::size_t s = 0; s < points.size(); ++s)
      if (points[s].second == best) robust.push_back(ids[s]);
  }

  int sc_col = fronts.column("scenario");
  std::size_t n_scenarios = 0;
  for (const auto& row : fronts.rows)
    if (sc_col >= 0)
      n_scenarios = std::max(
          n_scenarios,
          static_cast<std::size_t>(std::strtoul(row[sc_col].c_str(), nullptr, 10)));

  ordered_json j;
  j["archive_size"] = pareto.rows.size();
  j["scenario_count"] = n_scenarios;
  j["i_rs_valid"] = i_rs_valid;
  j["robust_pareto"] = robust;
  return j.dump(2) + "\n";
}

}  // namespace morop::pipeline
