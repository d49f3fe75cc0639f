// flagmine: command-line front end for mining fuzzy lagged co-clusters.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "flagmine/error.hpp"
#include "flagmine/eval.hpp"
#include "flagmine/io.hpp"
#include "flagmine/matrix.hpp"
#include "flagmine/miner.hpp"
#include "flagmine/postprocess.hpp"
#include "flagmine/synth.hpp"

namespace {

using flagmine::Json;

constexpr const char* kVersion = "0.1.0";

struct ExitError {
  int code;
  std::string kind;
  std::string message;
};

[[noreturn]] void fail(int code, const std::string& kind, const std::string& message) {
  throw ExitError{code, kind, message};
}

struct MineOptions {
  std::string input;
  std::string output = "clusters.json";
  std::string manifest;
  bool additive = false;
  bool trajectories = false;
  std::string layout = "x";
  bool bridges = false;
  bool merge = false;
  std::string objective = "area";
  std::string kernel = "auto";
  int workers = 0;
  flagmine::MinerConfig cfg;
};

flagmine::KernelLevel parse_kernel(const std::string& s) {
  if (s == "auto") return flagmine::KernelLevel::kAuto;
  if (s == "reference") return flagmine::KernelLevel::kReference;
  if (s == "scalar") return flagmine::KernelLevel::kScalar;
  if (s == "avx2") return flagmine::KernelLevel::kAvx2;
  throw flagmine::ConfigError("unknown kernel '" + s + "'");
}

flagmine::TrajectoryLayout parse_layout(const std::string& s) {
  if (s == "x") return flagmine::TrajectoryLayout::kX;
  if (s == "y") return flagmine::TrajectoryLayout::kY;
  if (s == "interleaved") return flagmine::TrajectoryLayout::kInterleaved;
  throw flagmine::ConfigError("unknown layout '" + s + "'");
}

flagmine::Objective parse_objective(const std::string& s, double psi) {
  if (s == "area") return flagmine::Objective::area();
  if (s == "perimeter") return flagmine::Objective::perimeter();
  if (s == "psi") return flagmine::Objective::with_psi(psi);
  throw flagmine::ConfigError("unknown objective '" + s + "'");
}

std::string default_manifest_path(const std::string& output) {
  auto slash = output.find_last_of('/');
  return (slash == std::string::npos ? std::string() : output.substr(0, slash + 1)) + "manifest.json";
}

flagmine::DataMatrix load_input(const MineOptions& o) {
  if (o.trajectories) {
    std::ifstream in(o.input);
    if (!in) throw flagmine::IoError("cannot open " + o.input);
    return flagmine::trajectory_matrix(flagmine::read_trajectories_csv(in), parse_layout(o.layout));
  }
  const auto domain = o.additive ? flagmine::Domain::kAdditive : flagmine::Domain::kMultiplicativeRaw;
  flagmine::DataMatrix a = flagmine::read_matrix_csv_file(o.input, domain);
  return o.additive ? a : flagmine::log_transform(a);
}

Json config_json(const MineOptions& o) {
  const auto& c = o.cfg;
  Json j{{"input", o.input},
         {"additive", o.additive},
         {"trajectories", o.trajectories},
         {"layout", o.layout},
         {"bridges", o.bridges},
         {"merge", o.merge},
         {"w", c.w},
         {"max_fuzz", c.max_fuzz},
         {"beta_I", c.beta_I},
         {"beta_J", c.beta_J},
         {"disc_set_size", c.disc_set_size},
         {"sfz_size", c.sfz_size},
         {"iterations", c.iterations},
         {"disc_prob", c.disc_prob},
         {"objective", o.objective},
         {"psi", c.objective.psi},
         {"anti", c.anti},
         {"nu", c.nu},
         {"seed", c.seed},
         {"kernel", o.kernel}};
  if (c.beta_J_upper) j["beta_J_upper"] = *c.beta_J_upper;
  return j;
}

MineOptions options_from_config(const Json& j) {
  MineOptions o;
  try {
    o.input = j.at("input").get<std::string>();
    o.additive = j.at("additive").get<bool>();
    o.trajectories = j.at("trajectories").get<bool>();
    o.layout = j.at("layout").get<std::string>();
    o.bridges = j.at("bridges").get<bool>();
    o.merge = j.at("merge").get<bool>();
    o.cfg.w = j.at("w").get<double>();
    o.cfg.max_fuzz = j.at("max_fuzz").get<int>();
    o.cfg.beta_I = j.at("beta_I").get<double>();
    o.cfg.beta_J = j.at("beta_J").get<double>();
    o.cfg.disc_set_size = j.at("disc_set_size").get<int>();
    o.cfg.sfz_size = j.at("sfz_size").get<int>();
    o.cfg.iterations = j.at("iterations").get<std::uint64_t>();
    o.cfg.disc_prob = j.at("disc_prob").get<double>();
    o.objective = j.at("objective").get<std::string>();
    o.cfg.objective.psi = j.at("psi").get<double>();
    o.cfg.anti = j.at("anti").get<bool>();
    o.cfg.nu = j.at("nu").get<double>();
    o.cfg.seed = j.at("seed").get<std::uint64_t>();
    o.kernel = j.at("kernel").get<std::string>();
    if (j.contains("beta_J_upper")) o.cfg.beta_J_upper = j.at("beta_J_upper").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw flagmine::ParseError(std::string("manifest config: ") + e.what());
  }
  return o;
}

void run_mine(MineOptions o, const std::string& command) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  o.cfg.objective = parse_objective(o.objective, o.cfg.objective.psi);
  o.cfg.kernel = parse_kernel(o.kernel);
  o.cfg.workers = o.workers > 0 ? o.workers : flagmine::workers_from_env(1);

  const flagmine::DataMatrix a = load_input(o);
  const auto load_done = Clock::now();
  flagmine::MineStats stats;
  std::vector<flagmine::FuzzyLaggedCluster> clusters = flagmine::mine(a, o.cfg, &stats);
  const auto mine_done = Clock::now();

  if (o.bridges) {
    for (auto& c : clusters) {
      auto sel = flagmine::max_nonintersecting_columns(c, &a);
      if (sel.cols.size() == c.cols.size()) continue;
      c = flagmine::restrict_columns(c, sel.cols);
      c.achieved_error = flagmine::verify_cluster(a, c, 2 * o.cfg.w).achieved_error;
      c.objective = flagmine::objective_score(static_cast<int>(c.rows.size()),
                                              static_cast<int>(c.cols.size()), o.cfg.objective);
    }
  }
  Json doc = Json::parse(flagmine::clusters_to_string(clusters));
  if (o.merge) {
    Json groups = Json::array();
    for (const auto& g : flagmine::merge_clusters(clusters)) {
      std::vector<int> rows = g.rows, members = g.members;
      for (int& r : rows) ++r;
      for (int& k : members) ++k;
      groups.push_back({{"rows", rows}, {"members", members}});
    }
    doc["groups"] = groups;
  }
  flagmine::write_text_file(o.output, doc.dump(2) + "\n");
  const auto end = Clock::now();

  auto ms = [](Clock::duration d) { return std::chrono::duration<double, std::milli>(d).count(); };
  Json manifest{{"command", command},
                {"tool_version", kVersion},
                {"config", config_json(o)},
                {"input", o.input},
                {"output", o.output},
                {"seed", o.cfg.seed},
                {"workers", o.cfg.workers},
                {"iterations", stats.iterations},
                {"raw_clusters", stats.raw_clusters},
                {"verify_failures", stats.verify_failures},
                {"clusters", clusters.size()},
                {"timings_ms",
                 {{"wall", ms(end - start)},
                  {"load", ms(load_done - start)},
                  {"mine", ms(mine_done - load_done)},
                  {"row_phase_cpu", stats.phases.row_phase_ns / 1e6},
                  {"column_phase_cpu", stats.phases.col_phase_ns / 1e6}}}};
  flagmine::write_text_file(o.manifest.empty() ? default_manifest_path(o.output) : o.manifest,
                            manifest.dump(2) + "\n");
}

void add_mine_flags(CLI::App* cmd, MineOptions& o) {
  cmd->add_option("-o,--output", o.output, "Cluster JSON output path");
  cmd->add_option("--manifest", o.manifest, "Manifest path (default: next to the output)");
  cmd->add_option("-w,--error", o.cfg.w, "Error bound w in the mining domain");
  cmd->add_option("-F,--max-fuzz", o.cfg.max_fuzz, "Maximum fuzziness F");
  cmd->add_option("--min-rows", o.cfg.beta_I, "Minimum row fraction beta_I");
  cmd->add_option("--min-cols", o.cfg.beta_J, "Minimum column fraction beta_J");
  cmd->add_option("--max-cols", o.cfg.beta_J_upper, "Upper column fraction for the theoretical |S|");
  cmd->add_option("--disc-size", o.cfg.disc_set_size, "Discriminating set size |S| (0: default)");
  cmd->add_option("--sfz", o.cfg.sfz_size, "Zero-fuzz subset size |S0|");
  cmd->add_option("--iterations", o.cfg.iterations, "Iteration count (0: from the hit-rate formula)");
  cmd->add_option("--disc-prob", o.cfg.disc_prob, "Discriminating probability (0: calibrated)");
  cmd->add_option("--objective", o.objective, "area | perimeter | psi");
  cmd->add_option("--psi", o.cfg.objective.psi, "Row weight for the psi objective");
  cmd->add_flag("--anti", o.cfg.anti, "Also admit anti-correlated rows");
  cmd->add_option("--nu", o.cfg.nu, "Fraction of seed columns a row must match");
  cmd->add_option("--seed", o.cfg.seed, "Master seed");
  cmd->add_option("--workers", o.workers, "Worker threads (default: FLAGMINE_WORKERS or 1)");
  cmd->add_option("--kernel", o.kernel, "auto | reference | scalar | avx2");
  cmd->add_flag("--additive", o.additive, "Input is already additive; skip the log transform");
  cmd->add_flag("--trajectories", o.trajectories, "Input is a trajectory CSV (object_id,t,x,y)");
  cmd->add_option("--layout", o.layout, "Trajectory columns: x | y | interleaved");
  cmd->add_flag("--bridges", o.bridges, "Keep a maximum non-intersecting column set per cluster");
  cmd->add_flag("--merge", o.merge, "Add row groups merged over shared rows");
}

std::vector<std::vector<int>> truth_partition(const std::vector<int>& labels) {
  std::map<int, std::vector<int>> by;
  for (std::size_t r = 0; r < labels.size(); ++r) by[labels[r]].push_back(static_cast<int>(r));
  std::vector<std::vector<int>> out;
  for (auto& [l, rows] : by) out.push_back(std::move(rows));
  return out;
}

struct EvalOptions {
  std::string clusters;
  std::string truth;
  std::string labels;
  std::string trajectories;
  std::string output = "report.json";
  std::string csv;
  std::vector<double> eps;
  std::vector<int> min_pts;
};

void run_eval(const EvalOptions& o) {
  const auto clusters = flagmine::read_clusters_file(o.clusters);
  Json report{{"clusters", clusters.size()}};
  std::vector<std::pair<std::string, double>> flat{{"clusters", static_cast<double>(clusters.size())}};

  if (!o.truth.empty()) {
    const flagmine::GroundTruth truth = flagmine::read_truth_file(o.truth);
    const flagmine::CellSet truth_cells = flagmine::cell_set(truth.cluster);
    double best = 0.0, top = 0.0;
    for (std::size_t k = 0; k < clusters.size(); ++k) {
      double v = flagmine::rnia_complement(flagmine::cell_set(clusters[k]), truth_cells);
      if (k == 0) top = v;
      best = std::max(best, v);
    }
    std::vector<int> predicted;
    for (const auto& c : clusters) predicted.insert(predicted.end(), c.rows.begin(), c.rows.end());
    const double f1 = flagmine::f1_score(predicted, truth.cluster.rows);
    report["rnia_complement_best"] = best;
    report["rnia_complement_top"] = top;
    report["f1_rows"] = f1;
    flat.emplace_back("rnia_complement_best", best);
    flat.emplace_back("rnia_complement_top", top);
    flat.emplace_back("f1_rows", f1);
  }

  std::vector<int> labels;
  if (!o.labels.empty()) {
    std::ifstream in(o.labels);
    if (!in) throw flagmine::IoError("cannot open " + o.labels);
    labels = flagmine::read_labels_csv(in);
    const auto truth = truth_partition(labels);
    std::vector<std::vector<int>> groups;
    std::vector<std::vector<int>> group_labels;
    for (const auto& g : flagmine::merge_clusters(clusters)) {
      std::vector<int> ls;
      for (int r : g.rows) {
        if (r < 0 || r >= static_cast<int>(labels.size())) {
          throw flagmine::ParseError("cluster row " + std::to_string(r + 1) + " has no label");
        }
        ls.push_back(labels[r]);
      }
      groups.push_back(g.rows);
      group_labels.push_back(std::move(ls));
    }
    const int k = static_cast<int>(truth.size());
    const double entropy = k >= 2 ? flagmine::normalized_entropy(group_labels, k) : 0.0;
    const double cov = flagmine::coverage(groups, truth);
    const double f1 = flagmine::best_match_f1(groups, truth);
    report["groups"] = groups.size();
    report["entropy"] = entropy;
    report["coverage"] = cov;
    report["f1_groups"] = f1;
    flat.emplace_back("groups", static_cast<double>(groups.size()));
    flat.emplace_back("entropy", entropy);
    flat.emplace_back("coverage", cov);
    flat.emplace_back("f1_groups", f1);

    if (!o.trajectories.empty()) {
      std::ifstream tin(o.trajectories);
      if (!tin) throw flagmine::IoError("cannot open " + o.trajectories);
      const auto points = flagmine::trajectory_points(flagmine::read_trajectories_csv(tin));
      if (points.size() != labels.size()) throw flagmine::ParseError("labels and trajectories differ in size");
      Json rows = Json::array();
      for (double eps : o.eps) {
        for (int mp : o.min_pts) {
          const auto dg = flagmine::groups_from_labels(flagmine::dbscan(points, {eps, mp}));
          const double df1 = flagmine::best_match_f1(dg, truth);
          rows.push_back({{"eps", eps}, {"min_pts", mp}, {"clusters", dg.size()}, {"f1", df1}});
        }
      }
      report["dbscan"] = rows;
    }
  } else if (!o.trajectories.empty()) {
    throw flagmine::ConfigError("--trajectories needs --labels");
  }

  flagmine::write_text_file(o.output, report.dump(2) + "\n");
  if (!o.csv.empty()) {
    std::ostringstream ss;
    ss << "metric,value\n";
    for (const auto& [k, v] : flat) ss << k << ',' << flagmine::format_double(v) << '\n';
    flagmine::write_text_file(o.csv, ss.str());
  }
}

struct ProbeOptions {
  std::vector<long long> m{100}, n{100}, I{2}, J{2};
  std::vector<double> w{0.01};
  std::vector<int> F{0};
  std::string output;
};

void run_probe(const ProbeOptions& o) {
  std::ostringstream ss;
  ss << "m,n,I,J,w,F,probability\n";
  for (long long m : o.m)
    for (long long n : o.n)
      for (long long i : o.I)
        for (long long j : o.J)
          for (double w : o.w)
            for (int f : o.F) {
              ss << m << ',' << n << ',' << i << ',' << j << ',' << flagmine::format_double(w) << ','
                 << f << ',' << flagmine::format_double(flagmine::artifact_probability(m, n, i, j, w, f))
                 << '\n';
            }
  if (o.output.empty()) {
    std::cout << ss.str();
  } else {
    flagmine::write_text_file(o.output, ss.str());
  }
}

struct BenchOptions {
  int m = 200;
  std::vector<int> sizes{100, 200};
  int runs = 5;
  std::uint64_t iterations = 200;
  double w = 0.01;
  int F = 1;
  int disc_size = 5;
  int sfz = 3;
  std::uint64_t seed = 1;
  std::string kernel = "auto";
  std::string output;
};

void run_bench(const BenchOptions& o) {
  std::ostringstream ss;
  ss << "m,n,run,iterations,kernel,row_phase_ns,column_phase_ns,row_ns_per_iteration\n";
  for (int n : o.sizes) {
    for (int run = 0; run < o.runs; ++run) {
      const std::uint64_t s = flagmine::derive_seed(o.seed, "bench", static_cast<std::uint64_t>(run));
      const auto a = flagmine::gen_random_matrix(o.m, n, 0.0, 1.0, s);
      flagmine::MinerConfig cfg;
      cfg.w = o.w;
      cfg.max_fuzz = o.F;
      // Thresholds of at least two rows and columns keep tiny sizes valid.
      cfg.beta_I = std::max(0.1, 2.0 / o.m);
      cfg.beta_J = std::max(0.1, 2.0 / n);
      cfg.disc_set_size = std::min(o.disc_size, n);
      cfg.sfz_size = o.sfz;
      cfg.iterations = o.iterations;
      cfg.seed = s;
      cfg.kernel = parse_kernel(o.kernel);
      flagmine::MineStats stats;
      flagmine::mine(a, cfg, &stats);
      const auto rc = flagmine::resolve_config(a, cfg);
      ss << o.m << ',' << n << ',' << run << ',' << o.iterations << ',' << flagmine::kernel_name(rc.kernel)
         << ',' << stats.phases.row_phase_ns << ',' << stats.phases.col_phase_ns << ','
         << flagmine::format_double(static_cast<double>(stats.phases.row_phase_ns) /
                                    static_cast<double>(o.iterations))
         << '\n';
    }
  }
  if (o.output.empty()) {
    std::cout << ss.str();
  } else {
    flagmine::write_text_file(o.output, ss.str());
  }
}

int report_error(int code, const std::string& kind, const std::string& message) {
  Json err{{"error", kind}, {"message", message}, {"exit_code", code}};
  std::cerr << err.dump() << "\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mine fuzzy lagged co-clusters from real-valued matrices"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  MineOptions mine_opts;
  auto* mine = app.add_subcommand("mine", "Mine clusters from a matrix CSV");
  mine->add_option("matrix", mine_opts.input, "Input matrix CSV")->required();
  add_mine_flags(mine, mine_opts);

  std::string replay_manifest, replay_output;
  auto* replay = app.add_subcommand("replay", "Re-run the mining recorded in a manifest");
  replay->add_option("manifest", replay_manifest, "Manifest JSON")->required();
  replay->add_option("-o,--output", replay_output, "Cluster JSON output path");
  int replay_workers = 0;
  replay->add_option("--workers", replay_workers, "Worker threads");

  auto* generate = app.add_subcommand("generate", "Generate synthetic data");
  generate->require_subcommand(1);
  int gm = 100, gn = 100;
  double glo = 100.0, ghi = 1100.0;
  std::uint64_t gseed = 0;
  std::string gout, gtruth;
  auto* gen_matrix = generate->add_subcommand("matrix", "Uniform random matrix");
  gen_matrix->add_option("m", gm)->required();
  gen_matrix->add_option("n", gn)->required();
  gen_matrix->add_option("--lo", glo);
  gen_matrix->add_option("--hi", ghi);
  gen_matrix->add_option("--seed", gseed);
  gen_matrix->add_option("-o,--output", gout)->required();

  flagmine::PlantSpec plant;
  auto* gen_plant = generate->add_subcommand("plant", "Random matrix with one planted cluster");
  gen_plant->add_option("m", gm)->required();
  gen_plant->add_option("n", gn)->required();
  gen_plant->add_option("--beta-I", plant.beta_I);
  gen_plant->add_option("--beta-J", plant.beta_J);
  gen_plant->add_option("-w,--error", plant.w);
  gen_plant->add_option("-F,--max-fuzz", plant.F);
  gen_plant->add_option("--max-lag", plant.max_lag);
  gen_plant->add_option("--lo", plant.lo);
  gen_plant->add_option("--hi", plant.hi);
  gen_plant->add_option("--seed", gseed);
  gen_plant->add_option("-o,--output", gout)->required();
  gen_plant->add_option("--truth", gtruth, "Ground-truth JSON path (default: <output>.truth.json)");

  flagmine::TrajectoryParams traj;
  std::string glabels;
  auto* gen_traj = generate->add_subcommand("trajectories", "Grouped synthetic trajectories");
  gen_traj->add_option("--groups", traj.groups);
  gen_traj->add_option("--members", traj.members);
  gen_traj->add_option("--timesteps", traj.timesteps);
  gen_traj->add_option("--lag-spread", traj.lag_spread);
  gen_traj->add_option("--fuzz-spread", traj.fuzz_spread);
  gen_traj->add_option("--noise", traj.noise);
  gen_traj->add_option("--step", traj.step);
  gen_traj->add_option("--spread", traj.spread);
  gen_traj->add_option("--seed", gseed);
  gen_traj->add_option("-o,--output", gout)->required();
  gen_traj->add_option("--labels", glabels, "Labels CSV path (default: <output>.labels.csv)");

  ProbeOptions probe_opts;
  auto* probe = app.add_subcommand("probe", "Artifact-probability grid as CSV (w is a range fraction)");
  probe->add_option("--m", probe_opts.m)->delimiter(',');
  probe->add_option("--n", probe_opts.n)->delimiter(',');
  probe->add_option("--I", probe_opts.I)->delimiter(',');
  probe->add_option("--J", probe_opts.J)->delimiter(',');
  probe->add_option("-w,--error", probe_opts.w)->delimiter(',');
  probe->add_option("-F,--max-fuzz", probe_opts.F)->delimiter(',');
  probe->add_option("-o,--output", probe_opts.output);

  EvalOptions eval_opts;
  auto* eval = app.add_subcommand("eval", "Score mined clusters against ground truth");
  eval->add_option("clusters", eval_opts.clusters, "Cluster JSON")->required();
  eval->add_option("--truth", eval_opts.truth, "Planted-cluster truth JSON");
  eval->add_option("--labels", eval_opts.labels, "Row labels CSV");
  eval->add_option("--trajectories", eval_opts.trajectories, "Trajectory CSV for the DBSCAN rows");
  eval->add_option("--eps", eval_opts.eps, "DBSCAN Eps values")->delimiter(',');
  eval->add_option("--min-pts", eval_opts.min_pts, "DBSCAN MinPts values")->delimiter(',');
  eval->add_option("-o,--output", eval_opts.output);
  eval->add_option("--csv", eval_opts.csv);

  BenchOptions bench_opts;
  auto* bench = app.add_subcommand("bench", "Per-phase timings over matrix sizes");
  bench->add_option("--m", bench_opts.m);
  bench->add_option("--sizes", bench_opts.sizes)->delimiter(',');
  bench->add_option("--runs", bench_opts.runs);
  bench->add_option("--iterations", bench_opts.iterations);
  bench->add_option("-w,--error", bench_opts.w);
  bench->add_option("-F,--max-fuzz", bench_opts.F);
  bench->add_option("--disc-size", bench_opts.disc_size);
  bench->add_option("--sfz", bench_opts.sfz);
  bench->add_option("--seed", bench_opts.seed);
  bench->add_option("--kernel", bench_opts.kernel);
  bench->add_option("-o,--output", bench_opts.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error(3, "ConfigError", e.what());
  }

  std::string command;
  for (int k = 0; k < argc; ++k) command += (k ? " " : "") + std::string(argv[k]);

  try {
    if (*mine) {
      run_mine(mine_opts, command);
    } else if (*replay) {
      Json manifest;
      try {
        manifest = Json::parse(flagmine::read_text_file(replay_manifest));
      } catch (const nlohmann::json::exception& e) {
        throw flagmine::ParseError(std::string("invalid manifest: ") + e.what());
      }
      if (!manifest.contains("config")) throw flagmine::ParseError("manifest has no 'config'");
      MineOptions o = options_from_config(manifest["config"]);
      o.output = replay_output.empty() ? manifest.value("output", std::string("clusters.json")) : replay_output;
      o.manifest = o.output + ".manifest.json";
      o.workers = replay_workers;
      run_mine(o, command);
    } else if (*gen_matrix) {
      flagmine::write_matrix_csv_file(gout, flagmine::gen_random_matrix(gm, gn, glo, ghi, gseed));
    } else if (*gen_plant) {
      plant.seed = gseed;
      const auto base = flagmine::gen_random_matrix(gm, gn, plant.lo, plant.hi, gseed);
      const auto res = flagmine::plant_cluster(base, plant);
      flagmine::write_matrix_csv_file(gout, res.matrix);
      flagmine::write_text_file(gtruth.empty() ? gout + ".truth.json" : gtruth,
                                flagmine::truth_to_json(res.truth).dump(2) + "\n");
    } else if (*gen_traj) {
      traj.seed = gseed;
      const auto set = flagmine::gen_trajectory_groups(traj);
      std::ostringstream t, l;
      flagmine::write_trajectories_csv(t, set);
      flagmine::write_labels_csv(l, set.labels);
      flagmine::write_text_file(gout, t.str());
      flagmine::write_text_file(glabels.empty() ? gout + ".labels.csv" : glabels, l.str());
    } else if (*probe) {
      run_probe(probe_opts);
    } else if (*eval) {
      run_eval(eval_opts);
    } else if (*bench) {
      run_bench(bench_opts);
    }
  } catch (const flagmine::IoError& e) {
    return report_error(2, e.code(), e.what());
  } catch (const flagmine::ParseError& e) {
    return report_error(2, e.code(), e.what());
  } catch (const flagmine::NonPositiveEntry& e) {
    return report_error(2, e.code(), e.what());
  } catch (const flagmine::Error& e) {
    return report_error(3, e.code(), e.what());
  } catch (const std::exception& e) {
    return report_error(1, "InternalError", e.what());
  }
  return 0;
}
