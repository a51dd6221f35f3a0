// Command-line front end: exact transition matrices and convergence metrics,
// Monte Carlo runs, verification suites, and sweep tables for plotting.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <fstream>
#include <algorithm>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eca/analysis.hpp"
#include "eca/config.hpp"
#include "eca/prng.hpp"
#include "eca/rational.hpp"
#include "eca/simulate.hpp"
#include "eca/transition.hpp"
#include "eca/verify.hpp"

namespace {

using eca::Rational;
using Json = nlohmann::ordered_json;

constexpr int kExitVerifyFailure = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty() || out_path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw std::runtime_error("cannot open output file: " + out_path);
  file << text;
}

Rational parse_epsilon(const std::string& text) {
  Rational eps;
  try {
    eps = eca::parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (eps < 0 || eps > 1) throw UsageError("epsilon must lie in [0, 1]");
  return eps;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    values.push_back(std::stoi(item));
  }
  return values;
}

// "2..16" (inclusive range), "4", or "2,4,8".
std::vector<int> parse_station_spec(const std::string& text) {
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    std::vector<int> values;
    for (int n = lo; n <= hi; ++n) values.push_back(n);
    return values;
  }
  return parse_int_list(text);
}

std::uint64_t sweep_point_seed(std::uint64_t base_seed, int slots, int stations) {
  return eca::split_mix64_finalize(base_seed + (static_cast<std::uint64_t>(slots) << 32) +
                                   static_cast<std::uint64_t>(stations));
}

// ---------------------------------------------------------------------------
// matrix

int cmd_matrix(int slots, int stations, const std::string& epsilon_text,
               const std::string& format, const std::string& out_path) {
  const Rational eps = parse_epsilon(epsilon_text);
  const eca::SystemConfig config(slots, stations, eps);
  const eca::TransitionMatrix matrix = eca::transition_matrix_for(config);
  const int dim = matrix.dimension();

  std::ostringstream os;
  if (format == "csv") {
    os << "d,delta,prob_exact,prob_decimal\n";
    for (int d = 0; d < dim; ++d)
      for (int delta = 0; delta < dim; ++delta)
        os << d << ',' << delta << ',' << eca::format_exact(matrix.at(d, delta)) << ','
           << eca::format_decimal(matrix.at(d, delta)) << '\n';
  } else {
    Json doc;
    doc["command"] = "matrix";
    doc["slots"] = slots;
    doc["stations"] = stations;
    doc["epsilon"] = eca::format_exact(eps);
    Json exact = Json::array();
    Json decimal = Json::array();
    for (int d = 0; d < dim; ++d) {
      Json row_e = Json::array();
      Json row_d = Json::array();
      for (int delta = 0; delta < dim; ++delta) {
        row_e.push_back(eca::format_exact(matrix.at(d, delta)));
        row_d.push_back(matrix.at(d, delta).convert_to<double>());
      }
      exact.push_back(std::move(row_e));
      decimal.push_back(std::move(row_d));
    }
    doc["entries_exact"] = std::move(exact);
    doc["entries_decimal"] = std::move(decimal);
    os << doc.dump(2) << '\n';
  }
  write_output(os.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// expect

int cmd_expect(int slots, int stations, int start_state, const std::string& format,
               const std::string& out_path) {
  const eca::SystemConfig config(slots, stations);
  const eca::FundamentalMatrix fm = eca::fundamental_matrix(eca::build_transition_matrix(config));
  const Rational steps = eca::expected_steps_to_absorption(fm, start_state);

  std::ostringstream os;
  if (format == "csv") {
    os << "B,N,start,expected_steps_exact,expected_steps_decimal\n";
    os << slots << ',' << stations << ',' << start_state << ',' << eca::format_exact(steps)
       << ',' << eca::format_decimal(steps) << '\n';
  } else {
    Json doc;
    doc["command"] = "expect";
    doc["slots"] = slots;
    doc["stations"] = stations;
    doc["start"] = start_state;
    doc["expected_steps"] = {{"exact", eca::format_exact(steps)},
                             {"decimal", steps.convert_to<double>()}};
    os << doc.dump(2) << '\n';
  }
  write_output(os.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// stationary

int cmd_stationary(int slots, int stations, const std::string& epsilon_text,
                   const std::string& format, const std::string& out_path) {
  const Rational eps = parse_epsilon(epsilon_text);
  if (eps == 0)
    throw UsageError("stationary requires 0 < epsilon < 1; use `expect` for the ideal channel");
  if (eps == 1) throw UsageError("stationary requires 0 < epsilon < 1");
  const eca::SystemConfig config(slots, stations, eps);
  const eca::TransitionMatrix matrix = eca::transition_matrix_for(config);
  const eca::StateDistribution pi = eca::stationary_distribution(matrix);
  const Rational successes = eca::expected_successes_per_round(pi);

  std::ostringstream os;
  if (format == "csv") {
    os << "state,pi_exact,pi_decimal\n";
    for (int s = 0; s < pi.states(); ++s)
      os << s << ',' << eca::format_exact(pi.probs[s]) << ','
         << eca::format_decimal(pi.probs[s]) << '\n';
    os << "expected_successes," << eca::format_exact(successes) << ','
       << eca::format_decimal(successes) << '\n';
  } else {
    Json doc;
    doc["command"] = "stationary";
    doc["slots"] = slots;
    doc["stations"] = stations;
    doc["epsilon"] = eca::format_exact(eps);
    Json exact = Json::array();
    Json decimal = Json::array();
    for (int s = 0; s < pi.states(); ++s) {
      exact.push_back(eca::format_exact(pi.probs[s]));
      decimal.push_back(pi.probs[s].convert_to<double>());
    }
    doc["pi_exact"] = std::move(exact);
    doc["pi_decimal"] = std::move(decimal);
    doc["expected_successes_per_round"] = {{"exact", eca::format_exact(successes)},
                                           {"decimal", successes.convert_to<double>()}};
    os << doc.dump(2) << '\n';
  }
  write_output(os.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// simulate

int cmd_simulate(int slots, int stations, const std::string& epsilon_text, std::uint64_t runs,
                 bool runs_set, std::uint64_t rounds, bool rounds_set, std::uint64_t seed,
                 std::uint64_t round_cap, bool trace, const std::string& format,
                 const std::string& out_path) {
  const Rational eps = parse_epsilon(epsilon_text);
  const eca::SystemConfig config(slots, stations, eps);

  std::ostringstream os;
  if (eps == 0) {
    if (rounds_set)
      throw UsageError("--rounds applies to error-channel runs; use --runs when epsilon = 0");
    const eca::BatchResult result = eca::run_batch(config, seed, runs, round_cap);
    if (format == "csv") {
      os << "B,N,epsilon,runs,completed_runs,capped_runs,mean_rounds,stddev_rounds,"
            "stderr_rounds,seed,round_cap\n";
      os << slots << ',' << stations << ",0," << result.requested_runs << ','
         << result.completed_runs << ',' << result.capped_runs << ',';
      if (result.completed_runs > 0) os << eca::format_decimal(result.mean);
      os << ',';
      if (result.completed_runs > 1) os << eca::format_decimal(result.stddev);
      os << ',';
      if (result.completed_runs > 1) os << eca::format_decimal(result.stderr_mean);
      os << ',' << seed << ',' << round_cap << '\n';
    } else {
      Json doc;
      doc["command"] = "simulate";
      doc["mode"] = "convergence";
      doc["slots"] = slots;
      doc["stations"] = stations;
      doc["epsilon"] = "0";
      doc["runs"] = result.requested_runs;
      doc["completed_runs"] = result.completed_runs;
      doc["capped_runs"] = result.capped_runs;
      doc["mean_rounds"] =
          result.completed_runs > 0 ? Json(result.mean) : Json(nullptr);
      doc["stddev_rounds"] =
          result.completed_runs > 1 ? Json(result.stddev) : Json(nullptr);
      doc["stderr_rounds"] =
          result.completed_runs > 1 ? Json(result.stderr_mean) : Json(nullptr);
      doc["seed"] = seed;
      doc["round_cap"] = round_cap;
      Json histogram = Json::object();
      for (const auto& [round, count] : result.histogram)
        histogram[std::to_string(round)] = count;
      doc["histogram"] = std::move(histogram);
      os << doc.dump(2) << '\n';
    }
  } else {
    if (runs_set)
      throw UsageError("--runs applies to convergence batches; use --rounds when epsilon > 0");
    const eca::ErrorChannelResult result = eca::run_error_channel(config, seed, rounds);
    if (format == "csv") {
      if (trace) {
        os << "round,successes\n";
        for (std::size_t t = 0; t < result.successes_per_round.size(); ++t)
          os << (t + 1) << ',' << result.successes_per_round[t] << '\n';
      } else {
        os << "B,N,epsilon,rounds,mean_successes,stderr_mean,seed\n";
        os << slots << ',' << stations << ',' << eca::format_exact(eps) << ',' << result.rounds
           << ',' << eca::format_decimal(result.mean_successes) << ','
           << eca::format_decimal(result.stderr_mean) << ',' << seed << '\n';
      }
    } else {
      Json doc;
      doc["command"] = "simulate";
      doc["mode"] = "error_channel";
      doc["slots"] = slots;
      doc["stations"] = stations;
      doc["epsilon"] = eca::format_exact(eps);
      doc["rounds"] = result.rounds;
      doc["mean_successes"] = result.mean_successes;
      doc["stderr_mean"] = result.stderr_mean;
      doc["seed"] = seed;
      if (trace) doc["successes_per_round"] = result.successes_per_round;
      os << doc.dump(2) << '\n';
    }
  }
  write_output(os.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepPointResult {
  int slots = 0;
  int stations = 0;
  bool feasible = false;
  std::optional<Rational> analytic;
  std::optional<double> sim_mean;
  std::optional<double> sim_stderr;
  std::uint64_t capped_runs = 0;
  std::uint64_t seed = 0;
};

int cmd_sweep(const std::string& slots_spec, const std::string& stations_spec,
              const std::string& epsilon_text, const std::string& mode, std::uint64_t runs,
              std::uint64_t rounds, std::uint64_t base_seed, std::uint64_t round_cap,
              const std::string& format, const std::string& out_path) {
  const Rational eps = parse_epsilon(epsilon_text);
  std::vector<int> slots_list;
  std::vector<int> stations_list;
  try {
    slots_list = parse_int_list(slots_spec);
    stations_list = parse_station_spec(stations_spec);
  } catch (const std::exception&) {
    throw UsageError("malformed --slots or --stations specification");
  }
  if (slots_list.empty()) throw UsageError("empty slots list");
  if (stations_list.empty()) throw UsageError("empty stations range");
  for (int b : slots_list)
    if (b < 1) throw UsageError("slots must be >= 1");
  for (int n : stations_list)
    if (n < 1) throw UsageError("stations must be >= 1");
  const bool analytic_on = mode == "analytic" || mode == "both";
  const bool simulate_on = mode == "simulate" || mode == "both";

  struct PointSpec {
    int slots;
    int stations;
  };
  std::vector<PointSpec> points;
  for (int b : slots_list)
    for (int n : stations_list) points.push_back({b, n});
  std::sort(points.begin(), points.end(), [](const PointSpec& a, const PointSpec& b) {
    return a.slots != b.slots ? a.slots < b.slots : a.stations < b.stations;
  });

  auto eval_point = [&](PointSpec p) -> SweepPointResult {
    SweepPointResult r;
    r.slots = p.slots;
    r.stations = p.stations;
    r.feasible = p.stations <= p.slots;
    r.seed = sweep_point_seed(base_seed, p.slots, p.stations);
    if (analytic_on && r.feasible) {
      const eca::SystemConfig config(p.slots, p.stations, eps);
      if (eps == 0) {
        const auto fm = eca::fundamental_matrix(eca::build_transition_matrix(config));
        r.analytic = eca::expected_steps_to_absorption(fm, 0);
      } else {
        const auto pi = eca::stationary_distribution(eca::transition_matrix_for(config));
        r.analytic = eca::expected_successes_per_round(pi);
      }
    }
    if (simulate_on) {
      if (eps == 0) {
        const eca::SystemConfig config(p.slots, p.stations);
        const eca::BatchResult batch = eca::run_batch(config, r.seed, runs, round_cap);
        r.capped_runs = batch.capped_runs;
        if (batch.completed_runs > 0) r.sim_mean = batch.mean;
        if (batch.completed_runs > 1) r.sim_stderr = batch.stderr_mean;
      } else {
        const eca::SystemConfig config(p.slots, p.stations, eps);
        const eca::ErrorChannelResult run = eca::run_error_channel(config, r.seed, rounds);
        r.sim_mean = run.mean_successes;
        r.sim_stderr = run.stderr_mean;
      }
    }
    return r;
  };

  // Points are independent; evaluate concurrently and emit in sorted order.
  std::vector<std::future<SweepPointResult>> futures;
  futures.reserve(points.size());
  for (const PointSpec& p : points)
    futures.push_back(std::async(std::launch::async, eval_point, p));
  std::vector<SweepPointResult> results;
  results.reserve(points.size());
  for (auto& f : futures) results.push_back(f.get());

  std::ostringstream os;
  if (format == "csv") {
    if (eps == 0) {
      os << "B,N,expected_steps_analytic,mean_steps_sim,stderr_sim,runs,seed\n";
      for (const auto& r : results) {
        os << r.slots << ',' << r.stations << ',';
        if (r.analytic) os << eca::format_decimal(*r.analytic);
        os << ',';
        if (r.sim_mean) os << eca::format_decimal(*r.sim_mean);
        os << ',';
        if (r.sim_stderr) os << eca::format_decimal(*r.sim_stderr);
        os << ',' << (simulate_on ? runs : 0) << ',' << r.seed << '\n';
      }
    } else {
      os << "B,N,epsilon,avg_success_analytic,avg_success_sim,stderr_sim,rounds,seed\n";
      for (const auto& r : results) {
        os << r.slots << ',' << r.stations << ',' << eca::format_exact(eps) << ',';
        if (r.analytic) os << eca::format_decimal(*r.analytic);
        os << ',';
        if (r.sim_mean) os << eca::format_decimal(*r.sim_mean);
        os << ',';
        if (r.sim_stderr) os << eca::format_decimal(*r.sim_stderr);
        os << ',' << (simulate_on ? rounds : 0) << ',' << r.seed << '\n';
      }
    }
  } else {
    Json doc;
    doc["command"] = "sweep";
    doc["epsilon"] = eca::format_exact(eps);
    doc["mode"] = mode;
    doc["base_seed"] = base_seed;
    if (eps == 0)
      doc["runs"] = simulate_on ? runs : 0;
    else
      doc["rounds"] = simulate_on ? rounds : 0;
    Json arr = Json::array();
    for (const auto& r : results) {
      Json p;
      p["B"] = r.slots;
      p["N"] = r.stations;
      p["feasible"] = r.feasible;
      if (eps == 0) {
        p["expected_steps_analytic"] =
            r.analytic ? Json({{"exact", eca::format_exact(*r.analytic)},
                               {"decimal", r.analytic->convert_to<double>()}})
                       : Json(nullptr);
        p["mean_steps_sim"] = r.sim_mean ? Json(*r.sim_mean) : Json(nullptr);
        p["stderr_sim"] = r.sim_stderr ? Json(*r.sim_stderr) : Json(nullptr);
        p["capped_runs"] = r.capped_runs;
      } else {
        p["avg_success_analytic"] =
            r.analytic ? Json({{"exact", eca::format_exact(*r.analytic)},
                               {"decimal", r.analytic->convert_to<double>()}})
                       : Json(nullptr);
        p["avg_success_sim"] = r.sim_mean ? Json(*r.sim_mean) : Json(nullptr);
        p["stderr_sim"] = r.sim_stderr ? Json(*r.sim_stderr) : Json(nullptr);
      }
      p["seed"] = r.seed;
      arr.push_back(std::move(p));
    }
    doc["points"] = std::move(arr);
    os << doc.dump(2) << '\n';
  }
  write_output(os.str(), out_path);
  return 0;
}

// ---------------------------------------------------------------------------
// verify

int cmd_verify(int max_slots, const std::string& epsilon_list) {
  std::vector<Rational> epsilons;
  std::stringstream ss(epsilon_list);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) epsilons.push_back(parse_epsilon(item));
  }

  eca::VerifyReport report;
  try {
    report = eca::run_verification(max_slots, epsilons);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }

  if (!report.ok()) {
    for (const std::string& failure : report.failures) std::cout << "FAIL " << failure << '\n';
    std::cout << report.failures.size() << " of " << report.checks << " checks failed\n";
    return kExitVerifyFailure;
  }
  std::cout << "all checks passed (" << report.checks << " checks, max B = " << max_slots
            << ")\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Convergence analysis of a slot-assignment protocol with deterministic "
               "backoff after success: exact Markov-chain transition probabilities, "
               "expected rounds to collision-free operation, channel-error steady state, "
               "and a cross-validated Monte Carlo simulator."};
  app.require_subcommand(1);

  // matrix
  auto* matrix = app.add_subcommand("matrix", "Print the exact transition matrix");
  int m_slots = 0;
  int m_stations = 0;
  std::string m_eps = "0";
  std::string m_format = "csv";
  std::string m_out = "-";
  matrix->add_option("--slots,-B", m_slots, "Slots per round")->required();
  matrix->add_option("--stations,-N", m_stations, "Contending stations")->required();
  matrix->add_option("--epsilon", m_eps, "Channel error probability (decimal or p/q)");
  matrix->add_option("--format", m_format)->check(CLI::IsMember({"csv", "json"}));
  matrix->add_option("--out", m_out, "Output path ('-' for stdout)");

  // expect
  auto* expect = app.add_subcommand("expect", "Expected rounds to collision-free operation");
  int e_slots = 0;
  int e_stations = 0;
  int e_start = 0;
  std::string e_format = "csv";
  std::string e_out = "-";
  expect->add_option("--slots,-B", e_slots)->required();
  expect->add_option("--stations,-N", e_stations)->required();
  expect->add_option("--start-state", e_start, "Starting chain state (default S_0)");
  expect->add_option("--format", e_format)->check(CLI::IsMember({"csv", "json"}));
  expect->add_option("--out", e_out);

  // stationary
  auto* stationary =
      app.add_subcommand("stationary", "Stationary distribution under channel errors");
  int st_slots = 0;
  int st_stations = 0;
  std::string st_eps;
  std::string st_format = "csv";
  std::string st_out = "-";
  stationary->add_option("--slots,-B", st_slots)->required();
  stationary->add_option("--stations,-N", st_stations)->required();
  stationary->add_option("--epsilon", st_eps, "Channel error probability in (0, 1)")->required();
  stationary->add_option("--format", st_format)->check(CLI::IsMember({"csv", "json"}));
  stationary->add_option("--out", st_out);

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo protocol runs");
  int si_slots = 0;
  int si_stations = 0;
  std::string si_eps = "0";
  std::uint64_t si_runs = 10000;
  std::uint64_t si_rounds = 10000;
  std::uint64_t si_seed = 1;
  std::uint64_t si_cap = eca::kDefaultRoundCap;
  bool si_trace = false;
  std::string si_format = "csv";
  std::string si_out = "-";
  simulate->add_option("--slots,-B", si_slots)->required();
  simulate->add_option("--stations,-N", si_stations)->required();
  simulate->add_option("--epsilon", si_eps);
  auto* runs_opt =
      simulate->add_option("--runs", si_runs, "Convergence runs (epsilon = 0 mode)");
  auto* rounds_opt =
      simulate->add_option("--rounds", si_rounds, "Rounds to play (epsilon > 0 mode)");
  simulate->add_option("--seed", si_seed);
  simulate->add_option("--round-cap", si_cap);
  simulate->add_flag("--trace", si_trace, "Emit the per-round success trace");
  simulate->add_option("--format", si_format)->check(CLI::IsMember({"csv", "json"}));
  simulate->add_option("--out", si_out);

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Analytic vs. simulated tables over (B, N) grids");
  std::string sw_slots;
  std::string sw_stations;
  std::string sw_eps = "0";
  std::string sw_mode = "both";
  std::uint64_t sw_runs = 10000;
  std::uint64_t sw_rounds = 10000;
  std::uint64_t sw_seed = 1;
  std::uint64_t sw_cap = eca::kDefaultRoundCap;
  std::string sw_format = "csv";
  std::string sw_out = "-";
  sweep->add_option("--slots,-B", sw_slots, "Comma-separated B values, e.g. 8,16")->required();
  sweep->add_option("--stations,-N", sw_stations, "N range '2..16' or list '2,4,8'")->required();
  sweep->add_option("--epsilon", sw_eps);
  sweep->add_option("--mode", sw_mode)->check(CLI::IsMember({"analytic", "simulate", "both"}));
  sweep->add_option("--runs", sw_runs, "Runs per point (epsilon = 0)");
  sweep->add_option("--rounds", sw_rounds, "Rounds per point (epsilon > 0)");
  sweep->add_option("--seed", sw_seed);
  sweep->add_option("--round-cap", sw_cap);
  sweep->add_option("--format", sw_format)->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--out", sw_out);

  // verify
  auto* verify = app.add_subcommand("verify", "Cross-validate the formulas against enumeration");
  int v_max_slots = 6;
  std::string v_eps_list = "1/10,1/2";
  verify->add_option("--max-slots", v_max_slots, "Largest B to enumerate");
  verify->add_option("--epsilon-list", v_eps_list, "Comma-separated rational epsilons");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (matrix->parsed()) return cmd_matrix(m_slots, m_stations, m_eps, m_format, m_out);
    if (expect->parsed()) return cmd_expect(e_slots, e_stations, e_start, e_format, e_out);
    if (stationary->parsed())
      return cmd_stationary(st_slots, st_stations, st_eps, st_format, st_out);
    if (simulate->parsed())
      return cmd_simulate(si_slots, si_stations, si_eps, si_runs, runs_opt->count() > 0,
                          si_rounds, rounds_opt->count() > 0, si_seed, si_cap, si_trace,
                          si_format, si_out);
    if (sweep->parsed())
      return cmd_sweep(sw_slots, sw_stations, sw_eps, sw_mode, sw_runs, sw_rounds, sw_seed,
                       sw_cap, sw_format, sw_out);
    if (verify->parsed()) return cmd_verify(v_max_slots, v_eps_list);
  } catch (const eca::InfeasibleError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
