// Copyright 2026 qpurify contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qpurify/adaptive.hpp"
#include "qpurify/mcaepp.hpp"
#include "qpurify/oracle.hpp"
#include "qpurify/single_carrier.hpp"

namespace {

constexpr const char *kVersion = "0.1.0";

// Exit codes: 0 ok, 2 bad input, 3 size guard, 4 non-convergence or
// zero-success, 5 oracle mismatch.
enum ExitCode {
  kOk = 0,
  kBadInput = 2,
  kSizeGuard = 3,
  kNoConvergence = 4,
  kOracleMismatch = 5,
};

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

struct Output {
  std::ofstream file;
  std::ostream *stream = &std::cout;

  explicit Output(const std::string &path) {
    if (!path.empty()) {
      file.open(path, std::ios::binary); // LF line endings everywhere
      if (!file)
        throw std::invalid_argument("cannot open output file " + path);
      stream = &file;
    }
  }
  std::ostream &out() { return *stream; }
};

struct Range {
  double lo = 0.0, hi = 0.0;
  int steps = 1;
};

// "a" or "lo:hi:steps".
Range parse_range(const std::string &text) {
  Range r;
  auto first = text.find(':');
  if (first == std::string::npos) {
    r.lo = r.hi = std::stod(text);
    r.steps = 1;
    return r;
  }
  auto second = text.find(':', first + 1);
  if (second == std::string::npos)
    throw std::invalid_argument("range must be value or lo:hi:steps");
  r.lo = std::stod(text.substr(0, first));
  r.hi = std::stod(text.substr(first + 1, second - first - 1));
  r.steps = std::stoi(text.substr(second + 1));
  if (r.steps < 1)
    throw std::invalid_argument("range needs at least one step");
  return r;
}

double range_value(const Range &r, int i) {
  if (r.steps == 1)
    return r.lo;
  return r.lo + (r.hi - r.lo) * i / (r.steps - 1);
}

int run_single(const std::string &echo, double p0, double asym, int rounds,
               const std::string &out_path, const std::string &format) {
  qpurify::BellTable channel = qpurify::from_marginal_params(p0, asym);
  qpurify::Marginals mg = qpurify::marginals(channel);
  qpurify::Trajectory run = qpurify::trajectory(channel, rounds);
  Output out(out_path);
  if (format == "json") {
    nlohmann::json doc;
    doc["config"] = echo;
    doc["rounds"] = nlohmann::json::array();
    for (std::size_t i = 0; i < run.rounds.size(); ++i)
      doc["rounds"].push_back(
          {{"round", i + 1},
           {"p_succ", run.rounds[i].success_probability},
           {"fidelity", run.rounds[i].fidelity},
           {"closed_form", qpurify::closed_form_fidelity(
                               p0, mg, static_cast<long long>(i) + 1)}});
    out.out() << doc.dump(2) << "\n";
  } else {
    out.out() << "# qpurify " << kVersion << " " << echo << "\n";
    out.out() << "round,p_succ,fidelity,closed_form\n";
    for (std::size_t i = 0; i < run.rounds.size(); ++i)
      out.out() << (i + 1) << "," << fmt(run.rounds[i].success_probability)
                << "," << fmt(run.rounds[i].fidelity) << ","
                << fmt(qpurify::closed_form_fidelity(
                       p0, mg, static_cast<long long>(i) + 1))
                << "\n";
  }
  return kOk;
}

int run_scan(const std::string &echo, const Range &p0s, const Range &asyms,
             int rounds, const std::string &out_path,
             const std::string &format) {
  Output out(out_path);
  nlohmann::json rows = nlohmann::json::array();
  if (format != "json") {
    out.out() << "# qpurify " << kVersion << " " << echo << "\n";
    out.out() << "p0,asym,converges,fidelity\n";
  }
  for (int i = 0; i < p0s.steps; ++i)
    for (int j = 0; j < asyms.steps; ++j) {
      double p0 = range_value(p0s, i);
      double asym = range_value(asyms, j);
      qpurify::BellTable channel = qpurify::from_marginal_params(p0, asym);
      bool conv = qpurify::converges(channel);
      double f = qpurify::closed_form_fidelity(
          p0, qpurify::marginals(channel), rounds);
      if (format == "json")
        rows.push_back({{"p0", p0},
                        {"asym", asym},
                        {"converges", conv},
                        {"fidelity", f}});
      else
        out.out() << fmt(p0) << "," << fmt(asym) << "," << (conv ? 1 : 0)
                  << "," << fmt(f) << "\n";
    }
  if (format == "json") {
    nlohmann::json doc;
    doc["config"] = echo;
    doc["grid"] = rows;
    out.out() << doc.dump(2) << "\n";
  }
  return kOk;
}

int run_mcaepp(const std::string &echo, double p, int m, double tol,
               int max_rounds, const std::string &out_path,
               const std::string &format) {
  qpurify::FixedPointRun run = qpurify::fixed_point(p, m, tol, max_rounds);
  qpurify::DirectFixedPoint direct = qpurify::fixed_point_direct(p, m);
  double bound = p > 1.0 / 3.0 ? qpurify::fixed_point_infidelity_bound(p, m)
                               : std::numeric_limits<double>::quiet_NaN();
  Output out(out_path);
  if (format == "json") {
    nlohmann::json doc;
    doc["config"] = echo;
    doc["iteration"] = {{"rounds", run.rounds},
                        {"converged", run.converged},
                        {"final_fidelity", run.final_table.fidelity()}};
    doc["stationary"] = {{"fidelity", direct.table.fidelity()},
                         {"infidelity", direct.infidelity},
                         {"success_probability",
                          direct.success_probability}};
    if (p > 1.0 / 3.0)
      doc["stationary"]["infidelity_bound"] = bound;
    doc["fidelity_per_round"] = run.fidelity;
    out.out() << doc.dump(2) << "\n";
  } else {
    out.out() << "# qpurify " << kVersion << " " << echo << "\n";
    out.out() << "# stationary_fidelity=" << fmt(direct.table.fidelity())
              << " stationary_infidelity=" << fmt(direct.infidelity)
              << " stationary_success=" << fmt(direct.success_probability);
    if (p > 1.0 / 3.0)
      out.out() << " infidelity_bound=" << fmt(bound);
    out.out() << "\n# iteration_converged=" << (run.converged ? 1 : 0)
              << " iteration_rounds=" << run.rounds << "\n";
    out.out() << "round,p_succ,fidelity\n";
    for (std::size_t i = 0; i < run.fidelity.size(); ++i)
      out.out() << (i + 1) << "," << fmt(run.success[i]) << ","
                << fmt(run.fidelity[i]) << "\n";
  }
  return kOk;
}

int run_adaptive_cmd(const std::string &echo, const std::string &channel_path,
                     int m, int k, std::string schedule_text,
                     const std::string &out_path, const std::string &format) {
  qpurify::BellTable channel = qpurify::read_channel_file(channel_path);
  if (schedule_text.empty())
    schedule_text = qpurify::Schedule::two_stage(k, m).str();
  qpurify::Schedule schedule = qpurify::Schedule::parse(schedule_text, m);
  qpurify::AdaptiveReport report = qpurify::run_adaptive(channel, schedule);
  Output out(out_path);
  if (format == "csv") {
    out.out() << "# qpurify " << kVersion << " " << echo << "\n";
    out.out() << "# preprocess_map=" << report.preprocess_map.str()
              << " lmax=" << fmt(report.weights.max_weight)
              << " cumulative_success=" << fmt(report.cumulative_success)
              << "\n";
    out.out() << "phase,label,p_succ,fidelity\n";
    for (std::size_t i = 0; i < report.phase_labels.size(); ++i)
      out.out() << (i + 1) << "," << report.phase_labels[i] << ","
                << fmt(report.trajectory.rounds[i].success_probability) << ","
                << fmt(report.trajectory.rounds[i].fidelity) << "\n";
  } else {
    nlohmann::json doc;
    doc["config"] = echo;
    doc["schedule"] = schedule.str();
    doc["preprocess_map"] = report.preprocess_map.str();
    doc["line_weights"] = report.weights.line_weights;
    doc["lmax"] = report.weights.max_weight;
    doc["cumulative_success"] = report.cumulative_success;
    doc["phases"] = nlohmann::json::array();
    for (std::size_t i = 0; i < report.phase_labels.size(); ++i)
      doc["phases"].push_back(
          {{"label", report.phase_labels[i]},
           {"p_succ", report.trajectory.rounds[i].success_probability},
           {"fidelity", report.trajectory.rounds[i].fidelity}});
    doc["final_fidelity"] = report.final_table.fidelity();
    out.out() << doc.dump(2) << "\n";
  }
  return kOk;
}

int run_oracle_check(const std::string &echo, int d, int m, int samples,
                     std::uint64_t seed, const std::string &out_path,
                     const std::string &format) {
  std::mt19937_64 rng(seed);
  std::exponential_distribution<double> exp_draw(1.0);
  auto random_table = [&](int dim) {
    std::vector<double> e(static_cast<std::size_t>(dim) * dim);
    double total = 0.0;
    for (double &v : e) {
      v = exp_draw(rng);
      total += v;
    }
    for (double &v : e)
      v /= total;
    return qpurify::make_bell_table(dim, e);
  };

  double worst_single = 0.0, worst_multi = 0.0, worst_dense = 0.0;
  for (int rep = 0; rep < samples; ++rep) {
    qpurify::BellTable shared = random_table(d);
    qpurify::BellTable channel = random_table(d);

    qpurify::RoundOutcome fast = qpurify::round_update(shared, channel);
    qpurify::EnumerationResult slow =
        qpurify::enumerate_single_round(shared, channel);
    worst_single = std::max(
        worst_single,
        std::abs(fast.success_probability - slow.success_probability));
    for (int i = 0; i < d * d; ++i)
      worst_single =
          std::max(worst_single, std::abs(fast.posterior.data()[i] -
                                          slow.posterior.data()[i]));

    if (d == 3) {
      qpurify::RoundOutcome general =
          qpurify::round_update_general(shared, channel, m);
      qpurify::EnumerationResult multi = qpurify::enumerate_multi_round(
          qpurify::preprocess_permutation(shared), channel, m,
          qpurify::star_generators(3, m));
      worst_multi = std::max(
          worst_multi,
          std::abs(general.success_probability - multi.success_probability));
      for (int i = 0; i < 9; ++i)
        worst_multi =
            std::max(worst_multi, std::abs(general.posterior.data()[i] -
                                           multi.posterior.data()[i]));

      if (m <= 3) {
        qpurify::EnumerationResult raw = qpurify::enumerate_multi_round(
            shared, channel, m, qpurify::star_generators(3, m));
        qpurify::EnumerationResult dense =
            qpurify::statevector_star_round(m, shared, channel);
        worst_dense = std::max(
            worst_dense,
            std::abs(raw.success_probability - dense.success_probability));
        for (int i = 0; i < 9; ++i)
          worst_dense =
              std::max(worst_dense, std::abs(raw.posterior.data()[i] -
                                             dense.posterior.data()[i]));
      }
    }
  }
  Output out(out_path);
  if (format == "json") {
    nlohmann::json doc;
    doc["config"] = echo;
    doc["max_deviation_single"] = worst_single;
    doc["max_deviation_multi"] = worst_multi;
    doc["max_deviation_dense"] = worst_dense;
    out.out() << doc.dump(2) << "\n";
  } else {
    out.out() << "# qpurify " << kVersion << " " << echo << "\n";
    out.out() << "check,max_deviation\n";
    out.out() << "single_vs_enumeration," << fmt(worst_single) << "\n";
    out.out() << "general_vs_enumeration," << fmt(worst_multi) << "\n";
    out.out() << "dense_vs_enumeration," << fmt(worst_dense) << "\n";
  }
  double worst = std::max({worst_single, worst_multi, worst_dense});
  return worst > 1e-10 ? kOracleMismatch : kOk;
}

int run_mub(const std::string &echo, const std::string &channel_path,
            const std::string &out_path, const std::string &format) {
  qpurify::BellTable channel = qpurify::read_channel_file(channel_path);
  qpurify::PreprocessResult pre = qpurify::mub_preprocess(channel);
  qpurify::Marginals mg = qpurify::marginals(pre.table);
  Output out(out_path);
  if (format == "json") {
    nlohmann::json doc;
    doc["config"] = echo;
    doc["line_weights"] = pre.weights.line_weights;
    doc["argmax_line"] = pre.weights.argmax_index;
    doc["lmax"] = pre.weights.max_weight;
    doc["rotation"] = pre.map.str();
    doc["rotated_shift_marginals"] = mg.u;
    out.out() << doc.dump(2) << "\n";
  } else {
    out.out() << "# qpurify " << kVersion << " " << echo << "\n";
    out.out() << "line,weight\n";
    for (std::size_t i = 0; i < pre.weights.line_weights.size(); ++i)
      out.out() << (i + 1) << "," << fmt(pre.weights.line_weights[i]) << "\n";
    out.out() << "# argmax_line=" << (pre.weights.argmax_index + 1)
              << " lmax=" << fmt(pre.weights.max_weight)
              << " rotation=" << pre.map.str() << "\n";
    out.out() << "# rotated_u=" << fmt(mg.u[0]);
    for (std::size_t i = 1; i < mg.u.size(); ++i)
      out.out() << "," << fmt(mg.u[i]);
    out.out() << "\n";
  }
  return kOk;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Exact tools for carrier-assisted entanglement purification "
               "of qudit Bell-diagonal states"};
  app.require_subcommand(1);

  std::string out_path, format = "csv";
  app.add_option("--out", out_path, "Output file (default: stdout)");
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto *single = app.add_subcommand(
      "single", "Single-carrier fidelity trajectory for a clean-phase-row "
                "channel");
  double p0 = 0.34, asym = 0.5;
  int rounds = 200;
  single->add_option("--p0", p0, "Target-state weight p00")->required();
  single->add_option("--asym", asym, "Shift asymmetry p1/(p1+p2)")
      ->required();
  single->add_option("--rounds", rounds, "Accepted rounds to iterate");

  auto *scan = app.add_subcommand(
      "scan", "Convergence scan over a (p0, asym) grid");
  std::string p0_range = "0.3:0.6:31", asym_range = "0:1:21";
  int scan_rounds = 200;
  scan->add_option("--p0", p0_range, "p0 value or lo:hi:steps");
  scan->add_option("--asym", asym_range, "asym value or lo:hi:steps");
  scan->add_option("--rounds", scan_rounds, "Round count for the reported "
                                            "fidelity");

  auto *mca = app.add_subcommand(
      "mcaepp", "Multi-carrier round iteration and its stationary table");
  double p = 0.5, tol = 1e-12;
  int m = 2, max_rounds = 1000;
  mca->add_option("--p", p, "Depolarizing parameter")->required();
  mca->add_option("--m", m, "Carriers per round")->required();
  mca->add_option("--tol", tol, "Sup-norm stop tolerance");
  mca->add_option("--rounds", max_rounds, "Round budget");

  auto *ada = app.add_subcommand(
      "adaptive", "MUB-preprocessed alternating-basis schedule on a channel "
                  "file");
  std::string channel_path, schedule_text;
  int ada_m = 12, ada_k = 3;
  ada->add_option("--channel", channel_path, "Channel JSON file")->required();
  ada->add_option("--m", ada_m, "Default carriers per check");
  ada->add_option("--k", ada_k, "Checks per stage in the default schedule");
  ada->add_option("--schedule", schedule_text,
                  "Comma-separated check:m/rotate/correct");

  auto *oracle = app.add_subcommand(
      "oracle-check", "Cross-check closed forms against the enumeration and "
                      "dense oracles");
  int od = 3, om = 2, samples = 50;
  std::uint64_t seed = 7;
  oracle->add_option("--d", od, "Qudit dimension");
  oracle->add_option("--m", om, "Carriers for the multi-carrier checks");
  oracle->add_option("--samples", samples, "Random table pairs");
  oracle->add_option("--seed", seed, "RNG seed");

  auto *mub = app.add_subcommand(
      "mub", "Line weights and the chosen preprocessing rotation for a "
             "channel file");
  std::string mub_channel;
  mub->add_option("--channel", mub_channel, "Channel JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kBadInput;
  }

  std::ostringstream echo;
  for (int i = 1; i < argc; ++i)
    echo << (i > 1 ? " " : "") << argv[i];

  try {
    if (*single)
      return run_single(echo.str(), p0, asym, rounds, out_path, format);
    if (*scan)
      return run_scan(echo.str(), parse_range(p0_range),
                      parse_range(asym_range), scan_rounds, out_path, format);
    if (*mca)
      return run_mcaepp(echo.str(), p, m, tol, max_rounds, out_path, format);
    if (*ada)
      return run_adaptive_cmd(echo.str(), channel_path, ada_m, ada_k,
                              schedule_text, out_path, format);
    if (*oracle)
      return run_oracle_check(echo.str(), od, om, samples, seed, out_path,
                              format);
    if (*mub)
      return run_mub(echo.str(), mub_channel, out_path, format);
  } catch (const qpurify::size_guard_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSizeGuard;
  } catch (const qpurify::zero_success_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const qpurify::non_convergence_error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNoConvergence;
  } catch (const std::invalid_argument &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kBadInput;
  }
  return kBadInput;
}
