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

#include "qpurify/adaptive.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qpurify {

EpsilonTracker EpsilonTracker::from_table(const BellTable &t) {
  if (t.fidelity() <= 0.0)
    throw std::invalid_argument("EpsilonTracker: zero target weight");
  EpsilonTracker out;
  out.d = t.dim();
  out.eps.reserve(static_cast<std::size_t>(out.d) * out.d);
  for (double v : t.data())
    out.eps.push_back(v / t.fidelity());
  out.eps[0] = 1.0;
  return out;
}

double EpsilonTracker::fidelity() const {
  double total = 0.0;
  for (std::size_t i = 1; i < eps.size(); ++i)
    total += eps[i];
  return 1.0 / (1.0 + total);
}

Schedule Schedule::parse(const std::string &text, int default_m) {
  Schedule out;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty())
      throw std::invalid_argument("schedule: empty token");
    if (token == "rotate") {
      out.phases.push_back({PhaseKind::Rotate, 0});
    } else if (token == "correct") {
      out.phases.push_back({PhaseKind::Correct, 0});
    } else if (token == "check" || token.rfind("check:", 0) == 0) {
      int m = default_m;
      if (token.size() > 6) {
        try {
          m = std::stoi(token.substr(6));
        } catch (const std::exception &) {
          throw std::invalid_argument("schedule: bad carrier count in '" +
                                      token + "'");
        }
      }
      if (m < 1)
        throw std::invalid_argument("schedule: carrier count must be >= 1");
      out.phases.push_back({PhaseKind::Check, m});
    } else {
      throw std::invalid_argument("schedule: unknown token '" + token + "'");
    }
  }
  if (out.phases.empty())
    throw std::invalid_argument("schedule: empty");
  for (std::size_t i = 0; i + 1 < out.phases.size(); ++i)
    if (out.phases[i].kind == PhaseKind::Correct)
      throw std::invalid_argument("schedule: correct must come last");
  if (out.phases.back().kind != PhaseKind::Correct)
    throw std::invalid_argument("schedule: must end with correct");
  return out;
}

Schedule Schedule::two_stage(int k, int m) {
  Schedule out;
  for (int i = 0; i < k; ++i)
    out.phases.push_back({PhaseKind::Check, m});
  out.phases.push_back({PhaseKind::Rotate, 0});
  for (int i = 0; i < k; ++i)
    out.phases.push_back({PhaseKind::Check, m});
  out.phases.push_back({PhaseKind::Correct, 0});
  return out;
}

Schedule Schedule::interleaved(int n_checks, int m) {
  Schedule out;
  for (int i = 0; i < n_checks; ++i) {
    if (i)
      out.phases.push_back({PhaseKind::Rotate, 0});
    out.phases.push_back({PhaseKind::Check, m});
  }
  out.phases.push_back({PhaseKind::Correct, 0});
  return out;
}

std::string Schedule::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < phases.size(); ++i) {
    if (i)
      os << ",";
    switch (phases[i].kind) {
    case PhaseKind::Check:
      os << "check:" << phases[i].carriers;
      break;
    case PhaseKind::Rotate:
      os << "rotate";
      break;
    case PhaseKind::Correct:
      os << "correct";
      break;
    }
  }
  return os.str();
}

int Schedule::check_phases() const {
  int n = 0;
  for (const auto &ph : phases)
    if (ph.kind == PhaseKind::Check)
      ++n;
  return n;
}

PreprocessResult mub_preprocess(const BellTable &t) {
  MubWeights weights = mub_weights(t); // rejects non-prime d
  const auto lines = mub_lines(t.dim());
  const MubLine &heaviest = lines[weights.argmax_index];
  SymplecticMap map = SymplecticMap::identity(t.dim());
  if (!heaviest.vertical)
    map = SymplecticMap::axis_swap(t.dim())
              .compose(rotation_to_primary(heaviest));
  return PreprocessResult{map, relabel(t, map), weights};
}

BellTable hadamard_relabel(const BellTable &t) {
  return relabel(t, SymplecticMap::axis_swap(t.dim()));
}

double epsilon_decay_model(double eps0, double ratio, int k, int m) {
  if (ratio < 0.0)
    throw std::invalid_argument("epsilon_decay_model: negative ratio");
  if (k < 0 || m < 1)
    throw std::invalid_argument("epsilon_decay_model: bad round shape");
  return eps0 * std::pow(ratio, static_cast<double>(k) * m);
}

BellTable final_pauli_correction(const BellTable &t) {
  PhasePoint peak = t.argmax();
  if (peak.is_origin())
    return t;
  return translate(t, -peak.x, -peak.z);
}

AdaptiveReport run_schedule(const BellTable &shared, const BellTable &carrier,
                            const Schedule &schedule) {
  AdaptiveReport report{Trajectory{}, {}, 1.0,
                        SymplecticMap::identity(shared.dim()),
                        MubWeights{}, shared};
  BellTable state = shared;
  int phase_index = 0;
  for (const auto &phase : schedule.phases) {
    ++phase_index;
    switch (phase.kind) {
    case PhaseKind::Check: {
      try {
        RoundOutcome step =
            round_update_general(state, carrier, phase.carriers);
        state = step.posterior;
        report.cumulative_success *= step.success_probability;
        report.trajectory.rounds.push_back(std::move(step));
      } catch (const zero_success_error &e) {
        throw zero_success_error("schedule phase " +
                                 std::to_string(phase_index) + ": " +
                                 e.what());
      }
      report.phase_labels.push_back("check:" +
                                    std::to_string(phase.carriers));
      break;
    }
    case PhaseKind::Rotate: {
      state = hadamard_relabel(state);
      report.trajectory.rounds.push_back(
          RoundOutcome{1.0, state, state.fidelity()});
      report.phase_labels.push_back("rotate");
      break;
    }
    case PhaseKind::Correct: {
      state = final_pauli_correction(state);
      report.trajectory.rounds.push_back(
          RoundOutcome{1.0, state, state.fidelity()});
      report.phase_labels.push_back("correct");
      break;
    }
    }
  }
  report.final_table = state;
  report.trajectory.converged_fidelity = state.fidelity();
  return report;
}

AdaptiveReport run_adaptive(const BellTable &channel,
                            const Schedule &schedule) {
  if (channel.dim() != 3)
    throw std::invalid_argument("run_adaptive: requires d = 3");
  PreprocessResult pre = mub_preprocess(channel);
  AdaptiveReport report = run_schedule(pre.table, pre.table, schedule);
  report.preprocess_map = pre.map;
  report.weights = pre.weights;
  return report;
}

ThresholdReport threshold_predicates(double p00, int d) {
  if (d < 2)
    throw std::invalid_argument("threshold_predicates: d must be >= 2");
  ThresholdReport out;
  out.distillable = p00 > 1.0 / d;
  out.dominance_sufficient = p00 > (d - 1.0) / (2.0 * d);
  out.average_bound = (d * p00 + 1.0) / (d + 1.0) > 0.5;
  return out;
}

} // namespace qpurify
