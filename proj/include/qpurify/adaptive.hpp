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

#pragma once

#include <string>
#include <vector>

#include "qpurify/mcaepp.hpp"
#include "qpurify/phase_space.hpp"
#include "qpurify/single_carrier.hpp"
#include "qpurify/state_model.hpp"

namespace qpurify {

/// Relative error coefficients eps_{xz} = p_{xz} / p_{00}; the target slot
/// is pinned to 1 and the fidelity reconstructs as 1 / (1 + sum eps).
struct EpsilonTracker {
  int d = 3;
  std::vector<double> eps;

  static EpsilonTracker from_table(const BellTable &t);
  double fidelity() const;
};

enum class PhaseKind { Check, Rotate, Correct };

struct SchedulePhase {
  PhaseKind kind = PhaseKind::Check;
  int carriers = 1; // Check only
};

struct Schedule {
  std::vector<SchedulePhase> phases;

  /// Comma-separated `check:m`, `rotate`, `correct`; a bare `check` uses
  /// default_m. Must end with the single `correct`.
  static Schedule parse(const std::string &text, int default_m);
  /// k checks, rotate, k checks, correct.
  static Schedule two_stage(int k, int m);
  /// n checks with a rotate between consecutive checks, then correct.
  static Schedule interleaved(int n_checks, int m);

  std::string str() const;
  int check_phases() const;
};

struct PreprocessResult {
  SymplecticMap map;
  BellTable table;
  MubWeights weights;
};

/// Rotates the heaviest phase-space line onto the x = 0 row, so the shift
/// marginal u[0] equals the maximal line weight (identity when that line is
/// already the vertical one). Smallest-index tie-break.
PreprocessResult mub_preprocess(const BellTable &t);

/// Bilateral conjugate-basis relabeling (x, z) -> (z, -x); pure phase
/// errors become pure shift errors.
BellTable hadamard_relabel(const BellTable &t);

/// Idealized contamination after k checks of m carriers each:
/// eps0 * ratio^(k*m).
double epsilon_decay_model(double eps0, double ratio, int k, int m);

/// Translates indices so the heaviest entry sits at (0,0); smallest index
/// wins ties.
BellTable final_pauli_correction(const BellTable &t);

struct AdaptiveReport {
  Trajectory trajectory; // one entry per schedule phase
  std::vector<std::string> phase_labels;
  double cumulative_success = 1.0;
  SymplecticMap preprocess_map;
  MubWeights weights;
  BellTable final_table;
};

/// Executes a schedule against a fixed carrier table without any
/// preprocessing rotation.
AdaptiveReport run_schedule(const BellTable &shared, const BellTable &carrier,
                            const Schedule &schedule);

/// MUB preprocessing once, then the schedule; carriers draw from the
/// rotated original channel throughout. Check phases run the exact
/// multi-carrier round map.
AdaptiveReport run_adaptive(const BellTable &channel,
                            const Schedule &schedule);

struct ThresholdReport {
  bool distillable = false;        // p00 > 1/d
  bool dominance_sufficient = false; // p00 > (d-1)/(2d)
  bool average_bound = false;      // (d*p00 + 1)/(d+1) > 1/2
};

ThresholdReport threshold_predicates(double p00, int d);

} // namespace qpurify
