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

#include <vector>

#include "qpurify/errors.hpp"
#include "qpurify/state_model.hpp"

namespace qpurify {

struct RoundOutcome {
  double success_probability = 0.0;
  BellTable posterior;
  double fidelity = 0.0;
};

struct Trajectory {
  std::vector<RoundOutcome> rounds;
  double converged_fidelity = 0.0;
};

/// One accepted round of the single-carrier protocol: the carrier, drawn
/// fresh from `channel`, must acquire the same shift error as the shared
/// pair; its phase error folds back into the pair's phase index. Throws
/// zero_success_error when every branch is rejected.
RoundOutcome round_update(const BellTable &shared, const BellTable &channel);

/// F_N = [1 + sum_{x != 0} (u[x]/p0)^(N+1)]^{-1}, evaluated in the log
/// domain so round counts up to ~1e6 neither overflow nor flush to zero.
double closed_form_fidelity(double p0, const Marginals &u, long long rounds);

/// True when the hypothesis of the closed-form recursion holds for
/// `channel` (clean phase row, up to tolerance).
bool clean_phase_row(const BellTable &channel);

/// True iff p00 strictly dominates every non-zero shift marginal, the
/// condition for the iterated fidelity to converge to 1.
bool converges(const BellTable &channel);

/// Iterates round_update with a fixed carrier channel, starting from the
/// channel's own table as the shared state.
Trajectory trajectory(const BellTable &channel, int rounds);

} // namespace qpurify
