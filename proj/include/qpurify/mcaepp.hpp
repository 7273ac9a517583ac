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

#include "qpurify/single_carrier.hpp"
#include "qpurify/state_model.hpp"

namespace qpurify {

/// The three per-round decay scales of the m-carrier check against
/// depolarizing carriers of parameter p:
///   A_m = ((3p+1)/4)^m, B_m = ((9p-1)/8)^m, C_m = (3(1-p)/8)^m.
struct DecayParams {
  double a_m = 1.0;
  double b_m = 1.0;
  double c_m = 0.0;
  int carriers = 1;
  double p = 1.0;
};

DecayParams decay_params(double p, int m);

/// The fixed pre-round index rearrangement of the shared table:
/// r = (q00, q21, q22, q10, q11, q12, q20, q01, q02) in row-major order.
BellTable preprocess_permutation(const BellTable &q);

/// P_succ = (1/3) [A_m + (3 R0 - 1) B_m + 2 C_m] where R0 is the row-0 sum
/// of the already-permuted table r.
double success_probability(const BellTable &r, double p, int m);

/// One m-carrier check round against i.i.d. depolarizing(p) carriers:
/// permutation, then q'_{st} = [r_{st} alpha_s + (r_{s,t+1}+r_{s,t+2}) C_m]
/// normalized, with alpha_0 = A_m + 2 B_m and alpha_{1,2} = A_m - B_m.
RoundOutcome round_update_depolarizing(const BellTable &q, double p, int m);

/// Same round against carriers drawn from an arbitrary qutrit table,
/// evaluated through modulo-3 characteristic functions. Results are real by
/// conjugation symmetry; the imaginary residue is asserted, not assumed.
RoundOutcome round_update_general(const BellTable &q, const BellTable &channel,
                                  int m);

struct FixedPointRun {
  std::vector<double> fidelity; // per accepted round
  std::vector<double> success;  // per accepted round
  BellTable final_table;
  int rounds = 0;
  bool converged = false;
};

/// Iterates round_update_depolarizing from q = depolarizing(p) until the
/// sup-norm step falls below tol or max_rounds is hit (non-convergence is
/// reported through the flag, never silently).
FixedPointRun fixed_point(double p, int m, double tol = 1e-12,
                          int max_rounds = 100000);

struct DirectFixedPoint {
  BellTable table;
  double infidelity = 0.0;
  double success_probability = 0.0;
};

/// Solves the round map's stationary table algebraically (the iteration's
/// per-round contraction is 1 - O(B_m/A_m), far too slow to run to
/// tolerance at large m).
DirectFixedPoint fixed_point_direct(double p, int m);

/// Analytic large-m infidelity scale of the stationary table,
/// (2/3) (C_1/B_1)^m, valid for p in (1/3, 1).
double fixed_point_infidelity_bound(double p, int m);

} // namespace qpurify
