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

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "qpurify/phase_space.hpp"

namespace qpurify {

inline constexpr double kProbTolerance = 1e-12;
inline constexpr double kRenormTolerance = 1e-9;

/// A d x d probability table over Bell indices (n = shift row, m = phase
/// column). Describes both a Bell-diagonal two-qudit state and, through the
/// channel-state correspondence, a Pauli channel. Fidelity is the (0,0)
/// entry.
class BellTable {
public:
  BellTable(int d, std::vector<double> entries);

  int dim() const { return d_; }
  double at(int n, int m) const { return p_[n * d_ + m]; }
  double fidelity() const { return p_[0]; }
  const std::vector<double> &data() const { return p_; }

  /// Largest entry index, smallest (n, m) in row-major order on ties.
  PhasePoint argmax() const;
  double sum() const;

private:
  int d_;
  std::vector<double> p_;
};

/// Validates entries (non-negative, total within 1e-9 of 1, renormalized).
BellTable make_bell_table(int d, const std::vector<double> &entries);

/// p at (0,0) and (1-p)/(d^2-1) on every other index.
BellTable depolarizing(int d, double p);

/// Qutrit table with a clean phase row: p00 = p0, rows 1 and 2 carry
/// asym*(1-p0) and (1-asym)*(1-p0) with the given within-row phase split
/// (uniform by default).
BellTable from_marginal_params(double p0, double asym);
BellTable from_marginal_params(double p0, double asym,
                               const std::vector<double> &row1_split,
                               const std::vector<double> &row2_split);

struct Marginals {
  std::vector<double> u; // u[x] = sum_z p[x][z], shift marginals
  std::vector<double> v; // v[z] = sum_x p[x][z], phase marginals
};

Marginals marginals(const BellTable &t);

struct MubWeights {
  std::vector<double> line_weights; // canonical line order
  int argmax_index = 0;             // smallest index on ties
  double max_weight = 0.0;
};

/// Probability mass along each of the d+1 phase-space lines (prime d only).
MubWeights mub_weights(const BellTable &t);

/// Moves entries through an index bijection: out[map(n,m)] = in[n][m].
BellTable relabel(const BellTable &t,
                  const std::function<PhasePoint(const PhasePoint &)> &map);
BellTable relabel(const BellTable &t, const SymplecticMap &map);
/// Index translation (n, m) -> (n + dx, m + dz); the local Pauli correction.
BellTable translate(const BellTable &t, int dx, int dz);

/// Reduction-criterion predicate: p00 > 1/d.
bool is_one_distillable(const BellTable &t);

/// Channel/state JSON document {"d": int, "p": [[...], ...]}.
BellTable read_channel_json(std::istream &in);
BellTable read_channel_file(const std::string &path);
void write_channel_json(std::ostream &out, const BellTable &t);

} // namespace qpurify
