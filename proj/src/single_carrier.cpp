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

#include "qpurify/single_carrier.hpp"

#include <cmath>
#include <stdexcept>

namespace qpurify {

RoundOutcome round_update(const BellTable &shared, const BellTable &channel) {
  if (shared.dim() != channel.dim())
    throw std::invalid_argument("round_update: dimension mismatch");
  const int d = shared.dim();
  // Accept weight W(n, m') = sum_j shared[n][j] * channel[n][(m'-j) mod d].
  // The carrier passes undetected iff its shift equals the pair's shift; its
  // phase adds onto the pair's phase index.
  std::vector<double> w(static_cast<std::size_t>(d) * d, 0.0);
  double total = 0.0;
  for (int n = 0; n < d; ++n)
    for (int j = 0; j < d; ++j) {
      double sh = shared.at(n, j);
      if (sh == 0.0)
        continue;
      for (int z = 0; z < d; ++z) {
        double term = sh * channel.at(n, z);
        w[n * d + mod_d(j + z, d)] += term;
        total += term;
      }
    }
  if (total <= 0.0)
    throw zero_success_error("round_update: all branches rejected");
  for (double &v : w)
    v /= total;
  RoundOutcome out{total, BellTable(d, std::move(w)), 0.0};
  out.fidelity = out.posterior.fidelity();
  return out;
}

double closed_form_fidelity(double p0, const Marginals &u, long long rounds) {
  if (p0 <= 0.0)
    throw std::invalid_argument("closed_form_fidelity: p0 must be positive");
  if (rounds < 0)
    throw std::invalid_argument("closed_form_fidelity: rounds must be >= 0");
  const double log_p0 = std::log(p0);
  double denom = 1.0;
  for (std::size_t x = 1; x < u.u.size(); ++x) {
    if (u.u[x] <= 0.0)
      continue;
    double ex = static_cast<double>(rounds + 1) * (std::log(u.u[x]) - log_p0);
    if (ex > 700.0)
      ex = 700.0;
    if (ex < -700.0)
      ex = -700.0;
    denom += std::exp(ex);
  }
  return 1.0 / denom;
}

bool clean_phase_row(const BellTable &channel) {
  for (int m = 1; m < channel.dim(); ++m)
    if (channel.at(0, m) > kProbTolerance)
      return false;
  return true;
}

bool converges(const BellTable &channel) {
  Marginals mg = marginals(channel);
  double p00 = channel.fidelity();
  for (std::size_t x = 1; x < mg.u.size(); ++x)
    if (p00 <= mg.u[x])
      return false;
  return true;
}

Trajectory trajectory(const BellTable &channel, int rounds) {
  if (rounds < 1)
    throw std::invalid_argument("trajectory: rounds must be >= 1");
  Trajectory out;
  out.rounds.reserve(rounds);
  BellTable shared = channel;
  for (int r = 0; r < rounds; ++r) {
    RoundOutcome step = round_update(shared, channel);
    shared = step.posterior;
    out.rounds.push_back(std::move(step));
  }
  out.converged_fidelity = out.rounds.back().fidelity;
  return out;
}

} // namespace qpurify
