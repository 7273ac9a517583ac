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

#include "qpurify/mcaepp.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qpurify {

namespace {

void require_qutrit(const BellTable &t, const char *who) {
  if (t.dim() != 3)
    throw std::invalid_argument(std::string(who) + ": requires d = 3");
}

} // namespace

DecayParams decay_params(double p, int m) {
  if (p < 1.0 / 9.0 || p > 1.0)
    throw std::invalid_argument("decay_params: p must lie in [1/9, 1]");
  if (m < 1)
    throw std::invalid_argument("decay_params: m must be >= 1");
  DecayParams out;
  out.carriers = m;
  out.p = p;
  out.a_m = std::pow((3.0 * p + 1.0) / 4.0, m);
  out.b_m = std::pow((9.0 * p - 1.0) / 8.0, m);
  out.c_m = std::pow(3.0 * (1.0 - p) / 8.0, m);
  return out;
}

BellTable preprocess_permutation(const BellTable &q) {
  require_qutrit(q, "preprocess_permutation");
  std::vector<double> r{q.at(0, 0), q.at(2, 1), q.at(2, 2),
                        q.at(1, 0), q.at(1, 1), q.at(1, 2),
                        q.at(2, 0), q.at(0, 1), q.at(0, 2)};
  return BellTable(3, std::move(r));
}

double success_probability(const BellTable &r, double p, int m) {
  require_qutrit(r, "success_probability");
  DecayParams dp = decay_params(p, m);
  double r0 = r.at(0, 0) + r.at(0, 1) + r.at(0, 2);
  double p_succ =
      (dp.a_m + (3.0 * r0 - 1.0) * dp.b_m + 2.0 * dp.c_m) / 3.0;
  if (p_succ <= 0.0)
    throw zero_success_error("success_probability: vanishing acceptance");
  return p_succ;
}

RoundOutcome round_update_depolarizing(const BellTable &q, double p, int m) {
  require_qutrit(q, "round_update_depolarizing");
  const DecayParams dp = decay_params(p, m);
  const BellTable r = preprocess_permutation(q);
  const double alpha[3] = {dp.a_m + 2.0 * dp.b_m, dp.a_m - dp.b_m,
                           dp.a_m - dp.b_m};
  std::vector<double> w(9, 0.0);
  double total = 0.0;
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) {
      double v = r.at(s, t) * alpha[s] +
                 (r.at(s, (t + 1) % 3) + r.at(s, (t + 2) % 3)) * dp.c_m;
      w[s * 3 + t] = v;
      total += v;
    }
  if (total <= 0.0)
    throw zero_success_error("round_update_depolarizing: vanishing "
                             "acceptance");
  for (double &v : w)
    v /= total;
  RoundOutcome out{total / 3.0, BellTable(3, std::move(w)), 0.0};
  out.fidelity = out.posterior.fidelity();
  return out;
}

RoundOutcome round_update_general(const BellTable &q, const BellTable &channel,
                                  int m) {
  require_qutrit(q, "round_update_general");
  require_qutrit(channel, "round_update_general");
  if (m < 1)
    throw std::invalid_argument("round_update_general: m must be >= 1");
  using cd = std::complex<double>;
  const cd omega = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
  const BellTable r = preprocess_permutation(q);

  // U_g(k) = sum_t channel[t][g] w^{kt}; equals C_g^m [phi_{x|z=g}(k)]^m
  // after the m-th power, without a 0/0 at empty phase columns.
  cd u[3][3];
  for (int g = 0; g < 3; ++g)
    for (int k = 0; k < 3; ++k) {
      cd acc = 0.0;
      for (int t = 0; t < 3; ++t)
        acc += channel.at(t, g) * std::pow(omega, k * t);
      u[g][k] = std::pow(acc, static_cast<double>(m));
    }

  std::vector<double> w(9, 0.0);
  double total = 0.0;
  for (int s = 0; s < 3; ++s)
    for (int t = 0; t < 3; ++t) {
      cd acc = 0.0;
      for (int g = 0; g < 3; ++g) {
        cd carrier = 0.0;
        for (int k = 0; k < 3; ++k)
          carrier += std::pow(omega, k * s) * u[g][k];
        acc += r.at(s, (g + t) % 3) * carrier;
      }
      acc /= 3.0;
      if (std::abs(acc.imag()) > 1e-10)
        throw std::logic_error("round_update_general: imaginary residue " +
                               std::to_string(acc.imag()));
      double v = acc.real();
      if (v < 0.0) {
        if (v < -1e-12)
          throw std::logic_error("round_update_general: negative weight " +
                                 std::to_string(v));
        v = 0.0;
      }
      w[s * 3 + t] = v;
      total += v;
    }
  if (total <= 0.0)
    throw zero_success_error("round_update_general: vanishing acceptance");
  for (double &v : w)
    v /= total;
  RoundOutcome out{total, BellTable(3, std::move(w)), 0.0};
  out.fidelity = out.posterior.fidelity();
  return out;
}

FixedPointRun fixed_point(double p, int m, double tol, int max_rounds) {
  if (p <= 1.0 / 9.0 || p > 1.0)
    throw std::invalid_argument("fixed_point: p must lie in (1/9, 1]");
  if (max_rounds < 1)
    throw std::invalid_argument("fixed_point: max_rounds must be >= 1");
  FixedPointRun run{std::vector<double>{}, std::vector<double>{},
                    depolarizing(3, p), 0, false};
  BellTable q = run.final_table;
  for (int round = 0; round < max_rounds; ++round) {
    RoundOutcome step = round_update_depolarizing(q, p, m);
    run.fidelity.push_back(step.fidelity);
    run.success.push_back(step.success_probability);
    double delta = 0.0;
    for (int i = 0; i < 9; ++i)
      delta = std::max(delta, std::abs(step.posterior.data()[i] -
                                       q.data()[i]));
    q = step.posterior;
    run.rounds = round + 1;
    if (delta < tol) {
      run.converged = true;
      break;
    }
  }
  run.final_table = q;
  return run;
}

namespace {

struct ReducedFixedPoint {
  double a = 0.0, b = 0.0, g = 0.0;
};

// Stationary ray of the round map in the A_m-normalized scales
// (bp = B_m/A_m, cp = C_m/A_m). The stationary table has an empty row 1 and
// the phase-swap symmetry, leaving q = (1, a, a; 0, 0, 0; g, b, b) up to
// normalization; eliminating lambda, a and g leaves one scalar root in b.
ReducedFixedPoint solve_reduced(double bp, double cp) {
  if (cp == 0.0)
    return {};
  const double alpha0 = 1.0 + 2.0 * bp;
  const double alpha2 = 1.0 - bp;
  const double c = cp;
  auto residual = [&](double b, ReducedFixedPoint &out) {
    double lambda = alpha0 + 2.0 * c * b;
    double a = (c + (alpha0 + c) * b) / lambda;
    double g = 2.0 * c * a / (lambda - alpha2);
    out = {a, b, g};
    return lambda * b - (alpha2 + c) * a - c * g;
  };
  ReducedFixedPoint probe;
  double lo = 0.0, hi = 4.0;
  while (residual(hi, probe) < 0.0)
    hi *= 2.0;
  while (true) {
    double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi)
      break;
    if (residual(mid, probe) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  ReducedFixedPoint out;
  residual(0.5 * (lo + hi), out);
  return out;
}

} // namespace

DirectFixedPoint fixed_point_direct(double p, int m) {
  if (p <= 1.0 / 9.0 || p > 1.0)
    throw std::invalid_argument("fixed_point_direct: p must lie in (1/9, 1]");
  if (m < 1)
    throw std::invalid_argument("fixed_point_direct: m must be >= 1");
  // A_m-normalized scales, evaluated in the log domain so huge m cannot
  // underflow the system.
  const double lb = static_cast<double>(m) *
                    (std::log((9.0 * p - 1.0) / 8.0) -
                     std::log((3.0 * p + 1.0) / 4.0));
  const double lc = static_cast<double>(m) *
                    (std::log1p(-p) + std::log(3.0 / 8.0) -
                     std::log((3.0 * p + 1.0) / 4.0));
  const double bp = std::exp(lb);
  const double cp = std::exp(lc);

  ReducedFixedPoint s;
  if (cp == 0.0) {
    s = ReducedFixedPoint{};
  } else if (bp >= 1e-8) {
    s = solve_reduced(bp, cp);
  } else {
    // Deep in the decay regime the scalar residual loses all precision
    // (its slope is O(bp)). The stationary ray is smooth in the scales at
    // a fixed cp/bp ratio, so solve at two representable scales and
    // extrapolate the scale to its actual value.
    const double ratio = std::exp(lc - lb);
    ReducedFixedPoint s1 = solve_reduced(1e-8, ratio * 1e-8);
    ReducedFixedPoint s2 = solve_reduced(2e-8, ratio * 2e-8);
    s.a = 2.0 * s1.a - s2.a;
    s.b = 2.0 * s1.b - s2.b;
    s.g = 2.0 * s1.g - s2.g;
    s.a = std::max(s.a, 0.0);
    s.b = std::max(s.b, 0.0);
    s.g = std::max(s.g, 0.0);
  }

  double norm = 1.0 + 2.0 * s.a + 2.0 * s.b + s.g;
  std::vector<double> table{1.0 / norm, s.a / norm, s.a / norm,
                            0.0,        0.0,        0.0,
                            s.g / norm, s.b / norm, s.b / norm};
  DirectFixedPoint out{BellTable(3, std::move(table)), 0.0, 0.0};
  out.infidelity = (2.0 * s.a + 2.0 * s.b + s.g) / norm;
  out.success_probability =
      success_probability(preprocess_permutation(out.table), p, m);
  return out;
}

double fixed_point_infidelity_bound(double p, int m) {
  if (p <= 1.0 / 3.0 || p > 1.0)
    throw std::invalid_argument("fixed_point_infidelity_bound: p must lie in "
                                "(1/3, 1]");
  double ratio = 3.0 * (1.0 - p) / (9.0 * p - 1.0);
  return (2.0 / 3.0) * std::pow(ratio, m);
}

} // namespace qpurify
