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

#include "qpurify/oracle.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace qpurify {

namespace {

constexpr std::size_t kMaxEnumerationStrings = 60000000;
constexpr std::size_t kMaxDenseAmplitudes = 2187;

std::complex<double> root_of_unity(int d, long long exponent) {
  return std::polar(1.0, 2.0 * std::numbers::pi *
                             static_cast<double>(mod_d(exponent, d)) / d);
}

std::size_t checked_pow(std::size_t base, int exp, std::size_t limit,
                        const char *who) {
  std::size_t value = 1;
  for (int i = 0; i < exp; ++i) {
    if (value > limit / base)
      throw size_guard_error(std::string(who) + ": state space too large");
    value *= base;
  }
  return value;
}

} // namespace

EnumerationResult enumerate_single_round(const BellTable &shared,
                                         const BellTable &channel) {
  if (shared.dim() != channel.dim())
    throw std::invalid_argument("enumerate_single_round: dimension mismatch");
  const int d = shared.dim();
  std::vector<double> post(static_cast<std::size_t>(d) * d, 0.0);
  double success = 0.0;
  std::int64_t strings = 0;
  for (int n = 0; n < d; ++n)
    for (int j = 0; j < d; ++j)
      for (int xc = 0; xc < d; ++xc)
        for (int zc = 0; zc < d; ++zc) {
          ++strings;
          if (xc != n)
            continue; // carrier measurement reveals the shift mismatch
          double w = shared.at(n, j) * channel.at(xc, zc);
          post[n * d + mod_d(j + zc, d)] += w;
          success += w;
        }
  if (success <= 0.0)
    throw zero_success_error("enumerate_single_round: all strings rejected");
  for (double &v : post)
    v /= success;
  return EnumerationResult{success, BellTable(d, std::move(post)), strings};
}

std::vector<WeylString> star_generators(int d, int m) {
  if (m < 1)
    throw std::invalid_argument("star_generators: m must be >= 1");
  std::vector<WeylString> gens;
  for (int i = 1; i < m; ++i)
    gens.push_back(weyl_string(
        d, m + 1, {{i, 1, 0}, {m, d - 1, 0}})); // X_i X_m^{d-1}
  std::vector<std::array<int, 3>> zs;
  for (int site = 0; site <= m; ++site)
    zs.push_back({site, 0, 1});
  gens.push_back(weyl_string(d, m + 1, zs)); // Z_0 Z_1 ... Z_m
  return gens;
}

std::vector<WeylString> two_carrier_generators(int d) {
  return star_generators(d, 2);
}

EnumerationResult enumerate_multi_round(const BellTable &shared,
                                        const BellTable &channel, int m,
                                        const std::vector<WeylString> &gens) {
  if (shared.dim() != channel.dim())
    throw std::invalid_argument("enumerate_multi_round: dimension mismatch");
  const int d = shared.dim();
  if (m < 1)
    throw std::invalid_argument("enumerate_multi_round: m must be >= 1");
  for (const auto &g : gens)
    if (g.d != d || g.sites() != static_cast<std::size_t>(m) + 1)
      throw std::invalid_argument("enumerate_multi_round: generator shape "
                                  "mismatch");
  checked_pow(static_cast<std::size_t>(d) * d, m + 1, kMaxEnumerationStrings,
              "enumerate_multi_round");

  std::vector<double> post(static_cast<std::size_t>(d) * d, 0.0);
  double success = 0.0;
  std::int64_t strings = 0;

  std::vector<PhasePoint> labels(m + 1, PhasePoint(0, 0, d));
  // Odometer over the m carrier labels; site 0 runs in the outer loops.
  std::vector<int> carrier(2 * m, 0);
  for (int x0 = 0; x0 < d; ++x0)
    for (int z0 = 0; z0 < d; ++z0) {
      double w0 = shared.at(x0, z0);
      labels[0] = PhasePoint(x0, z0, d);
      std::fill(carrier.begin(), carrier.end(), 0);
      while (true) {
        double w = w0;
        for (int i = 0; i < m; ++i) {
          labels[i + 1] = PhasePoint(carrier[2 * i], carrier[2 * i + 1], d);
          w *= channel.at(carrier[2 * i], carrier[2 * i + 1]);
        }
        ++strings;
        if (w > 0.0) {
          WeylString e(d, labels);
          bool accepted = true;
          for (const auto &g : gens)
            if (syndrome_exponent(e, g) != 0) {
              accepted = false;
              break;
            }
          if (accepted) {
            int s = x0;
            int t = mod_d(z0 - carrier[1], d); // z_0 - z_1
            post[s * d + t] += w;
            success += w;
          }
        }
        int pos = 2 * m - 1;
        while (pos >= 0 && carrier[pos] == d - 1)
          carrier[pos--] = 0;
        if (pos < 0)
          break;
        ++carrier[pos];
      }
    }
  if (success <= 0.0)
    throw zero_success_error("enumerate_multi_round: all strings rejected");
  for (double &v : post)
    v /= success;
  return EnumerationResult{success, BellTable(d, std::move(post)), strings};
}

DenseState::DenseState(int d, int sites) : d_(d), sites_(sites) {
  std::size_t size = checked_pow(d, sites, kMaxDenseAmplitudes, "DenseState");
  stride_.assign(sites, 1);
  for (int s = sites - 2; s >= 0; --s)
    stride_[s] = stride_[s + 1] * d;
  amp_.assign(size, {0.0, 0.0});
}

int DenseState::digit(std::size_t index, int site) const {
  return static_cast<int>((index / stride_[site]) % d_);
}

DenseState DenseState::bell_pair(int d, int n, int m, int carriers) {
  DenseState st(d, carriers + 2);
  double norm = 1.0 / std::sqrt(static_cast<double>(d));
  for (int j = 0; j < d; ++j) {
    std::size_t idx = static_cast<std::size_t>(j) * st.stride_[0] +
                      static_cast<std::size_t>(mod_d(j + n, d)) * st.stride_[1];
    st.amp_[idx] = norm * root_of_unity(d, static_cast<long long>(m) * j);
  }
  return st;
}

void DenseState::sum_gate(int control, int target, int sign) {
  std::vector<std::complex<double>> next(amp_.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (amp_[i] == std::complex<double>(0.0, 0.0))
      continue;
    int c = digit(i, control);
    int t = digit(i, target);
    int t2 = mod_d(t + sign * c, d_);
    std::size_t base = i - static_cast<std::size_t>(t) * stride_[target];
    next[base + static_cast<std::size_t>(t2) * stride_[target]] += amp_[i];
  }
  amp_ = std::move(next);
}

void DenseState::sum2_gate(int control, int target) {
  sum_gate(control, target, 1);
  sum_gate(control, target, 1);
}

void DenseState::fourier(int site, bool inverse) {
  std::vector<std::complex<double>> next(amp_.size(), {0.0, 0.0});
  double norm = 1.0 / std::sqrt(static_cast<double>(d_));
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (amp_[i] == std::complex<double>(0.0, 0.0))
      continue;
    int j = digit(i, site);
    std::size_t base = i - static_cast<std::size_t>(j) * stride_[site];
    for (int k = 0; k < d_; ++k) {
      long long e = static_cast<long long>(j) * k;
      next[base + static_cast<std::size_t>(k) * stride_[site]] +=
          norm * root_of_unity(d_, inverse ? -e : e) * amp_[i];
    }
  }
  amp_ = std::move(next);
}

void DenseState::apply_pauli(int site, int x, int z) {
  std::vector<std::complex<double>> next(amp_.size(), {0.0, 0.0});
  for (std::size_t i = 0; i < amp_.size(); ++i) {
    if (amp_[i] == std::complex<double>(0.0, 0.0))
      continue;
    int j = digit(i, site);
    int j2 = mod_d(j + x, d_);
    std::size_t base = i - static_cast<std::size_t>(j) * stride_[site];
    next[base + static_cast<std::size_t>(j2) * stride_[site]] +=
        root_of_unity(d_, static_cast<long long>(z) * j2) * amp_[i];
  }
  amp_ = std::move(next);
}

double DenseState::norm_squared() const {
  double s = 0.0;
  for (const auto &a : amp_)
    s += std::norm(a);
  return s;
}

namespace {

// Collapses the pair onto the Bell basis after projecting every carrier to
// |0>; adds weight * |<Phi^{s,t}|psi>|^2 into post.
double project_and_accumulate(const DenseState &st, double weight,
                              std::vector<double> &post) {
  const int d = st.dim();
  const int carriers = st.sites() - 2;
  std::size_t stride_pair = 1;
  for (int i = 0; i < carriers; ++i)
    stride_pair *= d;
  // Pair amplitude (a, b) lives at index ((a*d)+b)*d^carriers.
  std::vector<std::complex<double>> pair(static_cast<std::size_t>(d) * d);
  double kept = 0.0;
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b) {
      std::complex<double> amp =
          st.amplitudes()[(static_cast<std::size_t>(a) * d + b) * stride_pair];
      pair[static_cast<std::size_t>(a) * d + b] = amp;
      kept += std::norm(amp);
    }
  if (kept <= 1e-30)
    return 0.0;
  double inv_sqrt_d = 1.0 / std::sqrt(static_cast<double>(d));
  for (int s = 0; s < d; ++s)
    for (int t = 0; t < d; ++t) {
      std::complex<double> overlap = 0.0;
      for (int j = 0; j < d; ++j)
        overlap += std::conj(root_of_unity(d, static_cast<long long>(t) * j)) *
                   pair[static_cast<std::size_t>(j) * d + mod_d(j + s, d)];
      overlap *= inv_sqrt_d;
      post[s * d + t] += weight * std::norm(overlap);
    }
  return weight * kept;
}

enum class Circuit { Single, Star };

EnumerationResult run_dense(Circuit circuit, int d, int m,
                            const BellTable &shared, const BellTable &channel) {
  if (shared.dim() != d || channel.dim() != d)
    throw std::invalid_argument("statevector_round: dimension mismatch");
  if (m < 1)
    throw std::invalid_argument("statevector_round: m must be >= 1");
  if (circuit == Circuit::Star && d != 3)
    throw std::invalid_argument("statevector_round: star circuit requires "
                                "d = 3");
  checked_pow(d, m + 2, kMaxDenseAmplitudes, "statevector_round");

  const int site_a = 0;
  const int site_b = 1;
  auto carrier_site = [](int i) { return 2 + i; }; // i in [0, m)

  std::vector<double> post(static_cast<std::size_t>(d) * d, 0.0);
  double success = 0.0;
  std::int64_t strings = 0;

  for (int n = 0; n < d; ++n)
    for (int mph = 0; mph < d; ++mph) {
      double w0 = shared.at(n, mph);
      if (w0 == 0.0)
        continue;
      DenseState encoded = DenseState::bell_pair(d, n, mph, m);
      if (circuit == Circuit::Single) {
        encoded.sum_gate(site_a, carrier_site(0), +1);
      } else {
        for (int i = 0; i + 1 < m; ++i)
          encoded.fourier(carrier_site(i), true);
        for (int i = 0; i + 1 < m; ++i)
          encoded.sum2_gate(carrier_site(i), carrier_site(m - 1));
        encoded.sum_gate(site_a, carrier_site(m - 1), -1);
      }

      std::vector<int> err(2 * m, 0);
      while (true) {
        double w = w0;
        for (int i = 0; i < m; ++i)
          w *= channel.at(err[2 * i], err[2 * i + 1]);
        ++strings;
        if (w > 0.0) {
          DenseState st = encoded;
          for (int i = 0; i < m; ++i)
            st.apply_pauli(carrier_site(i), err[2 * i], err[2 * i + 1]);
          if (circuit == Circuit::Single) {
            st.sum_gate(site_b, carrier_site(0), -1);
          } else {
            st.sum_gate(site_b, carrier_site(m - 1), +1);
            for (int i = 0; i + 1 < m; ++i)
              st.sum_gate(carrier_site(i), carrier_site(m - 1), +1);
            for (int i = 0; i + 1 < m; ++i)
              st.fourier(carrier_site(i), false);
          }
          success += project_and_accumulate(st, w, post);
        }
        int pos = 2 * m - 1;
        while (pos >= 0 && err[pos] == d - 1)
          err[pos--] = 0;
        if (pos < 0)
          break;
        ++err[pos];
      }
    }
  if (success <= 1e-30)
    throw zero_success_error("statevector_round: all strings rejected");
  for (double &v : post)
    v /= success;
  return EnumerationResult{success, BellTable(d, std::move(post)), strings};
}

} // namespace

EnumerationResult statevector_round(int d, int m, const BellTable &shared,
                                    const BellTable &channel) {
  return run_dense(m == 1 ? Circuit::Single : Circuit::Star, d, m, shared,
                   channel);
}

EnumerationResult statevector_star_round(int m, const BellTable &shared,
                                         const BellTable &channel) {
  return run_dense(Circuit::Star, 3, m, shared, channel);
}

bool check_encode_conjugation(int d, int m, int control_exponent) {
  if (d < 2 || m < 1)
    throw std::invalid_argument("check_encode_conjugation: bad arguments");
  std::size_t size =
      checked_pow(d, m + 1, kMaxDenseAmplitudes, "check_encode_conjugation");
  // Conjugates the all-carriers phase string through the SUM-gate ladder
  // and compares with Z^{control_exponent} on the control, phase-exactly
  // per basis state. The ladder maps |j, k_1..k_m> to |j, k_1+j, .., k_m+j>.
  for (std::size_t basis = 0; basis < size; ++basis) {
    std::vector<int> digits(m + 1);
    std::size_t rest = basis;
    for (int s = m; s >= 0; --s) {
      digits[s] = static_cast<int>(rest % d);
      rest /= d;
    }
    long long lhs_exponent = 0; // sum of (k_i - j) over carriers
    for (int i = 1; i <= m; ++i)
      lhs_exponent += digits[i] - digits[0];
    long long rhs_exponent =
        static_cast<long long>(control_exponent) * digits[0];
    for (int i = 1; i <= m; ++i)
      rhs_exponent += digits[i];
    std::complex<double> lhs = root_of_unity(d, lhs_exponent);
    std::complex<double> rhs = root_of_unity(d, rhs_exponent);
    if (std::abs(lhs - rhs) > 1e-12)
      return false;
  }
  return true;
}

bool verify_propagation_lemmas(int d, int m) {
  return check_encode_conjugation(d, m, mod_d(-m, d));
}

int matrix_commutation_exponent(const WeylString &e, const WeylString &s) {
  if (e.d != s.d || e.sites() != s.sites())
    throw std::invalid_argument("matrix_commutation_exponent: shape "
                                "mismatch");
  const int d = e.d;
  std::size_t size = checked_pow(d, static_cast<int>(e.sites()),
                                 kMaxDenseAmplitudes,
                                 "matrix_commutation_exponent");
  // W(x, z) = X^x Z^z maps |j> to w^{z j} |j + x>; products are evaluated
  // on every basis column and compared as ES = w^k SE.
  auto apply = [&](const WeylString &op, std::vector<int> digits,
                   std::complex<double> &phase) {
    for (std::size_t site = 0; site < op.sites(); ++site) {
      const PhasePoint &p = op.labels[site];
      phase *= root_of_unity(d, static_cast<long long>(p.z) * digits[site]);
      digits[site] = mod_d(digits[site] + p.x, d);
    }
    return digits;
  };
  int found = -1;
  for (std::size_t basis = 0; basis < size; ++basis) {
    std::vector<int> digits(e.sites());
    std::size_t rest = basis;
    for (int site = static_cast<int>(e.sites()) - 1; site >= 0; --site) {
      digits[site] = static_cast<int>(rest % d);
      rest /= d;
    }
    std::complex<double> phase_es{1.0, 0.0}, phase_se{1.0, 0.0};
    auto col_es = apply(e, apply(s, digits, phase_es), phase_es);
    auto col_se = apply(s, apply(e, digits, phase_se), phase_se);
    if (col_es != col_se)
      throw std::invalid_argument("matrix_commutation_exponent: products are "
                                  "not proportional");
    std::complex<double> ratio = phase_es / phase_se;
    int k = -1;
    for (int cand = 0; cand < d; ++cand)
      if (std::abs(ratio - root_of_unity(d, cand)) < 1e-9)
        k = cand;
    if (k < 0)
      throw std::invalid_argument("matrix_commutation_exponent: ratio is not "
                                  "a root of unity");
    if (found >= 0 && found != k)
      throw std::invalid_argument("matrix_commutation_exponent: inconsistent "
                                  "phases");
    found = k;
  }
  return found;
}

EnumerationResult sample_single_round(const BellTable &shared,
                                      const BellTable &channel,
                                      std::int64_t shots, std::uint64_t seed) {
  if (shots < 1)
    throw std::invalid_argument("sample_single_round: shots must be >= 1");
  const int d = shared.dim();
  std::mt19937_64 rng(seed);
  std::discrete_distribution<int> draw_shared(shared.data().begin(),
                                              shared.data().end());
  std::discrete_distribution<int> draw_carrier(channel.data().begin(),
                                               channel.data().end());
  std::vector<double> post(static_cast<std::size_t>(d) * d, 0.0);
  std::int64_t accepted = 0;
  for (std::int64_t shot = 0; shot < shots; ++shot) {
    int sh = draw_shared(rng);
    int ca = draw_carrier(rng);
    int n = sh / d, j = sh % d;
    int xc = ca / d, zc = ca % d;
    if (xc != n)
      continue;
    ++accepted;
    post[n * d + mod_d(j + zc, d)] += 1.0;
  }
  if (accepted == 0)
    throw zero_success_error("sample_single_round: no accepted shots");
  for (double &v : post)
    v /= static_cast<double>(accepted);
  return EnumerationResult{static_cast<double>(accepted) /
                               static_cast<double>(shots),
                           BellTable(d, std::move(post)), shots};
}

} // namespace qpurify
