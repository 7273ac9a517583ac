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

#include "qpurify/phase_space.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace qpurify {

int mod_d(long long value, int d) {
  long long r = value % d;
  if (r < 0)
    r += d;
  return static_cast<int>(r);
}

bool is_prime(int n) {
  if (n < 2)
    return false;
  for (int q = 2; q * q <= n; ++q)
    if (n % q == 0)
      return false;
  return true;
}

PhasePoint::PhasePoint(int x_, int z_, int d_) : x(x_), z(z_), d(d_) {
  if (d < 2)
    throw std::invalid_argument("PhasePoint: dimension must be >= 2");
  if (x < 0 || x >= d || z < 0 || z >= d)
    throw std::invalid_argument("PhasePoint: exponents must lie in [0, d)");
}

int commutation_phase(const PhasePoint &a, const PhasePoint &b) {
  if (a.d != b.d)
    throw std::invalid_argument("commutation_phase: dimension mismatch");
  return mod_d(static_cast<long long>(a.x) * b.z -
                   static_cast<long long>(b.x) * a.z,
               a.d);
}

WeylString::WeylString(int d_, std::vector<PhasePoint> labels_)
    : d(d_), labels(std::move(labels_)) {
  if (labels.empty())
    throw std::invalid_argument("WeylString: needs at least one site");
  for (const auto &p : labels)
    if (p.d != d)
      throw std::invalid_argument("WeylString: site dimension mismatch");
}

std::string WeylString::str() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i)
      os << ".";
    os << "X" << labels[i].x << "Z" << labels[i].z;
  }
  return os.str();
}

WeylString weyl_string(int d, std::size_t sites,
                       const std::vector<std::array<int, 3>> &insertions) {
  std::vector<PhasePoint> labels(sites, PhasePoint(0, 0, d));
  for (const auto &ins : insertions) {
    if (ins[0] < 0 || static_cast<std::size_t>(ins[0]) >= sites)
      throw std::invalid_argument("weyl_string: site index out of range");
    labels[ins[0]] = PhasePoint(mod_d(ins[1], d), mod_d(ins[2], d), d);
  }
  return WeylString(d, std::move(labels));
}

int syndrome_exponent(const WeylString &error, const WeylString &generator) {
  if (error.d != generator.d)
    throw std::invalid_argument("syndrome_exponent: dimension mismatch");
  if (error.sites() != generator.sites())
    throw std::invalid_argument("syndrome_exponent: length mismatch");
  int k = 0;
  for (std::size_t i = 0; i < error.sites(); ++i)
    k = mod_d(k + commutation_phase(error.labels[i], generator.labels[i]),
              error.d);
  return k;
}

SymplecticMap::SymplecticMap(int a, int b, int c, int e, int d)
    : a_(mod_d(a, d)), b_(mod_d(b, d)), c_(mod_d(c, d)), e_(mod_d(e, d)),
      d_(d) {
  if (d < 2)
    throw std::invalid_argument("SymplecticMap: dimension must be >= 2");
  long long det = static_cast<long long>(a_) * e_ -
                  static_cast<long long>(b_) * c_;
  if (mod_d(det, d) != 1)
    throw std::invalid_argument("SymplecticMap: determinant must be 1 mod d");
}

SymplecticMap SymplecticMap::identity(int d) {
  return SymplecticMap(1, 0, 0, 1, d);
}

SymplecticMap SymplecticMap::axis_swap(int d) {
  return SymplecticMap(0, 1, -1, 0, d);
}

PhasePoint SymplecticMap::apply(const PhasePoint &p) const {
  if (p.d != d_)
    throw std::invalid_argument("SymplecticMap: point dimension mismatch");
  return PhasePoint(mod_d(static_cast<long long>(a_) * p.x +
                              static_cast<long long>(b_) * p.z,
                          d_),
                    mod_d(static_cast<long long>(c_) * p.x +
                              static_cast<long long>(e_) * p.z,
                          d_),
                    d_);
}

SymplecticMap SymplecticMap::compose(const SymplecticMap &other) const {
  if (other.d_ != d_)
    throw std::invalid_argument("SymplecticMap: dimension mismatch");
  return SymplecticMap(a_ * other.a_ + b_ * other.c_,
                       a_ * other.b_ + b_ * other.e_,
                       c_ * other.a_ + e_ * other.c_,
                       c_ * other.b_ + e_ * other.e_, d_);
}

SymplecticMap SymplecticMap::inverse() const {
  // det = 1, so the adjugate is the inverse.
  return SymplecticMap(e_, -b_, -c_, a_, d_);
}

bool SymplecticMap::is_identity() const {
  return a_ == 1 && b_ == 0 && c_ == 0 && e_ == 1;
}

std::string SymplecticMap::str() const {
  std::ostringstream os;
  os << "[[" << a_ << "," << b_ << "],[" << c_ << "," << e_ << "]]";
  return os.str();
}

std::string MubLine::str() const {
  if (vertical)
    return "vertical";
  return "slope(" + std::to_string(slope) + ")";
}

std::vector<MubLine> mub_lines(int d) {
  if (!is_prime(d))
    throw std::invalid_argument("mub_lines: dimension must be prime");
  std::vector<MubLine> lines;
  lines.reserve(d + 1);
  auto slope_line = [d](int a) {
    MubLine line;
    line.d = d;
    line.vertical = false;
    line.slope = a;
    for (int k = 0; k < d; ++k)
      line.points.emplace_back(k, mod_d(static_cast<long long>(a) * k, d), d);
    return line;
  };
  lines.push_back(slope_line(0)); // primary axis {(k, 0)}
  MubLine vert;
  vert.d = d;
  vert.vertical = true;
  for (int k = 0; k < d; ++k)
    vert.points.emplace_back(0, k, d);
  lines.push_back(vert);
  for (int a = 1; a < d; ++a)
    lines.push_back(slope_line(a));
  return lines;
}

SymplecticMap rotation_to_primary(const MubLine &line) {
  if (line.vertical)
    return SymplecticMap::axis_swap(line.d); // (0, k) -> (k, 0)
  if (line.slope == 0)
    return SymplecticMap::identity(line.d);
  // [[1, 0], [-a, 1]] flattens (k, a*k) onto (k, 0).
  return SymplecticMap(1, 0, -line.slope, 1, line.d);
}

} // namespace qpurify
