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

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace qpurify {

int mod_d(long long value, int d);
bool is_prime(int n);

/// A generalized Pauli label W(x,z) = X^x Z^z on a single qudit, identified
/// with the point (x, z) of the discrete phase space Z_d x Z_d.
struct PhasePoint {
  int x = 0; // shift exponent
  int z = 0; // phase exponent
  int d = 3; // qudit dimension

  PhasePoint() = default;
  PhasePoint(int x_, int z_, int d_);

  bool operator==(const PhasePoint &other) const = default;
  bool is_origin() const { return x == 0 && z == 0; }
};

/// Exponent t with W(a) W(b) = w^t W(b) W(a), where w is the primitive d-th
/// root of unity. Anchored so that commutation_phase(X, Z) = 1, which gives
/// the bilinear form t = a.x * b.z - b.x * a.z (mod d).
int commutation_phase(const PhasePoint &a, const PhasePoint &b);

/// A tensor product of single-qudit Pauli labels, one per site. Site 0 is
/// the shared pair's error slot, sites 1..m are the carriers.
struct WeylString {
  int d = 3;
  std::vector<PhasePoint> labels;

  WeylString() = default;
  WeylString(int d_, std::vector<PhasePoint> labels_);

  std::size_t sites() const { return labels.size(); }
  std::string str() const;
};

/// Builds a string of identities with single-site insertions given as
/// (site, x, z) triples.
WeylString weyl_string(int d, std::size_t sites,
                       const std::vector<std::array<int, 3>> &insertions);

/// Exponent k with E S = w^k S E, summed sitewise; k != 0 means the error E
/// is detected by the generator S.
int syndrome_exponent(const WeylString &error, const WeylString &generator);

/// A 2x2 matrix [[a, b], [c, e]] over Z_d with unit determinant, acting on
/// phase points as (x, z) -> (a*x + b*z, c*x + e*z). These are the index
/// actions of bilateral local Clifford relabelings.
class SymplecticMap {
public:
  SymplecticMap(int a, int b, int c, int e, int d);

  static SymplecticMap identity(int d);
  /// (x, z) -> (z, -x); maps the z-axis onto the x-axis.
  static SymplecticMap axis_swap(int d);

  PhasePoint apply(const PhasePoint &p) const;
  /// this o other: other acts first.
  SymplecticMap compose(const SymplecticMap &other) const;
  SymplecticMap inverse() const;

  int a() const { return a_; }
  int b() const { return b_; }
  int c() const { return c_; }
  int e() const { return e_; }
  int dim() const { return d_; }
  bool is_identity() const;
  std::string str() const;

private:
  int a_, b_, c_, e_, d_;
};

/// One of the d+1 lines through the origin of Z_d x Z_d for prime d. Each
/// line indexes the Weyl operators diagonal in one of the d+1 mutually
/// unbiased bases.
struct MubLine {
  int d = 3;
  bool vertical = false; // {(0, k)}
  int slope = 0;         // {(k, slope*k)} when not vertical
  std::vector<PhasePoint> points;

  std::string str() const;
};

/// Canonical line list for prime d: slope-0 primary axis first, then the
/// vertical line, then slopes 1..d-1.
std::vector<MubLine> mub_lines(int d);

/// A unit-determinant map sending every point of `line` onto the primary
/// axis {(k, 0)}.
SymplecticMap rotation_to_primary(const MubLine &line);

} // namespace qpurify
