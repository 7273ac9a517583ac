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

#include <complex>
#include <cstdint>
#include <vector>

#include "qpurify/errors.hpp"
#include "qpurify/phase_space.hpp"
#include "qpurify/state_model.hpp"

namespace qpurify {

struct EnumerationResult {
  double success_probability = 0.0;
  BellTable posterior;
  std::int64_t strings_enumerated = 0;
};

/// Exact weighted enumeration of all (shared error, carrier error) pairs of
/// the single-carrier round: accept iff the carrier shift equals the pair
/// shift; the carrier phase adds onto the pair phase.
EnumerationResult enumerate_single_round(const BellTable &shared,
                                         const BellTable &channel);

/// The m-carrier generator set {X_1 X_m^2, ..., X_{m-1} X_m^2,
/// Z_0 Z_1 ... Z_m} over m+1 sites (site 0 is the shared slot).
std::vector<WeylString> star_generators(int d, int m);

/// The two-carrier study set {X_1 X_2^2, Z_0 Z_1 Z_2}.
std::vector<WeylString> two_carrier_generators(int d);

/// Exact weighted enumeration of all error strings E_0 x E_1 x ... x E_m:
/// accept iff every generator's syndrome exponent vanishes; the accepted
/// output lands at (s, t) = (x_0, z_0 - z_1). No pre-round permutation is
/// applied here; callers compose it when comparing against the closed-form
/// round maps.
EnumerationResult enumerate_multi_round(const BellTable &shared,
                                        const BellTable &channel, int m,
                                        const std::vector<WeylString> &gens);

/// Dense state vector over (A, B, carriers...), site 0 most significant.
class DenseState {
public:
  DenseState(int d, int sites);

  static DenseState bell_pair(int d, int n, int m, int carriers);

  int dim() const { return d_; }
  int sites() const { return sites_; }
  const std::vector<std::complex<double>> &amplitudes() const { return amp_; }

  /// target <- target + sign * control (mod d).
  void sum_gate(int control, int target, int sign);
  /// target <- target + 2 * control (mod d).
  void sum2_gate(int control, int target);
  void fourier(int site, bool inverse);
  /// Z^z X^x on one site: |j> -> w^{z (j+x)} |j+x>.
  void apply_pauli(int site, int x, int z);

  double norm_squared() const;

private:
  int digit(std::size_t index, int site) const;
  int d_;
  int sites_;
  std::vector<std::size_t> stride_;
  std::vector<std::complex<double>> amp_;
};

/// Dense simulation of one round. m = 1 runs the plain encode/decode
/// circuit of the single-carrier protocol; m >= 2 runs the star-generator
/// encode/decode (d = 3 only). Must agree with the matching enumeration.
EnumerationResult statevector_round(int d, int m, const BellTable &shared,
                                    const BellTable &channel);

/// Star-circuit simulation for any m >= 1 (d = 3), matching
/// enumerate_multi_round with star generators; at m = 1 this is the
/// conjugate orientation of the single-carrier circuit.
EnumerationResult statevector_star_round(int m, const BellTable &shared,
                                         const BellTable &channel);

/// Checks the SUM-gate conjugation identity for the all-carriers phase
/// string: encoding m carriers pulls back Z^{(-m) mod d} onto the control,
/// with exact phases on every basis state. Reduces to Z^2 x Z at m = 1.
bool verify_propagation_lemmas(int d, int m);

/// Generalized form used for negative controls: compares the conjugated
/// string against Z^{control_exponent} on the control site.
bool check_encode_conjugation(int d, int m, int control_exponent);

/// Exponent k with E S = w^k S E computed from explicit operator matrices
/// (w = exp(2 pi i / d)). Throws if the product pair is not proportional.
int matrix_commutation_exponent(const WeylString &e, const WeylString &s);

/// Seeded Monte Carlo version of the single-carrier round, for smoke tests
/// only; all shipped numbers come from the exact enumerations.
EnumerationResult sample_single_round(const BellTable &shared,
                                      const BellTable &channel,
                                      std::int64_t shots, std::uint64_t seed);

} // namespace qpurify
