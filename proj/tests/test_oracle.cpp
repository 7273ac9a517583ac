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

#include <doctest.h>

#include <stdexcept>

#include <random>

#include "qpurify/oracle.hpp"

using namespace qpurify;

namespace {

BellTable random_table(std::mt19937_64 &rng, int d) {
  std::exponential_distribution<double> exp_draw(1.0);
  std::vector<double> e(static_cast<std::size_t>(d) * d);
  double total = 0.0;
  for (double &v : e) {
    v = exp_draw(rng);
    total += v;
  }
  for (double &v : e)
    v /= total;
  return make_bell_table(d, e);
}

} // namespace

TEST_CASE("single-round enumeration basics") {
  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  BellTable target(3, pure);
  EnumerationResult clean = enumerate_single_round(target, depolarizing(3, 1.0));
  CHECK(clean.success_probability == doctest::Approx(1.0));
  CHECK(clean.posterior.fidelity() == doctest::Approx(1.0));
  CHECK(clean.strings_enumerated == 81);

  // Noiseless carriers exclude every shifted row exactly.
  std::mt19937_64 rng(73);
  BellTable shared = random_table(rng, 3);
  EnumerationResult filtered =
      enumerate_single_round(shared, depolarizing(3, 1.0));
  for (int m = 0; m < 3; ++m) {
    CHECK(filtered.posterior.at(1, m) == 0.0);
    CHECK(filtered.posterior.at(2, m) == 0.0);
  }

  // Qubit reduction: mismatched shifts are rejected.
  BellTable qshared = random_table(rng, 2);
  BellTable qchannel = random_table(rng, 2);
  EnumerationResult qubit = enumerate_single_round(qshared, qchannel);
  Marginals shared_m = marginals(qshared), channel_m = marginals(qchannel);
  CHECK(qubit.success_probability ==
        doctest::Approx(shared_m.u[0] * channel_m.u[0] +
                        shared_m.u[1] * channel_m.u[1]));
}

TEST_CASE("star generators commute pairwise") {
  for (int m = 2; m <= 6; ++m) {
    auto gens = star_generators(3, m);
    REQUIRE(gens.size() == static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = 0; j < gens.size(); ++j)
        CHECK(syndrome_exponent(gens[i], gens[j]) == 0);
  }
}

TEST_CASE("multi-round enumeration worked point") {
  EnumerationResult out =
      enumerate_multi_round(depolarizing(3, 0.5), depolarizing(3, 0.5), 2,
                            star_generators(3, 2));
  CHECK(out.success_probability ==
        doctest::Approx(0.20947265625).epsilon(1e-15));
  CHECK(out.posterior.fidelity() ==
        doctest::Approx(89.0 / 143.0).epsilon(1e-13));
  CHECK(out.strings_enumerated == 9 * 9 * 9);

  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  EnumerationResult clean = enumerate_multi_round(
      BellTable(3, pure), depolarizing(3, 1.0), 3, star_generators(3, 3));
  CHECK(clean.success_probability == doctest::Approx(1.0));
  CHECK(clean.posterior.fidelity() == doctest::Approx(1.0));
}

TEST_CASE("multi-round enumeration honors the size guard") {
  CHECK_THROWS_AS(enumerate_multi_round(depolarizing(3, 0.5),
                                        depolarizing(3, 0.5), 9,
                                        star_generators(3, 9)),
                  size_guard_error);
}

TEST_CASE("dense single-carrier circuit equals the enumeration") {
  std::mt19937_64 rng(79);
  for (int rep = 0; rep < 50; ++rep) {
    BellTable shared = random_table(rng, 3);
    BellTable channel = random_table(rng, 3);
    EnumerationResult fast = enumerate_single_round(shared, channel);
    EnumerationResult dense = statevector_round(3, 1, shared, channel);
    CHECK(std::abs(fast.success_probability - dense.success_probability) <
          1e-10);
    for (int i = 0; i < 9; ++i)
      CHECK(std::abs(fast.posterior.data()[i] - dense.posterior.data()[i]) <
            1e-10);
  }
}

TEST_CASE("dense star circuit equals the generator enumeration") {
  std::mt19937_64 rng(83);
  for (int m = 1; m <= 3; ++m)
    for (int rep = 0; rep < 8; ++rep) {
      BellTable shared = random_table(rng, 3);
      BellTable channel = random_table(rng, 3);
      EnumerationResult fast =
          enumerate_multi_round(shared, channel, m, star_generators(3, m));
      EnumerationResult dense = statevector_star_round(m, shared, channel);
      CHECK(std::abs(fast.success_probability - dense.success_probability) <
            1e-10);
      for (int i = 0; i < 9; ++i)
        CHECK(std::abs(fast.posterior.data()[i] -
                       dense.posterior.data()[i]) < 1e-10);
    }
}

TEST_CASE("dense circuit preserves the pure target without noise") {
  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  BellTable target(3, pure);
  EnumerationResult out = statevector_round(3, 1, target, depolarizing(3, 1.0));
  CHECK(out.success_probability == doctest::Approx(1.0));
  CHECK(out.posterior.fidelity() == doctest::Approx(1.0));
}

TEST_CASE("a carrier phase error folds back onto the pair phase") {
  // Channel applies Z with certainty; the round accepts and the posterior
  // moves one phase column over.
  std::vector<double> zchan(9, 0.0);
  zchan[1] = 1.0; // (x, z) = (0, 1)
  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  EnumerationResult out =
      statevector_round(3, 1, BellTable(3, pure), BellTable(3, zchan));
  CHECK(out.success_probability == doctest::Approx(1.0));
  CHECK(out.posterior.at(0, 1) == doctest::Approx(1.0));
}

TEST_CASE("propagation identity holds with exact phases") {
  for (int m = 1; m <= 5; ++m)
    CHECK(verify_propagation_lemmas(3, m));
  CHECK(verify_propagation_lemmas(2, 3));
  CHECK(verify_propagation_lemmas(5, 2));
}

TEST_CASE("matrix commutation exponents fix the detection table") {
  WeylString s1 = weyl_string(3, 3, {{1, 1, 0}, {2, 2, 0}});
  WeylString s2 = weyl_string(3, 3, {{0, 0, 1}, {1, 0, 1}, {2, 0, 1}});
  WeylString z1 = weyl_string(3, 3, {{1, 0, 1}});
  WeylString z2 = weyl_string(3, 3, {{2, 0, 1}});
  WeylString x0 = weyl_string(3, 3, {{0, 1, 0}});

  // Literal operator products: Z X = w X Z with w = exp(2 pi i / 3), so the
  // matrix exponents are the negatives of the abstract anchor values.
  CHECK(matrix_commutation_exponent(z1, s1) == 1);
  CHECK(matrix_commutation_exponent(z2, s1) == 2);
  CHECK(matrix_commutation_exponent(x0, s2) == 2);
  std::vector<std::pair<WeylString, WeylString>> pairs{
      {z1, s1}, {z2, s1}, {x0, s2}};
  for (const auto &pair : pairs)
    CHECK(mod_d(matrix_commutation_exponent(pair.first, pair.second) +
                    syndrome_exponent(pair.first, pair.second),
                3) == 0);
}

TEST_CASE("wrong-sign conjugation variant is rejected") {
  CHECK(check_encode_conjugation(3, 1, 2)); // the true control exponent
  CHECK(!check_encode_conjugation(3, 1, 1));
  CHECK(!check_encode_conjugation(3, 2, 2));
  CHECK(check_encode_conjugation(3, 2, 1));
}

TEST_CASE("sampled single round approaches the exact one") {
  BellTable shared = from_marginal_params(0.5, 0.5);
  EnumerationResult exact = enumerate_single_round(shared, shared);
  EnumerationResult sampled = sample_single_round(shared, shared, 200000, 7);
  CHECK(std::abs(exact.success_probability - sampled.success_probability) <
        0.01);
  CHECK(std::abs(exact.posterior.fidelity() - sampled.posterior.fidelity()) <
        0.02);
}
