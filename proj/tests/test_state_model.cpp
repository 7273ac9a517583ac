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
#include <set>
#include <sstream>

#include "qpurify/state_model.hpp"

using namespace qpurify;

namespace {

BellTable random_table(std::mt19937_64 &rng, int d) {
  std::exponential_distribution<double> exp_draw(1.0);
  std::vector<double> entries(static_cast<std::size_t>(d) * d);
  double total = 0.0;
  for (double &v : entries) {
    v = exp_draw(rng);
    total += v;
  }
  for (double &v : entries)
    v /= total;
  return make_bell_table(d, entries);
}

} // namespace

TEST_CASE("table construction validates") {
  std::vector<double> pure(9, 0.0);
  pure[0] = 1.0;
  CHECK(make_bell_table(3, pure).fidelity() == 1.0);
  CHECK(make_bell_table(3, std::vector<double>(9, 1.0 / 9.0)).fidelity() ==
        doctest::Approx(1.0 / 9.0));

  std::vector<double> negative(9, 0.1375);
  negative[3] = -0.1;
  CHECK_THROWS_AS(make_bell_table(3, negative), std::invalid_argument);

  std::vector<double> off(9, 0.1);
  CHECK_THROWS_AS(make_bell_table(3, off), std::invalid_argument);

  std::vector<double> drift(9, (1.0 + 5e-10) / 9.0);
  BellTable renormed = make_bell_table(3, drift);
  CHECK(renormed.sum() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("depolarizing tables") {
  BellTable full = depolarizing(3, 1.0);
  CHECK(full.fidelity() == 1.0);
  BellTable half = depolarizing(3, 0.5);
  CHECK(half.at(1, 2) == doctest::Approx(0.0625));
  BellTable qubit = depolarizing(2, 0.4);
  CHECK(qubit.at(1, 1) == doctest::Approx(0.2));
  CHECK_THROWS_AS(depolarizing(3, 1.5), std::invalid_argument);
}

TEST_CASE("from_marginal_params reproduces the target marginals") {
  Marginals m1 = marginals(from_marginal_params(0.34, 0.48));
  CHECK(m1.u[0] == doctest::Approx(0.34));
  CHECK(m1.u[1] == doctest::Approx(0.3168));
  CHECK(m1.u[2] == doctest::Approx(0.3432));

  Marginals m2 = marginals(from_marginal_params(0.51, 0.01));
  CHECK(m2.u[0] == doctest::Approx(0.51));
  CHECK(m2.u[1] == doctest::Approx(0.0049));
  CHECK(m2.u[2] == doctest::Approx(0.4851));

  BellTable pure = from_marginal_params(1.0, 0.3);
  CHECK(pure.fidelity() == doctest::Approx(1.0));

  // The phase row stays clean regardless of the split.
  BellTable skewed =
      from_marginal_params(0.5, 0.6, {0.7, 0.2, 0.1}, {0.0, 0.5, 0.5});
  CHECK(skewed.at(0, 1) == 0.0);
  CHECK(skewed.at(0, 2) == 0.0);
  CHECK(skewed.at(1, 0) == doctest::Approx(0.21));
  CHECK(marginals(skewed).u[1] == doctest::Approx(0.3));
  CHECK_THROWS_AS(from_marginal_params(0.0, 0.5), std::invalid_argument);
}

TEST_CASE("marginals of standard tables") {
  Marginals uni = marginals(make_bell_table(3, std::vector<double>(9, 1.0 / 9.0)));
  for (int i = 0; i < 3; ++i) {
    CHECK(uni.u[i] == doctest::Approx(1.0 / 3.0));
    CHECK(uni.v[i] == doctest::Approx(1.0 / 3.0));
  }
  Marginals dep = marginals(depolarizing(3, 0.5));
  CHECK(dep.u[0] == doctest::Approx(0.625));
  CHECK(dep.u[1] == doctest::Approx(0.1875));
  CHECK(dep.u[2] == doctest::Approx(0.1875));
}

TEST_CASE("mub weights: worked values and sum rule") {
  BellTable uni = make_bell_table(3, std::vector<double>(9, 1.0 / 9.0));
  MubWeights uw = mub_weights(uni);
  for (double w : uw.line_weights)
    CHECK(w == doctest::Approx(1.0 / 3.0));

  std::vector<double> e(9, 0.0);
  e[0] = 0.4; // p00
  e[3] = 0.2; // p10
  e[1] = 0.2; // p01
  e[4] = 0.2; // p11
  MubWeights w = mub_weights(make_bell_table(3, e));
  CHECK(w.line_weights[0] == doctest::Approx(0.6));
  CHECK(w.line_weights[1] == doctest::Approx(0.6));
  CHECK(w.line_weights[2] == doctest::Approx(0.6));
  CHECK(w.line_weights[3] == doctest::Approx(0.4));
  CHECK(w.argmax_index == 0); // smallest index wins the tie
  double sum = 0.0;
  for (double lw : w.line_weights)
    sum += lw;
  CHECK(sum == doctest::Approx(3.0 * 0.4 + 1.0));

  std::mt19937_64 rng(23);
  for (int d : {2, 3, 5}) {
    for (int rep = 0; rep < 1000; ++rep) {
      BellTable t = random_table(rng, d);
      MubWeights mw = mub_weights(t);
      double s = 0.0;
      for (double lw : mw.line_weights)
        s += lw;
      CHECK(std::abs(s - (d * t.fidelity() + 1.0)) < 1e-12);
      for (double lw : mw.line_weights)
        CHECK(lw >= t.fidelity() - 1e-15);
    }
  }
}

TEST_CASE("pigeonhole bounds on the maximal line weight") {
  std::mt19937_64 rng(29);
  for (int d : {2, 3, 5, 7}) {
    int found = 0;
    while (found < 400) {
      BellTable t = random_table(rng, d);
      if (t.fidelity() <= 1.0 / d)
        continue;
      ++found;
      MubWeights w = mub_weights(t);
      CHECK(w.max_weight > 2.0 / (d + 1));
      if (d == 3)
        CHECK(w.max_weight > 0.5);
    }
  }
}

TEST_CASE("relabel moves mass through bijections") {
  std::vector<double> e(9, 0.0);
  e[1] = 0.6; // (0,1)
  e[2] = 0.4; // (0,2)
  BellTable t = make_bell_table(3, e);

  BellTable swapped = relabel(t, SymplecticMap::axis_swap(3));
  CHECK(swapped.at(1, 0) == doctest::Approx(0.6));
  CHECK(swapped.at(2, 0) == doctest::Approx(0.4));

  BellTable shifted = translate(t, 1, 0);
  CHECK(shifted.at(1, 1) == doctest::Approx(0.6));

  CHECK_THROWS_AS(
      relabel(t, [](const PhasePoint &p) {
        return PhasePoint(0, 0, p.d); // collapses everything
      }),
      std::invalid_argument);

  // Multiset and fidelity preservation under origin-fixing maps.
  std::mt19937_64 rng(31);
  for (int rep = 0; rep < 50; ++rep) {
    BellTable r = random_table(rng, 3);
    BellTable image = relabel(r, SymplecticMap::axis_swap(3));
    std::multiset<double> before(r.data().begin(), r.data().end());
    std::multiset<double> after(image.data().begin(), image.data().end());
    CHECK(before == after);
    CHECK(image.fidelity() == r.fidelity());
  }
}

TEST_CASE("distillability predicate") {
  std::vector<double> e(9, 0.075);
  e[0] = 0.4;
  CHECK(is_one_distillable(make_bell_table(3, e)));
  std::vector<double> boundary(9, (1.0 - 1.0 / 3.0) / 8.0);
  boundary[0] = 1.0 / 3.0;
  CHECK(!is_one_distillable(make_bell_table(3, boundary)));
  std::vector<double> qubit{0.6, 0.2, 0.1, 0.1};
  CHECK(is_one_distillable(make_bell_table(2, qubit)));
}

TEST_CASE("channel json round trip and validation") {
  BellTable t = depolarizing(3, 0.6);
  std::stringstream buf;
  write_channel_json(buf, t);
  BellTable back = read_channel_json(buf);
  REQUIRE(back.dim() == 3);
  for (int n = 0; n < 3; ++n)
    for (int m = 0; m < 3; ++m)
      CHECK(back.at(n, m) == doctest::Approx(t.at(n, m)).epsilon(1e-15));

  std::stringstream bad("{\"d\": 3, \"p\": [[1.0, 0, 0]]}");
  CHECK_THROWS_AS(read_channel_json(bad), std::invalid_argument);
  std::stringstream negative(
      "{\"d\": 2, \"p\": [[1.2, -0.2], [0.0, 0.0]]}");
  CHECK_THROWS_AS(read_channel_json(negative), std::invalid_argument);
  std::stringstream garbage("not json");
  CHECK_THROWS_AS(read_channel_json(garbage), std::invalid_argument);
}
