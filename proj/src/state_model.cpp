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

#include "qpurify/state_model.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

#include <json.hpp>

namespace qpurify {

BellTable::BellTable(int d, std::vector<double> entries)
    : d_(d), p_(std::move(entries)) {
  if (d_ < 2)
    throw std::invalid_argument("BellTable: dimension must be >= 2");
  if (p_.size() != static_cast<std::size_t>(d_) * d_)
    throw std::invalid_argument("BellTable: expected d*d entries");
}

PhasePoint BellTable::argmax() const {
  int best = 0;
  for (int i = 1; i < d_ * d_; ++i)
    if (p_[i] > p_[best])
      best = i;
  return PhasePoint(best / d_, best % d_, d_);
}

double BellTable::sum() const {
  double s = 0.0;
  for (double v : p_)
    s += v;
  return s;
}

BellTable make_bell_table(int d, const std::vector<double> &entries) {
  if (d < 2)
    throw std::invalid_argument("make_bell_table: dimension must be >= 2");
  if (entries.size() != static_cast<std::size_t>(d) * d)
    throw std::invalid_argument("make_bell_table: expected d*d entries");
  double total = 0.0;
  for (double v : entries) {
    if (v < 0.0 || !std::isfinite(v))
      throw std::invalid_argument("make_bell_table: negative or non-finite "
                                  "entry");
    total += v;
  }
  if (std::abs(total - 1.0) > kRenormTolerance)
    throw std::invalid_argument("make_bell_table: entries sum to " +
                                std::to_string(total));
  std::vector<double> p = entries;
  if (total != 1.0)
    for (double &v : p)
      v /= total;
  return BellTable(d, std::move(p));
}

BellTable depolarizing(int d, double p) {
  if (p < 0.0 || p > 1.0)
    throw std::invalid_argument("depolarizing: p must lie in [0, 1]");
  std::vector<double> entries(static_cast<std::size_t>(d) * d,
                              (1.0 - p) / (d * d - 1));
  entries[0] = p;
  return BellTable(d, std::move(entries));
}

BellTable from_marginal_params(double p0, double asym) {
  std::vector<double> uniform(3, 1.0 / 3.0);
  return from_marginal_params(p0, asym, uniform, uniform);
}

BellTable from_marginal_params(double p0, double asym,
                               const std::vector<double> &row1_split,
                               const std::vector<double> &row2_split) {
  if (p0 <= 0.0 || p0 > 1.0)
    throw std::invalid_argument("from_marginal_params: p0 must lie in (0, 1]");
  if (asym < 0.0 || asym > 1.0)
    throw std::invalid_argument("from_marginal_params: asym must lie in "
                                "[0, 1]");
  auto check_split = [](const std::vector<double> &s) {
    if (s.size() != 3)
      throw std::invalid_argument("from_marginal_params: split needs 3 "
                                  "weights");
    double total = 0.0;
    for (double w : s) {
      if (w < 0.0)
        throw std::invalid_argument("from_marginal_params: negative split "
                                    "weight");
      total += w;
    }
    if (std::abs(total - 1.0) > kRenormTolerance)
      throw std::invalid_argument("from_marginal_params: split must sum to 1");
  };
  check_split(row1_split);
  check_split(row2_split);
  double p1 = asym * (1.0 - p0);
  double p2 = (1.0 - asym) * (1.0 - p0);
  std::vector<double> entries(9, 0.0);
  entries[0] = p0;
  for (int m = 0; m < 3; ++m) {
    entries[3 + m] = p1 * row1_split[m];
    entries[6 + m] = p2 * row2_split[m];
  }
  return make_bell_table(3, entries);
}

Marginals marginals(const BellTable &t) {
  int d = t.dim();
  Marginals out;
  out.u.assign(d, 0.0);
  out.v.assign(d, 0.0);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      out.u[n] += t.at(n, m);
      out.v[m] += t.at(n, m);
    }
  return out;
}

MubWeights mub_weights(const BellTable &t) {
  const auto lines = mub_lines(t.dim()); // rejects non-prime d
  MubWeights out;
  out.line_weights.reserve(lines.size());
  for (const auto &line : lines) {
    double w = 0.0;
    for (const auto &pt : line.points)
      w += t.at(pt.x, pt.z);
    out.line_weights.push_back(w);
  }
  out.argmax_index = 0;
  for (std::size_t i = 1; i < out.line_weights.size(); ++i)
    if (out.line_weights[i] > out.line_weights[out.argmax_index])
      out.argmax_index = static_cast<int>(i);
  out.max_weight = out.line_weights[out.argmax_index];
  return out;
}

BellTable relabel(const BellTable &t,
                  const std::function<PhasePoint(const PhasePoint &)> &map) {
  int d = t.dim();
  std::vector<double> out(static_cast<std::size_t>(d) * d, -1.0);
  for (int n = 0; n < d; ++n)
    for (int m = 0; m < d; ++m) {
      PhasePoint image = map(PhasePoint(n, m, d));
      if (image.d != d)
        throw std::invalid_argument("relabel: map changed the dimension");
      double &slot = out[image.x * d + image.z];
      if (slot >= 0.0)
        throw std::invalid_argument("relabel: map is not a bijection");
      slot = t.at(n, m);
    }
  return BellTable(d, std::move(out));
}

BellTable relabel(const BellTable &t, const SymplecticMap &map) {
  return relabel(t, [&map](const PhasePoint &p) { return map.apply(p); });
}

BellTable translate(const BellTable &t, int dx, int dz) {
  int d = t.dim();
  return relabel(t, [&](const PhasePoint &p) {
    return PhasePoint(mod_d(p.x + dx, d), mod_d(p.z + dz, d), d);
  });
}

bool is_one_distillable(const BellTable &t) {
  return t.fidelity() > 1.0 / t.dim();
}

BellTable read_channel_json(std::istream &in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception &e) {
    throw std::invalid_argument(std::string("channel file: bad JSON: ") +
                                e.what());
  }
  if (!doc.contains("d") || !doc.contains("p"))
    throw std::invalid_argument("channel file: missing \"d\" or \"p\"");
  int d = doc["d"].get<int>();
  const auto &rows = doc["p"];
  if (!rows.is_array() || rows.size() != static_cast<std::size_t>(d))
    throw std::invalid_argument("channel file: \"p\" must hold d rows");
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(d) * d);
  for (const auto &row : rows) {
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d))
      throw std::invalid_argument("channel file: each row needs d entries");
    for (const auto &v : row)
      entries.push_back(v.get<double>());
  }
  return make_bell_table(d, entries);
}

BellTable read_channel_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw std::invalid_argument("channel file: cannot open " + path);
  return read_channel_json(in);
}

void write_channel_json(std::ostream &out, const BellTable &t) {
  nlohmann::json rows = nlohmann::json::array();
  for (int n = 0; n < t.dim(); ++n) {
    nlohmann::json row = nlohmann::json::array();
    for (int m = 0; m < t.dim(); ++m)
      row.push_back(t.at(n, m));
    rows.push_back(row);
  }
  nlohmann::json doc;
  doc["d"] = t.dim();
  doc["p"] = rows;
  out << doc.dump(2) << "\n";
}

} // namespace qpurify
