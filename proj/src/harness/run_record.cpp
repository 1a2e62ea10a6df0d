// Copyright 2026 The snakebo Authors. All Rights Reserved.
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
// =============================================================================

#include "snake/run_record.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace snake {

double log_regret(double regret) { return std::log(std::max(regret, 1e-10)); }

double RunRecord::final_regret(int objective) const {
  if (rows.empty()) throw std::logic_error("RunRecord: no rows");
  return rows.back().simple_regret.at(objective);
}

double RunRecord::final_log_regret(int objective) const {
  return log_regret(final_regret(objective));
}

void RunRecord::check_invariants() const {
  double prev_cost = 0.0;
  std::vector<double> prev_regret(num_objectives, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const RunRow& r = rows[i];
    if (r.iter != static_cast<int>(i) + 1) throw std::logic_error("RunRecord: iterations not 1..T");
    if (r.cum_cost + 1e-12 < prev_cost) throw std::logic_error("RunRecord: cumulative cost decreased");
    for (int k = 0; k < num_objectives; ++k) {
      if (r.simple_regret[k] > prev_regret[k] + 1e-12) {
        throw std::logic_error("RunRecord: simple regret increased");
      }
      prev_regret[k] = r.simple_regret[k];
    }
    prev_cost = r.cum_cost;
  }
  if (budget > 0 && static_cast<int>(rows.size()) != budget) {
    throw std::logic_error("RunRecord: row count differs from the budget");
  }
}

std::string csv_header(int dim, int num_objectives) {
  std::ostringstream os;
  os << "iter";
  for (int i = 1; i <= dim; ++i) os << ",x" << i;
  auto cols = [&](const char* name) {
    if (num_objectives == 1) {
      os << ',' << name;
    } else {
      for (int k = 1; k <= num_objectives; ++k) os << ',' << name << k;
    }
  };
  cols("y");
  os << ",arrived_at";
  cols("best_y");
  cols("simple_regret");
  os << ",step_cost,cum_cost";
  return os.str();
}

namespace {

void put(std::ostream& os, double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  os.write(buf, res.ptr - buf);
}

double parse_double(const std::string& s) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc()) {
    if (s == "nan" || s == "-nan") return std::nan("");
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw std::runtime_error("read_csv: bad number '" + s + "'");
  }
  return v;
}

}  // namespace

void write_csv(std::ostream& os, const RunRecord& record) {
  os << csv_header(record.dim, record.num_objectives) << '\n';
  for (const RunRow& r : record.rows) {
    os << r.iter;
    for (Eigen::Index i = 0; i < r.x.size(); ++i) {
      os << ',';
      put(os, r.x[i]);
    }
    for (double v : r.y) {
      os << ',';
      put(os, v);
    }
    os << ',' << r.arrived_at;
    for (double v : r.best_y) {
      os << ',';
      put(os, v);
    }
    for (double v : r.simple_regret) {
      os << ',';
      put(os, v);
    }
    os << ',';
    put(os, r.step_cost);
    os << ',';
    put(os, r.cum_cost);
    os << '\n';
  }
}

void write_csv(const std::string& path, const RunRecord& record) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  write_csv(os, record);
  if (!os) throw IoError("failed writing '" + path + "'");
}

RunRecord read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_csv: missing header");
  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  RunRecord rec;
  rec.dim = 0;
  while (rec.dim + 1 < static_cast<int>(header.size()) &&
         header[rec.dim + 1] == "x" + std::to_string(rec.dim + 1)) {
    ++rec.dim;
  }
  const int rest = static_cast<int>(header.size()) - 1 - rec.dim;  // 3k + 3
  if (rest < 6 || (rest - 3) % 3 != 0) throw std::runtime_error("read_csv: unexpected header");
  rec.num_objectives = (rest - 3) / 3;
  if (header != [&] {
        std::vector<std::string> expect;
        std::stringstream ss(csv_header(rec.dim, rec.num_objectives));
        std::string cell;
        while (std::getline(ss, cell, ',')) expect.push_back(cell);
        return expect;
      }()) {
    throw std::runtime_error("read_csv: unexpected header");
  }
  const int k = rec.num_objectives;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) throw std::runtime_error("read_csv: ragged row");
    RunRow r;
    std::size_t c = 0;
    r.iter = std::stoi(cells[c++]);
    r.x.resize(rec.dim);
    for (int i = 0; i < rec.dim; ++i) r.x[i] = parse_double(cells[c++]);
    for (int j = 0; j < k; ++j) r.y.push_back(parse_double(cells[c++]));
    r.arrived_at = std::stoi(cells[c++]);
    for (int j = 0; j < k; ++j) r.best_y.push_back(parse_double(cells[c++]));
    for (int j = 0; j < k; ++j) r.simple_regret.push_back(parse_double(cells[c++]));
    r.step_cost = parse_double(cells[c++]);
    r.cum_cost = parse_double(cells[c++]);
    rec.rows.push_back(std::move(r));
  }
  return rec;
}

RunRecord read_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  return read_csv(is);
}

}  // namespace snake
