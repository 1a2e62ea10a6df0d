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

#include <algorithm>
#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "snake/harness.hpp"
#include "snake/stats.hpp"

namespace snake {

namespace {

struct Series {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> lo;
  std::vector<double> hi;
};

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                          "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"};

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(4) << v;
  return os.str();
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string render(const std::vector<Series>& series, const std::string& title,
                   const std::string& xlabel, const std::string& ylabel, double x_max) {
  constexpr double W = 720, H = 480, L = 70, R = 170, T = 40, B = 55;
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const auto& s : series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (s.x[i] > x_max) continue;
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.lo[i]);
      ymax = std::max(ymax, s.hi[i]);
    }
  }
  if (!std::isfinite(xmin)) xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1, ymin -= 1;
  auto px = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
  auto py = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
     << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
     << escape_xml(title) << "</text>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << H - B << "\" x2=\"" << W - R << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << L << "\" y1=\"" << T << "\" x2=\"" << L << "\" y2=\"" << H - B
     << "\" stroke=\"black\"/>\n";
  for (int k = 0; k <= 5; ++k) {
    const double xv = xmin + (xmax - xmin) * k / 5.0;
    const double yv = ymin + (ymax - ymin) * k / 5.0;
    os << "<text x=\"" << px(xv) << "\" y=\"" << H - B + 16 << "\" text-anchor=\"middle\">"
       << fmt(xv) << "</text>\n";
    os << "<text x=\"" << L - 6 << "\" y=\"" << py(yv) + 4 << "\" text-anchor=\"end\">" << fmt(yv)
       << "</text>\n";
  }
  os << "<text x=\"" << (L + W - R) / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\">"
     << escape_xml(xlabel) << "</text>\n";
  os << "<text transform=\"translate(16," << (T + H - B) / 2
     << ") rotate(-90)\" text-anchor=\"middle\">" << escape_xml(ylabel) << "</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    const auto& ser = series[s];
    const char* colour = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
    std::ostringstream band, line;
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < ser.x.size(); ++i) {
      if (ser.x[i] <= x_max) keep.push_back(i);
    }
    for (std::size_t i : keep) band << px(ser.x[i]) << ',' << py(ser.hi[i]) << ' ';
    for (auto it = keep.rbegin(); it != keep.rend(); ++it) {
      band << px(ser.x[*it]) << ',' << py(ser.lo[*it]) << ' ';
    }
    for (std::size_t i : keep) line << px(ser.x[i]) << ',' << py(ser.y[i]) << ' ';
    os << "<polygon points=\"" << band.str() << "\" fill=\"" << colour
       << "\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    os << "<polyline points=\"" << line.str() << "\" fill=\"none\" stroke=\"" << colour
       << "\" stroke-width=\"1.5\"/>\n";
    const double ly = T + 18.0 * static_cast<double>(s);
    os << "<line x1=\"" << W - R + 12 << "\" y1=\"" << ly << "\" x2=\"" << W - R + 32 << "\" y2=\""
       << ly << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
    os << "<text x=\"" << W - R + 38 << "\" y=\"" << ly + 4 << "\">" << escape_xml(ser.name)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

struct MethodCurves {
  std::string method;
  std::vector<double> iter;
  std::vector<double> regret_mean, regret_sd;
  std::vector<double> cost_mean, cost_sd;
};

MethodCurves curves_for(const std::string& method, const std::vector<const RunRecord*>& runs) {
  MethodCurves c;
  c.method = method;
  std::size_t n = std::numeric_limits<std::size_t>::max();
  for (const auto* r : runs) n = std::min(n, r->rows.size());
  for (std::size_t t = 0; t < n; ++t) {
    std::vector<double> reg, cost;
    for (const auto* r : runs) {
      reg.push_back(log_regret(r->rows[t].simple_regret.front()));
      cost.push_back(r->rows[t].cum_cost);
    }
    c.iter.push_back(static_cast<double>(t + 1));
    c.regret_mean.push_back(mean(reg));
    c.regret_sd.push_back(stddev(reg));
    c.cost_mean.push_back(mean(cost));
    c.cost_sd.push_back(stddev(cost));
  }
  return c;
}

Series make_series(const std::string& name, const std::vector<double>& x,
                   const std::vector<double>& m, const std::vector<double>& sd) {
  Series s;
  s.name = name;
  s.x = x;
  s.y = m;
  for (std::size_t i = 0; i < m.size(); ++i) {
    s.lo.push_back(m[i] - 0.5 * sd[i]);
    s.hi.push_back(m[i] + 0.5 * sd[i]);
  }
  return s;
}

bool is_clip_reference(const std::string& method) {
  std::string s;
  for (char ch : method) s.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(ch))));
  return s.find("snake") != std::string::npos || s.find("random") != std::string::npos;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot write '" + path + "'");
  os << content;
  if (!os) throw IoError("failed writing '" + path + "'");
}

}  // namespace

std::vector<std::string> emit_plots(const std::vector<RunRecord>& records, const std::string& out_dir) {
  if (records.empty()) throw std::invalid_argument("emit_plots: no records");
  namespace fs = std::filesystem;
  fs::create_directories(out_dir);

  std::vector<std::string> functions;
  std::map<std::string, std::vector<std::pair<std::string, std::vector<const RunRecord*>>>> groups;
  for (const auto& r : records) {
    if (std::find(functions.begin(), functions.end(), r.function) == functions.end()) {
      functions.push_back(r.function);
    }
    auto& methods = groups[r.function];
    auto it = std::find_if(methods.begin(), methods.end(), [&](const auto& m) { return m.first == r.method; });
    if (it == methods.end()) {
      methods.push_back({r.method, {}});
      it = methods.end() - 1;
    }
    it->second.push_back(&r);
  }

  std::vector<std::string> files;
  for (const auto& fn : functions) {
    std::vector<MethodCurves> curves;
    for (const auto& [method, runs] : groups[fn]) curves.push_back(curves_for(method, runs));

    double clip = -std::numeric_limits<double>::infinity();
    double global = clip;
    for (const auto& c : curves) {
      if (c.cost_mean.empty()) continue;
      global = std::max(global, c.cost_mean.back());
      if (is_clip_reference(c.method)) clip = std::max(clip, c.cost_mean.back());
    }
    std::string clip_note;
    if (!std::isfinite(clip)) {
      clip = global;
      clip_note = " (clipped at global max cost)";
    }

    std::vector<Series> vs_cost, vs_iter, cost_iter;
    for (const auto& c : curves) {
      vs_cost.push_back(make_series(c.method, c.cost_mean, c.regret_mean, c.regret_sd));
      vs_iter.push_back(make_series(c.method, c.iter, c.regret_mean, c.regret_sd));
      cost_iter.push_back(make_series(c.method, c.iter, c.cost_mean, c.cost_sd));
    }
    const double inf = std::numeric_limits<double>::infinity();
    const std::string base = (fs::path(out_dir) / fn).string();
    write_file(base + "_regret_vs_cost.svg",
               render(vs_cost, fn + ": log regret vs cost" + clip_note, "cumulative cost",
                      "log simple regret", clip));
    write_file(base + "_regret_vs_iteration.svg",
               render(vs_iter, fn + ": log regret vs iteration", "iteration", "log simple regret", inf));
    write_file(base + "_cost_vs_iteration.svg",
               render(cost_iter, fn + ": cost vs iteration", "iteration", "cumulative cost", inf));
    files.push_back(base + "_regret_vs_cost.svg");
    files.push_back(base + "_regret_vs_iteration.svg");
    files.push_back(base + "_cost_vs_iteration.svg");
  }
  return files;
}

}  // namespace snake
