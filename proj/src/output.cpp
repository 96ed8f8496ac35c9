// Copyright 2026 The gemsim Authors
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

#include "gemsim/output.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "gemsim/error.hpp"

namespace gem {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, kCsvDigits);
  return std::string(buf, res.ptr);
}

CsvTable::CsvTable(std::vector<std::string> headers) : headers_(std::move(headers)) {
  if (headers_.empty()) fail(ErrorCode::kInvalidArgument, "CSV table needs at least one column");
}

void CsvTable::add_row(std::vector<double> row) {
  if (row.size() != headers_.size())
    fail(ErrorCode::kInvalidArgument, "CSV row has " + std::to_string(row.size()) +
                                          " values for " + std::to_string(headers_.size()) +
                                          " columns");
  rows_.push_back(std::move(row));
}

void CsvTable::add_provenance(std::string line) { provenance_.push_back(std::move(line)); }

std::vector<double> CsvTable::column(const std::string& name) const {
  const auto it = std::find(headers_.begin(), headers_.end(), name);
  if (it == headers_.end()) fail(ErrorCode::kInvalidArgument, "no CSV column '" + name + "'");
  const auto j = static_cast<std::size_t>(it - headers_.begin());
  std::vector<double> out;
  out.reserve(rows_.size());
  for (const auto& r : rows_) out.push_back(r[j]);
  return out;
}

std::string CsvTable::to_string() const {
  std::string s;
  for (const auto& p : provenance_) s += "# " + p + "\n";
  for (std::size_t j = 0; j < headers_.size(); ++j) s += (j ? "," : "") + headers_[j];
  s += "\n";
  for (const auto& r : rows_) {
    for (std::size_t j = 0; j < r.size(); ++j) {
      if (j) s += ',';
      s += format_number(r[j]);
    }
    s += "\n";
  }
  return s;
}

namespace {

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIo, "cannot open '" + path + "' for writing");
  f << text;
  if (!f) fail(ErrorCode::kIo, "failed writing '" + path + "'");
}

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) v = 0.0;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

}  // namespace

void CsvTable::write(const std::string& path) const { write_text(path, to_string()); }

std::string LinePlot::to_svg(int width, int height) const {
  const double left = 70, right = 160, top = 40, bottom = 55;
  const double pw = width - left - right, ph = height - top - bottom;

  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& s : series)
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      x0 = std::min(x0, s.x[i]);
      x1 = std::max(x1, s.x[i]);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  if (!(x1 >= x0)) x0 = 0, x1 = 1;
  if (!(y1 >= y0)) y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\"22\" text-anchor=\"middle\" font-size=\"14\">"
    << escape_xml(title) << "</text>\n";
  o << "<rect x=\"" << fixed2(left) << "\" y=\"" << fixed2(top) << "\" width=\"" << fixed2(pw)
    << "\" height=\"" << fixed2(ph) << "\" fill=\"none\" stroke=\"black\"/>\n";

  for (int i = 0; i <= 5; ++i) {
    const double xv = x0 + (x1 - x0) * i / 5.0;
    const double yv = y0 + (y1 - y0) * i / 5.0;
    o << "<line x1=\"" << fixed2(sx(xv)) << "\" y1=\"" << fixed2(top + ph) << "\" x2=\""
      << fixed2(sx(xv)) << "\" y2=\"" << fixed2(top + ph + 5) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fixed2(sx(xv)) << "\" y=\"" << fixed2(top + ph + 18)
      << "\" text-anchor=\"middle\">" << tick_label(xv) << "</text>\n";
    o << "<line x1=\"" << fixed2(left - 5) << "\" y1=\"" << fixed2(sy(yv)) << "\" x2=\""
      << fixed2(left) << "\" y2=\"" << fixed2(sy(yv)) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fixed2(left - 8) << "\" y=\"" << fixed2(sy(yv) + 4)
      << "\" text-anchor=\"end\">" << tick_label(yv) << "</text>\n";
  }
  o << "<text x=\"" << fixed2(left + pw / 2) << "\" y=\"" << fixed2(height - 12.0)
    << "\" text-anchor=\"middle\">" << escape_xml(x_label) << "</text>\n";
  o << "<text x=\"18\" y=\"" << fixed2(top + ph / 2) << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
    << fixed2(top + ph / 2) << ")\">" << escape_xml(y_label) << "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const auto& s = series[k];
    const char* color = kPalette[k % (sizeof kPalette / sizeof kPalette[0])];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    bool first = true;
    for (std::size_t i = 0; i < std::min(s.x.size(), s.y.size()); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      o << (first ? "" : " ") << fixed2(sx(s.x[i])) << "," << fixed2(sy(s.y[i]));
      first = false;
    }
    o << "\"/>\n";
    const double ly = top + 12 + 18.0 * static_cast<double>(k);
    o << "<line x1=\"" << fixed2(left + pw + 12) << "\" y1=\"" << fixed2(ly) << "\" x2=\""
      << fixed2(left + pw + 36) << "\" y2=\"" << fixed2(ly) << "\" stroke=\"" << color
      << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << fixed2(left + pw + 42) << "\" y=\"" << fixed2(ly + 4) << "\">"
      << escape_xml(s.label) << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void LinePlot::write(const std::string& path) const { write_text(path, to_svg()); }

}  // namespace gem
