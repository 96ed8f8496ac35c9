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

// CSV tables and SVG line plots.

#ifndef GEMSIM_OUTPUT_HPP
#define GEMSIM_OUTPUT_HPP

#include <string>
#include <vector>

namespace gem {

inline constexpr int kCsvDigits = 15;

/// `kCsvDigits` significant digits with '.' as the decimal point in any locale.
std::string format_number(double x);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> headers);

  /// Throws Error(kInvalidArgument) unless the row matches the header width.
  void add_row(std::vector<double> row);
  void add_provenance(std::string line);

  const std::vector<std::string>& headers() const { return headers_; }
  const std::vector<std::vector<double>>& rows() const { return rows_; }
  const std::vector<std::string>& provenance() const { return provenance_; }
  std::vector<double> column(const std::string& name) const;

  std::string to_string() const;
  /// Throws Error(kIo) if the file cannot be written.
  void write(const std::string& path) const;

 private:
  std::vector<std::string> headers_;
  std::vector<std::vector<double>> rows_;
  std::vector<std::string> provenance_;
};

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;

  std::string to_svg(int width = 720, int height = 480) const;
  void write(const std::string& path) const;
};

}  // namespace gem

#endif  // GEMSIM_OUTPUT_HPP
