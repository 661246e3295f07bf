// Copyright 2026 The hedge-nash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hedge_nash/trace_io.h"

#include <charconv>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace hedge_nash {
namespace {

std::vector<std::string> ColumnNames(int n) {
  std::vector<std::string> columns = {"K", "alpha", "A_K", "gap_avg", "gap_iter",
                                      "avg_step_norm"};
  for (int i = 1; i <= n; ++i) columns.push_back("X_" + std::to_string(i));
  for (int i = 1; i <= n; ++i) columns.push_back("Xbar_" + std::to_string(i));
  return columns;
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double ParseField(const std::string& text) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw std::invalid_argument("bad numeric field in trace: " + text);
  }
  return value;
}

int DimensionFromColumns(std::size_t columns) {
  if (columns < 8 || (columns - 6) % 2 != 0) {
    throw std::invalid_argument("trace has an unexpected column count");
  }
  return static_cast<int>((columns - 6) / 2);
}

TraceRow RowFromValues(const std::vector<double>& v, int n) {
  TraceRow row;
  row.k = static_cast<std::int64_t>(v[0]);
  row.alpha = v[1];
  row.weight_sum = v[2];
  row.gap_average = v[3];
  row.gap_iterate = v[4];
  row.average_step_norm = v[5];
  row.iterate = Eigen::Map<const Vector>(v.data() + 6, n);
  row.average = Eigen::Map<const Vector>(v.data() + 6 + n, n);
  return row;
}

}  // namespace

TraceFormat ParseTraceFormat(const std::string& name) {
  if (name == "csv") return TraceFormat::kCsv;
  if (name == "jsonl") return TraceFormat::kJsonLines;
  throw std::invalid_argument("unknown trace format: " + name);
}

std::string FormatDouble(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (ec != std::errc()) throw std::runtime_error("cannot format double");
  return std::string(buffer, ptr);
}

TraceWriter::TraceWriter(std::ostream& out, TraceFormat format, int n)
    : out_(&out), format_(format), n_(n), columns_(ColumnNames(n)) {
  if (format_ == TraceFormat::kCsv) {
    for (std::size_t c = 0; c < columns_.size(); ++c) *out_ << (c ? "," : "") << columns_[c];
    *out_ << '\n';
  }
}

void TraceWriter::Write(const TraceRecord& record) {
  std::vector<std::string> values = {std::to_string(record.k),
                                     FormatDouble(record.alpha),
                                     FormatDouble(record.weight_sum),
                                     FormatDouble(record.gap_average),
                                     FormatDouble(record.gap_iterate),
                                     FormatDouble(record.average_step_norm)};
  for (int i = 0; i < n_; ++i) values.push_back(FormatDouble(record.iterate(i)));
  for (int i = 0; i < n_; ++i) values.push_back(FormatDouble(record.average(i)));
  if (format_ == TraceFormat::kCsv) {
    for (std::size_t c = 0; c < values.size(); ++c) *out_ << (c ? "," : "") << values[c];
  } else {
    *out_ << '{';
    for (std::size_t c = 0; c < values.size(); ++c) {
      *out_ << (c ? "," : "") << '"' << columns_[c] << "\":" << values[c];
    }
    *out_ << '}';
  }
  *out_ << '\n';
}

std::vector<TraceRow> ReadTrace(std::istream& in) {
  std::vector<TraceRow> rows;
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("empty trace");
  if (!line.empty() && line.front() == '{') {
    do {
      if (line.empty()) continue;
      nlohmann::ordered_json doc;
      try {
        doc = nlohmann::ordered_json::parse(line);
      } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("bad trace line: ") + e.what());
      }
      const int n = DimensionFromColumns(doc.size());
      std::vector<double> values;
      for (const auto& column : ColumnNames(n)) {
        if (!doc.contains(column)) throw std::invalid_argument("trace line lacks " + column);
        values.push_back(doc[column].get<double>());
      }
      rows.push_back(RowFromValues(values, n));
    } while (std::getline(in, line));
    return rows;
  }
  const auto header = SplitCsv(line);
  const int n = DimensionFromColumns(header.size());
  if (header != ColumnNames(n)) throw std::invalid_argument("unexpected trace header");
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = SplitCsv(line);
    if (fields.size() != header.size()) throw std::invalid_argument("ragged trace row");
    std::vector<double> values;
    for (const auto& f : fields) values.push_back(ParseField(f));
    rows.push_back(RowFromValues(values, n));
  }
  return rows;
}

}  // namespace hedge_nash
