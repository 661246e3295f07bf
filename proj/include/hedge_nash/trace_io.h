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

#ifndef HEDGE_NASH_TRACE_IO_H_
#define HEDGE_NASH_TRACE_IO_H_

#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "hedge_nash/hedge.h"

namespace hedge_nash {

enum class TraceFormat { kCsv, kJsonLines };

TraceFormat ParseTraceFormat(const std::string& name);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double value);

// Columns: K,alpha,A_K,gap_avg,gap_iter,avg_step_norm,X_1..X_n,Xbar_1..Xbar_n.
// JSON lines carry the same keys in the same order.
class TraceWriter {
 public:
  TraceWriter(std::ostream& out, TraceFormat format, int n);

  void Write(const TraceRecord& record);

 private:
  std::ostream* out_;
  TraceFormat format_;
  int n_;
  std::vector<std::string> columns_;
};

// The persisted subset of a trace record.
struct TraceRow {
  std::int64_t k = 0;
  double alpha = 0.0;
  double weight_sum = 0.0;
  double gap_average = 0.0;
  double gap_iterate = 0.0;
  double average_step_norm = 0.0;
  Vector iterate;
  Vector average;
};

// Reads either format back; throws std::invalid_argument on malformed input.
std::vector<TraceRow> ReadTrace(std::istream& in);

}  // namespace hedge_nash

#endif  // HEDGE_NASH_TRACE_IO_H_
