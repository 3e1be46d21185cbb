// Copyright 2026 The mrtrace Authors.
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

#include "mrtrace/trace.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <unordered_set>

#include <json.hpp>

#include "mrtrace/error.h"

namespace mrtrace {

using nlohmann::json;

const std::vector<std::string>& OptionalFieldNames() {
  static const std::vector<std::string> kNames = {
      "name",           "duration",          "input_bytes",
      "shuffle_bytes",  "output_bytes",      "map_task_seconds",
      "reduce_task_seconds", "map_tasks",    "reduce_tasks",
      "input_path_hash", "output_path_hash"};
  return kNames;
}

const std::vector<std::string>& CanonicalColumns() {
  static const std::vector<std::string> kColumns = [] {
    std::vector<std::string> c = {"job_id", "name", "submit_time"};
    for (const auto& f : OptionalFieldNames()) {
      if (f != "name") c.push_back(f);
    }
    return c;
  }();
  return kColumns;
}

Trace::Trace(std::string label, std::uint32_t machine_count,
             std::vector<JobRecord> records)
    : label_(std::move(label)),
      machine_count_(machine_count),
      records_(std::move(records)) {
  if (machine_count_ == 0) {
    throw Error(ErrorCode::kInvalidArgument, "machine_count must be positive");
  }
  std::stable_sort(records_.begin(), records_.end(),
                   [](const JobRecord& a, const JobRecord& b) {
                     return a.submit_time < b.submit_time;
                   });
  std::unordered_set<std::uint64_t> ids;
  ids.reserve(records_.size());
  for (const auto& r : records_) {
    if (!ids.insert(r.job_id).second) {
      throw Error(ErrorCode::kInvalidArgument,
                  "duplicate job_id " + std::to_string(r.job_id));
    }
  }
  if (!records_.empty()) {
    span_.start = records_.front().submit_time;
    span_.end = records_.back().submit_time + 1;
  }
}

namespace {

// Field-level decoding shared by the jsonl and csv readers. Each setter
// receives either a JSON scalar or a CSV cell parsed into JSON.

std::uint64_t ToUnsigned(const json& v, std::size_t line, const char* field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    throw MalformedRecord(line, std::string(field) + " is negative");
  }
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (d < 0) throw MalformedRecord(line, std::string(field) + " is negative");
    if (d != std::floor(d) || d >= 18446744073709551616.0) {
      throw MalformedRecord(line,
                            std::string(field) + " is not a whole number");
    }
    return static_cast<std::uint64_t>(d);
  }
  throw MalformedRecord(line, std::string(field) + " is not a number");
}

double ToNonNegativeReal(const json& v, std::size_t line, const char* field) {
  if (!v.is_number()) {
    throw MalformedRecord(line, std::string(field) + " is not a number");
  }
  double d = v.get<double>();
  if (!std::isfinite(d) || d < 0) {
    throw MalformedRecord(line, std::string(field) + " is negative");
  }
  return d;
}

std::int64_t ToSeconds(const json& v, std::size_t line) {
  if (v.is_number_integer()) return v.get<std::int64_t>();
  if (v.is_number_float()) {
    double d = v.get<double>();
    if (!std::isfinite(d)) throw MalformedRecord(line, "submit_time not finite");
    return static_cast<std::int64_t>(std::floor(d));
  }
  throw MalformedRecord(line, "submit_time is not a number");
}

void SetField(JobRecord& r, std::string_view key, const json& v,
              std::size_t line, bool& has_id, bool& has_submit) {
  if (v.is_null()) return;
  if (key == "job_id") {
    r.job_id = ToUnsigned(v, line, "job_id");
    has_id = true;
  } else if (key == "submit_time") {
    r.submit_time = ToSeconds(v, line);
    has_submit = true;
  } else if (key == "name") {
    if (!v.is_string()) throw MalformedRecord(line, "name is not a string");
    r.name = v.get<std::string>();
  } else if (key == "duration") {
    r.duration = ToNonNegativeReal(v, line, "duration");
  } else if (key == "input_bytes") {
    r.input_bytes = ToUnsigned(v, line, "input_bytes");
  } else if (key == "shuffle_bytes") {
    r.shuffle_bytes = ToUnsigned(v, line, "shuffle_bytes");
  } else if (key == "output_bytes") {
    r.output_bytes = ToUnsigned(v, line, "output_bytes");
  } else if (key == "map_task_seconds") {
    r.map_task_seconds = ToNonNegativeReal(v, line, "map_task_seconds");
  } else if (key == "reduce_task_seconds") {
    r.reduce_task_seconds = ToNonNegativeReal(v, line, "reduce_task_seconds");
  } else if (key == "map_tasks") {
    r.map_tasks = ToUnsigned(v, line, "map_tasks");
  } else if (key == "reduce_tasks") {
    r.reduce_tasks = ToUnsigned(v, line, "reduce_tasks");
  } else if (key == "input_path_hash") {
    r.input_path_hash = ToUnsigned(v, line, "input_path_hash");
  } else if (key == "output_path_hash") {
    r.output_path_hash = ToUnsigned(v, line, "output_path_hash");
  }
  // Unknown keys are ignored.
}

void RequireCore(bool has_id, bool has_submit, std::size_t line) {
  if (!has_id) {
    throw Error(ErrorCode::kMissingRequiredField,
                "line " + std::to_string(line) + ": job_id");
  }
  if (!has_submit) {
    throw Error(ErrorCode::kMissingRequiredField,
                "line " + std::to_string(line) + ": submit_time");
  }
}

bool IsBlank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

std::vector<JobRecord> ParseJsonl(std::istream& in) {
  std::vector<JobRecord> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error& e) {
      throw MalformedRecord(line_no, "invalid JSON");
    }
    if (!obj.is_object()) throw MalformedRecord(line_no, "not a JSON object");
    JobRecord r;
    bool has_id = false, has_submit = false;
    for (const auto& [key, value] : obj.items()) {
      SetField(r, key, value, line_no, has_id, has_submit);
    }
    RequireCore(has_id, has_submit, line_no);
    records.push_back(std::move(r));
  }
  return records;
}

// RFC 4180 style: commas separate, double quotes wrap cells, "" escapes.
std::vector<std::string> SplitCsv(const std::string& line, std::size_t line_no) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  if (quoted) throw MalformedRecord(line_no, "unterminated quote");
  cells.push_back(std::move(cell));
  return cells;
}

json CsvCell(const std::string& column, const std::string& cell,
             std::size_t line_no) {
  if (column == "name") return cell;
  try {
    return json::parse(cell);
  } catch (const json::parse_error&) {
    throw MalformedRecord(line_no, column + " is not a number");
  }
}

std::vector<JobRecord> ParseCsv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> header;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    header = SplitCsv(line, line_no);
    break;
  }
  if (header.empty()) return {};
  for (auto& h : header) {
    h.erase(0, h.find_first_not_of(" \t"));
    h.erase(h.find_last_not_of(" \t") + 1);
  }
  std::vector<JobRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    auto cells = SplitCsv(line, line_no);
    if (cells.size() != header.size()) {
      throw MalformedRecord(line_no, "expected " +
                                         std::to_string(header.size()) +
                                         " cells, got " +
                                         std::to_string(cells.size()));
    }
    JobRecord r;
    bool has_id = false, has_submit = false;
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (cells[i].empty()) continue;
      SetField(r, header[i], CsvCell(header[i], cells[i], line_no), line_no,
               has_id, has_submit);
    }
    RequireCore(has_id, has_submit, line_no);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace

Trace ParseTrace(std::istream& source, TraceFormat format,
                 const ParseOptions& options) {
  std::vector<JobRecord> records = format == TraceFormat::kJsonl
                                       ? ParseJsonl(source)
                                       : ParseCsv(source);
  if (records.empty()) throw Error(ErrorCode::kEmptyTrace, "no records");
  std::unordered_set<std::uint64_t> ids;
  ids.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (!ids.insert(records[i].job_id).second) {
      throw Error(ErrorCode::kMalformedRecord,
                  "duplicate job_id " + std::to_string(records[i].job_id));
    }
  }
  return Trace(options.label, options.machine_count, std::move(records));
}

TraceFormat FormatForPath(std::string_view path) {
  constexpr std::string_view kCsv = ".csv";
  if (path.size() >= kCsv.size() &&
      path.substr(path.size() - kCsv.size()) == kCsv) {
    return TraceFormat::kCsv;
  }
  return TraceFormat::kJsonl;
}

Trace ReadTraceFile(const std::string& path, const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  return ParseTrace(in, FormatForPath(path), options);
}

std::string SerializeRecord(const JobRecord& r) {
  nlohmann::ordered_json obj;
  obj["job_id"] = r.job_id;
  if (r.name) obj["name"] = *r.name;
  obj["submit_time"] = r.submit_time;
  if (r.duration) obj["duration"] = *r.duration;
  if (r.input_bytes) obj["input_bytes"] = *r.input_bytes;
  if (r.shuffle_bytes) obj["shuffle_bytes"] = *r.shuffle_bytes;
  if (r.output_bytes) obj["output_bytes"] = *r.output_bytes;
  if (r.map_task_seconds) obj["map_task_seconds"] = *r.map_task_seconds;
  if (r.reduce_task_seconds) {
    obj["reduce_task_seconds"] = *r.reduce_task_seconds;
  }
  if (r.map_tasks) obj["map_tasks"] = *r.map_tasks;
  if (r.reduce_tasks) obj["reduce_tasks"] = *r.reduce_tasks;
  if (r.input_path_hash) obj["input_path_hash"] = *r.input_path_hash;
  if (r.output_path_hash) obj["output_path_hash"] = *r.output_path_hash;
  return obj.dump();
}

void WriteJsonl(const Trace& trace, std::ostream& out) {
  for (const auto& r : trace.records()) out << SerializeRecord(r) << '\n';
}

std::vector<std::string> RecordAnomalies(const JobRecord& r) {
  std::vector<std::string> out;
  auto negative = [](const std::optional<double>& v) {
    return v && (!std::isfinite(*v) || *v < 0);
  };
  if (negative(r.duration)) out.emplace_back("duration is negative");
  if (negative(r.map_task_seconds)) {
    out.emplace_back("map_task_seconds is negative");
  }
  if (negative(r.reduce_task_seconds)) {
    out.emplace_back("reduce_task_seconds is negative");
  }
  if (r.map_tasks && *r.map_tasks == 0 && r.map_task_seconds &&
      *r.map_task_seconds > 0) {
    out.emplace_back("map_tasks is 0 but map_task_seconds > 0");
  }
  if (r.reduce_tasks && *r.reduce_tasks == 0 && r.reduce_task_seconds &&
      *r.reduce_task_seconds > 0) {
    out.emplace_back("reduce_tasks is 0 but reduce_task_seconds > 0");
  }
  if (r.reduce_tasks && *r.reduce_tasks == 0 && r.shuffle_bytes &&
      *r.shuffle_bytes > 0) {
    out.emplace_back("map-only job (reduce_tasks 0) has shuffle_bytes > 0");
  }
  return out;
}

ValidationReport Validate(const Trace& trace) {
  ValidationReport report;
  report.record_count = trace.size();
  report.path_hash_seed = kPathHashSeed;
  for (const auto& f : OptionalFieldNames()) report.missing_field_counts[f] = 0;
  auto& missing = report.missing_field_counts;

  std::unordered_set<std::uint64_t> ids;
  std::int64_t previous_submit = std::numeric_limits<std::int64_t>::min();
  for (const auto& r : trace.records()) {
    missing["name"] += !r.name;
    missing["duration"] += !r.duration;
    missing["input_bytes"] += !r.input_bytes;
    missing["shuffle_bytes"] += !r.shuffle_bytes;
    missing["output_bytes"] += !r.output_bytes;
    missing["map_task_seconds"] += !r.map_task_seconds;
    missing["reduce_task_seconds"] += !r.reduce_task_seconds;
    missing["map_tasks"] += !r.map_tasks;
    missing["reduce_tasks"] += !r.reduce_tasks;
    missing["input_path_hash"] += !r.input_path_hash;
    missing["output_path_hash"] += !r.output_path_hash;

    for (auto& a : RecordAnomalies(r)) {
      report.anomalies.push_back({r.job_id, std::move(a)});
    }
    if (!ids.insert(r.job_id).second) {
      report.anomalies.push_back({r.job_id, "duplicate job_id"});
    }
    if (r.submit_time < previous_submit) {
      report.anomalies.push_back({r.job_id, "records out of submit order"});
    }
    previous_submit = r.submit_time;
  }
  return report;
}

}  // namespace mrtrace
