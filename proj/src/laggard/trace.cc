/*
 * Laggard
 * Copyright (c) The Laggard Authors.
 * All rights reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
 * WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
 * License for the specific language governing permissions and limitations
 * under the License.
 */

#include "laggard/trace.h"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "laggard/errors.h"

namespace laggard {

namespace {

const char kHeader[] = "job_id,task_id,event,timestamp";

std::string Trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(Trim(field));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool ParseDouble(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* b = s.data();
  const char* e = b + s.size();
  auto [ptr, ec] = std::from_chars(b, e, *out);
  return ec == std::errc() && ptr == e && std::isfinite(*out);
}

const char* KindLabel(EventKind k) {
  switch (k) {
    case EventKind::kSchedule: return "SCHEDULE";
    case EventKind::kFinish: return "FINISH";
    case EventKind::kOther: return "OTHER";
  }
  return "OTHER";
}

}  // namespace

std::vector<TaskEvent> ParseEvents(std::istream& in, ParseReport* report) {
  ParseReport local;
  ParseReport& rep = report ? *report : local;
  rep = ParseReport{};
  std::vector<TaskEvent> events;
  std::string line;
  int64_t lineno = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = Trim(line);
    if (!header) {
      if (t.empty()) continue;
      if (t != kHeader) {
        Fail(ErrorKind::kDomain,
             std::string("event file must start with header '") + kHeader +
                 "'");
      }
      header = true;
      continue;
    }
    if (t.empty()) continue;
    ++rep.rows;
    auto f = SplitCsv(t);
    if (f.size() != 4) {
      rep.errors.push_back({lineno, "expected 4 fields"});
      continue;
    }
    if (f[0].empty() || f[1].empty()) {
      rep.errors.push_back({lineno, "empty job or task id"});
      continue;
    }
    double ts = 0.0;
    if (!ParseDouble(f[3], &ts)) {
      rep.errors.push_back({lineno, "malformed timestamp '" + f[3] + "'"});
      continue;
    }
    if (ts < 0.0) {
      rep.errors.push_back({lineno, "negative timestamp"});
      continue;
    }
    TaskEvent ev;
    ev.job_id = f[0];
    ev.task_id = f[1];
    ev.label = f[2];
    ev.timestamp = ts;
    if (f[2] == "SCHEDULE") {
      ev.kind = EventKind::kSchedule;
    } else if (f[2] == "FINISH") {
      ev.kind = EventKind::kFinish;
    }
    events.push_back(std::move(ev));
  }
  if (!header) Fail(ErrorKind::kDomain, "event file is empty (no header)");
  return events;
}

std::vector<TaskEvent> ParseEventsFile(const std::string& path,
                                       ParseReport* report) {
  std::ifstream in(path);
  if (!in) Fail(ErrorKind::kIO, "cannot open event file '" + path + "'");
  return ParseEvents(in, report);
}

void WriteEvents(std::ostream& out, const std::vector<TaskEvent>& events) {
  out << kHeader << "\n";
  char buf[64];
  for (const auto& e : events) {
    std::string label =
        e.kind == EventKind::kOther && !e.label.empty() ? e.label
                                                        : KindLabel(e.kind);
    std::snprintf(buf, sizeof(buf), "%.17g", e.timestamp);
    out << e.job_id << "," << e.task_id << "," << label << "," << buf << "\n";
  }
}

void WriteEventsFile(const std::string& path,
                     const std::vector<TaskEvent>& events) {
  std::ofstream out(path);
  if (!out) Fail(ErrorKind::kIO, "cannot write event file '" + path + "'");
  WriteEvents(out, events);
  if (!out) Fail(ErrorKind::kIO, "write failed for '" + path + "'");
}

ExecTimes ExtractExecTimes(const std::vector<TaskEvent>& events,
                           std::optional<int64_t> filter_k) {
  struct Span {
    bool has_schedule = false;
    bool has_finish = false;
    double schedule = 0.0;
    double finish = 0.0;
  };
  std::map<std::pair<std::string, std::string>, Span> spans;
  std::map<std::string, std::set<std::string>> job_tasks;
  for (const auto& e : events) {
    Span& s = spans[{e.job_id, e.task_id}];
    job_tasks[e.job_id].insert(e.task_id);
    if (e.kind == EventKind::kSchedule) {
      // First SCHEDULE wins.
      if (!s.has_schedule || e.timestamp < s.schedule) s.schedule = e.timestamp;
      s.has_schedule = true;
    } else if (e.kind == EventKind::kFinish) {
      // Last FINISH wins.
      if (!s.has_finish || e.timestamp > s.finish) s.finish = e.timestamp;
      s.has_finish = true;
    }
  }
  ExecTimes out;
  for (const auto& [key, s] : spans) {
    if (filter_k.has_value()) {
      auto count = static_cast<int64_t>(job_tasks[key.first].size());
      if (count != *filter_k) {
        ++out.filtered;
        continue;
      }
    }
    if (!s.has_schedule || !s.has_finish) {
      ++out.dropped;
      continue;
    }
    double d = s.finish - s.schedule;
    if (d <= 0.0) {
      ++out.dropped;
      if (d < 0.0) ++out.inverted;
      continue;
    }
    out.times.push_back(d);
  }
  return out;
}

std::vector<std::pair<double, double>> TailCurve(
    const std::vector<double>& samples, const std::vector<double>& grid) {
  Require(!samples.empty(), "tail curve needs samples");
  for (size_t i = 1; i < grid.size(); ++i) {
    Require(grid[i] >= grid[i - 1], "tail curve grid must be non-decreasing");
  }
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double t : grid) {
    auto it = std::upper_bound(sorted.begin(), sorted.end(), t);
    out.emplace_back(t, static_cast<double>(sorted.end() - it) / n);
  }
  return out;
}

std::vector<TaskEvent> SyntheticTrace(const TaskDist& dist, int64_t jobs,
                                      int64_t tasks_per_job, uint64_t seed) {
  Require(jobs >= 1 && tasks_per_job >= 1,
          "synthetic trace needs at least one job and one task");
  ValidateDist(dist);
  Rng rng(seed);
  std::vector<TaskEvent> events;
  events.reserve(static_cast<size_t>(2 * jobs * tasks_per_job));
  double clock = 0.0;
  for (int64_t j = 0; j < jobs; ++j) {
    clock += -std::log(rng.UniformOpenLow());
    std::string job = "j" + std::to_string(j);
    for (int64_t t = 0; t < tasks_per_job; ++t) {
      std::string task = "t" + std::to_string(t);
      double life = Sample(dist, rng);
      events.push_back({job, task, EventKind::kSchedule, "SCHEDULE", clock});
      events.push_back(
          {job, task, EventKind::kFinish, "FINISH", clock + life});
    }
  }
  return events;
}

ConvertReport ConvertGoogleTaskEvents(std::istream& in, std::ostream& out) {
  static const char* kNames[] = {"SUBMIT", "SCHEDULE",       "EVICT",
                                 "FAIL",   "FINISH",         "KILL",
                                 "LOST",   "UPDATE_PENDING", "UPDATE_RUNNING"};
  ConvertReport rep;
  out << kHeader << "\n";
  std::string line;
  int64_t lineno = 0;
  char buf[64];
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = Trim(line);
    if (t.empty()) continue;
    ++rep.rows;
    auto f = SplitCsv(t);
    if (f.size() < 6) {
      rep.errors.push_back({lineno, "expected at least 6 columns"});
      continue;
    }
    double micros = 0.0, type = 0.0;
    if (!ParseDouble(f[0], &micros) || micros < 0.0) {
      rep.errors.push_back({lineno, "malformed timestamp"});
      continue;
    }
    if (!ParseDouble(f[5], &type) || type < 0.0 || type > 8.0 ||
        type != std::floor(type)) {
      rep.errors.push_back({lineno, "malformed event type"});
      continue;
    }
    if (f[2].empty() || f[3].empty()) {
      rep.errors.push_back({lineno, "empty job id or task index"});
      continue;
    }
    std::snprintf(buf, sizeof(buf), "%.17g", micros / 1e6);
    out << f[2] << "," << f[3] << "," << kNames[static_cast<int>(type)] << ","
        << buf << "\n";
    ++rep.written;
  }
  return rep;
}

}  // namespace laggard
