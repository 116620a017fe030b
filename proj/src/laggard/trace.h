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

#ifndef LAGGARD_TRACE_H
#define LAGGARD_TRACE_H

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laggard/distributions.h"

namespace laggard {

enum class EventKind { kSchedule, kFinish, kOther };

struct TaskEvent {
  std::string job_id;
  std::string task_id;
  EventKind kind = EventKind::kOther;
  // Original label, kept for events parsed as kOther.
  std::string label;
  double timestamp = 0.0;
};

struct RowError {
  int64_t line = 0;
  std::string message;
};

struct ParseReport {
  int64_t rows = 0;
  std::vector<RowError> errors;
};

// CSV with the mandatory header job_id,task_id,event,timestamp.
std::vector<TaskEvent> ParseEvents(std::istream& in, ParseReport* report);
std::vector<TaskEvent> ParseEventsFile(const std::string& path,
                                       ParseReport* report);

void WriteEvents(std::ostream& out, const std::vector<TaskEvent>& events);
void WriteEventsFile(const std::string& path,
                     const std::vector<TaskEvent>& events);

struct ExecTimes {
  std::vector<double> times;
  // Tasks lacking SCHEDULE or FINISH, or finishing no later than scheduled.
  int64_t dropped = 0;
  // Subset of dropped: FINISH strictly before SCHEDULE.
  int64_t inverted = 0;
  // Tasks skipped because their job does not match filter_k.
  int64_t filtered = 0;
};

ExecTimes ExtractExecTimes(const std::vector<TaskEvent>& events,
                           std::optional<int64_t> filter_k = std::nullopt);

// Pr{X > t} at each grid point.
std::vector<std::pair<double, double>> TailCurve(
    const std::vector<double>& samples, const std::vector<double>& grid);

// Synthetic trace with task lifetimes drawn from dist.
std::vector<TaskEvent> SyntheticTrace(const TaskDist& dist, int64_t jobs,
                                      int64_t tasks_per_job, uint64_t seed);

// Converts a Google cluster-data task_events table (headerless CSV,
// timestamps in microseconds) into the neutral event CSV.
struct ConvertReport {
  int64_t rows = 0;
  int64_t written = 0;
  std::vector<RowError> errors;
};
ConvertReport ConvertGoogleTaskEvents(std::istream& in, std::ostream& out);

}  // namespace laggard

#endif  // LAGGARD_TRACE_H
