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

#ifndef LAGGARD_SERIALIZE_H
#define LAGGARD_SERIALIZE_H

#include <iosfwd>
#include <string>

#include "json.hpp"
#include "laggard/analytic_models.h"
#include "laggard/cluster_sim.h"
#include "laggard/fitting.h"
#include "laggard/monte_carlo.h"
#include "laggard/trace.h"

namespace laggard {

using Json = nlohmann::ordered_json;

// NaN and infinities become null.
Json Number(double v);

Json ToJson(const PolicyConfig& p);
Json ToJson(const Metrics& m);
Json ToJson(const EmpiricalMetrics& m);
Json ToJson(const CompareReport& r);
Json ToJson(const TradeoffCurve& c);
Json ToJson(const ClusterConfig& c);
Json ToJson(const ClusterResult& r);
Json ToJson(const FitResult& f);
Json ToJson(const GoodnessReport& g);
Json ToJson(const ExecTimes& e);
Json ToJson(const ParseReport& r);

// Missing keys keep their defaults; unknown keys are rejected.
ClusterConfig ClusterConfigFromJson(const Json& j);
ClusterConfig LoadClusterConfig(const std::string& path);

void WriteCurveCsv(std::ostream& out, const TradeoffCurve& c);
void WriteTrialsCsv(std::ostream& out, const EmpiricalMetrics& m);

void WriteTextFile(const std::string& path, const std::string& text);
std::string ReadTextFile(const std::string& path);

}  // namespace laggard

#endif  // LAGGARD_SERIALIZE_H
