// Copyright 2026 The Authors.
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

#ifndef STOCHSUB_INSTANCE_IO_H_
#define STOCHSUB_INSTANCE_IO_H_

#include <optional>
#include <string>

#include "json.hpp"
#include "stochsub/constraints.h"
#include "stochsub/independence.h"
#include "stochsub/instance.h"
#include "stochsub/policies.h"

// JSON documents for instances, constraints, policies and independence
// reports. Items and states are referred to by name; probabilities are
// "p/q" strings.
namespace stochsub::io {

using Json = nlohmann::ordered_json;

Json InstanceToJson(const Instance& instance);
Instance InstanceFromJson(const Json& doc);

Json ConstraintToJson(const Instance& instance, const Constraint& constraint);
Constraint ConstraintFromJson(const Json& doc, const Instance& instance);

// Shorthands accepted wherever a constraint is read from the command line:
// "uniform:K", or an inline JSON constraint object.
Constraint ParseConstraint(const std::string& text, const Instance& instance);

Json PolicyToJson(const Instance& instance, const Policy& policy);
Policy PolicyFromJson(const Json& doc, const Instance& instance);

Json PartialToJson(const Instance& instance, const PartialRealization& p);
PartialRealization PartialFromJson(const Json& doc, const Instance& instance);

Json IndependenceReportToJson(const Instance& instance,
                              const IndependenceReport& report);

// An instance file, optionally carrying a "constraint" block.
struct Problem {
  Instance instance;
  std::optional<Constraint> constraint;
};

Problem ParseProblem(const std::string& text);
Problem LoadProblem(const std::string& path);
std::string DumpProblem(const Instance& instance,
                        const std::optional<Constraint>& constraint = {});
void SaveProblem(const std::string& path, const Instance& instance,
                 const std::optional<Constraint>& constraint = {});

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& contents);

}  // namespace stochsub::io

#endif  // STOCHSUB_INSTANCE_IO_H_
