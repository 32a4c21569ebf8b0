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

#include "stochsub/instance_io.h"

#include <fstream>
#include <sstream>

#include "stochsub/errors.h"

namespace stochsub::io {
namespace {

ItemId ItemByName(const Instance& instance, const Json& name) {
  if (!name.is_string()) throw InputError("item reference must be a string");
  auto e = instance.FindItem(name.get<std::string>());
  if (!e) throw InputError("unknown item '" + name.get<std::string>() + "'");
  return *e;
}

ItemId ItemByName(const std::vector<std::string>& items, const Json& name) {
  if (!name.is_string()) throw InputError("item reference must be a string");
  const std::string s = name.get<std::string>();
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (items[i] == s) return static_cast<ItemId>(i);
  }
  throw InputError("unknown item '" + s + "'");
}

StateId StateByName(const std::vector<std::string>& states, const Json& name) {
  if (!name.is_string()) throw InputError("state reference must be a string");
  const std::string s = name.get<std::string>();
  for (std::size_t i = 0; i < states.size(); ++i) {
    if (states[i] == s) return static_cast<StateId>(i);
  }
  throw InputError("unknown state '" + s + "'");
}

const Json& Field(const Json& doc, const char* key) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw InputError(std::string("missing field '") + key + "'");
  }
  return doc.at(key);
}

std::vector<std::string> StringList(const Json& doc) {
  if (!doc.is_array()) throw InputError("expected a list of strings");
  std::vector<std::string> out;
  for (const Json& v : doc) {
    if (!v.is_string()) throw InputError("expected a list of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

double Number(const Json& doc) {
  if (!doc.is_number()) throw InputError("expected a number");
  return doc.get<double>();
}

int Integer(const Json& doc) {
  if (!doc.is_number_integer()) throw InputError("expected an integer");
  return doc.get<int>();
}

mpq_class Rational(const Json& doc) {
  if (!doc.is_string()) throw InputError("probabilities must be \"p/q\" strings");
  mpq_class q;
  if (q.set_str(doc.get<std::string>(), 10) != 0) {
    throw InputError("malformed rational '" + doc.get<std::string>() + "'");
  }
  q.canonicalize();
  return q;
}

Json ItemList(const Instance& instance, ItemMask set) {
  Json out = Json::array();
  for (ItemId e : MaskItems(set)) out.push_back(instance.items()[e]);
  return out;
}

}  // namespace

Json InstanceToJson(const Instance& instance) {
  Json doc;
  doc["items"] = instance.items();
  doc["states"] = instance.states();
  Json dist = Json::array();
  const auto& d = instance.distribution();
  for (std::size_t i = 0; i < d.size(); ++i) {
    Json assignment = Json::object();
    for (int e = 0; e < instance.num_items(); ++e) {
      assignment[instance.items()[e]] =
          instance.states()[d.realizations()[i][e]];
    }
    dist.push_back({{"assignment", assignment},
                    {"prob", d.probabilities()[i].get_str()}});
  }
  doc["distribution"] = std::move(dist);

  const UtilityFunction& f = instance.utility();
  Json utility;
  if (f.is_coverage()) {
    const WeightedCoverage& cov = f.coverage();
    utility["kind"] = "coverage";
    utility["targets"] = cov.targets;
    utility["weights"] = cov.weights;
    Json entries = Json::array();
    for (int e = 0; e < instance.num_items(); ++e) {
      for (int s = 0; s < instance.num_states(); ++s) {
        Json targets = Json::array();
        const std::uint64_t bits = cov.coverage[f.PairIndex(e, s)];
        for (std::size_t t = 0; t < cov.targets.size(); ++t) {
          if ((bits >> t) & 1u) targets.push_back(cov.targets[t]);
        }
        entries.push_back({{"item", instance.items()[e]},
                           {"state", instance.states()[s]},
                           {"targets", targets}});
      }
    }
    utility["coverage"] = std::move(entries);
  } else {
    utility["kind"] = "table";
    Json entries = Json::array();
    const auto& values = f.table().values;
    for (std::size_t mask = 0; mask < values.size(); ++mask) {
      Json set = Json::array();
      for (int p = 0; p < f.num_pairs(); ++p) {
        if ((mask >> p) & 1u) {
          set.push_back(Json::array({instance.items()[p / f.num_states()],
                                     instance.states()[p % f.num_states()]}));
        }
      }
      entries.push_back({{"set", set}, {"value", values[mask]}});
    }
    utility["table"] = std::move(entries);
  }
  doc["utility"] = std::move(utility);
  return doc;
}

Instance InstanceFromJson(const Json& doc) {
  std::vector<std::string> items = StringList(Field(doc, "items"));
  std::vector<std::string> states = StringList(Field(doc, "states"));
  const int m = static_cast<int>(items.size());
  const int k = static_cast<int>(states.size());
  if (m < 1 || k < 1) throw InputError("items and states must be nonempty");
  if (m > kMaxItems) throw CapacityError("more than 64 items");

  std::vector<Realization> support;
  std::vector<mpq_class> probs;
  const Json& dist = Field(doc, "distribution");
  if (!dist.is_array()) throw InputError("distribution must be a list");
  for (const Json& entry : dist) {
    const Json& assignment = Field(entry, "assignment");
    if (!assignment.is_object()) throw InputError("assignment must be a map");
    Realization phi(m, kUnobserved);
    for (const auto& [name, state] : assignment.items()) {
      const ItemId e = ItemByName(items, Json(name));
      if (phi[e] != kUnobserved) throw InputError("item assigned twice");
      phi[e] = StateByName(states, state);
    }
    for (StateId s : phi) {
      if (s == kUnobserved) {
        throw InputError("realization does not assign every item");
      }
    }
    support.push_back(std::move(phi));
    probs.push_back(Rational(Field(entry, "prob")));
  }
  JointDistribution distribution(m, k, std::move(support), std::move(probs));

  const Json& u = Field(doc, "utility");
  const std::string kind = Field(u, "kind").get<std::string>();
  if (kind == "coverage") {
    std::vector<std::string> targets = StringList(Field(u, "targets"));
    std::vector<double> weights;
    for (const Json& w : Field(u, "weights")) weights.push_back(Number(w));
    std::vector<std::vector<std::vector<int>>> coverage(
        m, std::vector<std::vector<int>>(k));
    for (const Json& entry : Field(u, "coverage")) {
      const ItemId e = ItemByName(items, Field(entry, "item"));
      const StateId s = StateByName(states, Field(entry, "state"));
      for (const Json& t : Field(entry, "targets")) {
        const std::string name = t.get<std::string>();
        auto it = std::find(targets.begin(), targets.end(), name);
        if (it == targets.end()) {
          throw InputError("unknown target '" + name + "'");
        }
        coverage[e][s].push_back(static_cast<int>(it - targets.begin()));
      }
    }
    return Instance(std::move(items), std::move(states),
                    std::move(distribution),
                    UtilityFunction::Coverage(m, k, std::move(targets),
                                              std::move(weights), coverage));
  }
  if (kind == "table") {
    if (m * k > kMaxTablePairs) {
      throw CapacityError("explicit tables are limited to 20 pairs");
    }
    const std::size_t n = std::size_t{1} << (m * k);
    std::vector<double> values(n, 0.0);
    std::vector<bool> seen(n, false);
    for (const Json& entry : Field(u, "table")) {
      PairMask mask = 0;
      for (const Json& pair : Field(entry, "set")) {
        if (!pair.is_array() || pair.size() != 2) {
          throw InputError("table sets list [item, state] pairs");
        }
        mask |= PairMask{1} << (ItemByName(items, pair[0]) * k +
                                StateByName(states, pair[1]));
      }
      if (seen[mask]) throw InputError("table lists a set twice");
      seen[mask] = true;
      values[mask] = Number(Field(entry, "value"));
    }
    if (std::find(seen.begin(), seen.end(), false) != seen.end()) {
      throw InputError("table must list every subset of E x O");
    }
    return Instance(std::move(items), std::move(states),
                    std::move(distribution),
                    UtilityFunction::Table(m, k, std::move(values)));
  }
  throw InputError("unknown utility kind '" + kind + "'");
}

Json ConstraintToJson(const Instance& instance, const Constraint& c) {
  Json doc;
  doc["kind"] = ConstraintKindName(c.kind());
  switch (c.kind()) {
    case ConstraintKind::kUniform:
      doc["k"] = c.rank();
      break;
    case ConstraintKind::kPartition: {
      Json blocks = Json::array();
      for (const auto& b : c.blocks()) blocks.push_back(ItemList(instance, ItemsMask(b)));
      doc["blocks"] = std::move(blocks);
      doc["capacities"] = c.capacities();
      break;
    }
    case ConstraintKind::kKnapsack:
      doc["costs"] = c.costs();
      doc["budget"] = c.budget();
      break;
    case ConstraintKind::kExplicit:
      if (c.is_downward_closed()) {
        Json sets = Json::array();
        for (ItemMask s : c.feasible_sets()) sets.push_back(ItemList(instance, s));
        doc["feasible_sets"] = std::move(sets);
      } else {
        Json seqs = Json::array();
        for (const auto& seq : c.feasible_sequences()) {
          Json names = Json::array();
          for (ItemId e : seq) names.push_back(instance.items()[e]);
          seqs.push_back(std::move(names));
        }
        doc["feasible_sequences"] = std::move(seqs);
      }
      break;
  }
  if (c.configured_alpha()) doc["alpha"] = *c.configured_alpha();
  return doc;
}

Constraint ConstraintFromJson(const Json& doc, const Instance& instance) {
  const int m = instance.num_items();
  const std::string kind = Field(doc, "kind").get<std::string>();
  auto items_of = [&](const Json& list) {
    std::vector<ItemId> out;
    if (!list.is_array()) throw InputError("expected a list of item names");
    for (const Json& name : list) out.push_back(ItemByName(instance, name));
    return out;
  };
  std::optional<Constraint> c;
  if (kind == "uniform") {
    c = Constraint::Uniform(m, Integer(Field(doc, "k")));
  } else if (kind == "partition") {
    std::vector<std::vector<ItemId>> blocks;
    for (const Json& b : Field(doc, "blocks")) blocks.push_back(items_of(b));
    std::vector<int> caps;
    for (const Json& v : Field(doc, "capacities")) caps.push_back(Integer(v));
    c = Constraint::Partition(m, std::move(blocks), std::move(caps));
  } else if (kind == "knapsack") {
    std::vector<double> costs;
    for (const Json& v : Field(doc, "costs")) costs.push_back(Number(v));
    if (static_cast<int>(costs.size()) != m) {
      throw InputError("knapsack needs one cost per item");
    }
    c = Constraint::Knapsack(std::move(costs), Number(Field(doc, "budget")));
  } else if (kind == "explicit") {
    if (doc.contains("feasible_sequences")) {
      std::vector<std::vector<ItemId>> seqs;
      for (const Json& s : doc.at("feasible_sequences")) seqs.push_back(items_of(s));
      c = Constraint::ExplicitSequences(m, std::move(seqs));
    } else {
      std::vector<ItemMask> sets;
      for (const Json& s : Field(doc, "feasible_sets")) {
        const auto items = items_of(s);
        if (Size(ItemsMask(items)) != static_cast<int>(items.size())) {
          throw InputError("feasible set repeats an item");
        }
        sets.push_back(ItemsMask(items));
      }
      c = Constraint::ExplicitSets(m, std::move(sets));
    }
  } else {
    throw InputError("unknown constraint kind '" + kind + "'");
  }
  if (doc.contains("alpha")) return c->WithAlpha(Number(doc.at("alpha")));
  return *c;
}

Constraint ParseConstraint(const std::string& text, const Instance& instance) {
  const std::string prefix = "uniform:";
  if (text.rfind(prefix, 0) == 0) {
    try {
      return Constraint::Uniform(instance.num_items(),
                                 std::stoi(text.substr(prefix.size())));
    } catch (const std::logic_error&) {
      throw InputError("malformed constraint '" + text + "'");
    }
  }
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed constraint: ") + e.what());
  }
  return ConstraintFromJson(doc, instance);
}

Json PolicyToJson(const Instance& instance, const Policy& policy) {
  auto node_json = [&](auto&& self, int at) -> Json {
    const Policy::Node& n = policy.node(at);
    if (n.is_stop()) return Json{{"action", "stop"}};
    Json branches = Json::object();
    for (std::size_t s = 0; s < n.children.size(); ++s) {
      if (n.children[s] != Policy::kNoChild) {
        branches[instance.states()[s]] = self(self, n.children[s]);
      }
    }
    return Json{{"action", "pick"},
                {"item", instance.items()[n.item]},
                {"branches", std::move(branches)}};
  };
  return node_json(node_json, 0);
}

Policy PolicyFromJson(const Json& doc, const Instance& instance) {
  const std::string action = Field(doc, "action").get<std::string>();
  if (action == "stop") return Policy();
  if (action != "pick") throw InputError("policy action must be stop or pick");
  const ItemId e = ItemByName(instance, Field(doc, "item"));
  std::vector<std::pair<StateId, Policy>> branches;
  for (const auto& [state, sub] : Field(doc, "branches").items()) {
    branches.emplace_back(StateByName(instance.states(), Json(state)),
                          PolicyFromJson(sub, instance));
  }
  return Policy::Pick(e, instance.num_states(), std::move(branches));
}

Json PartialToJson(const Instance& instance, const PartialRealization& p) {
  Json out = Json::object();
  for (std::size_t e = 0; e < p.size(); ++e) {
    if (p[e] != kUnobserved) out[instance.items()[e]] = instance.states()[p[e]];
  }
  return out;
}

PartialRealization PartialFromJson(const Json& doc, const Instance& instance) {
  if (!doc.is_object()) throw InputError("partial realization must be a map");
  PartialRealization p(instance.num_items(), kUnobserved);
  for (const auto& [name, state] : doc.items()) {
    p[ItemByName(instance, Json(name))] = StateByName(instance.states(), state);
  }
  return p;
}

Json IndependenceReportToJson(const Instance& instance,
                              const IndependenceReport& r) {
  Json doc;
  doc["value"] = r.value.get_str();
  doc["clamped"] = r.clamped.get_str();
  doc["value_approx"] = r.value.get_d();
  doc["numerator"] = r.numerator.get_str();
  doc["denominator"] = r.denominator.get_str();
  doc["ratios_examined"] = r.ratios_examined;
  if (const auto* w = std::get_if<KappaWitness>(&r.witness)) {
    doc["witness"] = {{"item", instance.items()[w->item]},
                      {"base", ItemList(instance, w->base)},
                      {"observation", PartialToJson(instance, w->observation)}};
  } else if (const auto* w = std::get_if<GammaWitness>(&r.witness)) {
    doc["witness"] = {{"item", instance.items()[w->item]},
                      {"first", PartialToJson(instance, w->first)},
                      {"second", PartialToJson(instance, w->second)}};
  }
  return doc;
}

Problem ParseProblem(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance document: ") + e.what());
  }
  try {
    Instance instance = InstanceFromJson(doc);
    std::optional<Constraint> constraint;
    if (doc.contains("constraint")) {
      constraint = ConstraintFromJson(doc.at("constraint"), instance);
    }
    return Problem{std::move(instance), std::move(constraint)};
  } catch (const Json::exception& e) {
    throw InputError(std::string("malformed instance document: ") + e.what());
  }
}

Problem LoadProblem(const std::string& path) {
  return ParseProblem(ReadFile(path));
}

std::string DumpProblem(const Instance& instance,
                        const std::optional<Constraint>& constraint) {
  Json doc = InstanceToJson(instance);
  if (constraint) doc["constraint"] = ConstraintToJson(instance, *constraint);
  return doc.dump(2) + "\n";
}

void SaveProblem(const std::string& path, const Instance& instance,
                 const std::optional<Constraint>& constraint) {
  WriteFile(path, DumpProblem(instance, constraint));
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write '" + path + "'");
  out << contents;
}

}  // namespace stochsub::io
