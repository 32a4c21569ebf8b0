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

#include "stochsub/independence.h"

#include <omp.h>

#include <cmath>
#include <map>
#include <optional>

#include "stochsub/errors.h"

namespace stochsub {
namespace {

// Observation class of the support restricted to V.
struct ObservationGroup {
  PartialRealization observation;
  mpq_class mass = 0;
  // state_mass[e][o] = Pr[Phi_V = phi_V, Phi_e = o].
  std::vector<std::vector<mpq_class>> state_mass;
  std::vector<std::size_t> members;
};

std::vector<std::vector<ObservationGroup>> BuildGroups(
    const Instance& instance) {
  const int m = instance.num_items();
  const int k = instance.num_states();
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities();
  std::vector<std::vector<ObservationGroup>> groups(std::size_t{1} << m);
  for (ItemMask v = 0; v < (ItemMask{1} << m); ++v) {
    std::map<PartialRealization, ObservationGroup> by_obs;
    for (std::size_t i = 0; i < support.size(); ++i) {
      if (beta[i] == 0) continue;
      PartialRealization obs = Restrict(support[i], v);
      auto [it, inserted] = by_obs.try_emplace(obs);
      ObservationGroup& g = it->second;
      if (inserted) {
        g.observation = std::move(obs);
        g.state_mass.assign(m, std::vector<mpq_class>(k, 0));
      }
      g.mass += beta[i];
      for (int e = 0; e < m; ++e) g.state_mass[e][support[i][e]] += beta[i];
      g.members.push_back(i);
    }
    for (auto& [obs, g] : by_obs) groups[v].push_back(std::move(g));
  }
  return groups;
}

mpq_class Exact(double v) { return mpq_class(v); }

struct Candidate {
  mpq_class num;
  mpq_class den;
  mpq_class value;
};

// Ratio with the 0/0 = 1 convention; nullopt for x/0 with x != 0, which
// cannot be a minimum.
std::optional<Candidate> MakeRatio(mpq_class num, mpq_class den) {
  if (den == 0) {
    if (num == 0) return Candidate{0, 0, 1};
    return std::nullopt;
  }
  mpq_class value = num / den;
  return Candidate{std::move(num), std::move(den), std::move(value)};
}

template <typename Witness>
struct UnitResult {
  std::optional<Candidate> best;
  Witness witness;
  std::int64_t examined = 0;

  void Offer(std::optional<Candidate> c, const Witness& w) {
    ++examined;
    if (!c) return;
    if (!best || c->value < best->value) {
      best = std::move(c);
      witness = w;
    }
  }
};

// Runs `unit(u)` for u in [0, n) and merges in index order; strict
// improvement keeps the earliest witness on ties.
template <typename Witness, typename Unit>
IndependenceReport Reduce(std::int64_t n, const Unit& unit, Execution exec) {
  std::vector<UnitResult<Witness>> results(n);
#pragma omp parallel for schedule(dynamic, 1) if (exec == Execution::kParallel)
  for (std::int64_t u = 0; u < n; ++u) results[u] = unit(u);

  IndependenceReport report;
  std::optional<Candidate> best;
  for (auto& r : results) {
    report.ratios_examined += r.examined;
    if (r.best && (!best || r.best->value < best->value)) {
      best = r.best;
      report.witness = r.witness;
    }
  }
  if (!best) throw InternalError("no finite ratio examined");
  report.value = best->value;
  report.numerator = best->num;
  report.denominator = best->den;
  report.clamped = report.value > 1 ? mpq_class(1) : report.value;
  return report;
}

void CheckCap(const Instance& instance, const IndependenceOptions& options) {
  if (instance.num_items() > options.max_items) {
    throw CapacityError("exhaustive independence enumeration needs m <= " +
                        std::to_string(options.max_items));
  }
}

}  // namespace

IndependenceReport Kappa(const Instance& instance,
                         const IndependenceOptions& options) {
  CheckCap(instance, options);
  const int m = instance.num_items();
  const int k = instance.num_states();
  const UtilityFunction& f = instance.utility();
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities();
  const ItemMask full = FullMask(m);

  // f(S) exactly, for every S.
  std::vector<mpq_class> set_value(std::size_t{1} << m, 0);
  for (ItemMask s = 0; s <= full; ++s) {
    for (std::size_t i = 0; i < support.size(); ++i) {
      set_value[s] += beta[i] * Exact(f.Evaluate(instance.Pairs(support[i], s)));
    }
  }
  const auto groups = BuildGroups(instance);
  const bool conditioned = options.kappa_variant == KappaVariant::kConditioned;

  // Unit u = (e, S) with S ranging over all masks; units with e in S are
  // empty.
  const std::int64_t units = static_cast<std::int64_t>(m) << m;
  auto unit = [&](std::int64_t u) {
    UnitResult<KappaWitness> r;
    const ItemId e = static_cast<ItemId>(u >> m);
    const ItemMask s = static_cast<ItemMask>(u) & full;
    if (Contains(s, e)) return r;
    const mpq_class num = set_value[With(s, e)] - set_value[s];

    // with_state[i][o] = f(phi_i,S + (e, o)).
    std::vector<std::vector<mpq_class>> with_state(
        support.size(), std::vector<mpq_class>(k));
    std::vector<mpq_class> base(support.size());
    for (std::size_t i = 0; i < support.size(); ++i) {
      const PairMask p = instance.Pairs(support[i], s);
      base[i] = Exact(f.Evaluate(p));
      for (StateId o = 0; o < k; ++o) {
        with_state[i][o] = Exact(f.Evaluate(p | f.PairBit(e, o)));
      }
    }
    // Unconditional state marginals f_S(o).
    std::vector<mpq_class> gain(k, 0);
    for (StateId o = 0; o < k; ++o) {
      for (std::size_t i = 0; i < support.size(); ++i) {
        gain[o] += beta[i] * with_state[i][o];
      }
      gain[o] -= set_value[s];
    }

    const ItemMask others = Without(full, e);
    for (ItemMask v = 0;; v = (v - others) & others) {
      for (const ObservationGroup& g : groups[v]) {
        mpq_class den = 0;
        if (!conditioned) {
          for (StateId o = 0; o < k; ++o) {
            if (g.state_mass[e][o] != 0) den += g.state_mass[e][o] * gain[o];
          }
          den /= g.mass;
        } else {
          mpq_class cond_base = 0;
          for (std::size_t i : g.members) cond_base += beta[i] * base[i];
          cond_base /= g.mass;
          for (StateId o = 0; o < k; ++o) {
            if (g.state_mass[e][o] == 0) continue;
            mpq_class cond_with = 0;
            for (std::size_t i : g.members) cond_with += beta[i] * with_state[i][o];
            cond_with /= g.mass;
            den += (g.state_mass[e][o] / g.mass) * (cond_with - cond_base);
          }
        }
        r.Offer(MakeRatio(num, den), KappaWitness{e, s, g.observation});
      }
      if (v == others) break;
    }
    return r;
  };
  return Reduce<KappaWitness>(units, unit, options.execution);
}

IndependenceReport Gamma(const Instance& instance,
                         const IndependenceOptions& options) {
  CheckCap(instance, options);
  const int m = instance.num_items();
  const int k = instance.num_states();
  const UtilityFunction& f = instance.utility();
  const ItemMask full = FullMask(m);
  const auto groups = BuildGroups(instance);

  // Unit u = (e, V).
  const std::int64_t units = static_cast<std::int64_t>(m) << m;
  auto unit = [&](std::int64_t u) {
    UnitResult<GammaWitness> r;
    const ItemId e = static_cast<ItemId>(u >> m);
    const ItemMask v = static_cast<ItemMask>(u) & full;
    if (Contains(v, e)) return r;
    for (const ObservationGroup& g1 : groups[v]) {
      for (const ObservationGroup& g2 : groups[v]) {
        const PairMask base =
            instance.Pairs(g1.observation) | instance.Pairs(g2.observation);
        const mpq_class f_base = Exact(f.Evaluate(base));
        mpq_class num = 0;
        mpq_class den = 0;
        for (StateId o = 0; o < k; ++o) {
          if (g1.state_mass[e][o] == 0 && g2.state_mass[e][o] == 0) continue;
          const mpq_class delta =
              Exact(f.Evaluate(base | f.PairBit(e, o))) - f_base;
          num += g1.state_mass[e][o] * delta;
          den += g2.state_mass[e][o] * delta;
        }
        num /= g1.mass;
        den /= g2.mass;
        r.Offer(MakeRatio(std::move(num), std::move(den)),
                GammaWitness{e, g1.observation, g2.observation});
      }
    }
    return r;
  };
  return Reduce<GammaWitness>(units, unit, options.execution);
}

namespace {

// E[f(Phi_S u extra) | Phi_V = observed] by a direct support sum.
mpq_class ConditionalExpectation(const Instance& instance, ItemMask set,
                                 PairMask extra,
                                 const PartialRealization& observed) {
  const auto& support = instance.distribution().realizations();
  const auto& beta = instance.distribution().probabilities();
  mpq_class total = 0;
  mpq_class mass = 0;
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (!Consistent(support[i], observed)) continue;
    total += beta[i] *
             Exact(instance.utility().Evaluate(instance.Pairs(support[i], set) |
                                               extra));
    mass += beta[i];
  }
  return total / mass;
}

mpq_class RatioOrThrow(const mpq_class& num, const mpq_class& den) {
  auto c = MakeRatio(num, den);
  if (!c) throw InputError("witness ratio is infinite");
  return c->value;
}

}  // namespace

mpq_class KappaRatio(const Instance& instance, const KappaWitness& w,
                     KappaVariant variant) {
  const int m = instance.num_items();
  const PartialRealization nothing(m, kUnobserved);
  const UtilityFunction& f = instance.utility();
  const mpq_class num =
      ConditionalExpectation(instance, With(w.base, w.item), 0, nothing) -
      ConditionalExpectation(instance, w.base, 0, nothing);
  const ConditionalDistribution cond =
      Condition(instance.distribution(), w.item, w.observation);
  const PartialRealization& outer =
      variant == KappaVariant::kLiteral ? nothing : w.observation;
  const mpq_class base = ConditionalExpectation(instance, w.base, 0, outer);
  mpq_class den = 0;
  for (const auto& [o, p] : cond.marginal) {
    den += p * (ConditionalExpectation(instance, w.base, f.PairBit(w.item, o),
                                       outer) -
                base);
  }
  return RatioOrThrow(num, den);
}

mpq_class GammaRatio(const Instance& instance, const GammaWitness& w) {
  const UtilityFunction& f = instance.utility();
  const PairMask base = instance.Pairs(w.first) | instance.Pairs(w.second);
  const mpq_class f_base = Exact(f.Evaluate(base));
  const auto c1 = Condition(instance.distribution(), w.item, w.first);
  const auto c2 = Condition(instance.distribution(), w.item, w.second);
  mpq_class num = 0;
  mpq_class den = 0;
  for (const auto& [o, p] : c1.marginal) {
    num += p * (Exact(f.Evaluate(base | f.PairBit(w.item, o))) - f_base);
  }
  for (const auto& [o, p] : c2.marginal) {
    den += p * (Exact(f.Evaluate(base | f.PairBit(w.item, o))) - f_base);
  }
  return RatioOrThrow(num, den);
}

double RatioBound(double kappa, int m, double alpha) {
  if (!(kappa > 0.0)) {
    throw DegenerateBoundError("approximation bound undefined for kappa = 0");
  }
  if (m < 1) throw InputError("m must be at least 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("alpha must lie in (0, 1]");
  }
  const double mm = static_cast<double>(m);
  return alpha * (1.0 - std::exp(-kappa / 2.0 + kappa / (18.0 * mm * mm)) -
                  (kappa + 2.0) / (3.0 * mm * kappa));
}

double AdaptivityGapBound(double gamma) {
  if (!(gamma > 0.0)) {
    throw DegenerateBoundError("adaptivity gap bound undefined for gamma = 0");
  }
  return (1.0 + gamma) / gamma;
}

}  // namespace stochsub
