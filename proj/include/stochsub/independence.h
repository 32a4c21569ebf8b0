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

#ifndef STOCHSUB_INDEPENDENCE_H_
#define STOCHSUB_INDEPENDENCE_H_

#include <gmpxx.h>

#include <cstdint>
#include <variant>

#include "stochsub/instance.h"
#include "stochsub/types.h"

namespace stochsub {

// How the base set's states are drawn in the kappa denominator.
//   kLiteral:     Phi_S ~ D (unconditional), the definition as written.
//   kConditioned: Phi_S ~ D | Phi_V = phi_V, for sensitivity analysis.
enum class KappaVariant { kLiteral, kConditioned };

// (e, S, V, phi_V); V is the domain of `observation`.
struct KappaWitness {
  ItemId item = 0;
  ItemMask base = 0;
  PartialRealization observation;

  friend bool operator==(const KappaWitness&, const KappaWitness&) = default;
};

// (e, V, phi_V, phi'_V).
struct GammaWitness {
  ItemId item = 0;
  PartialRealization first;
  PartialRealization second;

  friend bool operator==(const GammaWitness&, const GammaWitness&) = default;
};

struct IndependenceReport {
  // Raw minimum over all examined ratios, and min(raw, 1).
  mpq_class value = 1;
  mpq_class clamped = 1;
  // The minimizing ratio as numerator / denominator; 0 / 0 counts as 1.
  mpq_class numerator = 0;
  mpq_class denominator = 0;
  std::variant<std::monostate, KappaWitness, GammaWitness> witness;
  std::int64_t ratios_examined = 0;

  double clamped_double() const { return clamped.get_d(); }
};

struct IndependenceOptions {
  int max_items = 6;
  Execution execution = Execution::kParallel;
  KappaVariant kappa_variant = KappaVariant::kLiteral;
};

// Degree of independence: min over (e, S, V, phi_V) of
// f_S(e) / E_{Phi_e ~ D_e(phi_V)}[f_S(Phi_e)].
IndependenceReport Kappa(const Instance& instance,
                         const IndependenceOptions& options = {});

// Second form: min over (e, V, phi_V, phi'_V) of the ratio of expected
// marginals of Phi_e ~ D_e(phi_V) and Phi_e ~ D_e(phi'_V) on top of
// phi_V u phi'_V.
IndependenceReport Gamma(const Instance& instance,
                         const IndependenceOptions& options = {});

// Re-evaluates one ratio straight from the definitions (support sums and
// Condition), independent of the enumeration tables. Returns the ratio with
// the 0/0 = 1 convention; throws if the ratio is infinite.
mpq_class KappaRatio(const Instance& instance, const KappaWitness& witness,
                     KappaVariant variant = KappaVariant::kLiteral);
mpq_class GammaRatio(const Instance& instance, const GammaWitness& witness);

// alpha * (1 - exp(-kappa/2 + kappa/(18 m^2)) - (kappa + 2)/(3 m kappa)).
// May be negative for small m * kappa.
double RatioBound(double kappa, int m, double alpha);

// (1 + gamma) / gamma.
double AdaptivityGapBound(double gamma);

}  // namespace stochsub

#endif  // STOCHSUB_INDEPENDENCE_H_
