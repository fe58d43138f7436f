// Checkable catalog of the epistemic properties: each property is a
// quantified statement about one model and one operator kind, evaluated
// exhaustively over all events (pairs) on small spaces or over seeded
// uniform samples above the caps. Failed checks carry a counterexample
// witness whose two sides can be recomputed independently.
//
// Properties that mention the core unawareness set evaluate it as the set
// of empty-image states for the revised kind and as the empty set for the
// standard kind, which keeps the whole catalog total over both kinds
// (r_necessitation then collapses to necessitation under the standard kind).
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "epi/model.hpp"
#include "epi/operators.hpp"
#include "epi/rng.hpp"

namespace epi {

enum class PropertyId {
  necessitation,            // K(Omega) = Omega
  r_necessitation,          // K(Omega) = Omega \ core
  monotonicity,             // E subset F  =>  K(E) subset K(F)
  truth,                    // K(E) subset E
  positive_introspection,   // K(E) subset K(K(E))
  negative_introspection,   // notK(E) subset K(notK(E))
  ku_introspection,         // K(U(E)) = {}
  au_introspection_core,    // core subset U(core)
  au_introspection_all,     // U(E) subset U(U(E))
  reverse_au_introspection, // U(U(E)) subset U(E)
  plausibility,             // core subset U(E) subset notK(E) & notK(notK(E))
  symmetry,                 // core = U({})
  absorption,               // K(E | core) = K(E)
  partition_no_unawareness, // partitional model  =>  U(E) = {} for all E
  dlr_collapse,             // necessitation & ku & au_all  =>  U(E) = {} for all E
};

inline constexpr std::array<PropertyId, 15> kAllProperties = {
    PropertyId::necessitation,
    PropertyId::r_necessitation,
    PropertyId::monotonicity,
    PropertyId::truth,
    PropertyId::positive_introspection,
    PropertyId::negative_introspection,
    PropertyId::ku_introspection,
    PropertyId::au_introspection_core,
    PropertyId::au_introspection_all,
    PropertyId::reverse_au_introspection,
    PropertyId::plausibility,
    PropertyId::symmetry,
    PropertyId::absorption,
    PropertyId::partition_no_unawareness,
    PropertyId::dlr_collapse,
};

inline const char* to_string(PropertyId id) {
  switch (id) {
    case PropertyId::necessitation: return "necessitation";
    case PropertyId::r_necessitation: return "r_necessitation";
    case PropertyId::monotonicity: return "monotonicity";
    case PropertyId::truth: return "truth";
    case PropertyId::positive_introspection: return "positive_introspection";
    case PropertyId::negative_introspection: return "negative_introspection";
    case PropertyId::ku_introspection: return "ku_introspection";
    case PropertyId::au_introspection_core: return "au_introspection_core";
    case PropertyId::au_introspection_all: return "au_introspection_all";
    case PropertyId::reverse_au_introspection:
      return "reverse_au_introspection";
    case PropertyId::plausibility: return "plausibility";
    case PropertyId::symmetry: return "symmetry";
    case PropertyId::absorption: return "absorption";
    case PropertyId::partition_no_unawareness:
      return "partition_no_unawareness";
    case PropertyId::dlr_collapse: return "dlr_collapse";
  }
  return "unknown";
}

inline std::optional<PropertyId> property_from_string(std::string_view name) {
  for (PropertyId id : kAllProperties)
    if (name == to_string(id)) return id;
  return std::nullopt;
}

enum class QuantifyMode { automatic, exhaustive, sampled };

/// Quantification budget. automatic picks exhaustive whenever the space is
/// within the caps and falls back to seeded sampling otherwise; exhaustive
/// refuses oversized spaces instead of sampling.
struct CheckBudget {
  QuantifyMode mode = QuantifyMode::automatic;
  std::uint32_t samples = 4096;
  std::uint64_t seed = 1;
};

/// How a report's verdict was obtained.
struct Quantification {
  bool exhaustive = true;
  std::uint32_t samples = 0;  // meaningful when !exhaustive
  std::uint64_t seed = 0;     // meaningful when !exhaustive

  friend bool operator==(const Quantification&,
                         const Quantification&) = default;
};

/// Counterexample to one property instance: the quantified event (pair) and
/// the two computed sides of the violated relation.
struct Witness {
  Event event;
  std::optional<Event> second_event;
  Event lhs;
  Event rhs;
};

struct PropertyReport {
  PropertyId property = PropertyId::necessitation;
  OperatorKind kind = OperatorKind::standard;
  bool holds = true;
  Quantification quantification;
  std::optional<Witness> witness;
};

/// Outcome of one property statement instantiated at concrete events.
struct InstanceOutcome {
  bool holds = true;
  Event lhs;
  Event rhs;
};

namespace detail {

enum class Arity { nullary, unary, binary };

inline Arity arity_of(PropertyId id) {
  switch (id) {
    case PropertyId::necessitation:
    case PropertyId::r_necessitation:
    case PropertyId::au_introspection_core:
    case PropertyId::symmetry:
      return Arity::nullary;
    case PropertyId::monotonicity:
      return Arity::binary;
    default:
      return Arity::unary;
  }
}

inline Event core_for(const Model& model, OperatorKind kind) {
  return kind == OperatorKind::revised ? core_unawareness(model)
                                       : model.space().empty_event();
}

}  // namespace detail

/// Evaluates one property statement at concrete events. For unary
/// properties f is ignored; nullary properties ignore both (their natural
/// instance is fixed). The dlr_collapse instance is the collapse consequent
/// U(e) = {}; its antecedent is model-level and lives in check_property.
inline InstanceOutcome evaluate_property_instance(const Model& model,
                                                  OperatorKind kind,
                                                  PropertyId id,
                                                  const Event& e,
                                                  const Event* f = nullptr) {
  const Event omega = model.space().full_event();
  const Event none = model.space().empty_event();
  const Event core = detail::core_for(model, kind);

  auto subset = [](const Event& a, const Event& b) -> InstanceOutcome {
    return {a.subset_of(b), a, b};
  };
  auto equal = [](const Event& a, const Event& b) -> InstanceOutcome {
    return {a == b, a, b};
  };

  switch (id) {
    case PropertyId::necessitation:
      return equal(know(model, kind, omega), omega);
    case PropertyId::r_necessitation:
      return equal(know(model, kind, omega), omega - core);
    case PropertyId::monotonicity: {
      const Event& g = f ? *f : e;
      InstanceOutcome out = subset(know(model, kind, e), know(model, kind, g));
      if (!e.subset_of(g)) out.holds = true;  // statement is conditional
      return out;
    }
    case PropertyId::truth:
      return subset(know(model, kind, e), e);
    case PropertyId::positive_introspection: {
      Event ke = know(model, kind, e);
      return subset(ke, know(model, kind, ke));
    }
    case PropertyId::negative_introspection: {
      Event nk = not_know(model, kind, e);
      return subset(nk, know(model, kind, nk));
    }
    case PropertyId::ku_introspection:
      return equal(know(model, kind, unaware_set(model, kind, e)), none);
    case PropertyId::au_introspection_core:
      return subset(core, unaware_set(model, kind, core));
    case PropertyId::au_introspection_all: {
      Event u = unaware_set(model, kind, e);
      return subset(u, unaware_set(model, kind, u));
    }
    case PropertyId::reverse_au_introspection: {
      Event u = unaware_set(model, kind, e);
      return subset(unaware_set(model, kind, u), u);
    }
    case PropertyId::plausibility: {
      Event u = unaware_set(model, kind, e);
      if (!core.subset_of(u)) return {false, core, u};
      Event upper =
          not_know(model, kind, e) &
          not_know(model, kind, not_know(model, kind, e));
      return subset(u, upper);
    }
    case PropertyId::symmetry:
      return equal(core, unaware_set(model, kind, none));
    case PropertyId::absorption:
      return equal(know(model, kind, e | core), know(model, kind, e));
    case PropertyId::partition_no_unawareness: {
      if (!classify_correspondence(model).partitional)
        return {true, none, none};
      return equal(unaware_set(model, kind, e), none);
    }
    case PropertyId::dlr_collapse:
      return equal(unaware_set(model, kind, e), none);
  }
  return {true, none, none};
}

PropertyReport check_property(const Model& model, OperatorKind kind,
                              PropertyId id, const CheckBudget& budget = {});

namespace detail {

inline Quantification resolve_quantification(const Model& model, Arity arity,
                                             const CheckBudget& budget) {
  const unsigned n = model.size();
  const unsigned cap = arity == Arity::binary ? kMaxExhaustivePairStates
                                              : kMaxExhaustiveEventStates;
  const bool feasible = arity == Arity::nullary || n <= cap;
  switch (budget.mode) {
    case QuantifyMode::exhaustive:
      if (!feasible)
        throw EnumerationRefused(
            "exhaustive quantification refused: " + std::to_string(n) +
            " states exceeds the cap of " + std::to_string(cap) +
            "; use seeded sampling instead");
      return {true, 0, 0};
    case QuantifyMode::sampled:
      return {false, budget.samples, budget.seed};
    case QuantifyMode::automatic:
      if (feasible) return {true, 0, 0};
      return {false, budget.samples, budget.seed};
  }
  return {true, 0, 0};
}

inline PropertyReport quantify_unary(const Model& model, OperatorKind kind,
                                     PropertyId id,
                                     const Quantification& quant) {
  PropertyReport report{id, kind, true, quant, std::nullopt};
  auto try_instance = [&](const Event& e) {
    InstanceOutcome out = evaluate_property_instance(model, kind, id, e);
    if (!out.holds) {
      report.holds = false;
      report.witness = Witness{e, std::nullopt, out.lhs, out.rhs};
    }
    return out.holds;
  };
  if (quant.exhaustive) {
    for (Event e : EventRange(model.size()))
      if (!try_instance(e)) break;
  } else {
    SplitMix64 rng(quant.seed);
    const std::uint64_t mask = detail::mask_for(model.size());
    for (std::uint32_t i = 0; i < quant.samples; ++i)
      if (!try_instance(Event(rng.next() & mask, model.size()))) break;
  }
  return report;
}

inline PropertyReport quantify_binary(const Model& model, OperatorKind kind,
                                      PropertyId id,
                                      const Quantification& quant) {
  PropertyReport report{id, kind, true, quant, std::nullopt};
  auto try_instance = [&](const Event& e, const Event& f) {
    InstanceOutcome out = evaluate_property_instance(model, kind, id, e, &f);
    if (!out.holds) {
      report.holds = false;
      report.witness = Witness{e, f, out.lhs, out.rhs};
    }
    return out.holds;
  };
  if (quant.exhaustive) {
    for (Event e : EventRange(model.size())) {
      for (Event f : EventRange(model.size()))
        if (!try_instance(e, f)) break;
      if (!report.holds) break;
    }
  } else {
    SplitMix64 rng(quant.seed);
    const std::uint64_t mask = detail::mask_for(model.size());
    for (std::uint32_t i = 0; i < quant.samples; ++i) {
      Event e(rng.next() & mask, model.size());
      Event f(rng.next() & mask, model.size());
      if (!try_instance(e, f)) break;
    }
  }
  return report;
}

}  // namespace detail

/// Checks one property of the model under the given kind and budget. The
/// witness of a failed check re-evaluates to the same violation through
/// evaluate_property_instance.
inline PropertyReport check_property(const Model& model, OperatorKind kind,
                                     PropertyId id,
                                     const CheckBudget& budget) {
  const detail::Arity arity = detail::arity_of(id);
  const Quantification quant =
      detail::resolve_quantification(model, arity, budget);

  if (id == PropertyId::dlr_collapse) {
    // Consequent is quantified only when the three antecedent properties
    // hold under the same budget.
    const bool antecedent =
        check_property(model, kind, PropertyId::necessitation, budget).holds &&
        check_property(model, kind, PropertyId::ku_introspection, budget)
            .holds &&
        check_property(model, kind, PropertyId::au_introspection_all, budget)
            .holds;
    if (!antecedent) return PropertyReport{id, kind, true, quant, std::nullopt};
    return detail::quantify_unary(model, kind, id, quant);
  }

  switch (arity) {
    case detail::Arity::nullary: {
      // No quantifier: the verdict is exact whatever the budget says.
      PropertyReport report{id, kind, true, Quantification{true, 0, 0},
                            std::nullopt};
      Event natural = model.space().empty_event();
      if (id == PropertyId::necessitation || id == PropertyId::r_necessitation)
        natural = model.space().full_event();
      else if (id == PropertyId::au_introspection_core)
        natural = detail::core_for(model, kind);
      InstanceOutcome out =
          evaluate_property_instance(model, kind, id, natural);
      if (!out.holds) {
        report.holds = false;
        report.witness = Witness{natural, std::nullopt, out.lhs, out.rhs};
      }
      return report;
    }
    case detail::Arity::unary:
      return detail::quantify_unary(model, kind, id, quant);
    case detail::Arity::binary:
      return detail::quantify_binary(model, kind, id, quant);
  }
  return PropertyReport{id, kind, true, quant, std::nullopt};
}

/// One report per property, in catalog order.
inline std::vector<PropertyReport> check_all(const Model& model,
                                             OperatorKind kind,
                                             const CheckBudget& budget = {}) {
  std::vector<PropertyReport> reports;
  reports.reserve(kAllProperties.size());
  for (PropertyId id : kAllProperties)
    reports.push_back(check_property(model, kind, id, budget));
  return reports;
}

}  // namespace epi
