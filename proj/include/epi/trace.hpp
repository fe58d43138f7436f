// Step-by-step evaluation of the impossibility chain for standard operators
// and of its revised counterpart.
//
// The standard chain, for an event E:
//     U(E)  ⊆  U(U(E))  ⊆  ¬K(¬K(U(E)))  =  ¬K(Ω)  =  ∅
// Under necessitation, KU introspection and AU introspection the chain
// forces every nonempty unawareness set into the empty set; the verdict
// "contradiction" records exactly that collapse.
//
// The revised chain is closed over the model by instantiating the generic
// event at Ω (its first and last lines are both U'(Ω), and plausibility
// supplies the instantiated inclusion):
//     U'(Ω)  ⊆  U'(U'(Ω))  ⊆  ¬K'(¬K'(U'(Ω)))  =  ¬K'(Ω)  =  U'(Ω)
// When the model's core unawareness is nonempty and every relation holds,
// the chain ends where it started: verdict "preserved".
#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "epi/model.hpp"
#include "epi/operators.hpp"

namespace epi {

enum class StepRelation { subset_holds, equals_holds, violated };

enum class TraceVerdict {
  contradiction,         // first value nonempty, last empty, all relations hold
  preserved,             // all relations hold, last value = first value != {}
  trivially_consistent,  // first value empty and all relations hold
  broken_at,             // some claimed relation fails for this model
};

inline const char* to_string(StepRelation relation) {
  switch (relation) {
    case StepRelation::subset_holds: return "subset_holds";
    case StepRelation::equals_holds: return "equals_holds";
    case StepRelation::violated: return "violated";
  }
  return "violated";
}

inline const char* to_string(TraceVerdict verdict) {
  switch (verdict) {
    case TraceVerdict::contradiction: return "contradiction";
    case TraceVerdict::preserved: return "preserved";
    case TraceVerdict::trivially_consistent: return "trivially_consistent";
    case TraceVerdict::broken_at: return "broken_at";
  }
  return "broken_at";
}

struct TraceStep {
  std::string label;       // property the step invokes
  std::string expression;  // rendered formula
  Event value;             // computed set
  StepRelation relation;   // relation to the previous step's value
};

struct DerivationTrace {
  std::vector<TraceStep> steps;
  TraceVerdict verdict = TraceVerdict::trivially_consistent;
  std::size_t broken_step = 0;  // 1-based, set when verdict == broken_at
};

namespace detail {

enum class Claim { subset, equal };

inline void push_step(DerivationTrace& trace, std::string label,
                      std::string expression, const Event& value,
                      Claim claim) {
  StepRelation relation = StepRelation::subset_holds;  // vacuous first step
  if (!trace.steps.empty()) {
    const Event& prev = trace.steps.back().value;
    const bool ok =
        claim == Claim::subset ? prev.subset_of(value) : prev == value;
    relation = !ok ? StepRelation::violated
               : claim == Claim::subset ? StepRelation::subset_holds
                                        : StepRelation::equals_holds;
  }
  trace.steps.push_back(
      {std::move(label), std::move(expression), value, relation});
}

inline void finish_trace(DerivationTrace& trace) {
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    if (trace.steps[i].relation == StepRelation::violated) {
      trace.verdict = TraceVerdict::broken_at;
      trace.broken_step = i + 1;
      return;
    }
  }
  if (trace.steps.front().value.is_empty())
    trace.verdict = TraceVerdict::trivially_consistent;
  else if (trace.steps.back().value.is_empty())
    trace.verdict = TraceVerdict::contradiction;
  else
    trace.verdict = TraceVerdict::preserved;
}

}  // namespace detail

/// Evaluates the impossibility chain at one event under standard operators.
/// A model
/// that violates one of the chain's assumed properties yields broken_at with
/// the first violated step; a chain starting from an empty unawareness set
/// is reported trivially consistent rather than as a collapse.
inline DerivationTrace trace_standard_chain(const Model& model,
                                            const Event& event) {
  const OperatorKind kind = OperatorKind::standard;
  const auto& space = model.space();
  const std::string e = render_event(space, event);

  const Event u = unaware_set(model, kind, event);
  const Event uu = unaware_set(model, kind, u);
  const Event nknk_u = not_know(model, kind, not_know(model, kind, u));
  const Event nk_omega = not_know(model, kind, space.full_event());

  DerivationTrace trace;
  detail::push_step(trace, "assumption", "U(" + e + ")", u,
                    detail::Claim::subset);
  detail::push_step(trace, "AU introspection", "U(U(" + e + "))", uu,
                    detail::Claim::subset);
  detail::push_step(trace, "unawareness bound", "¬K(¬K(U(" + e + ")))",
                    nknk_u, detail::Claim::subset);
  detail::push_step(trace, "KU introspection", "¬K(Ω)", nk_omega,
                    detail::Claim::equal);
  detail::push_step(trace, "necessitation", "∅", space.empty_event(),
                    detail::Claim::equal);
  detail::finish_trace(trace);
  return trace;
}

/// Evaluates the revised chain, instantiated at the full event, under the
/// revised operators. Every value is recomputed through the operators; the
/// trace never stores an independently derived set.
inline DerivationTrace trace_revised_chain(const Model& model) {
  const OperatorKind kind = OperatorKind::revised;
  const auto& space = model.space();

  const Event u_omega = unaware_set(model, kind, space.full_event());
  const Event uu = unaware_set(model, kind, u_omega);
  const Event nknk_u =
      not_know(model, kind, not_know(model, kind, u_omega));
  const Event nk_omega = not_know(model, kind, space.full_event());
  const Event u_omega_again = unaware_set(model, kind, space.full_event());

  DerivationTrace trace;
  detail::push_step(trace, "assumption", "U'(Ω)", u_omega,
                    detail::Claim::subset);
  detail::push_step(trace, "AU introspection", "U'(U'(Ω))", uu,
                    detail::Claim::subset);
  detail::push_step(trace, "plausibility", "¬K'(¬K'(U'(Ω)))", nknk_u,
                    detail::Claim::subset);
  detail::push_step(trace, "KU introspection", "¬K'(Ω)", nk_omega,
                    detail::Claim::equal);
  detail::push_step(trace, "R necessitation", "U'(Ω)", u_omega_again,
                    detail::Claim::equal);
  detail::finish_trace(trace);
  return trace;
}

}  // namespace epi
