// Knowledge and unawareness operators over possibility-correspondence models.
//
// Two operator kinds are supported. The standard knowledge operator counts a
// state as knowing E whenever its possibility set is contained in E, which
// makes states with empty possibility sets know everything. The revised
// operator additionally requires the possibility set to be nonempty, so those
// states know nothing instead. Unawareness is the intersection of all
// iterates of the complemented knowledge operator; this module fixes it to
// the full intersection, the maximal operator that definition admits.
#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "epi/model.hpp"

namespace epi {

enum class OperatorKind { standard, revised };

inline const char* to_string(OperatorKind kind) {
  return kind == OperatorKind::standard ? "standard" : "revised";
}

namespace detail {

inline void check_event_over(const Model& model, const Event& event) {
  if (event.width() != model.size())
    throw DimensionError("event width " + std::to_string(event.width()) +
                         " does not match model size " +
                         std::to_string(model.size()));
}

}  // namespace detail

/// K(E): the states whose possibility set is contained in E. Under the
/// revised kind the possibility set must also be nonempty.
inline Event know(const Model& model, OperatorKind kind, const Event& event) {
  detail::check_event_over(model, event);
  Event out = model.space().empty_event();
  for (unsigned i = 0; i < model.size(); ++i) {
    const Event& image = model.possibility(i);
    if (kind == OperatorKind::revised && image.is_empty()) continue;
    if (image.subset_of(event)) out = out.with(i);
  }
  return out;
}

/// Complement of know relative to the full space.
inline Event not_know(const Model& model, OperatorKind kind,
                      const Event& event) {
  return know(model, kind, event).complement();
}

/// Record of one unawareness fixpoint computation.
///   terms[i]    = the (i+1)-th iterate of the complemented knowledge
///                 operator applied to the starting event
///   partials[i] = intersection of terms[0..i]; nonincreasing under subset
///   cycle_start = index of the recorded term that repeats an earlier one
///                 (the witness that the iteration has closed its orbit)
///   result      = last partial = intersection of all distinct terms
struct FixpointTrace {
  std::vector<Event> terms;
  std::vector<Event> partials;
  std::size_t cycle_start = 0;
  Event result;
};

/// U(E): intersection of all iterates of the complemented knowledge
/// operator. Iterates until a term repeats; every later iterate then lies in
/// the recorded orbit, so the intersection of the recorded terms equals the
/// infinite intersection. A repeat is forced within 2^|space| steps.
inline FixpointTrace unaware(const Model& model, OperatorKind kind,
                             const Event& event) {
  detail::check_event_over(model, event);
  FixpointTrace trace;
  Event term = not_know(model, kind, event);
  for (;;) {
    const bool repeated =
        std::find(trace.terms.begin(), trace.terms.end(), term) !=
        trace.terms.end();
    trace.terms.push_back(term);
    trace.partials.push_back(trace.partials.empty()
                                 ? term
                                 : (trace.partials.back() & term));
    if (repeated) {
      trace.cycle_start = trace.terms.size() - 1;
      break;
    }
    term = not_know(model, kind, term);
  }
  trace.result = trace.partials.back();
  return trace;
}

/// U(E) without the trace.
inline Event unaware_set(const Model& model, OperatorKind kind,
                         const Event& event) {
  return unaware(model, kind, event).result;
}

/// The set of states with empty possibility sets, by direct scan. Under the
/// revised operators this equals the unawareness of the full event and the
/// intersection of unawareness over all events.
inline Event core_unawareness(const Model& model) {
  Event out = model.space().empty_event();
  for (unsigned i = 0; i < model.size(); ++i)
    if (model.possibility(i).is_empty()) out = out.with(i);
  return out;
}

/// Second route to the same set: intersect revised unawareness over every
/// event. Serves as the independent oracle for core_unawareness. Refuses
/// spaces above the exhaustive cap.
inline Event core_unawareness_by_intersection(const Model& model) {
  Event acc = model.space().full_event();
  for (Event e : enumerate_events(model.space()))
    acc = acc & unaware(model, OperatorKind::revised, e).result;
  return acc;
}

}  // namespace epi
