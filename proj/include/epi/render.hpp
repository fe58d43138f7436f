// Canonical serialization of models, property reports and derivation traces.
// Text output is an aligned table for humans; structured output is a single
// JSON document with stable field names and a "format": 1 header.
#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <json.hpp>

#include "epi/model.hpp"
#include "epi/properties.hpp"
#include "epi/trace.hpp"

namespace epi {

enum class ReportFormat { text, structured };

/// Canonical DSL form: one states line in declaration order, one P-line per
/// state in the same order, members space-separated, empty image as "{}",
/// LF line endings. parse_model(render_model(m)) reproduces m.
inline std::string render_model(const Model& model) {
  const auto& space = model.space();
  std::string out = "states:";
  for (const auto& label : space.labels()) {
    out += ' ';
    out += label;
  }
  out += '\n';
  for (unsigned i = 0; i < space.size(); ++i) {
    out += "P(" + space.label(i) + ") = " +
           render_event(space, model.possibility(i)) + '\n';
  }
  return out;
}

/// Event as a JSON array of state labels, in declaration order.
inline nlohmann::json event_to_json(const StateSpace& space,
                                    const Event& event) {
  nlohmann::json members = nlohmann::json::array();
  for (unsigned i = 0; i < space.size(); ++i)
    if (event.contains(i)) members.push_back(space.label(i));
  return members;
}

namespace detail {

inline nlohmann::json quantification_to_json(const Quantification& quant) {
  nlohmann::json out;
  if (quant.exhaustive) {
    out["mode"] = "exhaustive";
  } else {
    out["mode"] = "sampled";
    out["samples"] = quant.samples;
    out["seed"] = quant.seed;
  }
  return out;
}

inline std::string quantification_text(const Quantification& quant) {
  if (quant.exhaustive) return "exhaustive";
  return "sampled(" + std::to_string(quant.samples) + ", seed " +
         std::to_string(quant.seed) + ")";
}

inline std::string witness_text(const StateSpace& space,
                                const Witness& witness) {
  std::string out = "E=" + render_event(space, witness.event);
  if (witness.second_event)
    out += " F=" + render_event(space, *witness.second_event);
  out += " lhs=" + render_event(space, witness.lhs);
  out += " rhs=" + render_event(space, witness.rhs);
  return out;
}

// Codepoint count, good enough for aligning the symbols used here.
inline std::size_t display_width(std::string_view s) {
  std::size_t width = 0;
  for (unsigned char c : s)
    if ((c & 0xc0) != 0x80) ++width;
  return width;
}

inline std::string pad(std::string s, std::size_t width) {
  std::size_t current = display_width(s);
  while (current++ < width) s += ' ';
  return s;
}

inline std::string relation_text(StepRelation relation) {
  switch (relation) {
    case StepRelation::subset_holds: return "⊆ holds";
    case StepRelation::equals_holds: return "= holds";
    case StepRelation::violated: return "violated";
  }
  return "violated";
}

}  // namespace detail

inline nlohmann::json report_to_json(const StateSpace& space,
                                     const PropertyReport& report) {
  nlohmann::json out;
  out["property"] = to_string(report.property);
  out["kind"] = to_string(report.kind);
  out["holds"] = report.holds;
  out["quantification"] = detail::quantification_to_json(report.quantification);
  if (report.witness) {
    nlohmann::json w;
    w["event"] = event_to_json(space, report.witness->event);
    if (report.witness->second_event)
      w["second_event"] =
          event_to_json(space, *report.witness->second_event);
    w["lhs"] = event_to_json(space, report.witness->lhs);
    w["rhs"] = event_to_json(space, report.witness->rhs);
    out["witness"] = w;
  }
  return out;
}

inline nlohmann::json trace_to_json(const StateSpace& space,
                                    const DerivationTrace& trace) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : trace.steps) {
    nlohmann::json s;
    s["label"] = step.label;
    s["expression"] = step.expression;
    s["value"] = event_to_json(space, step.value);
    s["relation"] = to_string(step.relation);
    steps.push_back(s);
  }
  nlohmann::json out;
  out["steps"] = steps;
  out["verdict"] = to_string(trace.verdict);
  if (trace.verdict == TraceVerdict::broken_at)
    out["broken_step"] = trace.broken_step;
  return out;
}

/// Renders a report list. Text: aligned property/kind/verdict table with
/// witnesses. Structured: {"format": 1, "reports": [...]}.
inline std::string render_report(const StateSpace& space,
                                 const std::vector<PropertyReport>& reports,
                                 ReportFormat format) {
  if (format == ReportFormat::structured) {
    nlohmann::json doc;
    doc["format"] = 1;
    doc["reports"] = nlohmann::json::array();
    for (const auto& report : reports)
      doc["reports"].push_back(report_to_json(space, report));
    return doc.dump(2) + "\n";
  }

  std::size_t name_width = detail::display_width("property");
  for (const auto& report : reports)
    name_width =
        std::max(name_width, detail::display_width(to_string(report.property)));
  std::size_t quant_width = detail::display_width("quantification");
  for (const auto& report : reports)
    quant_width = std::max(
        quant_width,
        detail::display_width(detail::quantification_text(report.quantification)));

  std::string out = detail::pad("property", name_width) + "  kind      " +
                    "verdict  " + detail::pad("quantification", quant_width) +
                    "  witness\n";
  for (const auto& report : reports) {
    out += detail::pad(to_string(report.property), name_width);
    out += "  ";
    out += detail::pad(to_string(report.kind), 8);
    out += "  ";
    out += report.holds ? "holds  " : "FAILS  ";
    out += "  ";
    out += detail::pad(detail::quantification_text(report.quantification),
                       quant_width);
    out += "  ";
    out += report.witness ? detail::witness_text(space, *report.witness) : "-";
    out += '\n';
  }
  return out;
}

/// Renders a derivation trace. Text: one row per step plus a verdict line.
/// Structured: {"format": 1, "trace": {...}}.
inline std::string render_report(const StateSpace& space,
                                 const DerivationTrace& trace,
                                 ReportFormat format) {
  if (format == ReportFormat::structured) {
    nlohmann::json doc;
    doc["format"] = 1;
    doc["trace"] = trace_to_json(space, trace);
    return doc.dump(2) + "\n";
  }

  std::size_t label_width = detail::display_width("label");
  std::size_t expr_width = detail::display_width("expression");
  std::size_t value_width = detail::display_width("value");
  for (const auto& step : trace.steps) {
    label_width = std::max(label_width, detail::display_width(step.label));
    expr_width = std::max(expr_width, detail::display_width(step.expression));
    value_width = std::max(
        value_width, detail::display_width(render_event(space, step.value)));
  }

  std::string out = "step  " + detail::pad("label", label_width) + "  " +
                    detail::pad("expression", expr_width) + "  " +
                    detail::pad("value", value_width) + "  relation\n";
  for (std::size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& step = trace.steps[i];
    out += detail::pad(std::to_string(i + 1), 4);
    out += "  ";
    out += detail::pad(step.label, label_width);
    out += "  ";
    out += detail::pad(step.expression, expr_width);
    out += "  ";
    out += detail::pad(render_event(space, step.value), value_width);
    out += "  ";
    out += i == 0 ? "-" : detail::relation_text(step.relation);
    out += '\n';
  }
  out += "verdict: ";
  switch (trace.verdict) {
    case TraceVerdict::preserved: out += "preserved"; break;
    case TraceVerdict::contradiction: out += "contradiction"; break;
    case TraceVerdict::trivially_consistent:
      out += "trivially consistent";
      break;
    case TraceVerdict::broken_at:
      out += "broken at step " + std::to_string(trace.broken_step) + " (" +
             trace.steps[trace.broken_step - 1].label + ")";
      break;
  }
  out += '\n';
  return out;
}

}  // namespace epi
