// Line-oriented parser for the model DSL.
//
//   # comment to end of line
//   states: <ident> (<ident>)*
//   P(<ident>) = { (<ident> ((,|space) <ident>)*)? }
//
// Idents are [A-Za-z0-9_]+. Every declared state must receive exactly one
// P-line; members must be declared states. LF and CRLF are both accepted.
// Parsing collects as many diagnostics as it can in one pass instead of
// stopping at the first error; a model is produced only for a clean parse.
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "epi/model.hpp"

namespace epi {

/// One parse problem, positioned 1-based.
struct Diagnostic {
  std::size_t line = 0;
  std::size_t column = 0;
  std::string message;
};

struct ParseResult {
  std::string source;
  std::optional<Model> model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return model.has_value(); }
};

namespace detail {

inline bool ident_char(char c) {
  return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
         (c >= '0' && c <= '9') || c == '_';
}

/// Cursor over one line; columns are 1-based.
class LineCursor {
 public:
  LineCursor(std::string_view text, std::size_t line)
      : text_(text), line_(line) {}

  void skip_space() {
    while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t'))
      ++pos_;
  }

  bool at_end() {
    skip_space();
    return pos_ >= text_.size();
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::optional<std::string_view> ident() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    if (pos_ == start) return std::nullopt;
    return text_.substr(start, pos_ - start);
  }

  std::size_t column() const { return pos_ + 1; }
  std::size_t line() const { return line_; }

 private:
  std::string_view text_;
  std::size_t line_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the DSL. On success the result carries the model; otherwise it
/// carries one diagnostic per detected violation.
inline ParseResult parse_model(std::string_view text) {
  ParseResult result;
  result.source = std::string(text);

  std::vector<std::string> labels;
  bool states_seen = false;
  std::size_t last_line = 0;

  struct PendingImage {
    std::string owner;
    std::vector<std::string> members;
    std::size_t line;
    std::size_t column;
  };
  std::vector<PendingImage> pending;

  auto error = [&result](std::size_t line, std::size_t column,
                         std::string message) {
    result.diagnostics.push_back({line, column, std::move(message)});
  };

  std::size_t line_no = 0;
  std::size_t offset = 0;
  while (offset <= text.size()) {
    std::size_t eol = text.find('\n', offset);
    std::string_view raw = eol == std::string_view::npos
                               ? text.substr(offset)
                               : text.substr(offset, eol - offset);
    offset = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;
    last_line = line_no;

    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (std::size_t hash = raw.find('#'); hash != std::string_view::npos)
      raw = raw.substr(0, hash);

    detail::LineCursor cur(raw, line_no);
    if (cur.at_end()) continue;

    auto head = cur.ident();
    if (head && *head == "states" && cur.consume(':')) {
      if (states_seen) {
        error(line_no, 1, "duplicate states declaration");
        continue;
      }
      states_seen = true;
      while (!cur.at_end()) {
        std::size_t col = cur.column();
        auto label = cur.ident();
        if (!label) {
          error(line_no, col, "expected state identifier");
          break;
        }
        bool duplicate = false;
        for (const auto& existing : labels)
          if (existing == *label) duplicate = true;
        if (duplicate)
          error(line_no, col, "duplicate state '" + std::string(*label) + "'");
        else
          labels.emplace_back(*label);
      }
      if (labels.empty())
        error(line_no, 1, "states declaration lists no states");
      if (labels.size() > kMaxStates)
        error(line_no, 1,
              "too many states (" + std::to_string(labels.size()) +
                  "); at most " + std::to_string(kMaxStates) + " supported");
      continue;
    }

    if (head && *head == "P") {
      if (!cur.consume('(')) {
        error(line_no, cur.column(), "expected '(' after P");
        continue;
      }
      std::size_t owner_col = cur.column();
      auto owner = cur.ident();
      if (!owner) {
        error(line_no, owner_col, "expected state identifier in P(...)");
        continue;
      }
      if (!cur.consume(')')) {
        error(line_no, cur.column(), "expected ')' after state name");
        continue;
      }
      if (!cur.consume('=')) {
        error(line_no, cur.column(), "expected '=' in possibility line");
        continue;
      }
      if (!cur.consume('{')) {
        error(line_no, cur.column(), "expected '{' to open the image set");
        continue;
      }
      PendingImage image{std::string(*owner), {}, line_no, owner_col};
      bool closed = false;
      bool bad_member = false;
      while (!cur.at_end()) {
        if (cur.consume('}')) {
          closed = true;
          break;
        }
        if (cur.consume(',')) continue;
        std::size_t col = cur.column();
        auto member = cur.ident();
        if (!member) {
          error(line_no, col, "expected state identifier or '}'");
          bad_member = true;
          break;
        }
        image.members.emplace_back(*member);
      }
      if (bad_member) continue;
      if (!closed) {
        error(line_no, cur.column(), "unclosed image set; expected '}'");
        continue;
      }
      if (!cur.at_end())
        error(line_no, cur.column(), "trailing input after image set");
      pending.push_back(std::move(image));
      continue;
    }

    error(line_no, 1,
          "unrecognized line; expected 'states:' or 'P(<state>) = {...}'");
  }

  if (!states_seen) {
    error(last_line + 1, 1, "missing states declaration");
    return result;
  }
  if (labels.empty() || labels.size() > kMaxStates) return result;

  StateSpace space{labels};
  std::vector<std::optional<Event>> images(space.size());
  std::vector<bool> seen(space.size(), false);
  for (const auto& image : pending) {
    auto owner = space.index(image.owner);
    if (!owner) {
      error(image.line, image.column,
            "unknown state '" + image.owner + "'");
      continue;
    }
    if (seen[*owner]) {
      error(image.line, image.column,
            "duplicate possibility line for state '" + image.owner + "'");
      continue;
    }
    seen[*owner] = true;
    Event e = space.empty_event();
    bool members_ok = true;
    for (const auto& member : image.members) {
      auto idx = space.index(member);
      if (!idx) {
        error(image.line, image.column, "unknown state '" + member + "'");
        members_ok = false;
        continue;
      }
      e = e.with(*idx);
    }
    if (members_ok) images[*owner] = e;
  }
  for (unsigned i = 0; i < space.size(); ++i) {
    if (!seen[i])
      error(last_line + 1, 1,
            "missing possibility line for state '" + space.label(i) + "'");
  }

  if (!result.diagnostics.empty()) return result;

  std::vector<Event> possibility;
  possibility.reserve(space.size());
  for (auto& image : images) possibility.push_back(*image);
  result.model = Model{std::move(space), std::move(possibility)};
  return result;
}

/// Parses an event literal in DSL set syntax, e.g. "{a, b}" or "{a b}" or
/// "{}". Reported positions are within the literal itself.
struct EventParse {
  std::optional<Event> event;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return event.has_value(); }
};

inline EventParse parse_event_literal(const StateSpace& space,
                                      std::string_view text) {
  EventParse result;
  detail::LineCursor cur(text, 1);
  if (!cur.consume('{')) {
    result.diagnostics.push_back({1, cur.column(), "expected '{'"});
    return result;
  }
  Event e = space.empty_event();
  bool closed = false;
  while (!cur.at_end()) {
    if (cur.consume('}')) {
      closed = true;
      break;
    }
    if (cur.consume(',')) continue;
    std::size_t col = cur.column();
    auto member = cur.ident();
    if (!member) {
      result.diagnostics.push_back(
          {1, col, "expected state identifier or '}'"});
      return result;
    }
    auto idx = space.index(*member);
    if (!idx) {
      result.diagnostics.push_back(
          {1, col, "unknown state '" + std::string(*member) + "'"});
      return result;
    }
    e = e.with(*idx);
  }
  if (!closed) {
    result.diagnostics.push_back({1, cur.column(), "expected '}'"});
    return result;
  }
  if (!cur.at_end()) {
    result.diagnostics.push_back(
        {1, cur.column(), "trailing input after event literal"});
    return result;
  }
  result.event = e;
  return result;
}

}  // namespace epi
