// Finite state spaces, events as single-word bit sets, and possibility
// correspondences.
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace epi {

/// Hard limit on state-space size: an event must fit one machine word.
inline constexpr unsigned kMaxStates = 64;

/// Exhaustive quantification over all events is allowed up to this many
/// states (2^14 events per sweep).
inline constexpr unsigned kMaxExhaustiveEventStates = 14;

/// Exhaustive quantification over event pairs (4^n combinations).
inline constexpr unsigned kMaxExhaustivePairStates = 7;

/// Thrown when values built over different state spaces are combined.
class DimensionError : public std::invalid_argument {
 public:
  explicit DimensionError(const std::string& what)
      : std::invalid_argument(what) {}
};

/// Thrown when an exhaustive sweep is requested above the caps. Callers
/// that hit this should fall back to seeded sampling.
class EnumerationRefused : public std::runtime_error {
 public:
  explicit EnumerationRefused(const std::string& what)
      : std::runtime_error(what) {}
};

namespace detail {

inline constexpr std::uint64_t mask_for(unsigned width) {
  return width >= 64 ? ~std::uint64_t{0}
                     : ((std::uint64_t{1} << width) - std::uint64_t{1});
}

inline bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

}  // namespace detail

/// A subset of a state space, encoded as a fixed-width bit vector. Bit i
/// marks the state with index i; bits at or above width() are always zero.
/// Complement is taken relative to the space, never the full word.
class Event {
 public:
  Event() = default;

  Event(std::uint64_t bits, unsigned width)
      : bits_(bits & detail::mask_for(width)), width_(width) {
    if (width > kMaxStates)
      throw DimensionError("event width " + std::to_string(width) +
                           " exceeds " + std::to_string(kMaxStates));
  }

  static Event empty(unsigned width) { return Event(0, width); }
  static Event full(unsigned width) {
    return Event(detail::mask_for(width), width);
  }

  std::uint64_t bits() const { return bits_; }
  unsigned width() const { return width_; }

  bool is_empty() const { return bits_ == 0; }
  bool is_full() const { return bits_ == detail::mask_for(width_); }
  unsigned count() const {
    return static_cast<unsigned>(std::popcount(bits_));
  }

  bool contains(unsigned i) const {
    return i < width_ && (bits_ >> i) & std::uint64_t{1};
  }

  /// Copy with state i added.
  Event with(unsigned i) const {
    if (i >= width_)
      throw DimensionError("state index " + std::to_string(i) +
                           " out of range for width " +
                           std::to_string(width_));
    return Event(bits_ | (std::uint64_t{1} << i), width_);
  }

  Event complement() const {
    return Event(~bits_ & detail::mask_for(width_), width_);
  }

  bool subset_of(const Event& other) const {
    check_width(other);
    return (bits_ & ~other.bits_) == 0;
  }

  friend Event operator&(const Event& a, const Event& b) {
    a.check_width(b);
    return Event(a.bits_ & b.bits_, a.width_);
  }
  friend Event operator|(const Event& a, const Event& b) {
    a.check_width(b);
    return Event(a.bits_ | b.bits_, a.width_);
  }
  friend Event operator-(const Event& a, const Event& b) {
    a.check_width(b);
    return Event(a.bits_ & ~b.bits_, a.width_);
  }
  friend Event operator~(const Event& a) { return a.complement(); }

  friend bool operator==(const Event& a, const Event& b) {
    return a.width_ == b.width_ && a.bits_ == b.bits_;
  }
  friend bool operator!=(const Event& a, const Event& b) { return !(a == b); }

 private:
  void check_width(const Event& other) const {
    if (width_ != other.width_)
      throw DimensionError("event width mismatch: " + std::to_string(width_) +
                           " vs " + std::to_string(other.width_));
  }

  std::uint64_t bits_ = 0;
  unsigned width_ = 0;
};

/// An ordered finite set of named states. Order is declaration order and is
/// the order every serialized event uses. Labels are nonempty, unique, and
/// drawn from [A-Za-z0-9_].
class StateSpace {
 public:
  explicit StateSpace(std::vector<std::string> labels)
      : labels_(std::move(labels)) {
    if (labels_.empty())
      throw std::invalid_argument("state space must contain at least one state");
    if (labels_.size() > kMaxStates)
      throw std::invalid_argument("state space has " +
                                  std::to_string(labels_.size()) +
                                  " states; at most " +
                                  std::to_string(kMaxStates) + " supported");
    for (const auto& label : labels_) {
      if (!detail::valid_identifier(label))
        throw std::invalid_argument("invalid state label '" + label + "'");
    }
    auto sorted = labels_;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("duplicate state label");
  }

  unsigned size() const { return static_cast<unsigned>(labels_.size()); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(unsigned i) const { return labels_.at(i); }

  std::optional<unsigned> index(std::string_view label) const {
    for (unsigned i = 0; i < size(); ++i)
      if (labels_[i] == label) return i;
    return std::nullopt;
  }

  Event empty_event() const { return Event::empty(size()); }
  Event full_event() const { return Event::full(size()); }

  /// Builds the event containing exactly the named states.
  Event event_of(std::initializer_list<std::string_view> members) const {
    Event e = empty_event();
    for (auto m : members) {
      auto i = index(m);
      if (!i) throw std::invalid_argument("unknown state '" + std::string(m) + "'");
      e = e.with(*i);
    }
    return e;
  }

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.labels_ == b.labels_;
  }
  friend bool operator!=(const StateSpace& a, const StateSpace& b) {
    return !(a == b);
  }

 private:
  std::vector<std::string> labels_;
};

/// Renders an event in set-literal form, members in declaration order:
/// "{a b}", "{}" when empty.
inline std::string render_event(const StateSpace& space, const Event& event) {
  std::string out = "{";
  bool first = true;
  for (unsigned i = 0; i < space.size(); ++i) {
    if (!event.contains(i)) continue;
    if (!first) out += ' ';
    out += space.label(i);
    first = false;
  }
  out += '}';
  return out;
}

/// A state space together with a total possibility correspondence. The
/// image of a state may be any event over the same space, including the
/// empty event.
class Model {
 public:
  Model(StateSpace space, std::vector<Event> possibility)
      : space_(std::move(space)), possibility_(std::move(possibility)) {
    if (possibility_.size() != space_.size())
      throw std::invalid_argument(
          "possibility correspondence must cover every state (" +
          std::to_string(possibility_.size()) + " images for " +
          std::to_string(space_.size()) + " states)");
    for (const auto& image : possibility_) {
      if (image.width() != space_.size())
        throw DimensionError("possibility image width " +
                             std::to_string(image.width()) +
                             " does not match space size " +
                             std::to_string(space_.size()));
    }
  }

  const StateSpace& space() const { return space_; }
  unsigned size() const { return space_.size(); }
  const Event& possibility(unsigned state) const {
    return possibility_.at(state);
  }
  const std::vector<Event>& possibilities() const { return possibility_; }

  friend bool operator==(const Model& a, const Model& b) {
    return a.space_ == b.space_ && a.possibility_ == b.possibility_;
  }
  friend bool operator!=(const Model& a, const Model& b) { return !(a == b); }

 private:
  StateSpace space_;
  std::vector<Event> possibility_;
};

/// Structural flags of a possibility correspondence.
///   reflexive:        every state belongs to its own image
///   partitional:      reflexive and images coincide across their members
///   has_empty_image:  some state has an empty image
/// partitional implies reflexive and excludes empty images by construction.
struct CorrespondenceClass {
  bool reflexive = false;
  bool partitional = false;
  bool has_empty_image = false;

  friend bool operator==(const CorrespondenceClass&,
                         const CorrespondenceClass&) = default;
};

inline CorrespondenceClass classify_correspondence(const Model& model) {
  const unsigned n = model.size();
  CorrespondenceClass cls;
  cls.reflexive = true;
  for (unsigned i = 0; i < n; ++i) {
    if (!model.possibility(i).contains(i)) cls.reflexive = false;
    if (model.possibility(i).is_empty()) cls.has_empty_image = true;
  }
  cls.partitional = cls.reflexive;
  for (unsigned i = 0; cls.partitional && i < n; ++i) {
    for (unsigned j = 0; j < n; ++j) {
      if (model.possibility(i).contains(j) &&
          model.possibility(j) != model.possibility(i)) {
        cls.partitional = false;
        break;
      }
    }
  }
  return cls;
}

/// All 2^width events in ascending bit-vector order.
class EventRange {
 public:
  class iterator {
   public:
    using value_type = Event;
    using difference_type = std::ptrdiff_t;
    using iterator_category = std::input_iterator_tag;

    iterator(std::uint64_t bits, unsigned width) : bits_(bits), width_(width) {}
    Event operator*() const { return Event(bits_, width_); }
    iterator& operator++() {
      ++bits_;
      return *this;
    }
    iterator operator++(int) {
      iterator copy = *this;
      ++bits_;
      return copy;
    }
    friend bool operator==(const iterator& a, const iterator& b) {
      return a.bits_ == b.bits_;
    }
    friend bool operator!=(const iterator& a, const iterator& b) {
      return !(a == b);
    }

   private:
    std::uint64_t bits_;
    unsigned width_;
  };

  explicit EventRange(unsigned width) : width_(width) {}
  iterator begin() const { return iterator(0, width_); }
  iterator end() const { return iterator(std::uint64_t{1} << width_, width_); }
  std::uint64_t size() const { return std::uint64_t{1} << width_; }

 private:
  unsigned width_;
};

/// Yields every event over the space exactly once. Refuses spaces above the
/// exhaustive cap; use seeded sampling there instead.
inline EventRange enumerate_events(unsigned width) {
  if (width > kMaxExhaustiveEventStates)
    throw EnumerationRefused(
        "exhaustive event enumeration refused: " + std::to_string(width) +
        " states exceeds the cap of " +
        std::to_string(kMaxExhaustiveEventStates) +
        "; use seeded sampling instead");
  return EventRange(width);
}

inline EventRange enumerate_events(const StateSpace& space) {
  return enumerate_events(space.size());
}

}  // namespace epi
