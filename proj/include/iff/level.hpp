#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace iff {

/// A metalevel of the nested metalanguage.
///
/// Ground levels are totally ordered by abstraction:
/// `Obj < Finite(1) < Finite(2) < ... < Meta < Type < Iff`.
/// Generic levels (`#n`, `#n+1`, `#n+2`) carry an offset relative to an
/// unbound parameter n >= 1; they compare among themselves by offset, sit
/// strictly above Obj and strictly below Meta, and are unordered with respect
/// to Finite levels until instantiated.
class Level {
 public:
  enum class Kind { obj, finite, generic, meta, type, iff };

  static Level obj() { return Level(Kind::obj, 0); }
  static Level finite(int n);
  static Level generic(int offset);
  static Level meta() { return Level(Kind::meta, 0); }
  static Level type() { return Level(Kind::type, 0); }
  static Level top() { return Level(Kind::iff, 0); }

  Kind kind() const { return kind_; }
  /// Index for Finite, offset for Generic, 0 otherwise.
  int index() const { return index_; }

  bool is_generic() const { return kind_ == Kind::generic; }
  bool is_ground() const { return kind_ != Kind::generic; }
  /// Metashell levels: meta, type, iff.
  bool is_metashell() const {
    return kind_ == Kind::meta || kind_ == Kind::type || kind_ == Kind::iff;
  }

  /// Level prefix as it appears in qualified names: `#0`, `#3`, `#n+1`, `meta`...
  std::string prefix() const;
  /// Value accepted by `(level ...)` in namespace headers.
  std::string decl_text() const;

  friend bool operator==(const Level&, const Level&) = default;
  friend std::partial_ordering operator<=>(const Level& a, const Level& b);

 private:
  Level(Kind k, int i) : kind_(k), index_(i) {}
  Kind kind_;
  int index_;
};

class LevelError : public std::runtime_error {
 public:
  enum class Code { incomparable_levels, not_generic, bad_level };
  LevelError(Code c, const std::string& what) : std::runtime_error(what), code_(c) {}
  Code code() const { return code_; }

 private:
  Code code_;
};

/// Parses a level prefix (`iff`, `type`, `meta`, `#n`, `#n+1`, `#n+2`, `#<digits>`).
std::optional<Level> parse_level_prefix(std::string_view text);

/// Parses the argument of `(level ...)`: `0`, a positive integer, `generic`,
/// `meta`, `type` or `iff`.
std::optional<Level> parse_level_decl(std::string_view text);

/// True when `a` is at most as abstract as `b`. Throws
/// LevelError::incomparable_levels for a Generic/Finite mix.
bool level_leq(const Level& a, const Level& b);

/// Generic(k) at parameter n becomes Finite(n + k).
Level instantiate(const Level& level, int n);

}  // namespace iff
