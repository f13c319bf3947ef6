#include "iff/level.hpp"

#include <charconv>

namespace iff {

Level Level::finite(int n) {
  if (n < 0) throw LevelError(LevelError::Code::bad_level, "negative level index");
  if (n == 0) return obj();
  return Level(Kind::finite, n);
}

Level Level::generic(int offset) {
  if (offset < 0 || offset > 2)
    throw LevelError(LevelError::Code::bad_level, "generic offset must be 0, 1 or 2");
  return Level(Kind::generic, offset);
}

std::string Level::prefix() const {
  switch (kind_) {
    case Kind::obj: return "#0";
    case Kind::finite: return "#" + std::to_string(index_);
    case Kind::generic: return index_ == 0 ? "#n" : "#n+" + std::to_string(index_);
    case Kind::meta: return "meta";
    case Kind::type: return "type";
    case Kind::iff: return "iff";
  }
  return {};
}

std::string Level::decl_text() const {
  switch (kind_) {
    case Kind::obj: return "0";
    case Kind::finite: return std::to_string(index_);
    case Kind::generic: return index_ == 0 ? "generic" : prefix();
    default: return prefix();
  }
}

namespace {

// Position in the ground order; Finite(n) sits at n.
constexpr long long kMetaRank = 1LL << 40;

long long ground_rank(const Level& l) {
  switch (l.kind()) {
    case Level::Kind::obj: return 0;
    case Level::Kind::finite: return l.index();
    case Level::Kind::meta: return kMetaRank;
    case Level::Kind::type: return kMetaRank + 1;
    case Level::Kind::iff: return kMetaRank + 2;
    case Level::Kind::generic: break;
  }
  return -1;
}

std::optional<int> parse_positive(std::string_view s) {
  if (s.empty()) return std::nullopt;
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

}  // namespace

std::partial_ordering operator<=>(const Level& a, const Level& b) {
  if (a.is_generic() && b.is_generic()) return a.index() <=> b.index();
  if (a.is_generic()) {
    if (b.kind() == Level::Kind::obj) return std::partial_ordering::greater;
    if (b.is_metashell()) return std::partial_ordering::less;
    return std::partial_ordering::unordered;
  }
  if (b.is_generic()) return 0 <=> (b <=> a);
  return ground_rank(a) <=> ground_rank(b);
}

std::optional<Level> parse_level_prefix(std::string_view text) {
  if (text == "iff") return Level::top();
  if (text == "type") return Level::type();
  if (text == "meta") return Level::meta();
  if (text.size() < 2 || text[0] != '#') return std::nullopt;
  std::string_view rest = text.substr(1);
  if (rest == "n") return Level::generic(0);
  if (rest.starts_with("n+")) {
    auto k = parse_positive(rest.substr(2));
    if (!k || *k < 1 || *k > 2) return std::nullopt;
    return Level::generic(*k);
  }
  auto n = parse_positive(rest);
  if (!n) return std::nullopt;
  return Level::finite(*n);
}

std::optional<Level> parse_level_decl(std::string_view text) {
  if (text == "generic") return Level::generic(0);
  if (text == "iff" || text == "type" || text == "meta" || text.starts_with("#n"))
    return parse_level_prefix(text);
  if (auto n = parse_positive(text)) return Level::finite(*n);
  return std::nullopt;
}

bool level_leq(const Level& a, const Level& b) {
  auto c = a <=> b;
  if (c == std::partial_ordering::unordered)
    throw LevelError(LevelError::Code::incomparable_levels,
                     "levels " + a.prefix() + " and " + b.prefix() +
                         " are incomparable without instantiating n");
  return c != std::partial_ordering::greater;
}

Level instantiate(const Level& level, int n) {
  if (!level.is_generic())
    throw LevelError(LevelError::Code::not_generic, "level " + level.prefix() + " is not generic");
  if (n < 1) throw LevelError(LevelError::Code::bad_level, "instantiation parameter must be positive");
  return Level::finite(n + level.index());
}

}  // namespace iff
