#pragma once

// Per-level edit-operation weights for weighted TED*.

#include <cstdint>
#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>

#include <boost/rational.hpp>

#include "ned/error.hpp"

// Under C++20 rewritten comparisons, boost::rational's templated
// `rational == integer` recurses into its own reversed form (Boost <= 1.74).
// Exact non-template overloads win overload resolution and avoid it.
namespace boost {
#define NED_RATIONAL_EQ(T)                                                        \
  inline bool operator==(const rational<std::int64_t>& a, T b) {                 \
    return a.denominator() == 1 && a.numerator() == static_cast<std::int64_t>(b); \
  }
NED_RATIONAL_EQ(int)
NED_RATIONAL_EQ(long)
NED_RATIONAL_EQ(long long)
NED_RATIONAL_EQ(unsigned)
NED_RATIONAL_EQ(unsigned long)
#undef NED_RATIONAL_EQ
}  // namespace boost

namespace ned {

using Rational = boost::rational<std::int64_t>;

// Accepts "7", "7/4" and finite decimals such as "1.75".
inline Rational parse_rational(std::string_view s) {
  auto fail = [&] { throw ParseError("not a rational number: '" + std::string(s) + "'", 0); };
  if (s.empty()) fail();
  auto digits = [&](std::string_view d) {
    if (d.empty() || d.size() > 17) fail();
    std::int64_t v = 0;
    for (char c : d) {
      if (c < '0' || c > '9') fail();
      v = v * 10 + (c - '0');
    }
    return v;
  };
  bool neg = s.front() == '-';
  if (neg || s.front() == '+') s.remove_prefix(1);
  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto den = digits(s.substr(slash + 1));
    if (den == 0) fail();
    r = Rational(digits(s.substr(0, slash)), den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto frac = s.substr(dot + 1);
    std::int64_t den = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
    auto whole = s.substr(0, dot);
    r = Rational(whole.empty() ? 0 : digits(whole)) + Rational(digits(frac), den);
  } else {
    r = Rational(digits(s));
  }
  return neg ? -r : r;
}

// "8" for integers, "17/2" otherwise.
inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

inline double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

// Levels are 1-based with the root at level 1. `insert_delete(i)` weighs
// leaf insertions/deletions (padding), `move(i)` same-level moves.
class WeightScheme {
 public:
  enum class Preset { unit, wplus };

  static WeightScheme unit() { return WeightScheme(Preset::unit); }
  // Move weight 4*i; an upper bound on unordered tree edit distance.
  static WeightScheme wplus() { return WeightScheme(Preset::wplus); }

  WeightScheme() = default;

  Rational insert_delete(int level) const {
    if (auto it = overrides_.find(level); it != overrides_.end()) return it->second.first;
    return Rational(1);
  }

  Rational move(int level) const {
    if (auto it = overrides_.find(level); it != overrides_.end()) return it->second.second;
    return preset_ == Preset::wplus ? Rational(4 * level) : Rational(1);
  }

  // True when every weight is 1, i.e. the distance is a plain edit count.
  bool is_unit() const noexcept { return preset_ == Preset::unit && overrides_.empty(); }

  void set(int level, Rational w1, Rational w2) {
    if (level < 1) throw UsageError("weight level must be >= 1");
    if (w1 <= 0 || w2 <= 0) throw UsageError("weights must be strictly positive");
    overrides_[level] = {w1, w2};
  }

  const std::map<int, std::pair<Rational, Rational>>& overrides() const noexcept {
    return overrides_;
  }
  Preset preset() const noexcept { return preset_; }

 private:
  explicit WeightScheme(Preset p) : preset_(p) {}

  Preset preset_ = Preset::unit;
  std::map<int, std::pair<Rational, Rational>> overrides_;
};

// One "level w1 w2" triple per line; '#' starts a comment. Unlisted levels
// keep unit weights.
inline WeightScheme parse_weight_file(std::istream& in) {
  WeightScheme ws = WeightScheme::unit();
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tok(line);
    std::string lvl, a, b, extra;
    if (!(tok >> lvl)) continue;
    if (!(tok >> a >> b) || (tok >> extra))
      throw ParseError("weight file line " + std::to_string(line_no) +
                           ": expected 'level w1 w2'",
                       line_no);
    try {
      auto level = parse_rational(lvl);
      if (level.denominator() != 1 || level < 1)
        throw ParseError("weight file line " + std::to_string(line_no) + ": bad level", line_no);
      if (ws.overrides().count(static_cast<int>(level.numerator())))
        throw ParseError("weight file line " + std::to_string(line_no) + ": duplicate level",
                         line_no);
      auto w1 = parse_rational(a);
      auto w2 = parse_rational(b);
      if (w1 <= 0 || w2 <= 0)
        throw ParseError("weight file line " + std::to_string(line_no) +
                             ": weights must be strictly positive",
                         line_no);
      ws.set(static_cast<int>(level.numerator()), w1, w2);
    } catch (const ParseError& e) {
      if (e.where() == line_no) throw;
      throw ParseError("weight file line " + std::to_string(line_no) + ": " + e.what(), line_no);
    }
  }
  return ws;
}

}  // namespace ned
