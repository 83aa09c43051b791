// Four truth values of BD and the lattice operations on them.
//
// A value is encoded by two bits: "told true" and "told false".
//   t = (1,0)   b = (1,1)   n = (0,0)   f = (0,1)
// The truth order puts f at the bottom, t at the top, b and n incomparable.
// Meet takes the AND of the true-bits and the OR of the false-bits; join is
// dual. Designation is the true-bit.

#ifndef BD4_TRUTH_VALUE_HPP
#define BD4_TRUTH_VALUE_HPP

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <string_view>

namespace bd4 {

// Enumerator values are the table index order used throughout (t, b, n, f).
enum class TruthValue : std::uint8_t { t = 0, b = 1, n = 2, f = 3 };

inline constexpr std::array<TruthValue, 4> kAllValues = {
    TruthValue::t, TruthValue::b, TruthValue::n, TruthValue::f};

// Order in which valuations are enumerated: classical values first.
inline constexpr std::array<TruthValue, 4> kEnumerationOrder = {
    TruthValue::t, TruthValue::f, TruthValue::b, TruthValue::n};

constexpr int index_of(TruthValue v) { return static_cast<int>(v); }
constexpr TruthValue value_at(int i) { return static_cast<TruthValue>(i & 3); }

constexpr bool told_true(TruthValue v) {
  return v == TruthValue::t || v == TruthValue::b;
}
constexpr bool told_false(TruthValue v) {
  return v == TruthValue::f || v == TruthValue::b;
}
constexpr TruthValue from_bits(bool is_true, bool is_false) {
  if (is_true) return is_false ? TruthValue::b : TruthValue::t;
  return is_false ? TruthValue::f : TruthValue::n;
}

constexpr bool designated(TruthValue v) { return told_true(v); }
constexpr bool classical(TruthValue v) {
  return v == TruthValue::t || v == TruthValue::f;
}

constexpr TruthValue meet(TruthValue a, TruthValue b) {
  return from_bits(told_true(a) && told_true(b), told_false(a) || told_false(b));
}
constexpr TruthValue join(TruthValue a, TruthValue b) {
  return from_bits(told_true(a) || told_true(b), told_false(a) && told_false(b));
}
constexpr TruthValue negate(TruthValue a) {
  return from_bits(told_false(a), told_true(a));
}
constexpr TruthValue implies(TruthValue a, TruthValue b) {
  return designated(a) ? b : TruthValue::t;
}
// Truth-order relation a <= b.
constexpr bool leq(TruthValue a, TruthValue b) { return meet(a, b) == a; }

// Lowercase letter t/b/n/f.
char to_char(TruthValue v);
// Uppercase letter T/B/N/F, as used in files and CLI output.
char to_upper_char(TruthValue v);
// Accepts t/b/n/f in either case.
std::optional<TruthValue> parse_truth_value(std::string_view text);

// A subset of the four values, bit i set for value_at(i).
class ValueSet {
 public:
  constexpr ValueSet() = default;
  constexpr explicit ValueSet(std::uint8_t bits) : bits_(bits & 0xF) {}
  constexpr ValueSet(std::initializer_list<TruthValue> values) {
    for (TruthValue v : values) bits_ |= static_cast<std::uint8_t>(1u << index_of(v));
  }

  constexpr bool contains(TruthValue v) const { return (bits_ >> index_of(v)) & 1u; }
  constexpr std::uint8_t bits() const { return bits_; }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int size() const {
    return ((bits_ >> 0) & 1) + ((bits_ >> 1) & 1) + ((bits_ >> 2) & 1) + ((bits_ >> 3) & 1);
  }
  constexpr bool subset_of(ValueSet other) const { return (bits_ & ~other.bits_) == 0; }
  constexpr ValueSet insert(TruthValue v) const {
    return ValueSet(static_cast<std::uint8_t>(bits_ | (1u << index_of(v))));
  }
  // Members in index order t, b, n, f.
  template <typename Fn>
  constexpr void for_each(Fn&& fn) const {
    for (TruthValue v : kAllValues)
      if (contains(v)) fn(v);
  }

  friend constexpr bool operator==(ValueSet, ValueSet) = default;

  // Infimum/supremum of a nonempty set.
  TruthValue inf() const;
  TruthValue sup() const;

  std::string to_string() const;  // e.g. "{t,b}"

 private:
  std::uint8_t bits_ = 0;
};

inline constexpr ValueSet kFourValues{TruthValue::t, TruthValue::b, TruthValue::n, TruthValue::f};
inline constexpr ValueSet kDesignatedValues{TruthValue::t, TruthValue::b};
inline constexpr ValueSet kLpValues{TruthValue::t, TruthValue::f, TruthValue::b};
inline constexpr ValueSet kK3Values{TruthValue::t, TruthValue::f, TruthValue::n};
inline constexpr ValueSet kClassicalValues{TruthValue::t, TruthValue::f};

// True iff the set contains f and is closed under negation, meet, join and
// implication. Exactly the four sets above pass.
bool closed_under_operations(ValueSet set);

}  // namespace bd4

#endif  // BD4_TRUTH_VALUE_HPP
