#include "bd4/truth_value.hpp"

namespace bd4 {

char to_char(TruthValue v) { return "tbnf"[index_of(v)]; }

char to_upper_char(TruthValue v) { return "TBNF"[index_of(v)]; }

std::optional<TruthValue> parse_truth_value(std::string_view text) {
  if (text.size() != 1) return std::nullopt;
  switch (text[0]) {
    case 't': case 'T': return TruthValue::t;
    case 'b': case 'B': return TruthValue::b;
    case 'n': case 'N': return TruthValue::n;
    case 'f': case 'F': return TruthValue::f;
    default: return std::nullopt;
  }
}

TruthValue ValueSet::inf() const {
  TruthValue acc = TruthValue::t;
  for_each([&](TruthValue v) { acc = meet(acc, v); });
  return acc;
}

TruthValue ValueSet::sup() const {
  TruthValue acc = TruthValue::f;
  for_each([&](TruthValue v) { acc = join(acc, v); });
  return acc;
}

std::string ValueSet::to_string() const {
  std::string out = "{";
  for_each([&](TruthValue v) {
    if (out.size() > 1) out += ',';
    out += to_char(v);
  });
  out += '}';
  return out;
}

bool closed_under_operations(ValueSet set) {
  if (!set.contains(TruthValue::f)) return false;
  bool closed = true;
  set.for_each([&](TruthValue a) {
    if (!set.contains(negate(a))) closed = false;
    set.for_each([&](TruthValue b) {
      if (!set.contains(meet(a, b)) || !set.contains(join(a, b)) ||
          !set.contains(implies(a, b)))
        closed = false;
    });
  });
  return closed;
}

}  // namespace bd4
