// The matrix written out entry by entry, independently of the lattice
// encoding in truth_value.hpp. Rows and columns follow the index order
// t, b, n, f. Used as a cross-check by tests and the acceptance suite.

#ifndef BD4_REFERENCE_TABLES_HPP
#define BD4_REFERENCE_TABLES_HPP

#include <array>

#include "bd4/truth_value.hpp"

namespace bd4::reference {

inline constexpr TruthValue T = TruthValue::t;
inline constexpr TruthValue B = TruthValue::b;
inline constexpr TruthValue N = TruthValue::n;
inline constexpr TruthValue F = TruthValue::f;

inline constexpr TruthValue kFalsity = F;

inline constexpr std::array<TruthValue, 4> kNegation = {F, B, N, T};

inline constexpr std::array<std::array<TruthValue, 4>, 4> kConjunction = {{
    {T, B, N, F},
    {B, B, F, F},
    {N, F, N, F},
    {F, F, F, F},
}};

inline constexpr std::array<std::array<TruthValue, 4>, 4> kDisjunction = {{
    {T, T, T, T},
    {T, B, T, B},
    {T, T, N, N},
    {T, B, N, F},
}};

inline constexpr std::array<std::array<TruthValue, 4>, 4> kImplication = {{
    {T, B, N, F},
    {T, B, N, F},
    {T, T, T, T},
    {T, T, T, T},
}};

// Greatest lower bound / least upper bound of a nonempty set, computed from
// the order f < b < t, f < n < t by search over candidate bounds.
constexpr bool below(TruthValue a, TruthValue b) {
  if (a == b || a == F || b == T) return true;
  return false;
}

constexpr TruthValue infimum(unsigned mask) {
  // The greatest x with x below every member.
  TruthValue best = F;
  for (TruthValue x : {T, B, N, F}) {
    bool lower = true;
    for (int i = 0; i < 4; ++i)
      if ((mask >> i) & 1u) lower = lower && below(x, static_cast<TruthValue>(i));
    if (lower) {
      bool greatest = true;
      for (TruthValue y : {T, B, N, F}) {
        bool ylower = true;
        for (int i = 0; i < 4; ++i)
          if ((mask >> i) & 1u) ylower = ylower && below(y, static_cast<TruthValue>(i));
        if (ylower && !below(y, x)) greatest = false;
      }
      if (greatest) return x;
    }
  }
  return best;
}

constexpr TruthValue supremum(unsigned mask) {
  TruthValue best = T;
  for (TruthValue x : {F, B, N, T}) {
    bool upper = true;
    for (int i = 0; i < 4; ++i)
      if ((mask >> i) & 1u) upper = upper && below(static_cast<TruthValue>(i), x);
    if (upper) {
      bool least = true;
      for (TruthValue y : {F, B, N, T}) {
        bool yupper = true;
        for (int i = 0; i < 4; ++i)
          if ((mask >> i) & 1u) yupper = yupper && below(static_cast<TruthValue>(i), y);
        if (yupper && !below(x, y)) least = false;
      }
      if (least) return x;
    }
  }
  return best;
}

}  // namespace bd4::reference

#endif  // BD4_REFERENCE_TABLES_HPP
