#pragma once

// Z × E with E = ⊕F2 and (a,e)(b,f) = (ab, af + be + ef).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace trivext {

/// (a, e) with e stored as its sorted support.
struct UZEElement {
  mpz_class a;
  std::vector<std::uint32_t> e;

  bool operator==(const UZEElement&) const = default;
};

/// Builds an element, normalizing the support (sorted, duplicates cancel).
UZEElement uze_make(long a, std::vector<std::uint32_t> support = {});
UZEElement uze_add(const UZEElement& x, const UZEElement& y);
UZEElement uze_mul(const UZEElement& x, const UZEElement& y);
bool uze_is_zero(const UZEElement& x);
/// Regular iff x = (a, 0) with a odd.
bool uze_is_regular(const UZEElement& x);
/// A nonzero y with xy = 0 for every non-regular x.
std::optional<UZEElement> uze_zero_divisor_witness(const UZEElement& x);
std::string uze_format(const UZEElement& x);

/// (0 : x) as one of a fixed set of shapes, each relative to the support s.
struct UZEIdeal {
  enum class Kind {
    Zero,
    Whole,
    /// R(0, s) = {(0, f) : f ⊆ s}
    SubsetsOf,
    /// R(1, s) = {(b, f) : b even and f ∩ s = ∅, or b odd and s ⊆ f}
    IdempotentLine,
    /// 0 × {f : f ∩ s = ∅}, not finitely generated
    ZeroTimesDisjoint,
  };
  Kind kind = Kind::Zero;
  std::vector<std::uint32_t> support;

  bool finitely_generated() const { return kind != Kind::ZeroTimesDisjoint; }
  /// The generator for the principal shapes.
  std::optional<UZEElement> generator() const;
};

UZEIdeal uze_annihilator(const UZEElement& x);
bool uze_contains(const UZEIdeal& i, const UZEElement& y);
std::string uze_format(const UZEIdeal& i);

/// J⁻¹ for J = Σ R g_i: Q(R) when every a-part vanishes, else (R(x,0))⁻¹
/// with x the gcd of the a-parts.
struct UZEInverseClass {
  enum class Kind { TotalRing, EquivPrincipal };
  Kind kind = Kind::TotalRing;
  mpz_class x = 0;
};

UZEInverseClass uze_inverse_class(const std::vector<UZEElement>& gens);
std::string uze_format(const UZEInverseClass& c);

}  // namespace trivext
