#pragma once

// Exact arithmetic in Z ∝ Q and its total ring of quotients Q ∝ Q.

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

namespace trivext {

/// An element (a, q) of Z ∝ Q.
struct ZQElement {
  mpz_class a;
  mpq_class q;

  bool operator==(const ZQElement&) const = default;
};

/// An element (a, q) of Q ∝ Q.
struct ZQFraction {
  mpq_class a;
  mpq_class q;

  bool operator==(const ZQFraction&) const = default;
};

ZQElement zq_make(long a, long num = 0, long den = 1);
ZQElement zq_add(const ZQElement& x, const ZQElement& y);
ZQElement zq_sub(const ZQElement& x, const ZQElement& y);
ZQElement zq_mul(const ZQElement& x, const ZQElement& y);
ZQFraction zq_mul(const ZQFraction& x, const ZQFraction& y);
ZQFraction zq_lift(const ZQElement& x);
bool zq_is_zero(const ZQElement& x);
/// (a, q) is regular iff a ≠ 0.
bool zq_is_regular(const ZQElement& x);
/// A nonzero y with xy = 0 when x is a zero divisor.
std::optional<ZQElement> zq_zero_divisor_witness(const ZQElement& x);
std::string zq_format(const ZQElement& x);
std::string zq_format(const ZQFraction& x);

/// Generator of the subgroup Σ q_i Z of Q (zero for an empty or zero list).
mpq_class rational_lattice_gcd(const std::vector<mpq_class>& qs);
/// Generator of cZ ∩ c'Z for nonzero rationals.
mpq_class rational_lattice_lcm(const mpq_class& c, const mpq_class& d);

/// Normal form of a finitely generated ideal of Z ∝ Q.
struct ZQIdealNF {
  enum class Kind { ZeroLine, FullLine };
  Kind kind = Kind::ZeroLine;
  /// ZeroLine: 0 ∝ gZ with g ≥ 0 (g = 0 is the zero ideal).
  mpq_class g = 0;
  /// FullLine: dZ ∝ Q with d ≥ 1.
  mpz_class d = 1;

  static ZQIdealNF zero_line(const mpq_class& g);
  static ZQIdealNF full_line(const mpz_class& d);
  static ZQIdealNF zero() { return zero_line(0); }
  static ZQIdealNF whole() { return full_line(1); }

  bool is_zero() const { return kind == Kind::ZeroLine && g == 0; }
  bool operator==(const ZQIdealNF&) const = default;
};

/// Fractional ideals of Z ∝ Q inside Q ∝ Q that this tier can represent.
/// Each one is a product set A × E of Z-submodules of Q.
struct ZQFractional {
  enum class Kind { Zero, ScaledLine, ZeroScaled, ZeroFull, Total };
  Kind kind = Kind::Zero;
  /// ScaledLine: cZ ∝ Q; ZeroScaled: 0 ∝ cZ.  Positive when used.
  mpq_class c = 0;

  static ZQFractional zero() { return {}; }
  static ZQFractional scaled_line(const mpq_class& c);
  static ZQFractional zero_scaled(const mpq_class& c);
  static ZQFractional zero_full() { return {Kind::ZeroFull, 0}; }
  static ZQFractional total() { return {Kind::Total, 0}; }
  static ZQFractional ring() { return scaled_line(1); }

  bool operator==(const ZQFractional&) const = default;
};

/// An ideal that is not finitely generated, kept as its fractional value.
struct ZQFlagged {
  ZQFractional value;
  std::string reason;
};

/// Either a finitely generated ideal or a flagged one.
using ZQIdealResult = std::variant<ZQIdealNF, ZQFlagged>;

ZQIdealNF zq_ideal_nf(const std::vector<ZQElement>& gens);
bool zq_contains(const ZQIdealNF& i, const ZQElement& x);
bool zq_contains(const ZQFractional& f, const ZQFraction& x);
ZQFractional zq_fractional(const ZQIdealNF& i);
/// The NF of an integral fractional ideal that is finitely generated.
std::optional<ZQIdealNF> zq_integral_nf(const ZQFractional& f);

ZQIdealNF zq_intersect(const ZQIdealNF& i, const ZQIdealNF& j);
ZQIdealNF zq_sum(const ZQIdealNF& i, const ZQIdealNF& j);
ZQFractional zq_intersect(const ZQFractional& f, const ZQFractional& g);
ZQFractional zq_sum(const ZQFractional& f, const ZQFractional& g);
/// (0 : x)
ZQIdealResult zq_annihilator(const ZQElement& x);
/// (I : J) = {x ∈ R : xJ ⊆ I}
ZQIdealResult zq_colon(const ZQIdealNF& i, const ZQIdealNF& j);

/// (R : F) in Q ∝ Q.  Rejects the zero ideal.
ZQFractional zq_inverse(const ZQFractional& f);
ZQFractional zq_v_closure(const ZQFractional& f);
/// Finitely many generators J₁ with I⁻¹ = J₁⁻¹, checked before returning.
std::vector<ZQElement> zq_v_finite_witness(const ZQIdealResult& i);

bool zq_is_fg(const ZQFractional& f);
struct ZQPrincipal {
  bool principal = false;
  std::optional<ZQElement> generator;
};
ZQPrincipal zq_is_principal(const ZQIdealNF& i);
/// Generators whose NF is i.
std::vector<ZQElement> zq_generators(const ZQIdealNF& i);

std::string zq_format(const ZQIdealNF& i);
std::string zq_format(const ZQFractional& f);
std::string zq_format(const ZQIdealResult& r);

/// Generator (u, e) of a submodule of R^m = Z^m ∝ Q^m.
struct ZQVector {
  std::vector<mpz_class> u;
  std::vector<mpq_class> e;
};

inline constexpr std::size_t kZQMaxRank = 3;

/// Normal form of a finitely generated submodule H of R^m, m ≤ 3.
struct ZQSubmoduleNF {
  enum class Kind { Split, General };
  Kind kind = Kind::Split;
  std::size_t rank = 0;
  /// Hermite basis of U, the projection of H to Z^m.
  std::vector<std::vector<mpz_class>> lattice;
  /// Reduced row echelon basis of KU.
  std::vector<std::vector<mpq_class>> span;
  /// Nonzero residues of the e-parts modulo KU (General only).
  std::vector<std::vector<mpq_class>> residues;
  /// The kernel of R^p -> H on the given generators is finitely generated.
  bool finitely_presented = true;

  bool split() const { return kind == Kind::Split; }
};

ZQSubmoduleNF zq_submodule_nf(std::size_t m, const std::vector<ZQVector>& gens);
/// Split case only: (u, w) ∈ U ∝ KU.
bool zq_split_contains(const ZQSubmoduleNF& h, const ZQVector& x);
/// n = 0: always (H is finitely generated).  n >= 1: write the generators
/// as (x_i, g_i) with g_i the residues.  The kernel of R^p -> H is
/// W ∝ E' with W = {a ∈ Z^p : Σ a_i x_i = 0, Σ a_i g_i = 0} and
/// E' = {e ∈ Q^p : Σ e_i x_i = 0}.  It is finitely generated exactly when
/// E' = QW, and then it is free, so H is n-presented for every n.  The test
/// is rank_Q[X | G] = rank_Q X.
bool zq_is_n_presented(const ZQSubmoduleNF& h, std::size_t n);
std::string zq_format(const ZQSubmoduleNF& h);

/// Integer Hermite normal form of the row span (zero rows dropped).
std::vector<std::vector<mpz_class>> integer_hermite(std::vector<std::vector<mpz_class>> rows);
/// Reduced row echelon basis of the rational row span.
std::vector<std::vector<mpq_class>> rational_rref(std::vector<std::vector<mpq_class>> rows);
/// v minus its projection along pivot coordinates of an RREF basis.
std::vector<mpq_class> reduce_by_rref(const std::vector<std::vector<mpq_class>>& basis,
                                      std::vector<mpq_class> v);

}  // namespace trivext
