#include "trivext/uze.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

namespace trivext {

namespace {

using Support = std::vector<std::uint32_t>;

Support sym_diff(const Support& x, const Support& y) {
  Support out;
  std::set_symmetric_difference(x.begin(), x.end(), y.begin(), y.end(),
                                std::back_inserter(out));
  return out;
}

Support meet(const Support& x, const Support& y) {
  Support out;
  std::set_intersection(x.begin(), x.end(), y.begin(), y.end(), std::back_inserter(out));
  return out;
}

bool odd(const mpz_class& a) { return mpz_odd_p(a.get_mpz_t()) != 0; }

bool disjoint(const Support& x, const Support& y) { return meet(x, y).empty(); }

bool includes(const Support& big, const Support& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::string format_support(const Support& s) {
  std::ostringstream os;
  os << "{";
  for (std::size_t k = 0; k < s.size(); ++k) os << (k ? "," : "") << s[k];
  os << "}";
  return os.str();
}

}  // namespace

UZEElement uze_make(long a, std::vector<std::uint32_t> support) {
  std::sort(support.begin(), support.end());
  Support e;
  for (std::uint32_t i : support) {
    if (!e.empty() && e.back() == i) {
      e.pop_back();
    } else {
      e.push_back(i);
    }
  }
  return {mpz_class(a), std::move(e)};
}

UZEElement uze_add(const UZEElement& x, const UZEElement& y) {
  return {x.a + y.a, sym_diff(x.e, y.e)};
}

UZEElement uze_mul(const UZEElement& x, const UZEElement& y) {
  Support e = meet(x.e, y.e);
  if (odd(x.a)) e = sym_diff(e, y.e);
  if (odd(y.a)) e = sym_diff(e, x.e);
  return {x.a * y.a, std::move(e)};
}

bool uze_is_zero(const UZEElement& x) { return x.a == 0 && x.e.empty(); }

bool uze_is_regular(const UZEElement& x) { return odd(x.a) && x.e.empty(); }

std::optional<UZEElement> uze_zero_divisor_witness(const UZEElement& x) {
  if (uze_is_regular(x)) return std::nullopt;
  if (odd(x.a)) {
    // (a, e)(0, f) = (0, f + ef) vanishes for f inside supp e.
    return UZEElement{0, {x.e.front()}};
  }
  // With a even, (a, e)(0, f) = (0, ef) vanishes for f off supp e.
  std::uint32_t k = x.e.empty() ? 0 : x.e.back() + 1;
  return UZEElement{0, {k}};
}

std::string uze_format(const UZEElement& x) {
  return "(" + x.a.get_str() + "," + format_support(x.e) + ")";
}

std::optional<UZEElement> UZEIdeal::generator() const {
  switch (kind) {
    case Kind::Zero: return UZEElement{0, {}};
    case Kind::Whole: return UZEElement{1, {}};
    case Kind::SubsetsOf: return UZEElement{0, support};
    case Kind::IdempotentLine: return UZEElement{1, support};
    case Kind::ZeroTimesDisjoint: return std::nullopt;
  }
  return std::nullopt;
}

UZEIdeal uze_annihilator(const UZEElement& x) {
  using K = UZEIdeal::Kind;
  if (uze_is_zero(x)) return {K::Whole, {}};
  if (odd(x.a)) {
    if (x.e.empty()) return {K::Zero, {}};
    return {K::SubsetsOf, x.e};
  }
  if (x.a != 0) return {K::ZeroTimesDisjoint, x.e};
  return {K::IdempotentLine, x.e};
}

bool uze_contains(const UZEIdeal& i, const UZEElement& y) {
  using K = UZEIdeal::Kind;
  switch (i.kind) {
    case K::Zero: return uze_is_zero(y);
    case K::Whole: return true;
    case K::SubsetsOf: return y.a == 0 && includes(i.support, y.e);
    case K::IdempotentLine:
      return odd(y.a) ? includes(y.e, i.support) : disjoint(y.e, i.support);
    case K::ZeroTimesDisjoint: return y.a == 0 && disjoint(y.e, i.support);
  }
  return false;
}

std::string uze_format(const UZEIdeal& i) {
  using K = UZEIdeal::Kind;
  const std::string s = format_support(i.support);
  switch (i.kind) {
    case K::Zero: return "0";
    case K::Whole: return "R";
    case K::SubsetsOf: return "R(0," + s + ")";
    case K::IdempotentLine: return "R(1," + s + ")";
    case K::ZeroTimesDisjoint:
      if (i.support.empty()) return "0 × E [not finitely generated]";
      return "0 × {f : f ∩ " + s + " = ∅} [not finitely generated]";
  }
  return "?";
}

UZEInverseClass uze_inverse_class(const std::vector<UZEElement>& gens) {
  mpz_class g = 0;
  for (const UZEElement& x : gens) g = gcd(g, x.a);
  if (g == 0) return {UZEInverseClass::Kind::TotalRing, 0};
  return {UZEInverseClass::Kind::EquivPrincipal, g};
}

std::string uze_format(const UZEInverseClass& c) {
  if (c.kind == UZEInverseClass::Kind::TotalRing) return "TotalRing";
  return "EquivPrincipal{" + c.x.get_str() + "}";
}

}  // namespace trivext
