#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "internal.hpp"
#include "trivext/errors.hpp"
#include "trivext/idealops.hpp"

namespace trivext::detail {

namespace {

// ------------------------------------------------------------------ helpers

std::int64_t uniform(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

mpq_class random_rational(Rng& rng, const VerifyConfig& c) {
  mpq_class q(mpz_class(uniform(rng, -c.coef, c.coef)), mpz_class(uniform(rng, 1, c.den)));
  q.canonicalize();
  return q;
}

ZQElement random_zq(Rng& rng, const VerifyConfig& c, bool zero_a = false) {
  return {zero_a ? mpz_class(0) : mpz_class(uniform(rng, -c.coef, c.coef)), random_rational(rng, c)};
}

ZQFraction random_fraction(Rng& rng, const VerifyConfig& c) {
  return {random_rational(rng, c), random_rational(rng, c)};
}

std::string zq_literal(const ZQElement& x) {
  return "(" + x.a.get_str() + "," + x.q.get_str() + ")";
}

json zq_literals(const std::vector<ZQElement>& xs) {
  json out = json::array();
  for (const ZQElement& x : xs) out.push_back(zq_literal(x));
  return out;
}

std::string fraction_literal(const ZQFraction& x) {
  return "(" + x.a.get_str() + "," + x.q.get_str() + ")";
}

std::vector<ZQElement> parse_zq_list(const json& xs) {
  if (!xs.is_array()) throw SpecError("witness: expected a list of elements");
  std::vector<ZQElement> out;
  for (const json& x : xs) out.push_back(parse_zq_element(x.get<std::string>()));
  return out;
}

ZQFraction parse_fraction(const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw SpecError("witness: bad fraction '" + text + "'");
  }
  std::string inner = text.substr(1, text.size() - 2);
  std::size_t comma = inner.find(',');
  if (comma == std::string::npos) throw SpecError("witness: bad fraction '" + text + "'");
  ZQFraction f;
  if (f.a.set_str(inner.substr(0, comma), 10) != 0 || f.q.set_str(inner.substr(comma + 1), 10) != 0) {
    throw SpecError("witness: bad fraction '" + text + "'");
  }
  f.a.canonicalize();
  f.q.canonicalize();
  return f;
}

std::string uze_literal(const UZEElement& x) {
  std::string s = "(" + x.a.get_str() + ",{";
  for (std::size_t i = 0; i < x.e.size(); ++i) s += (i ? "," : "") + std::to_string(x.e[i]);
  return s + "})";
}

json uze_literals(const std::vector<UZEElement>& xs) {
  json out = json::array();
  for (const UZEElement& x : xs) out.push_back(uze_literal(x));
  return out;
}

std::vector<UZEElement> parse_uze_list(const json& xs) {
  if (!xs.is_array()) throw SpecError("witness: expected a list of elements");
  std::vector<UZEElement> out;
  for (const json& x : xs) out.push_back(parse_uze_element(x.get<std::string>()));
  return out;
}

std::string str(const json& data, const char* key) {
  if (!data.contains(key) || !data[key].is_string()) {
    throw SpecError(std::string("witness: missing field '") + key + "'");
  }
  return data[key].get<std::string>();
}

bool is_integer(const mpq_class& q) { return q.get_den() == 1; }

/// Combination Σ r_i g_i.
ZQElement combine(const std::vector<ZQElement>& rs, const std::vector<ZQElement>& gens) {
  ZQElement s{0, 0};
  for (std::size_t i = 0; i < gens.size(); ++i) s = zq_add(s, zq_mul(rs[i], gens[i]));
  return s;
}

/// Integers b_i with Σ b_i n_i = gcd(n_i), by repeated extended Euclid.
std::vector<mpz_class> bezout_coefficients(const std::vector<mpz_class>& ns, mpz_class& g) {
  std::vector<mpz_class> b(ns.size(), 0);
  g = 0;
  for (std::size_t i = 0; i < ns.size(); ++i) {
    mpz_class s, t, h;
    mpz_gcdext(h.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), g.get_mpz_t(), ns[i].get_mpz_t());
    for (std::size_t j = 0; j < i; ++j) b[j] *= s;
    b[i] = t;
    g = h;
  }
  if (g < 0) {
    g = -g;
    for (mpz_class& x : b) x = -x;
  }
  return b;
}

/// Membership in Σ R g_i by an explicit certificate: either coefficients
/// r_i with Σ r_i g_i = y (checked by multiplying out), or an invariant of
/// the ideal that y violates.
bool generated_contains(const std::vector<ZQElement>& gens, const ZQElement& y) {
  if (gens.empty()) return zq_is_zero(y);
  std::vector<mpz_class> as;
  for (const ZQElement& g : gens) as.push_back(g.a);
  mpz_class g;
  std::vector<mpz_class> b = bezout_coefficients(as, g);
  std::vector<ZQElement> rs(gens.size(), ZQElement{0, 0});
  if (g != 0) {
    // Every combination has a-part in gZ.
    if (y.a % g != 0) return false;
    mpz_class k = y.a / g;
    for (std::size_t i = 0; i < gens.size(); ++i) rs[i].a = b[i] * k;
    ZQElement partial = combine(rs, gens);
    std::size_t pivot = 0;
    while (gens[pivot].a == 0) ++pivot;
    rs[pivot].q = (y.q - partial.q) / mpq_class(gens[pivot].a);
  } else {
    // All a-parts vanish: the ideal is 0 ∝ Σ Z q_i.
    if (y.a != 0) return false;
    mpz_class l = y.q.get_den();
    for (const ZQElement& x : gens) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.q.get_den_mpz_t());
    std::vector<mpz_class> ns;
    for (const ZQElement& x : gens) ns.push_back(mpz_class(x.q * l));
    mpz_class target(y.q * l);
    mpz_class h;
    std::vector<mpz_class> c = bezout_coefficients(ns, h);
    if (h == 0) return target == 0;
    if (target % h != 0) return false;
    for (std::size_t i = 0; i < gens.size(); ++i) rs[i].a = c[i] * (target / h);
  }
  if (!(combine(rs, gens) == y)) throw std::logic_error("membership certificate does not verify");
  return true;
}

/// y ∈ (R : Σ R g_i) iff every y g_i lies in R.
bool inverse_contains(const std::vector<ZQElement>& gens, const ZQFraction& y) {
  for (const ZQElement& g : gens) {
    if (!is_integer(zq_mul(y, zq_lift(g)).a)) return false;
  }
  return true;
}

/// Random generator list; `zero_a_share` of the lists have all a-parts zero.
std::vector<ZQElement> random_list(Rng& rng, const VerifyConfig& c, std::size_t n, bool zero_a) {
  std::vector<ZQElement> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(random_zq(rng, c, zero_a));
  return out;
}

std::vector<ZQElement> nonzero_list(Rng& rng, const VerifyConfig& c, std::size_t n, bool zero_a) {
  for (;;) {
    std::vector<ZQElement> gens = random_list(rng, c, n, zero_a);
    if (!zq_ideal_nf(gens).is_zero()) return gens;
  }
}

/// A sample that lies in Σ R g_i about half the time.
ZQElement sample_near(Rng& rng, const VerifyConfig& c, const std::vector<ZQElement>& gens) {
  if (uniform(rng, 0, 1) == 0) return random_zq(rng, c, uniform(rng, 0, 3) == 0);
  std::vector<ZQElement> rs;
  for (std::size_t i = 0; i < gens.size(); ++i) rs.push_back(random_zq(rng, c));
  return combine(rs, gens);
}

Outcome tier_fail(const std::string& check, const std::string& tier, std::uint64_t run,
                  json data, const std::string& why) {
  return counterexample(run, tier_witness(check, tier, {std::move(data), why}), why);
}

// ------------------------------------------------------------- ex2.3.regular

std::optional<std::string> regular_case(const VerifyConfig& c, const UZEElement& x) {
  if (uze_is_regular(x)) {
    const std::uint32_t width = std::min<std::uint32_t>(c.support, 20);
    for (long b = -2; b <= 2; ++b) {
      for (std::uint32_t mask = 0; mask < (1u << width); ++mask) {
        std::vector<std::uint32_t> s;
        for (std::uint32_t i = 0; i < width; ++i) {
          if (mask >> i & 1u) s.push_back(i);
        }
        UZEElement y = uze_make(b, s);
        if (!uze_is_zero(y) && uze_is_zero(uze_mul(x, y))) {
          return uze_literal(x) + " is flagged regular but " + uze_literal(x) + "·" +
                 uze_literal(y) + " = 0";
        }
      }
    }
    return std::nullopt;
  }
  std::optional<UZEElement> w = uze_zero_divisor_witness(x);
  if (w && !uze_is_zero(*w) && uze_is_zero(uze_mul(x, *w))) return std::nullopt;
  return uze_literal(x) + " is flagged a zero divisor without a valid witness";
}

UZEElement random_uze(Rng& rng, const VerifyConfig& c) {
  std::vector<std::uint32_t> s;
  const int shape = static_cast<int>(uniform(rng, 0, 3));
  if (shape != 0) {
    for (std::uint32_t i = 0; i < c.support; ++i) {
      if (uniform(rng, 0, 2) == 0) s.push_back(i);
    }
  }
  long a = static_cast<long>(uniform(rng, -c.coef, c.coef));
  if (shape == 1) a = 0;
  return uze_make(a, s);
}

Outcome run_ex23_regular(CheckContext& ctx) {
  std::uint64_t regular = 0, zd = 0;
  for (std::uint64_t s = 0; s < ctx.config.uze_elements; ++s) {
    UZEElement x = random_uze(ctx.rng, ctx.config);
    (uze_is_regular(x) ? regular : zd) += 1;
    if (auto why = regular_case(ctx.config, x)) {
      return tier_fail("ex2.3.regular", "uze", s + 1, json{{"x", uze_literal(x)}}, *why);
    }
  }
  std::ostringstream os;
  os << regular << " elements flagged regular survive a search over b ∈ [-2,2] and supports in [0,"
     << ctx.config.support << "); " << zd << " zero divisors come with verified witnesses";
  return finish(ctx.config.uze_elements, os.str());
}

std::optional<std::string> replay_ex23_regular(const RingSpec&, const std::string&,
                                               const json& data) {
  return regular_case(VerifyConfig{}, parse_uze_element(str(data, "x")));
}

// ----------------------------------------------------------------- ex2.3.ann

std::optional<std::string> uze_ann_case(const UZEElement& x, const UZEElement& y) {
  UZEIdeal ann = uze_annihilator(x);
  bool member = uze_contains(ann, y);
  bool kills = uze_is_zero(uze_mul(x, y));
  if (member == kills) return std::nullopt;
  return "(0:" + uze_literal(x) + ") = " + uze_format(ann) + (member ? " contains " : " misses ") +
         uze_literal(y) + " although the product is " + (kills ? "zero" : "nonzero");
}

std::optional<std::string> two_zero_shape() {
  UZEIdeal ann = uze_annihilator(uze_make(2));
  if (ann.kind == UZEIdeal::Kind::ZeroTimesDisjoint && ann.support.empty() &&
      !ann.finitely_generated()) {
    return std::nullopt;
  }
  return "(0:(2,0)) = " + uze_format(ann) + ", expected 0 × E flagged not finitely generated";
}

Outcome run_ex23_ann(CheckContext& ctx) {
  if (auto why = two_zero_shape()) {
    return tier_fail("ex2.3.ann", "uze", 1, json{{"x", "(2,{})"}, {"y", "(0,{})"}}, *why);
  }
  std::uint64_t samples = 0, members = 0;
  for (std::uint64_t s = 0; s < ctx.config.uze_elements; ++s) {
    UZEElement x = random_uze(ctx.rng, ctx.config);
    if (s == 0) x = uze_make(2);
    std::optional<UZEElement> w = uze_zero_divisor_witness(x);
    for (int k = 0; k < 10; ++k) {
      UZEElement y = random_uze(ctx.rng, ctx.config);
      if (k % 2 == 1 && w) y = uze_mul(*w, y);
      ++samples;
      if (uze_is_zero(uze_mul(x, y))) ++members;
      if (auto why = uze_ann_case(x, y)) {
        return tier_fail("ex2.3.ann", "uze", s + 1,
                         json{{"x", uze_literal(x)}, {"y", uze_literal(y)}}, *why);
      }
    }
  }
  std::ostringstream os;
  os << "(0:(2,0)) = 0 × E, flagged not finitely generated; " << samples
     << " sampled pairs agree with the annihilator descriptions (" << members << " in the annihilator)";
  return finish(ctx.config.uze_elements, os.str());
}

std::optional<std::string> replay_ex23_ann(const RingSpec&, const std::string&, const json& data) {
  UZEElement x = parse_uze_element(str(data, "x"));
  if (x == uze_make(2)) {
    if (auto why = two_zero_shape()) return why;
  }
  return uze_ann_case(x, parse_uze_element(str(data, "y")));
}

// ----------------------------------------------------------------- ex2.3.inv

std::optional<std::string> uze_inverse_case(const std::vector<UZEElement>& gens,
                                            const UZEElement& y, const mpz_class& b) {
  // sR = bZ × E for s = (b, 0) with b odd.
  bool direct = std::all_of(gens.begin(), gens.end(), [&](const UZEElement& g) {
    return uze_mul(y, g).a % b == 0;
  });
  UZEInverseClass cls = uze_inverse_class(gens);
  bool all_zero = std::all_of(gens.begin(), gens.end(), [](const UZEElement& g) { return g.a == 0; });
  bool predicted = true;
  if (cls.kind == UZEInverseClass::Kind::TotalRing) {
    if (!all_zero) return "J has a nonzero a-part but its inverse class is the total ring";
  } else {
    if (all_zero) return "J ⊆ 0 × E but its inverse class is " + uze_format(cls);
    UZEElement xr;
    xr.a = cls.x;
    predicted = uze_mul(y, xr).a % b == 0;
  }
  if (direct == predicted) return std::nullopt;
  std::ostringstream os;
  os << "y = " << uze_literal(y) << ", s = (" << b.get_str() << ",0): yJ ⊆ sR is " << direct
     << " but the class " << uze_format(cls) << " predicts " << predicted;
  return os.str();
}

Outcome run_ex23_inv(CheckContext& ctx) {
  std::uint64_t total = 0, inside = 0;
  for (std::uint64_t s = 0; s < ctx.config.samples; ++s) {
    const std::size_t n = static_cast<std::size_t>(uniform(ctx.rng, 1, 3));
    const bool zero_a = uniform(ctx.rng, 0, 4) == 0;
    std::vector<UZEElement> gens;
    for (std::size_t i = 0; i < n; ++i) {
      UZEElement g = random_uze(ctx.rng, ctx.config);
      if (zero_a) g.a = 0;
      gens.push_back(g);
    }
    UZEElement y = random_uze(ctx.rng, ctx.config);
    mpz_class b = 2 * uniform(ctx.rng, -8, 7) + 1;
    if (uze_inverse_class(gens).kind == UZEInverseClass::Kind::TotalRing) ++total;
    if (std::all_of(gens.begin(), gens.end(),
                    [&](const UZEElement& g) { return uze_mul(y, g).a % b == 0; })) {
      ++inside;
    }
    if (auto why = uze_inverse_case(gens, y, b)) {
      json data{{"gens", uze_literals(gens)}, {"y", uze_literal(y)}, {"b", b.get_str()}};
      return tier_fail("ex2.3.inv", "uze", s + 1, data, *why);
    }
  }
  std::ostringstream os;
  os << ctx.config.samples << " samples y/s with s = (b,0), b odd, |b| ≤ 15: yJ ⊆ sR iff y·R(x,0) ⊆ sR ("
     << total << " ideals inside 0 × E with J⁻¹ = Q(R), " << inside << " samples inside J⁻¹)";
  return finish(ctx.config.samples, os.str());
}

std::optional<std::string> replay_ex23_inv(const RingSpec&, const std::string&, const json& data) {
  std::vector<UZEElement> gens = parse_uze_list(data.at("gens"));
  mpz_class b;
  if (b.set_str(str(data, "b"), 10) != 0 || b % 2 == 0) throw SpecError("witness: b must be odd");
  return uze_inverse_case(gens, parse_uze_element(str(data, "y")), b);
}

// ---------------------------------------------------------------- thm2.8.ann

std::optional<std::string> zq_ann_case(const ZQElement& x, const ZQElement& y) {
  ZQIdealResult ann = zq_annihilator(x);
  if (zq_is_zero(x)) {
    const auto* nf = std::get_if<ZQIdealNF>(&ann);
    if (!nf || !(*nf == ZQIdealNF::whole())) return "(0:0) = " + zq_format(ann) + ", expected R";
  } else if (x.a != 0) {
    const auto* nf = std::get_if<ZQIdealNF>(&ann);
    if (!nf || !nf->is_zero()) return "(0:" + zq_literal(x) + ") = " + zq_format(ann) + ", expected 0";
  } else {
    const auto* fl = std::get_if<ZQFlagged>(&ann);
    if (!fl || !(fl->value == ZQFractional::zero_full())) {
      return "(0:" + zq_literal(x) + ") = " + zq_format(ann) + ", expected 0 ∝ Q flagged";
    }
  }
  bool member = std::visit(
      [&](const auto& v) {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, ZQIdealNF>) {
          return zq_contains(v, y);
        } else {
          return zq_contains(v.value, zq_lift(y));
        }
      },
      ann);
  bool kills = zq_is_zero(zq_mul(x, y));
  if (member == kills) return std::nullopt;
  return "(0:" + zq_literal(x) + ") = " + zq_format(ann) + (member ? " contains " : " misses ") +
         zq_literal(y);
}

Outcome run_thm28_ann(CheckContext& ctx) {
  std::uint64_t flagged = 0, samples = 0;
  const std::uint64_t xs = ctx.config.zq_lists;
  for (std::uint64_t s = 0; s < xs; ++s) {
    ZQElement x = random_zq(ctx.rng, ctx.config, s % 3 == 0);
    if (s == 0) x = zq_make(0, 1);
    if (x.a == 0 && !zq_is_zero(x)) ++flagged;
    for (int k = 0; k < 10; ++k) {
      ZQElement y = random_zq(ctx.rng, ctx.config, k % 2 == 0);
      ++samples;
      if (auto why = zq_ann_case(x, y)) {
        return tier_fail("thm2.8.ann", "zq", s + 1, json{{"x", zq_literal(x)}, {"y", zq_literal(y)}},
                         *why);
      }
    }
  }
  std::ostringstream os;
  os << xs << " elements: (0:(a,q)) = 0 for a ≠ 0 and 0 ∝ Q (flagged, " << flagged
     << " cases) for a = 0; " << samples << " sampled products agree";
  return finish(xs, os.str());
}

std::optional<std::string> replay_thm28_ann(const RingSpec&, const std::string&, const json& data) {
  return zq_ann_case(parse_zq_element(str(data, "x")), parse_zq_element(str(data, "y")));
}

// ---------------------------------------------------------------- thm2.8.inv

std::optional<std::string> zq_inverse_case(const std::vector<ZQElement>& gens,
                                           const std::vector<ZQElement>& shifted,
                                           const std::vector<ZQFraction>& ys) {
  ZQIdealNF nf = zq_ideal_nf(gens);
  ZQFractional inv = zq_inverse(zq_fractional(nf));
  if (nf.kind == ZQIdealNF::Kind::FullLine) {
    mpq_class c(1, nf.d);
    c.canonicalize();
    if (!(inv == ZQFractional::scaled_line(c))) {
      return "(" + zq_format(nf) + ")⁻¹ = " + zq_format(inv) + ", expected (1/d)Z ∝ Q";
    }
    ZQFractional inv2 = zq_inverse(zq_fractional(zq_ideal_nf(shifted)));
    if (!(inv2 == inv)) {
      return "changing the E-components changes the inverse: " + zq_format(inv) + " vs " +
             zq_format(inv2);
    }
  }
  for (const ZQFraction& y : ys) {
    if (zq_contains(inv, y) != inverse_contains(gens, y)) {
      return "(" + zq_format(nf) + ")⁻¹ = " + zq_format(inv) + " disagrees with yJ ⊆ R at y = " +
             fraction_literal(y);
    }
  }
  return std::nullopt;
}

std::optional<std::string> divisorial_line(std::int64_t d) {
  ZQFractional f = zq_fractional(ZQIdealNF::full_line(d));
  ZQFractional v = zq_v_closure(f);
  if (v == f) return std::nullopt;
  return "(" + std::to_string(d) + "Z ∝ Q)_v = " + zq_format(v);
}

Outcome run_thm28_inv(CheckContext& ctx) {
  std::uint64_t run = 0, full = 0;
  const std::uint64_t per = std::max<std::uint64_t>(1, ctx.config.samples / 10);
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    ++run;
    const std::size_t n = static_cast<std::size_t>(uniform(ctx.rng, 1, 3));
    std::vector<ZQElement> gens = nonzero_list(ctx.rng, ctx.config, n, s % 4 == 3);
    std::vector<ZQElement> shifted = gens;
    for (ZQElement& g : shifted) g.q = random_rational(ctx.rng, ctx.config);
    std::vector<ZQFraction> ys;
    for (std::uint64_t k = 0; k < per; ++k) ys.push_back(random_fraction(ctx.rng, ctx.config));
    if (zq_ideal_nf(gens).kind == ZQIdealNF::Kind::FullLine) ++full;
    if (auto why = zq_inverse_case(gens, shifted, ys)) {
      json yl = json::array();
      for (const ZQFraction& y : ys) yl.push_back(fraction_literal(y));
      json data{{"gens", zq_literals(gens)}, {"shifted", zq_literals(shifted)}, {"ys", yl}};
      return tier_fail("thm2.8.inv", "zq", run, data, *why);
    }
  }
  for (std::int64_t d = 1; d <= ctx.config.vfinite_max_d; ++d) {
    if (auto why = divisorial_line(d)) {
      return tier_fail("thm2.8.inv", "zq", run, json{{"d", d}}, *why);
    }
  }
  std::ostringstream os;
  os << run << " ideals (" << full << " of the form dZ ∝ Q): J⁻¹ = I⁻¹ ∝ Q independent of the "
     << "E-components and equal to {y : yJ ⊆ R} on " << per
     << " samples each; dZ ∝ Q is divisorial for d ≤ " << ctx.config.vfinite_max_d;
  return finish(run, os.str());
}

std::optional<std::string> replay_thm28_inv(const RingSpec&, const std::string&, const json& data) {
  if (data.contains("d")) return divisorial_line(data["d"].get<std::int64_t>());
  std::vector<ZQElement> gens = parse_zq_list(data.at("gens"));
  std::vector<ZQElement> shifted = parse_zq_list(data.at("shifted"));
  if (gens.size() != shifted.size() || zq_ideal_nf(gens).is_zero()) return std::nullopt;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (gens[i].a != shifted[i].a) return std::nullopt;
  }
  std::vector<ZQFraction> ys;
  for (const json& y : data.at("ys")) ys.push_back(parse_fraction(y.get<std::string>()));
  return zq_inverse_case(gens, shifted, ys);
}

// ----------------------------------------------------------- thm2.8.intersect

std::optional<std::string> zq_intersect_case(const std::vector<ZQElement>& gens,
                                             const std::vector<ZQElement>& ys) {
  ZQIdealNF inter = zq_ideal_nf({gens.front()});
  mpz_class l = 1;
  for (const ZQElement& g : gens) {
    if (g.a == 0) return std::nullopt;
    inter = zq_intersect(inter, zq_ideal_nf({g}));
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.a.get_mpz_t());
  }
  if (!(inter == ZQIdealNF::full_line(l))) {
    return "∩ R(a_i,e_i) = " + zq_format(inter) + ", expected " + l.get_str() + "Z ∝ Q";
  }
  for (const ZQElement& y : ys) {
    bool each = std::all_of(gens.begin(), gens.end(),
                            [&](const ZQElement& g) { return generated_contains({g}, y); });
    if (each != zq_contains(inter, y)) {
      return "membership of " + zq_literal(y) + " in ∩ R(a_i,e_i) disagrees with " + zq_format(inter);
    }
  }
  return std::nullopt;
}

Outcome run_thm28_intersect(CheckContext& ctx) {
  std::uint64_t run = 0;
  const std::uint64_t per = std::max<std::uint64_t>(1, ctx.config.samples / 10);
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    ++run;
    const std::size_t n = static_cast<std::size_t>(uniform(ctx.rng, 1, 3));
    std::vector<ZQElement> gens;
    while (gens.size() < n) {
      ZQElement g = random_zq(ctx.rng, ctx.config);
      if (g.a != 0) gens.push_back(g);
    }
    std::vector<ZQElement> ys;
    for (std::uint64_t k = 0; k < per; ++k) {
      ZQElement y = random_zq(ctx.rng, ctx.config);
      if (k % 2 == 0) {
        mpz_class l = 1;
        for (const ZQElement& g : gens) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), g.a.get_mpz_t());
        y.a = l * uniform(ctx.rng, -3, 3);
      }
      ys.push_back(y);
    }
    if (auto why = zq_intersect_case(gens, ys)) {
      return tier_fail("thm2.8.intersect", "zq", run,
                       json{{"gens", zq_literals(gens)}, {"ys", zq_literals(ys)}}, *why);
    }
  }
  return finish(run, std::to_string(run) + " lists with a_i ≠ 0: ∩ R(a_i,e_i) = (∩ a_i Z) ∝ Q, " +
                         "with " + std::to_string(per) + " sampled memberships each");
}

std::optional<std::string> replay_thm28_intersect(const RingSpec&, const std::string&,
                                                  const json& data) {
  std::vector<ZQElement> gens = parse_zq_list(data.at("gens"));
  if (gens.empty()) return std::nullopt;
  return zq_intersect_case(gens, parse_zq_list(data.at("ys")));
}

// -------------------------------------------------------------- thm2.8.nonfc

std::optional<std::string> nonfc_case(const std::vector<ZQElement>& candidate) {
  ZQIdealResult ann = zq_annihilator(zq_make(0, 1));
  const auto* fl = std::get_if<ZQFlagged>(&ann);
  if (!fl || !(fl->value == ZQFractional::zero_full())) {
    return "(0:(0,1)) = " + zq_format(ann) + ", expected 0 ∝ Q flagged not finitely generated";
  }
  std::vector<mpq_class> qs;
  for (const ZQElement& c : candidate) {
    if (c.a != 0 || !zq_is_zero(zq_mul(zq_make(0, 1), c))) return std::nullopt;
    qs.push_back(c.q);
  }
  mpq_class g = rational_lattice_gcd(qs);
  ZQElement missing{0, g == 0 ? mpq_class(1) : mpq_class(g / 2)};
  if (!zq_is_zero(zq_mul(zq_make(0, 1), missing))) return "(0, g/2) is not in (0:(0,1))";
  if (generated_contains(candidate, missing)) {
    return "the list generates " + zq_literal(missing) + ", so it might generate (0:(0,1))";
  }
  return std::nullopt;
}

Outcome run_thm28_nonfc(CheckContext& ctx) {
  std::uint64_t run = 0;
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    ++run;
    const std::size_t n = static_cast<std::size_t>(uniform(ctx.rng, 1, 4));
    std::vector<ZQElement> candidate = random_list(ctx.rng, ctx.config, n, true);
    if (auto why = nonfc_case(candidate)) {
      return tier_fail("thm2.8.nonfc", "zq", run, json{{"gens", zq_literals(candidate)}}, *why);
    }
  }
  return finish(run, "(0:(0,1)) = 0 ∝ Q is flagged not finitely generated; each of " +
                         std::to_string(run) + " candidate lists (0,q_i) misses (0, g/2) " +
                         "with g the generator of Σ Z q_i");
}

std::optional<std::string> replay_thm28_nonfc(const RingSpec&, const std::string&, const json& data) {
  return nonfc_case(parse_zq_list(data.at("gens")));
}

// ------------------------------------------------------------- thm2.8.vfinite

std::optional<std::string> vfinite_case(const std::vector<ZQElement>& gens,
                                        const std::vector<ZQFraction>& ys) {
  ZQIdealNF nf = zq_ideal_nf(gens);
  std::vector<ZQElement> w = zq_v_finite_witness(ZQIdealResult{nf});
  ZQFractional inv = zq_inverse(zq_fractional(nf));
  ZQFractional winv = zq_inverse(zq_fractional(zq_ideal_nf(w)));
  if (!(inv == winv)) {
    return "witness inverse " + zq_format(winv) + " differs from " + zq_format(inv);
  }
  for (const ZQFraction& y : ys) {
    if (inverse_contains(gens, y) != inverse_contains(w, y)) {
      return "y = " + fraction_literal(y) + " separates I⁻¹ from the witness inverse";
    }
  }
  return std::nullopt;
}

std::optional<std::string> flagged_vfinite_case(const ZQElement& x) {
  ZQIdealResult ann = zq_annihilator(x);
  if (!std::holds_alternative<ZQFlagged>(ann)) return std::nullopt;
  std::vector<ZQElement> w = zq_v_finite_witness(ann);
  ZQFractional inv = zq_inverse(std::get<ZQFlagged>(ann).value);
  ZQFractional winv = zq_inverse(zq_fractional(zq_ideal_nf(w)));
  if (inv == winv) return std::nullopt;
  return "(0:" + zq_literal(x) + ") has inverse " + zq_format(inv) + " but its witness gives " +
         zq_format(winv);
}

Outcome run_thm28_vfinite(CheckContext& ctx) {
  std::uint64_t run = 0, flagged = 0;
  const std::uint64_t per = std::max<std::uint64_t>(1, ctx.config.samples / 10);
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    ++run;
    const std::size_t n = static_cast<std::size_t>(uniform(ctx.rng, 1, 3));
    std::vector<ZQElement> gens = nonzero_list(ctx.rng, ctx.config, n, s % 3 == 2);
    std::vector<ZQFraction> ys;
    for (std::uint64_t k = 0; k < per; ++k) ys.push_back(random_fraction(ctx.rng, ctx.config));
    if (auto why = vfinite_case(gens, ys)) {
      json yl = json::array();
      for (const ZQFraction& y : ys) yl.push_back(fraction_literal(y));
      return tier_fail("thm2.8.vfinite", "zq", run, json{{"gens", zq_literals(gens)}, {"ys", yl}},
                       *why);
    }
    ZQElement x = random_zq(ctx.rng, ctx.config, true);
    if (!zq_is_zero(x)) ++flagged;
    if (auto why = flagged_vfinite_case(x)) {
      return tier_fail("thm2.8.vfinite", "zq", run, json{{"x", zq_literal(x)}}, *why);
    }
  }
  return finish(run, std::to_string(run) + " finitely generated ideals and " +
                         std::to_string(flagged) + " flagged annihilators 0 ∝ Q have finitely " +
                         "generated J with J⁻¹ = I⁻¹, confirmed on " + std::to_string(per) +
                         " sampled fractions each");
}

std::optional<std::string> replay_thm28_vfinite(const RingSpec&, const std::string&,
                                                const json& data) {
  if (data.contains("x")) return flagged_vfinite_case(parse_zq_element(str(data, "x")));
  std::vector<ZQElement> gens = parse_zq_list(data.at("gens"));
  if (zq_ideal_nf(gens).is_zero()) return std::nullopt;
  std::vector<ZQFraction> ys;
  for (const json& y : data.at("ys")) ys.push_back(parse_fraction(y.get<std::string>()));
  return vfinite_case(gens, ys);
}

// -------------------------------------------------------------- prop2.2.chain

// I₁ and J₁ are finitely generated with I₁⁻¹ = I_v and J₁⁻¹ = J_v.  The
// chain is I_v ∩ J_v = (I⁻¹ + J⁻¹)⁻¹ = ((I₁)_v + (J₁)_v)⁻¹
// = ((I₁)_v)⁻¹ ∩ ((J₁)_v)⁻¹ = I₁⁻¹ ∩ J₁⁻¹ = (I₁ + J₁)⁻¹, and each link is
// evaluated on its own.
template <class T>
std::optional<std::string> chain_links(const std::vector<T>& links,
                                       const std::function<std::string(const T&)>& show) {
  static const char* names[] = {"I_v ∩ J_v", "(I⁻¹ + J⁻¹)⁻¹", "((I₁)_v + (J₁)_v)⁻¹",
                                "((I₁)_v)⁻¹ ∩ ((J₁)_v)⁻¹", "I₁⁻¹ ∩ J₁⁻¹", "(I₁ + J₁)⁻¹"};
  for (std::size_t k = 1; k < links.size(); ++k) {
    if (!(links[k] == links[0])) {
      return std::string(names[k]) + " = " + show(links[k]) + " differs from " + names[0] + " = " +
             show(links[0]);
    }
  }
  return std::nullopt;
}

std::optional<std::string> finite_chain(const Ideal& i, const Ideal& j) {
  Ideal i1 = v_finite_witness_finite(inverse_finite(i));
  Ideal j1 = v_finite_witness_finite(inverse_finite(j));
  if (!(inverse_finite(i1) == v_closure_finite(i)) || !(inverse_finite(j1) == v_closure_finite(j))) {
    return "no finitely generated I₁ with I₁⁻¹ = I_v for I = " + i.format();
  }
  std::vector<Ideal> links = {
      intersect(v_closure_finite(i), v_closure_finite(j)),
      inverse_finite(sum(inverse_finite(i), inverse_finite(j))),
      inverse_finite(sum(v_closure_finite(i1), v_closure_finite(j1))),
      intersect(inverse_finite(v_closure_finite(i1)), inverse_finite(v_closure_finite(j1))),
      intersect(inverse_finite(i1), inverse_finite(j1)),
      inverse_finite(sum(i1, j1)),
  };
  auto why = chain_links<Ideal>(links, [](const Ideal& x) { return x.format(); });
  if (!why) return std::nullopt;
  return i.ring()->label() + ": I = " + i.format() + ", J = " + j.format() + ": " + *why;
}

std::optional<std::string> zq_chain(const std::vector<ZQElement>& gi,
                                    const std::vector<ZQElement>& gj) {
  ZQIdealNF i = zq_ideal_nf(gi), j = zq_ideal_nf(gj);
  ZQFractional fi = zq_fractional(i), fj = zq_fractional(j);
  std::vector<ZQFractional> links = {
      zq_intersect(zq_v_closure(fi), zq_v_closure(fj)),
      zq_inverse(zq_sum(zq_inverse(fi), zq_inverse(fj))),
  };
  // I⁻¹ is finitely generated exactly when I is a line dZ ∝ Q; then I₁ = I⁻¹
  // satisfies I₁⁻¹ = I_v.
  ZQFractional i1 = zq_inverse(fi), j1 = zq_inverse(fj);
  if (zq_is_fg(i1) && zq_is_fg(j1)) {
    if (!(zq_inverse(i1) == zq_v_closure(fi)) || !(zq_inverse(j1) == zq_v_closure(fj))) {
      return "I₁ = I⁻¹ = " + zq_format(i1) + " does not satisfy I₁⁻¹ = I_v";
    }
    links.push_back(zq_inverse(zq_sum(zq_v_closure(i1), zq_v_closure(j1))));
    links.push_back(zq_intersect(zq_inverse(zq_v_closure(i1)), zq_inverse(zq_v_closure(j1))));
    links.push_back(zq_intersect(zq_inverse(i1), zq_inverse(j1)));
    links.push_back(zq_inverse(zq_sum(i1, j1)));
  }
  auto why = chain_links<ZQFractional>(links, [](const ZQFractional& x) { return zq_format(x); });
  if (!why) return std::nullopt;
  return "I = " + zq_format(i) + ", J = " + zq_format(j) + ": " + *why;
}

Outcome run_prop22(CheckContext& ctx) {
  std::uint64_t rings = 0, finite_pairs = 0, zq_pairs = 0, chains = 0, sampled = 0;
  for (std::size_t k = 0; k < ctx.suite.instances.size(); ++k) {
    const Instance& inst = ctx.suite.instances[k];
    std::vector<const Ideal*> nonzero;
    for (const Ideal& i : ctx.suite.ideals(k).ideals) {
      if (!i.is_zero()) nonzero.push_back(&i);
    }
    if (nonzero.empty()) continue;
    ++rings;
    if (!ctx.suite.ideals(k).exhaustive) ++sampled;
    std::uniform_int_distribution<std::size_t> pick(0, nonzero.size() - 1);
    for (std::uint64_t p = 0; p < ctx.config.pairs; ++p) {
      const Ideal& i = *nonzero[pick(ctx.rng)];
      const Ideal& j = *nonzero[pick(ctx.rng)];
      ++finite_pairs;
      if (auto why = finite_chain(i, j)) {
        json data{{"i", literals(i.gens())}, {"j", literals(j.gens())}};
        return counterexample(rings, finite_witness("prop2.2.chain", inst, {data, *why}), *why);
      }
    }
  }
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    std::vector<ZQElement> gi = nonzero_list(ctx.rng, ctx.config, 2, s % 4 == 1);
    std::vector<ZQElement> gj = nonzero_list(ctx.rng, ctx.config, 2, s % 4 == 2);
    ++zq_pairs;
    if (zq_is_fg(zq_inverse(zq_fractional(zq_ideal_nf(gi)))) &&
        zq_is_fg(zq_inverse(zq_fractional(zq_ideal_nf(gj))))) {
      ++chains;
    }
    if (auto why = zq_chain(gi, gj)) {
      return tier_fail("prop2.2.chain", "zq", rings + zq_pairs,
                       json{{"i", zq_literals(gi)}, {"j", zq_literals(gj)}}, *why);
    }
  }
  std::ostringstream os;
  os << finite_pairs << " ideal pairs over " << rings << " finite rings and " << zq_pairs
     << " pairs in Z ∝ Q satisfy I_v ∩ J_v = (I⁻¹ + J⁻¹)⁻¹; the full chain down to (I₁ + J₁)⁻¹ "
     << "with I₁⁻¹ = I_v holds on every finite pair and on the " << chains
     << " pairs in Z ∝ Q where I⁻¹ and J⁻¹ are finitely generated" << sampling_note(sampled);
  return finish(rings + zq_pairs, os.str());
}

std::optional<std::string> replay_prop22(const RingSpec& spec, const std::string& ring,
                                         const json& data) {
  Workspace ws = realize(spec);
  const RealRing& r = ws.ring(ring);
  if (r.tier == RealRing::Tier::ZQ) {
    return zq_chain(parse_zq_list(data.at("i")), parse_zq_list(data.at("j")));
  }
  if (r.tier != RealRing::Tier::Finite) throw SpecError("witness: unsupported ring tier");
  Ideal i = Ideal::generated(r.finite, parse_literals(*r.finite, data.at("i")));
  Ideal j = Ideal::generated(r.finite, parse_literals(*r.finite, data.at("j")));
  if (i.is_zero() || j.is_zero()) return std::nullopt;
  return finite_chain(i, j);
}

// ------------------------------------------------------------- prop3.5.bezout

std::optional<std::string> bezout_case(const std::vector<ZQElement>& gens,
                                       const std::vector<ZQElement>& ys) {
  ZQIdealNF nf = zq_ideal_nf(gens);
  ZQPrincipal p = zq_is_principal(nf);
  if (!p.principal || !p.generator) return zq_format(nf) + " is reported not principal";
  if (!(zq_ideal_nf({*p.generator}) == nf)) {
    return "the generator " + zq_literal(*p.generator) + " does not generate " + zq_format(nf);
  }
  for (const ZQElement& y : ys) {
    bool by_nf = zq_contains(nf, y);
    bool by_gens = generated_contains(gens, y);
    bool by_gen = generated_contains({*p.generator}, y);
    if (by_nf != by_gens || by_gens != by_gen) {
      std::ostringstream os;
      os << zq_literal(y) << ": normal form says " << by_nf << ", generators say " << by_gens
         << ", R" << zq_literal(*p.generator) << " says " << by_gen;
      return os.str();
    }
  }
  return std::nullopt;
}

Outcome run_prop35(CheckContext& ctx) {
  std::uint64_t run = 0, members = 0;
  std::map<std::string, int> kinds;
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    ++run;
    std::vector<ZQElement> gens = random_list(ctx.rng, ctx.config, 2, s % 4 == 3);
    std::vector<ZQElement> ys;
    for (std::uint64_t k = 0; k < ctx.config.samples; ++k) {
      ys.push_back(sample_near(ctx.rng, ctx.config, gens));
    }
    ZQIdealNF nf = zq_ideal_nf(gens);
    kinds[nf.kind == ZQIdealNF::Kind::FullLine ? "dZ ∝ Q" : "0 ∝ gZ"] += 1;
    for (const ZQElement& y : ys) members += zq_contains(nf, y) ? 1 : 0;
    if (auto why = bezout_case(gens, ys)) {
      return tier_fail("prop3.5.bezout", "zq", run,
                       json{{"gens", zq_literals(gens)}, {"ys", zq_literals(ys)}}, *why);
    }
  }
  std::ostringstream os;
  os << run << " two-generated ideals are principal (" << kinds["dZ ∝ Q"] << " of the form dZ ∝ Q, "
     << kinds["0 ∝ gZ"] << " of the form 0 ∝ gZ); normal-form, generator and principal-generator "
     << "membership agree on " << ctx.config.samples << " samples each (" << members
     << " members in total)";
  return finish(run, os.str());
}

std::optional<std::string> replay_prop35(const RingSpec&, const std::string&, const json& data) {
  return bezout_case(parse_zq_list(data.at("gens")), parse_zq_list(data.at("ys")));
}

// ------------------------------------------------------- lem3.2 / lem3.3

/// Rank over Q by plain Gaussian elimination.
std::size_t rank_q(std::vector<std::vector<mpq_class>> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == rank || rows[r][c] == 0) continue;
      mpq_class f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::vector<mpq_class> to_q(const std::vector<mpz_class>& v) {
  return std::vector<mpq_class>(v.begin(), v.end());
}

bool in_q_span(const std::vector<std::vector<mpq_class>>& rows, const std::vector<mpq_class>& v) {
  std::vector<std::vector<mpq_class>> more = rows;
  more.push_back(v);
  return rank_q(more) == rank_q(rows);
}

/// E = Σ A e_i + KU is a Q-space iff every e_i lies in KU.
bool e_is_q_space(const std::vector<ZQVector>& gens) {
  std::vector<std::vector<mpq_class>> xs;
  for (const ZQVector& g : gens) xs.push_back(to_q(g.u));
  return std::all_of(gens.begin(), gens.end(), [&](const ZQVector& g) { return in_q_span(xs, g.e); });
}

/// Lattice points of Σ Z x_i inside the box [-w, w]^m, found by walking
/// ±x_i steps without leaving the box.  For targets with |t| ≤ T and
/// generators with entries at most X, w = 2m·max(T, X) suffices: a
/// Steinitz rearrangement of any representation keeps partial sums within
/// that bound.
class BoxLattice {
 public:
  BoxLattice(std::size_t m, const std::vector<std::vector<long>>& gens, long w)
      : m_(m), w_(w), side_(2 * w + 1), seen_(static_cast<std::size_t>(ipow(side_, m)), 0) {
    std::vector<long> origin(m, 0);
    std::vector<std::size_t> queue{index(origin)};
    seen_[queue[0]] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      std::vector<long> p = point(queue[head]);
      for (const std::vector<long>& g : gens) {
        for (long sign : {1L, -1L}) {
          std::vector<long> q(m);
          bool inside = true;
          for (std::size_t i = 0; i < m; ++i) {
            q[i] = p[i] + sign * g[i];
            if (q[i] < -w || q[i] > w) inside = false;
          }
          if (!inside) continue;
          std::size_t qi = index(q);
          if (!seen_[qi]) {
            seen_[qi] = 1;
            queue.push_back(qi);
          }
        }
      }
    }
  }

  bool contains(const std::vector<long>& t) const {
    for (long x : t) {
      if (x < -w_ || x > w_) throw std::logic_error("target outside the lattice window");
    }
    return seen_[index(t)] != 0;
  }

 private:
  static long ipow(long b, std::size_t e) {
    long r = 1;
    while (e-- > 0) r *= b;
    return r;
  }
  std::size_t index(const std::vector<long>& p) const {
    std::size_t idx = 0;
    for (long x : p) idx = idx * static_cast<std::size_t>(side_) + static_cast<std::size_t>(x + w_);
    return idx;
  }
  std::vector<long> point(std::size_t idx) const {
    std::vector<long> p(m_);
    for (std::size_t i = m_; i-- > 0;) {
      p[i] = static_cast<long>(idx % static_cast<std::size_t>(side_)) - w_;
      idx /= static_cast<std::size_t>(side_);
    }
    return p;
  }

  std::size_t m_;
  long w_;
  long side_;
  std::vector<char> seen_;
};

constexpr long kTargetBound = 3;

struct Submodule3 {
  std::size_t m = 1;
  std::vector<ZQVector> gens;
};

json submodule_json(const Submodule3& h) {
  json gens = json::array();
  for (const ZQVector& g : h.gens) {
    json u = json::array(), e = json::array();
    for (const mpz_class& x : g.u) u.push_back(x.get_str());
    for (const mpq_class& x : g.e) e.push_back(x.get_str());
    gens.push_back(json{{"u", u}, {"e", e}});
  }
  return json{{"m", h.m}, {"gens", gens}};
}

Submodule3 submodule_from_json(const json& data) {
  Submodule3 h;
  h.m = data.at("m").get<std::size_t>();
  for (const json& g : data.at("gens")) {
    ZQVector v;
    for (const json& x : g.at("u")) v.u.emplace_back(x.get<std::string>());
    for (const json& x : g.at("e")) {
      mpq_class q(x.get<std::string>());
      q.canonicalize();
      v.e.push_back(q);
    }
    if (v.u.size() != h.m || v.e.size() != h.m) throw SpecError("witness: vector length mismatch");
    h.gens.push_back(v);
  }
  if (h.gens.empty()) throw SpecError("witness: empty generator list");
  return h;
}

Submodule3 random_submodule(Rng& rng, const VerifyConfig& c, std::uint64_t s) {
  Submodule3 h;
  h.m = static_cast<std::size_t>(s % 3 + 1);
  const std::size_t p = static_cast<std::size_t>(uniform(rng, 1, 3));
  for (std::size_t i = 0; i < p; ++i) {
    ZQVector v;
    for (std::size_t k = 0; k < h.m; ++k) v.u.emplace_back(uniform(rng, -3, 3));
    h.gens.push_back(v);
  }
  const bool in_span = s % 2 == 0;
  for (ZQVector& v : h.gens) {
    v.e.assign(h.m, 0);
    if (in_span) {
      for (const ZQVector& w : h.gens) {
        mpq_class coef = random_rational(rng, c);
        for (std::size_t k = 0; k < h.m; ++k) v.e[k] += coef * w.u[k];
      }
    } else {
      for (std::size_t k = 0; k < h.m; ++k) v.e[k] = random_rational(rng, c);
    }
  }
  return h;
}

ZQVector random_vector_sample(Rng& rng, const VerifyConfig& c, const Submodule3& h) {
  ZQVector v;
  if (uniform(rng, 0, 1) == 0) {
    // Small combination of the generators with a rational E-part in KU.
    for (int attempt = 0; attempt < 20; ++attempt) {
      v.u.assign(h.m, 0);
      v.e.assign(h.m, 0);
      for (const ZQVector& g : h.gens) {
        long b = static_cast<long>(uniform(rng, -1, 1));
        mpq_class t = random_rational(rng, c);
        for (std::size_t k = 0; k < h.m; ++k) {
          v.u[k] += b * g.u[k];
          v.e[k] += t * g.u[k];
        }
      }
      bool small = std::all_of(v.u.begin(), v.u.end(),
                               [](const mpz_class& x) { return abs(x) <= kTargetBound; });
      if (small) return v;
    }
  }
  v.u.clear();
  v.e.clear();
  for (std::size_t k = 0; k < h.m; ++k) {
    v.u.emplace_back(uniform(rng, -kTargetBound, kTargetBound));
    v.e.push_back(random_rational(rng, c));
  }
  return v;
}

std::optional<std::string> split_case(const Submodule3& h, const std::vector<ZQVector>& samples) {
  ZQSubmoduleNF nf = zq_submodule_nf(h.m, h.gens);
  bool oracle = e_is_q_space(h.gens);
  if (nf.split() != oracle) {
    return zq_format(nf) + ": split verdict " + (nf.split() ? "true" : "false") +
           " but E is " + (oracle ? "" : "not ") + "a Q-space";
  }
  if (!nf.split()) return std::nullopt;
  long x = kTargetBound;
  std::vector<std::vector<long>> gl;
  std::vector<std::vector<mpq_class>> span;
  for (const ZQVector& g : h.gens) {
    std::vector<long> v;
    for (const mpz_class& c : g.u) {
      v.push_back(c.get_si());
      x = std::max(x, std::labs(c.get_si()));
    }
    gl.push_back(v);
    span.push_back(to_q(g.u));
  }
  BoxLattice lattice(h.m, gl, static_cast<long>(2 * h.m) * x);
  for (const ZQVector& w : samples) {
    std::vector<long> t;
    for (const mpz_class& c : w.u) t.push_back(c.get_si());
    bool expected = lattice.contains(t) && in_q_span(span, w.e);
    if (zq_split_contains(nf, w) != expected) {
      std::ostringstream os;
      os << zq_format(nf) << ": membership of a sample disagrees with U ∝ KU (expected "
         << expected << ")";
      return os.str();
    }
  }
  return std::nullopt;
}

Outcome run_lemma32(CheckContext& ctx) {
  std::uint64_t run = 0, split = 0, samples = 0;
  for (std::uint64_t s = 0; s < ctx.config.submodules; ++s) {
    ++run;
    Submodule3 h = random_submodule(ctx.rng, ctx.config, s);
    std::vector<ZQVector> ws;
    for (int k = 0; k < 20; ++k) ws.push_back(random_vector_sample(ctx.rng, ctx.config, h));
    if (e_is_q_space(h.gens)) {
      ++split;
      samples += ws.size();
    }
    if (auto why = split_case(h, ws)) {
      json data = submodule_json(h);
      json wl = json::array();
      for (const ZQVector& w : ws) wl.push_back(submodule_json(Submodule3{h.m, {w}})["gens"][0]);
      data["samples"] = wl;
      return tier_fail("lem3.2.split", "zq", run, data, *why);
    }
  }
  std::ostringstream os;
  os << run << " submodules of R^1..R^3: the Split verdict matches the residue criterion on all; "
     << split << " split ones agree with U ∝ KU on " << samples << " sampled memberships";
  return finish(run, os.str());
}

std::optional<std::string> replay_lemma32(const RingSpec&, const std::string&, const json& data) {
  Submodule3 h = submodule_from_json(data);
  std::vector<ZQVector> ws;
  if (data.contains("samples")) {
    for (const json& w : data["samples"]) ws.push_back(submodule_from_json(json{{"m", h.m}, {"gens", {w}}}).gens[0]);
  }
  return split_case(h, ws);
}

std::optional<std::string> presented_case(const Submodule3& h) {
  ZQSubmoduleNF nf = zq_submodule_nf(h.m, h.gens);
  for (std::size_t n = 1; n <= 3; ++n) {
    // U ⊆ Z^m is free of finite rank, so it is n-presented; the stated
    // criterion reduces to the split test.
    bool lemma = nf.split();
    bool actual = zq_is_n_presented(nf, n);
    if (lemma != actual) {
      std::ostringstream os;
      os << zq_format(nf) << " is " << (actual ? "" : "not ") << n << "-presented but "
         << (nf.split() ? "split" : "not split");
      if (h.gens.size() == 1 && std::any_of(h.gens[0].u.begin(), h.gens[0].u.end(),
                                            [](const mpz_class& c) { return c != 0; })) {
        os << "; H = Rh with u(h) ≠ 0 has (a,f)h = 0 only for (a,f) = 0, so H ≅ R is free";
      }
      return os.str();
    }
  }
  return std::nullopt;
}

Outcome run_lemma33(CheckContext& ctx) {
  std::vector<Submodule3> fixed = {
      Submodule3{1, {ZQVector{{0}, {1}}}},
      Submodule3{2, {ZQVector{{1, 0}, {0, 1}}}},
  };
  std::uint64_t run = 0;
  std::string cyclic_note;
  {
    ZQSubmoduleNF nf = zq_submodule_nf(1, fixed[0].gens);
    cyclic_note = std::string("R(0,1) ⊆ R is finitely generated and ") +
                  (zq_is_n_presented(nf, 1) ? "1-presented" : "not 1-presented");
  }
  for (std::uint64_t s = 0; s < fixed.size() + ctx.config.submodules; ++s) {
    ++run;
    Submodule3 h = s < fixed.size() ? fixed[s] : random_submodule(ctx.rng, ctx.config, s);
    if (auto why = presented_case(h)) {
      return tier_fail("lem3.3.present", "zq", run, submodule_json(h), cyclic_note + "; " + *why);
    }
  }
  return finish(run, cyclic_note + "; n-presentation matches the split criterion on " +
                         std::to_string(run) + " submodules for n = 1..3");
}

std::optional<std::string> replay_lemma33(const RingSpec&, const std::string&, const json& data) {
  return presented_case(submodule_from_json(data));
}

// ---------------------------------------------------------------- ex3.4.regann

std::optional<std::string> regann_case(const ZQElement& x, const std::vector<ZQElement>& ys) {
  if (!zq_is_regular(x)) return zq_literal(x) + " is not reported regular";
  ZQIdealResult ann = zq_annihilator(x);
  const auto* nf = std::get_if<ZQIdealNF>(&ann);
  if (!nf || !nf->is_zero()) return "ann(R" + zq_literal(x) + ") = " + zq_format(ann);
  for (const ZQElement& y : ys) {
    if (zq_is_zero(zq_mul(x, y)) && !zq_is_zero(y)) {
      return zq_literal(y) + " kills " + zq_literal(x);
    }
  }
  return std::nullopt;
}

Outcome run_ex34(CheckContext& ctx) {
  std::uint64_t run = 0;
  const std::uint64_t per = std::max<std::uint64_t>(1, ctx.config.samples / 10);
  for (std::uint64_t s = 0; s < ctx.config.zq_lists; ++s) {
    ZQElement x = random_zq(ctx.rng, ctx.config);
    if (x.a == 0) continue;
    x.q = 0;
    ++run;
    std::vector<ZQElement> ys;
    for (std::uint64_t k = 0; k < per; ++k) ys.push_back(random_zq(ctx.rng, ctx.config, k % 2 == 0));
    if (auto why = regann_case(x, ys)) {
      return tier_fail("ex3.4.regann", "zq", run, json{{"x", zq_literal(x)}, {"ys", zq_literals(ys)}},
                       *why);
    }
  }
  return finish(run, std::to_string(run) + " elements (a,0), a ≠ 0: regular, ann(R(a,0)) = 0, " +
                         "no sampled element kills them");
}

std::optional<std::string> replay_ex34(const RingSpec&, const std::string&, const json& data) {
  ZQElement x = parse_zq_element(str(data, "x"));
  if (x.a == 0) return std::nullopt;
  return regann_case(x, parse_zq_list(data.at("ys")));
}

CheckDef def(std::string id, std::string anchor, std::string tier,
             std::function<Outcome(CheckContext&)> run, ReplayFn replay) {
  return CheckDef{CheckInfo{std::move(id), std::move(anchor), std::move(tier), false},
                  std::move(run), std::move(replay)};
}

}  // namespace

void register_tier_checks(std::vector<CheckDef>& defs) {
  defs.push_back(def("ex2.3.regular", "Z × ⊕F₂: s regular iff s = (a,0) with a odd", "uze",
                     run_ex23_regular, replay_ex23_regular));
  defs.push_back(def("ex2.3.ann", "Z × ⊕F₂: (0:(2,0)) = 0 × E, not finitely generated", "uze",
                     run_ex23_ann, replay_ex23_ann));
  defs.push_back(def("ex2.3.inv", "Z × ⊕F₂: J⁻¹ = Q(R) if I = 0, else J⁻¹ = (R(x,0))⁻¹", "uze",
                     run_ex23_inv, replay_ex23_inv));
  defs.push_back(def("thm2.8.ann", "Z ∝ Q: (0:(0,e)) = 0 ∝ Q, (a,e) regular iff a ≠ 0", "zq",
                     run_thm28_ann, replay_thm28_ann));
  defs.push_back(def("thm2.8.inv", "Z ∝ Q: (I ∝ E)⁻¹ = I⁻¹ ∝ K = (I ∝ IK)⁻¹", "zq", run_thm28_inv,
                     replay_thm28_inv));
  defs.push_back(def("thm2.8.intersect", "Z ∝ Q: ∩ R(a_i,e_i) = (∩ Ra_i) ∝ K for a_i ≠ 0", "zq",
                     run_thm28_intersect, replay_thm28_intersect));
  defs.push_back(def("thm2.8.nonfc", "Z ∝ Q: (0:(0,1)) = 0 ∝ K is not finitely generated", "zq",
                     run_thm28_nonfc, replay_thm28_nonfc));
  defs.push_back(def("thm2.8.vfinite", "Z ∝ Q: every finitely generated ideal and (0:c) is v-finite",
                     "zq", run_thm28_vfinite, replay_thm28_vfinite));
  defs.push_back(def("prop2.2.chain", "I_v ∩ J_v = (I⁻¹ + J⁻¹)⁻¹ = (I₁ + J₁)⁻¹", "mixed",
                     run_prop22, replay_prop22));
  defs.push_back(def("prop3.5.bezout", "A ∝ K is Bézout iff A is a Bézout domain (A = Z)", "zq",
                     run_prop35, replay_prop35));
  defs.push_back(def("lem3.2.split", "H finitely generated with E a K-space iff H = U ∝ KU", "zq",
                     run_lemma32, replay_lemma32));
  defs.push_back(def("lem3.3.present", "H n-presented iff U n-presented and H = U ∝ KU", "zq",
                     run_lemma33, replay_lemma33));
  defs.push_back(def("ex3.4.regann", "a regular element generates an ideal with no nonzero annihilator",
                     "zq", run_ex34, replay_ex34));
}

}  // namespace trivext::detail
