#include "trivext/zq.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "trivext/errors.hpp"

namespace trivext {

ZQElement zq_make(long a, long num, long den) {
  if (den == 0) throw AlgebraError("zq_make: zero denominator");
  mpq_class q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return {mpz_class(a), q};
}

ZQElement zq_add(const ZQElement& x, const ZQElement& y) { return {x.a + y.a, x.q + y.q}; }
ZQElement zq_sub(const ZQElement& x, const ZQElement& y) { return {x.a - y.a, x.q - y.q}; }

ZQElement zq_mul(const ZQElement& x, const ZQElement& y) {
  return {x.a * y.a, x.a * y.q + y.a * x.q};
}

ZQFraction zq_mul(const ZQFraction& x, const ZQFraction& y) {
  return {x.a * y.a, x.a * y.q + y.a * x.q};
}

ZQFraction zq_lift(const ZQElement& x) { return {mpq_class(x.a), x.q}; }

bool zq_is_zero(const ZQElement& x) { return x.a == 0 && x.q == 0; }

bool zq_is_regular(const ZQElement& x) { return x.a != 0; }

std::optional<ZQElement> zq_zero_divisor_witness(const ZQElement& x) {
  if (zq_is_regular(x)) return std::nullopt;
  return ZQElement{0, 1};
}

namespace {

std::string rat(const mpq_class& q) { return q.get_str(); }

// "Z", "2Z" or "(1/2)Z"
std::string lattice_name(const mpq_class& c) {
  if (c == 1) return "Z";
  if (c.get_den() == 1) return c.get_str() + "Z";
  return "(" + c.get_str() + ")Z";
}

}  // namespace

std::string zq_format(const ZQElement& x) {
  return "(" + x.a.get_str() + "," + rat(x.q) + ")";
}

std::string zq_format(const ZQFraction& x) { return "(" + rat(x.a) + "," + rat(x.q) + ")"; }

mpq_class rational_lattice_gcd(const std::vector<mpq_class>& qs) {
  mpz_class den = 1;
  for (const mpq_class& q : qs) {
    if (q != 0) den = lcm(den, q.get_den());
  }
  mpz_class g = 0;
  for (const mpq_class& q : qs) {
    mpq_class scaled = q * den;
    g = gcd(g, scaled.get_num());
  }
  mpq_class out(g, den);
  out.canonicalize();
  return out;
}

mpq_class rational_lattice_lcm(const mpq_class& c, const mpq_class& d) {
  if (c == 0 || d == 0) throw AlgebraError("rational_lattice_lcm: zero argument");
  mpq_class ac = abs(c);
  mpq_class ad = abs(d);
  mpq_class out(lcm(ac.get_num(), ad.get_num()), gcd(ac.get_den(), ad.get_den()));
  out.canonicalize();
  return out;
}

ZQIdealNF ZQIdealNF::zero_line(const mpq_class& g) {
  if (g < 0) throw AlgebraError("ZeroLine generator must be non-negative");
  ZQIdealNF nf;
  nf.kind = Kind::ZeroLine;
  nf.g = g;
  return nf;
}

ZQIdealNF ZQIdealNF::full_line(const mpz_class& d) {
  if (d < 1) throw AlgebraError("FullLine generator must be positive");
  ZQIdealNF nf;
  nf.kind = Kind::FullLine;
  nf.d = d;
  return nf;
}

ZQFractional ZQFractional::scaled_line(const mpq_class& c) {
  if (c <= 0) throw AlgebraError("ScaledLine needs a positive scale");
  return {Kind::ScaledLine, c};
}

ZQFractional ZQFractional::zero_scaled(const mpq_class& c) {
  if (c <= 0) throw AlgebraError("ZeroScaled needs a positive scale");
  return {Kind::ZeroScaled, c};
}

ZQIdealNF zq_ideal_nf(const std::vector<ZQElement>& gens) {
  mpz_class d = 0;
  for (const ZQElement& x : gens) d = gcd(d, x.a);
  // R(a, e) = aZ ∝ Q as soon as a ≠ 0, which absorbs every e-part.
  if (d != 0) return ZQIdealNF::full_line(d);
  std::vector<mpq_class> qs;
  for (const ZQElement& x : gens) qs.push_back(x.q);
  return ZQIdealNF::zero_line(rational_lattice_gcd(qs));
}

namespace {

bool in_lattice(const mpq_class& x, const mpq_class& c) {
  if (c == 0) return x == 0;
  mpq_class r = x / c;
  return r.get_den() == 1;
}

// One coordinate of a product ideal A × E: 0, cZ or Q.
struct Part {
  enum class Kind { Zero, Lattice, Full };
  Kind kind = Kind::Zero;
  mpq_class c = 0;
};

Part a_part(const ZQFractional& f) {
  switch (f.kind) {
    case ZQFractional::Kind::ScaledLine: return {Part::Kind::Lattice, f.c};
    case ZQFractional::Kind::Total: return {Part::Kind::Full, 0};
    default: return {};
  }
}

Part e_part(const ZQFractional& f) {
  switch (f.kind) {
    case ZQFractional::Kind::Zero: return {};
    case ZQFractional::Kind::ZeroScaled: return {Part::Kind::Lattice, f.c};
    default: return {Part::Kind::Full, 0};
  }
}

bool part_contains(const Part& p, const mpq_class& x) {
  switch (p.kind) {
    case Part::Kind::Zero: return x == 0;
    case Part::Kind::Lattice: return in_lattice(x, p.c);
    case Part::Kind::Full: return true;
  }
  return false;
}

Part part_intersect(const Part& p, const Part& q) {
  if (p.kind == Part::Kind::Zero || q.kind == Part::Kind::Zero) return {};
  if (p.kind == Part::Kind::Full) return q;
  if (q.kind == Part::Kind::Full) return p;
  return {Part::Kind::Lattice, rational_lattice_lcm(p.c, q.c)};
}

Part part_sum(const Part& p, const Part& q) {
  if (p.kind == Part::Kind::Full || q.kind == Part::Kind::Full) return {Part::Kind::Full, 0};
  if (p.kind == Part::Kind::Zero) return q;
  if (q.kind == Part::Kind::Zero) return p;
  return {Part::Kind::Lattice, rational_lattice_gcd({p.c, q.c})};
}

ZQFractional assemble(const Part& a, const Part& e) {
  if (a.kind != Part::Kind::Zero && e.kind != Part::Kind::Full) {
    throw std::logic_error("fractional ideal with nonzero A-part must have E-part Q");
  }
  switch (a.kind) {
    case Part::Kind::Lattice: return ZQFractional::scaled_line(a.c);
    case Part::Kind::Full: return ZQFractional::total();
    case Part::Kind::Zero: break;
  }
  switch (e.kind) {
    case Part::Kind::Zero: return ZQFractional::zero();
    case Part::Kind::Lattice: return ZQFractional::zero_scaled(e.c);
    case Part::Kind::Full: return ZQFractional::zero_full();
  }
  return ZQFractional::zero();
}

ZQIdealNF require_integral_nf(const ZQFractional& f) {
  std::optional<ZQIdealNF> nf = zq_integral_nf(f);
  if (!nf) throw std::logic_error("expected a finitely generated integral ideal, got " +
                                  zq_format(f));
  return *nf;
}

ZQFlagged zero_full_flag(const std::string& why) {
  return {ZQFractional::zero_full(), "0 ∝ Q is not finitely generated (" + why + ")"};
}

}  // namespace

bool zq_contains(const ZQIdealNF& i, const ZQElement& x) {
  if (i.kind == ZQIdealNF::Kind::FullLine) return x.a % i.d == 0;
  return x.a == 0 && in_lattice(x.q, i.g);
}

bool zq_contains(const ZQFractional& f, const ZQFraction& x) {
  return part_contains(a_part(f), x.a) && part_contains(e_part(f), x.q);
}

ZQFractional zq_fractional(const ZQIdealNF& i) {
  if (i.kind == ZQIdealNF::Kind::FullLine) return ZQFractional::scaled_line(mpq_class(i.d));
  if (i.g == 0) return ZQFractional::zero();
  return ZQFractional::zero_scaled(i.g);
}

std::optional<ZQIdealNF> zq_integral_nf(const ZQFractional& f) {
  switch (f.kind) {
    case ZQFractional::Kind::Zero: return ZQIdealNF::zero();
    case ZQFractional::Kind::ScaledLine:
      if (f.c.get_den() != 1) return std::nullopt;
      return ZQIdealNF::full_line(f.c.get_num());
    case ZQFractional::Kind::ZeroScaled: return ZQIdealNF::zero_line(f.c);
    default: return std::nullopt;
  }
}

ZQFractional zq_intersect(const ZQFractional& f, const ZQFractional& g) {
  return assemble(part_intersect(a_part(f), a_part(g)), part_intersect(e_part(f), e_part(g)));
}

ZQFractional zq_sum(const ZQFractional& f, const ZQFractional& g) {
  return assemble(part_sum(a_part(f), a_part(g)), part_sum(e_part(f), e_part(g)));
}

ZQIdealNF zq_intersect(const ZQIdealNF& i, const ZQIdealNF& j) {
  return require_integral_nf(zq_intersect(zq_fractional(i), zq_fractional(j)));
}

ZQIdealNF zq_sum(const ZQIdealNF& i, const ZQIdealNF& j) {
  return require_integral_nf(zq_sum(zq_fractional(i), zq_fractional(j)));
}

ZQIdealResult zq_annihilator(const ZQElement& x) {
  if (zq_is_zero(x)) return ZQIdealNF::whole();
  if (x.a != 0) return ZQIdealNF::zero();
  return zero_full_flag("annihilator of " + zq_format(x));
}

ZQIdealResult zq_colon(const ZQIdealNF& i, const ZQIdealNF& j) {
  using K = ZQIdealNF::Kind;
  if (j.is_zero()) return ZQIdealNF::whole();
  if (j.kind == K::FullLine) {
    // x = (u, v): x(d', 0) = (ud', vd') and x(0, y) = (0, uy).
    if (i.kind == K::FullLine) return ZQIdealNF::full_line(i.d / gcd(i.d, j.d));
    mpq_class g = i.g / mpq_class(j.d);
    g.canonicalize();
    return ZQIdealNF::zero_line(g);
  }
  // J = 0 ∝ g'Z: x(0, g'm) = (0, ug'm).
  if (i.kind == K::FullLine) return ZQIdealNF::whole();
  if (i.g == 0) return zero_full_flag("colon of the zero ideal by " + zq_format(j));
  mpq_class ratio = i.g / j.g;
  ratio.canonicalize();
  return ZQIdealNF::full_line(ratio.get_num());
}

ZQFractional zq_inverse(const ZQFractional& f) {
  switch (f.kind) {
    case ZQFractional::Kind::Zero:
      throw AlgebraError("the v-operation is defined for nonzero ideals only");
    case ZQFractional::Kind::ScaledLine: {
      mpq_class inv = 1 / f.c;
      inv.canonicalize();
      return ZQFractional::scaled_line(inv);
    }
    case ZQFractional::Kind::ZeroScaled:
    case ZQFractional::Kind::ZeroFull: return ZQFractional::total();
    case ZQFractional::Kind::Total: return ZQFractional::zero_full();
  }
  throw std::logic_error("unknown fractional kind");
}

ZQFractional zq_v_closure(const ZQFractional& f) { return zq_inverse(zq_inverse(f)); }

std::vector<ZQElement> zq_v_finite_witness(const ZQIdealResult& i) {
  ZQFractional value = std::holds_alternative<ZQIdealNF>(i)
                           ? zq_fractional(std::get<ZQIdealNF>(i))
                           : std::get<ZQFlagged>(i).value;
  std::vector<ZQElement> gens;
  switch (value.kind) {
    case ZQFractional::Kind::Zero:
      throw AlgebraError("the v-operation is defined for nonzero ideals only");
    case ZQFractional::Kind::ScaledLine:
      if (value.c.get_den() != 1) throw AlgebraError("not an integral ideal: " + zq_format(value));
      gens.push_back({value.c.get_num(), 0});
      break;
    case ZQFractional::Kind::ZeroScaled:
    case ZQFractional::Kind::ZeroFull: gens.push_back({0, 1}); break;
    case ZQFractional::Kind::Total: throw AlgebraError("Q ∝ Q is not an integral ideal");
  }
  if (!(zq_inverse(zq_fractional(zq_ideal_nf(gens))) == zq_inverse(value))) {
    throw std::logic_error("v-finiteness witness does not match for " + zq_format(value));
  }
  return gens;
}

bool zq_is_fg(const ZQFractional& f) {
  return f.kind != ZQFractional::Kind::ZeroFull && f.kind != ZQFractional::Kind::Total;
}

ZQPrincipal zq_is_principal(const ZQIdealNF& i) {
  std::vector<ZQElement> gens = zq_generators(i);
  return {true, gens.empty() ? ZQElement{0, 0} : gens.front()};
}

std::vector<ZQElement> zq_generators(const ZQIdealNF& i) {
  if (i.kind == ZQIdealNF::Kind::FullLine) return {{i.d, 0}};
  if (i.g == 0) return {};
  return {{0, i.g}};
}

std::string zq_format(const ZQIdealNF& i) { return zq_format(zq_fractional(i)); }

std::string zq_format(const ZQFractional& f) {
  switch (f.kind) {
    case ZQFractional::Kind::Zero: return "0";
    case ZQFractional::Kind::ScaledLine: return lattice_name(f.c) + " ∝ Q";
    case ZQFractional::Kind::ZeroScaled: return "0 ∝ " + lattice_name(f.c);
    case ZQFractional::Kind::ZeroFull: return "0 ∝ Q";
    case ZQFractional::Kind::Total: return "Q ∝ Q";
  }
  return "?";
}

std::string zq_format(const ZQIdealResult& r) {
  if (std::holds_alternative<ZQIdealNF>(r)) return zq_format(std::get<ZQIdealNF>(r));
  return zq_format(std::get<ZQFlagged>(r).value) + " [not finitely generated]";
}

std::vector<std::vector<mpz_class>> integer_hermite(std::vector<std::vector<mpz_class>> rows) {
  if (rows.empty()) return rows;
  const std::size_t m = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
    // Euclid on the column until a single row below r is nonzero there.
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t k = r; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        if (best == rows.size() || abs(rows[k][col]) < abs(rows[best][col])) best = k;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool done = true;
      for (std::size_t k = r + 1; k < rows.size(); ++k) {
        if (rows[k][col] == 0) continue;
        mpz_class t;
        mpz_fdiv_q(t.get_mpz_t(), rows[k][col].get_mpz_t(), rows[r][col].get_mpz_t());
        for (std::size_t c = col; c < m; ++c) rows[k][c] -= t * rows[r][c];
        if (rows[k][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[r][col] == 0) continue;
    if (rows[r][col] < 0) {
      for (std::size_t c = col; c < m; ++c) rows[r][c] = -rows[r][c];
    }
    for (std::size_t k = 0; k < r; ++k) {
      mpz_class t;
      mpz_fdiv_q(t.get_mpz_t(), rows[k][col].get_mpz_t(), rows[r][col].get_mpz_t());
      for (std::size_t c = col; c < m; ++c) rows[k][c] -= t * rows[r][c];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<std::vector<mpq_class>> rational_rref(std::vector<std::vector<mpq_class>> rows) {
  if (rows.empty()) return rows;
  const std::size_t m = rows.front().size();
  std::size_t r = 0;
  for (std::size_t col = 0; col < m && r < rows.size(); ++col) {
    std::size_t p = r;
    while (p < rows.size() && rows[p][col] == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[r], rows[p]);
    mpq_class lead = rows[r][col];
    for (mpq_class& x : rows[r]) x /= lead;
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (k == r || rows[k][col] == 0) continue;
      mpq_class t = rows[k][col];
      for (std::size_t c = 0; c < m; ++c) rows[k][c] -= t * rows[r][c];
    }
    ++r;
  }
  rows.resize(r);
  return rows;
}

std::vector<mpq_class> reduce_by_rref(const std::vector<std::vector<mpq_class>>& basis,
                                      std::vector<mpq_class> v) {
  for (const auto& row : basis) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    mpq_class t = v[p];
    if (t == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] -= t * row[c];
  }
  return v;
}

namespace {

bool all_zero(const std::vector<mpq_class>& v) {
  return std::all_of(v.begin(), v.end(), [](const mpq_class& x) { return x == 0; });
}

}  // namespace

ZQSubmoduleNF zq_submodule_nf(std::size_t m, const std::vector<ZQVector>& gens) {
  if (m > kZQMaxRank) {
    throw ResourceError("submodules of R^" + std::to_string(m) + " exceed the rank cap of " +
                        std::to_string(kZQMaxRank));
  }
  std::vector<std::vector<mpz_class>> us;
  std::vector<std::vector<mpq_class>> uq;
  for (const ZQVector& g : gens) {
    if (g.u.size() != m || g.e.size() != m) {
      throw AlgebraError("submodule generator has the wrong length");
    }
    us.push_back(g.u);
    uq.emplace_back(g.u.begin(), g.u.end());
  }
  ZQSubmoduleNF h;
  h.rank = m;
  h.lattice = integer_hermite(std::move(us));
  h.span = rational_rref(uq);
  std::vector<std::vector<mpq_class>> joint;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const ZQVector& g = gens[k];
    std::vector<mpq_class> r = reduce_by_rref(h.span, g.e);
    std::vector<mpq_class> row = uq[k];
    row.insert(row.end(), r.begin(), r.end());
    joint.push_back(std::move(row));
    if (!all_zero(r) && std::find(h.residues.begin(), h.residues.end(), r) == h.residues.end()) {
      h.residues.push_back(std::move(r));
    }
  }
  h.kind = h.residues.empty() ? ZQSubmoduleNF::Kind::Split : ZQSubmoduleNF::Kind::General;
  h.finitely_presented = rational_rref(std::move(joint)).size() == h.span.size();
  return h;
}

bool zq_split_contains(const ZQSubmoduleNF& h, const ZQVector& x) {
  if (!h.split()) throw AlgebraError("zq_split_contains needs a split submodule");
  if (x.u.size() != h.rank || x.e.size() != h.rank) {
    throw AlgebraError("vector has the wrong length");
  }
  std::vector<mpz_class> u = x.u;
  for (const auto& row : h.lattice) {
    std::size_t p = 0;
    while (row[p] == 0) ++p;
    if (u[p] % row[p] != 0) return false;
    mpz_class t = u[p] / row[p];
    for (std::size_t c = 0; c < u.size(); ++c) u[c] -= t * row[c];
  }
  for (const mpz_class& c : u) {
    if (c != 0) return false;
  }
  return all_zero(reduce_by_rref(h.span, x.e));
}

bool zq_is_n_presented(const ZQSubmoduleNF& h, std::size_t n) {
  if (n == 0) return true;
  return h.finitely_presented;
}

std::string zq_format(const ZQSubmoduleNF& h) {
  std::ostringstream os;
  auto row = [&](const auto& v) {
    os << "(";
    for (std::size_t c = 0; c < v.size(); ++c) os << (c ? "," : "") << v[c].get_str();
    os << ")";
  };
  os << (h.split() ? "Split" : "General") << " in R^" << h.rank << ", U = <";
  for (std::size_t k = 0; k < h.lattice.size(); ++k) {
    if (k) os << ", ";
    row(h.lattice[k]);
  }
  os << ">";
  if (!h.split()) {
    os << ", residues ";
    for (std::size_t k = 0; k < h.residues.size(); ++k) {
      if (k) os << ", ";
      row(h.residues[k]);
    }
  }
  return os.str();
}

}  // namespace trivext
