#include "trivext/abelian.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <numeric>
#include <sstream>
#include <utility>

#include "trivext/errors.hpp"

namespace trivext {

namespace {

using i128 = __int128;

std::int64_t mod128(i128 a, std::int64_t m) {
  i128 r = a % m;
  if (r < 0) r += m;
  return static_cast<std::int64_t>(r);
}

// Extended gcd on nonnegative inputs, not both zero: g = s*a + t*b.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s,
             std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cs = 0, old_t = 0, ct = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, cs) = std::make_pair(cs, old_s - q * cs);
    std::tie(old_t, ct) = std::make_pair(ct, old_t - q * ct);
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

using ZMat = std::vector<std::vector<mpz_class>>;

ZMat identity(std::size_t n) {
  ZMat m(n, std::vector<mpz_class>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

struct ZSmith {
  std::vector<mpz_class> diagonal;
  ZMat v;
  ZMat v_inverse;
};

ZSmith zsmith(ZMat a) {
  const std::size_t n = a.size();
  ZMat v = identity(n);
  ZMat vi = identity(n);

  auto swap_cols = [&](std::size_t x, std::size_t y) {
    if (x == y) return;
    for (std::size_t i = 0; i < n; ++i) {
      std::swap(a[i][x], a[i][y]);
      std::swap(v[i][x], v[i][y]);
    }
    std::swap(vi[x], vi[y]);
  };
  // column y -= q * column x
  auto col_sub = [&](std::size_t y, std::size_t x, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t i = 0; i < n; ++i) {
      a[i][y] -= q * a[i][x];
      v[i][y] -= q * v[i][x];
    }
    for (std::size_t j = 0; j < n; ++j) vi[x][j] += q * vi[y][j];
  };
  auto row_sub = [&](std::size_t y, std::size_t x, const mpz_class& q) {
    if (q == 0) return;
    for (std::size_t j = 0; j < n; ++j) a[y][j] -= q * a[x][j];
  };

  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero entry of the trailing block goes to (t, t).
      std::size_t bi = n, bj = n;
      for (std::size_t i = t; i < n; ++i) {
        for (std::size_t j = t; j < n; ++j) {
          if (a[i][j] != 0 &&
              (bi == n || abs(a[i][j]) < abs(a[bi][bj]))) {
            bi = i;
            bj = j;
          }
        }
      }
      if (bi == n) throw AlgebraError("smith_normal_form: singular matrix");
      std::swap(a[t], a[bi]);
      swap_cols(t, bj);

      bool clean = true;
      for (std::size_t i = t + 1; i < n; ++i) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        row_sub(i, t, q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        col_sub(j, t, q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      bool divides = true;
      for (std::size_t i = t + 1; i < n && divides; ++i) {
        for (std::size_t j = t + 1; j < n; ++j) {
          if (a[i][j] % a[t][t] != 0) {
            for (std::size_t l = 0; l < n; ++l) a[t][l] += a[i][l];
            divides = false;
            break;
          }
        }
      }
      if (divides) break;
    }
  }
  ZSmith out;
  for (std::size_t i = 0; i < n; ++i) out.diagonal.push_back(abs(a[i][i]));
  out.v = std::move(v);
  out.v_inverse = std::move(vi);
  return out;
}

std::int64_t to_i64(const mpz_class& z) {
  if (!z.fits_slong_p()) throw ResourceError("integer exceeds 64 bits");
  return z.get_si();
}

std::int64_t mpz_mod(const mpz_class& z, std::int64_t m) {
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mpz_class(m).get_mpz_t());
  return r.get_si();
}

// Build a presentation from an SNF of the relation matrix.  `lift_basis`
// maps a coefficient row (in SNF-transformed terms, via V^{-1}) to ambient
// coordinates.
GroupPresentation build_presentation(const ZSmith& s, const ZMat& base,
                                     const Vec& ambient_orders) {
  const std::size_t n = s.diagonal.size();
  GroupPresentation p;
  p.to_coords.assign(n, Vec(n, 0));
  for (std::size_t j = 0; j < n; ++j) {
    std::int64_t sj = to_i64(s.diagonal[j]);
    if (sj > 1) {
      p.kept.push_back(j);
      p.orders.push_back(sj);
    }
    for (std::size_t i = 0; i < n; ++i) {
      p.to_coords[i][j] = sj > 1 ? mpz_mod(s.v[i][j], sj) : 0;
    }
  }
  for (std::size_t j : p.kept) {
    Vec b(n, 0);
    for (std::size_t c = 0; c < n; ++c) {
      mpz_class acc = 0;
      for (std::size_t l = 0; l < n; ++l) acc += s.v_inverse[j][l] * base[l][c];
      b[c] = mpz_mod(acc, ambient_orders[c]);
    }
    p.basis.push_back(std::move(b));
  }
  return p;
}

Vec apply_coords(const GroupPresentation& p, const Vec& c) {
  Vec out;
  out.reserve(p.kept.size());
  for (std::size_t r = 0; r < p.kept.size(); ++r) {
    std::size_t j = p.kept[r];
    i128 acc = 0;
    for (std::size_t i = 0; i < c.size(); ++i) {
      acc += static_cast<i128>(c[i]) * p.to_coords[i][j];
      acc %= p.orders[r];
    }
    out.push_back(mod128(acc, p.orders[r]));
  }
  return out;
}

}  // namespace

std::int64_t mod_floor(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void reduce_mod(Vec& v, const Vec& orders) {
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = mod_floor(v[i], orders[i]);
}

Vec add_mod(const Vec& a, const Vec& b, const Vec& orders) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = mod128(static_cast<i128>(a[i]) + b[i], orders[i]);
  }
  return r;
}

Vec sub_mod(const Vec& a, const Vec& b, const Vec& orders) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = mod128(static_cast<i128>(a[i]) - b[i], orders[i]);
  }
  return r;
}

Vec scale_mod(std::int64_t s, const Vec& a, const Vec& orders) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    r[i] = mod128(static_cast<i128>(s) * a[i], orders[i]);
  }
  return r;
}

std::uint64_t group_order(const Vec& orders) {
  i128 n = 1;
  for (std::int64_t d : orders) {
    n *= d;
    if (n > (static_cast<i128>(1) << 62)) {
      throw ResourceError("group order exceeds 2^62");
    }
  }
  return static_cast<std::uint64_t>(n);
}

std::uint64_t index_of(const Vec& x, const Vec& orders) {
  std::uint64_t idx = 0;
  for (std::size_t i = 0; i < orders.size(); ++i) {
    idx = idx * static_cast<std::uint64_t>(orders[i]) +
          static_cast<std::uint64_t>(mod_floor(x[i], orders[i]));
  }
  return idx;
}

Vec element_at(std::uint64_t index, const Vec& orders) {
  Vec x(orders.size(), 0);
  for (std::size_t i = orders.size(); i-- > 0;) {
    auto d = static_cast<std::uint64_t>(orders[i]);
    x[i] = static_cast<std::int64_t>(index % d);
    index /= d;
  }
  return x;
}

std::string format_vec(const Vec& v) {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ')';
  return os.str();
}

SmithForm smith_normal_form(Mat a) {
  ZMat z(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::int64_t x : a[i]) z[i].emplace_back(static_cast<long>(x));
  }
  ZSmith s = zsmith(std::move(z));
  SmithForm out;
  for (const auto& d : s.diagonal) out.diagonal.push_back(to_i64(d));
  for (const auto& row : s.v) {
    Vec r;
    for (const auto& x : row) r.push_back(to_i64(x));
    out.v.push_back(std::move(r));
  }
  for (const auto& row : s.v_inverse) {
    Vec r;
    for (const auto& x : row) r.push_back(to_i64(x));
    out.v_inverse.push_back(std::move(r));
  }
  return out;
}

// ---------------------------------------------------------------- Subgroup

Subgroup::Subgroup(Vec orders) : orders_(std::move(orders)) {
  for (std::int64_t d : orders_) {
    if (d < 1) throw AlgebraError("group orders must be positive");
  }
  rows_.assign(orders_.size(), Vec(orders_.size(), 0));
  for (std::size_t i = 0; i < orders_.size(); ++i) rows_[i][i] = orders_[i];
}

Subgroup Subgroup::whole(Vec orders) {
  Subgroup s(std::move(orders));
  for (std::size_t i = 0; i < s.rank(); ++i) s.rows_[i][i] = 1;
  return s;
}

Subgroup Subgroup::generated(Vec orders, std::span<const Vec> gens) {
  Subgroup s(std::move(orders));
  s.insert_all(gens);
  return s;
}

Subgroup Subgroup::from_hermite_rows(Vec orders, Mat rows) {
  Subgroup s(std::move(orders));
  s.rows_ = std::move(rows);
  s.normalize();
  return s;
}

void Subgroup::insert(const Vec& v) {
  if (v.size() != rank()) throw AlgebraError("subgroup insert: rank mismatch");
  Vec w = v;
  reduce_mod(w, orders_);
  insert_raw(std::move(w));
  normalize();
}

void Subgroup::insert_all(std::span<const Vec> gens) {
  for (const Vec& v : gens) {
    if (v.size() != rank()) throw AlgebraError("subgroup insert: rank mismatch");
    Vec w = v;
    reduce_mod(w, orders_);
    insert_raw(std::move(w));
  }
  normalize();
}

void Subgroup::insert_raw(Vec v) {
  const std::size_t k = rank();
  for (std::size_t i = 0; i < k; ++i) {
    if (v[i] == 0) continue;
    Vec& row = rows_[i];
    std::int64_t p = row[i];
    if (v[i] % p == 0) {
      std::int64_t q = v[i] / p;
      for (std::size_t j = i; j < k; ++j) {
        v[j] = mod128(static_cast<i128>(v[j]) - static_cast<i128>(q) * row[j],
                      j == i ? p : orders_[j]);
      }
      v[i] = 0;
      continue;
    }
    std::int64_t g, s, t;
    ext_gcd(p, v[i], g, s, t);
    std::int64_t a = v[i] / g, b = p / g;
    Vec new_row(k, 0), other(k, 0);
    for (std::size_t j = i; j < k; ++j) {
      i128 r = static_cast<i128>(s) * row[j] + static_cast<i128>(t) * v[j];
      i128 o = static_cast<i128>(a) * row[j] - static_cast<i128>(b) * v[j];
      new_row[j] = mod128(r, orders_[j]);
      other[j] = mod128(o, orders_[j]);
    }
    new_row[i] = g;
    other[i] = 0;
    row = std::move(new_row);
    v = std::move(other);
  }
}

void Subgroup::normalize() {
  const std::size_t k = rank();
  for (std::size_t i = k; i-- > 0;) {
    Vec& row = rows_[i];
    for (std::size_t j = i + 1; j < k; ++j) {
      std::int64_t p = rows_[j][j];
      std::int64_t r = mod_floor(row[j], p);
      std::int64_t q = (row[j] - r) / p;
      if (q == 0) continue;
      for (std::size_t l = j; l < k; ++l) {
        row[l] = mod128(static_cast<i128>(row[l]) -
                            static_cast<i128>(q) * rows_[j][l],
                        orders_[l]);
      }
      row[j] = r;
    }
  }
}

bool Subgroup::contains(const Vec& x) const { return coefficients(x).has_value(); }

std::optional<Vec> Subgroup::coefficients(const Vec& x) const {
  const std::size_t k = rank();
  Vec v = x;
  reduce_mod(v, orders_);
  Vec c(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (v[i] == 0) continue;
    std::int64_t p = rows_[i][i];
    if (v[i] % p != 0) return std::nullopt;
    std::int64_t q = v[i] / p;
    c[i] = q;
    for (std::size_t j = i; j < k; ++j) {
      v[j] = mod128(static_cast<i128>(v[j]) - static_cast<i128>(q) * rows_[i][j],
                    orders_[j]);
    }
  }
  return c;
}

bool Subgroup::is_zero() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (rows_[i][i] != orders_[i]) return false;
  }
  return true;
}

bool Subgroup::is_whole() const {
  for (std::size_t i = 0; i < rank(); ++i) {
    if (rows_[i][i] != 1) return false;
  }
  return true;
}

std::uint64_t Subgroup::order() const {
  Vec q(rank());
  for (std::size_t i = 0; i < rank(); ++i) q[i] = orders_[i] / rows_[i][i];
  return group_order(q);
}

Mat Subgroup::generators() const {
  Mat out;
  for (const Vec& r : rows_) {
    Vec v = r;
    reduce_mod(v, orders_);
    if (std::any_of(v.begin(), v.end(), [](std::int64_t x) { return x != 0; })) {
      out.push_back(std::move(v));
    }
  }
  return out;
}

bool Subgroup::subset_of(const Subgroup& other) const {
  for (const Vec& r : rows_) {
    if (!other.contains(r)) return false;
  }
  return true;
}

Subgroup Subgroup::sum(const Subgroup& other) const {
  Subgroup s = *this;
  Mat g = other.generators();
  s.insert_all(g);
  return s;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  const std::size_t k = rank();
  Vec doubled = orders_;
  doubled.insert(doubled.end(), orders_.begin(), orders_.end());
  Subgroup m(doubled);
  Mat gens;
  for (const Vec& b : rows_) {
    Vec v = b;
    v.insert(v.end(), b.begin(), b.end());
    gens.push_back(std::move(v));
  }
  for (const Vec& c : other.rows_) {
    Vec v = c;
    v.resize(2 * k, 0);
    gens.push_back(std::move(v));
  }
  m.insert_all(gens);
  Mat rows;
  for (std::size_t i = k; i < 2 * k; ++i) {
    rows.emplace_back(m.rows_[i].begin() + static_cast<std::ptrdiff_t>(k),
                      m.rows_[i].end());
  }
  return from_hermite_rows(orders_, std::move(rows));
}

void Subgroup::for_each_element(const std::function<void(const Vec&)>& f) const {
  const std::size_t k = rank();
  Vec bound(k);
  for (std::size_t i = 0; i < k; ++i) bound[i] = orders_[i] / rows_[i][i];
  Vec c(k, 0);
  Vec x(k, 0);
  while (true) {
    f(x);
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (++c[i] < bound[i]) break;
      c[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
    std::fill(x.begin(), x.end(), 0);
    for (std::size_t r = 0; r < k; ++r) {
      if (c[r] == 0) continue;
      for (std::size_t j = r; j < k; ++j) {
        x[j] = mod128(static_cast<i128>(x[j]) +
                          static_cast<i128>(c[r]) * rows_[r][j],
                      orders_[j]);
      }
    }
  }
}

Mat Subgroup::elements(std::uint64_t limit) const {
  std::uint64_t n = order();
  if (n > limit) {
    throw ResourceError("subgroup has " + std::to_string(n) +
                        " elements, above the enumeration limit " +
                        std::to_string(limit));
  }
  Mat out;
  out.reserve(n);
  for_each_element([&](const Vec& x) { out.push_back(x); });
  return out;
}

GroupPresentation Subgroup::presentation() const {
  // H = L / dZ^k.  With L = rowspan(B) and D = C B, H is Z^k / rowspan(C)
  // in coefficient coordinates.
  const std::size_t k = rank();
  ZMat b(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) b[i][j] = static_cast<long>(rows_[i][j]);
  }
  ZMat c(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      mpz_class acc = (i == j) ? mpz_class(static_cast<long>(orders_[i])) : 0;
      for (std::size_t l = 0; l < j; ++l) acc -= c[i][l] * b[l][j];
      if (acc % b[j][j] != 0) throw std::logic_error("non-integral relation");
      c[i][j] = acc / b[j][j];
    }
  }
  return build_presentation(zsmith(std::move(c)), b, orders_);
}

Vec Subgroup::coords_in(const GroupPresentation& p, const Vec& x) const {
  auto c = coefficients(x);
  if (!c) throw AlgebraError("element " + format_vec(x) + " not in subgroup");
  return apply_coords(p, *c);
}

Vec Subgroup::key() const {
  Vec k;
  for (const Vec& r : rows_) k.insert(k.end(), r.begin(), r.end());
  return k;
}

GroupPresentation quotient_presentation(const Subgroup& sub) {
  const std::size_t k = sub.rank();
  ZMat b(k, std::vector<mpz_class>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      b[i][j] = static_cast<long>(sub.rows()[i][j]);
    }
  }
  return build_presentation(zsmith(b), identity(k), sub.orders());
}

Vec quotient_coords(const GroupPresentation& q, const Vec& x) {
  return apply_coords(q, x);
}

// -------------------------------------------------------------- GroupHom

void GroupHom::check_well_defined() const {
  if (images.size() != source_orders.size()) {
    throw AlgebraError("homomorphism: wrong number of images");
  }
  for (std::size_t i = 0; i < images.size(); ++i) {
    if (images[i].size() != target_orders.size()) {
      throw AlgebraError("homomorphism: image has wrong rank");
    }
    Vec t = scale_mod(source_orders[i], images[i], target_orders);
    if (std::any_of(t.begin(), t.end(), [](std::int64_t x) { return x != 0; })) {
      throw AlgebraError("homomorphism is not well defined on generator " +
                         std::to_string(i));
    }
  }
}

Vec GroupHom::apply(const Vec& x) const {
  Vec y(target_orders.size(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < y.size(); ++j) {
      y[j] = mod128(static_cast<i128>(y[j]) +
                        static_cast<i128>(x[i]) * images[i][j],
                    target_orders[j]);
    }
  }
  return y;
}

namespace {

// Lattice of pairs (f(x) + t, x) with t in `target_sub`, in combined
// coordinates (target block first).
Subgroup graph_lattice(const GroupHom& f, const Subgroup* target_sub) {
  const std::size_t m = f.target_orders.size();
  const std::size_t n = f.source_orders.size();
  Vec orders = f.target_orders;
  orders.insert(orders.end(), f.source_orders.begin(), f.source_orders.end());
  Subgroup g(orders);
  Mat gens;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v = f.images[i];
    v.resize(m + n, 0);
    v[m + i] = 1;
    gens.push_back(std::move(v));
  }
  if (target_sub) {
    for (const Vec& t : target_sub->generators()) {
      Vec v = t;
      v.resize(m + n, 0);
      gens.push_back(std::move(v));
    }
  }
  g.insert_all(gens);
  return g;
}

}  // namespace

Subgroup preimage(const GroupHom& f, const Subgroup& target_sub) {
  const std::size_t m = f.target_orders.size();
  const std::size_t n = f.source_orders.size();
  Subgroup g = graph_lattice(f, &target_sub);
  Mat rows;
  for (std::size_t i = m; i < m + n; ++i) {
    rows.emplace_back(g.rows()[i].begin() + static_cast<std::ptrdiff_t>(m),
                      g.rows()[i].end());
  }
  return Subgroup::from_hermite_rows(f.source_orders, std::move(rows));
}

Subgroup kernel(const GroupHom& f) {
  return preimage(f, Subgroup(f.target_orders));
}

Subgroup image(const GroupHom& f) {
  return Subgroup::generated(f.target_orders, f.images);
}

Subgroup image_of(const GroupHom& f, const Subgroup& sub) {
  Mat imgs;
  for (const Vec& g : sub.generators()) imgs.push_back(f.apply(g));
  return Subgroup::generated(f.target_orders, imgs);
}

std::optional<Vec> solve(const GroupHom& f, const Vec& y) {
  const std::size_t m = f.target_orders.size();
  const std::size_t n = f.source_orders.size();
  Subgroup g = graph_lattice(f, nullptr);
  Vec v = y;
  v.resize(m + n, 0);
  reduce_mod(v, g.orders());
  for (std::size_t i = 0; i < m; ++i) {
    if (v[i] == 0) continue;
    std::int64_t p = g.pivot(i);
    if (v[i] % p != 0) return std::nullopt;
    std::int64_t q = v[i] / p;
    for (std::size_t j = i; j < m + n; ++j) {
      v[j] = mod128(static_cast<i128>(v[j]) -
                        static_cast<i128>(q) * g.rows()[i][j],
                    g.orders()[j]);
    }
  }
  // (y, 0) - (f(x), x) = (0, -x): read off x from the source block.
  Vec x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = mod_floor(-v[m + i], f.source_orders[i]);
  }
  return x;
}

}  // namespace trivext
