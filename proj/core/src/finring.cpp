#include "trivext/finring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "trivext/budget.hpp"
#include "trivext/errors.hpp"
#include "trivext/ideal.hpp"

namespace trivext {

namespace {

using i128 = __int128;

std::string poly_label(std::int64_t p, const std::vector<std::int64_t>& f) {
  std::ostringstream os;
  os << "F" << p << "[x]/(";
  bool first = true;
  for (std::size_t i = f.size(); i-- > 0;) {
    std::int64_t c = mod_floor(f[i], p);
    if (c == 0) continue;
    if (!first) os << '+';
    first = false;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << 'x';
    if (i >= 2) os << '^' << i;
  }
  os << ')';
  return os.str();
}

}  // namespace

FiniteRing::FiniteRing(Vec orders, std::vector<Mat> products, Elem one,
                       std::string label, std::optional<ProductInfo> product)
    : orders_(std::move(orders)),
      products_(std::move(products)),
      one_(std::move(one)),
      label_(std::move(label)),
      product_(std::move(product)) {
  if (orders_.empty()) throw AlgebraError("ring needs at least one generator");
  for (std::int64_t d : orders_) {
    if (d < 2) throw AlgebraError("additive orders must be at least 2");
  }
  const std::size_t k = rank();
  if (products_.size() != k || one_.size() != k) {
    throw AlgebraError("structure constants have the wrong shape");
  }
  for (auto& row : products_) {
    if (row.size() != k) throw AlgebraError("structure constants have the wrong shape");
    for (auto& v : row) {
      if (v.size() != k) throw AlgebraError("structure constants have the wrong shape");
      reduce_mod(v, orders_);
    }
  }
  reduce_mod(one_, orders_);
  size_ = group_order(orders_);
  validate();
  if (size_ <= kTableLimit) build_tables();
}

void FiniteRing::validate() const {
  const std::size_t k = rank();
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (products_[i][j] != products_[j][i]) {
        throw AlgebraError(label_ + ": multiplication is not commutative");
      }
      if (!is_zero(scale(orders_[i], products_[i][j]))) {
        throw AlgebraError(label_ + ": structure constants ignore additive orders");
      }
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    if (mul(one_, basis(i)) != basis(i)) {
      throw AlgebraError(label_ + ": one is not a multiplicative identity");
    }
  }
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      for (std::size_t l = 0; l < k; ++l) {
        if (mul(products_[i][j], basis(l)) != mul(basis(i), products_[j][l])) {
          throw AlgebraError(label_ + ": multiplication is not associative");
        }
      }
    }
  }
}

void FiniteRing::build_tables() {
  const std::size_t k = rank();
  const std::uint64_t n = size_;
  std::vector<std::uint16_t> mul_table(n * n, 0);
  std::vector<std::uint16_t> add_table(n * n, 0);
  for (std::uint64_t ix = 0; ix < n; ++ix) {
    Elem x = element(ix);
    Mat images(k);
    for (std::size_t j = 0; j < k; ++j) images[j] = mul(x, basis(j));
    // Walk y in index order.  Every coordinate that changes contributes
    // +images[j]: an increment adds it, and a wrap from d_j - 1 to 0
    // subtracts (d_j - 1) images[j], which equals images[j] since
    // d_j * images[j] = 0.
    Elem acc = zero();
    Vec y(k, 0);
    for (std::uint64_t iy = 0; iy < n; ++iy) {
      mul_table[ix * n + iy] = static_cast<std::uint16_t>(index(acc));
      add_table[ix * n + iy] = static_cast<std::uint16_t>(index(add(x, y)));
      for (std::size_t j = k; j-- > 0;) {
        acc = add(acc, images[j]);
        if (++y[j] < orders_[j]) break;
        y[j] = 0;
      }
    }
  }
  mul_table_ = std::move(mul_table);
  add_table_ = std::move(add_table);
}

Elem FiniteRing::basis(std::size_t i) const {
  Elem e(rank(), 0);
  e[i] = 1;
  return e;
}

Elem FiniteRing::mul(const Elem& x, const Elem& y) const {
  if (has_tables()) {
    return element(mul_index(static_cast<std::uint32_t>(index(x)),
                             static_cast<std::uint32_t>(index(y))));
  }
  const std::size_t k = rank();
  std::vector<i128> acc(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < k; ++j) {
      if (y[j] == 0) continue;
      i128 c = static_cast<i128>(x[i]) * y[j];
      const Vec& p = products_[i][j];
      for (std::size_t l = 0; l < k; ++l) {
        if (p[l] == 0) continue;
        acc[l] = (acc[l] + (c % orders_[l]) * p[l]) % orders_[l];
      }
    }
  }
  Elem out(k);
  for (std::size_t l = 0; l < k; ++l) {
    out[l] = static_cast<std::int64_t>(acc[l] % orders_[l]);
  }
  return out;
}

Elem FiniteRing::pow(Elem x, std::uint64_t e) const {
  Elem result = one_;
  while (e > 0) {
    if (e & 1) result = mul(result, x);
    e >>= 1;
    if (e) x = mul(x, x);
  }
  return result;
}

bool FiniteRing::is_zero(const Elem& x) const {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

Elem FiniteRing::reduce(Elem x) const {
  if (x.size() != rank()) {
    throw AlgebraError("element " + format_vec(x) + " has the wrong length for " +
                       label_);
  }
  reduce_mod(x, orders_);
  return x;
}

void FiniteRing::for_each_element(const std::function<void(const Elem&)>& f) const {
  Vec x(rank(), 0);
  for (std::uint64_t i = 0; i < size_; ++i) {
    f(x);
    for (std::size_t j = rank(); j-- > 0;) {
      if (++x[j] < orders_[j]) break;
      x[j] = 0;
    }
  }
}

GroupHom FiniteRing::mult_map(const Elem& x) const {
  GroupHom f{orders_, orders_, {}};
  f.images.reserve(rank());
  for (std::size_t j = 0; j < rank(); ++j) f.images.push_back(mul(x, basis(j)));
  return f;
}

std::optional<Elem> FiniteRing::inverse(const Elem& x) const {
  return solve(mult_map(x), one_);
}

bool FiniteRing::is_regular(const Elem& x) const {
  return kernel(mult_map(x)).is_zero();
}

void FiniteRing::assert_regular_is_unit() const {
  std::call_once(regular_checked_, [this] {
    require_within(size_, default_budget().max_elements,
                   "regular-element scan");
    for_each_element([this](const Elem& x) {
      if (is_regular(x) != is_unit(x)) {
        throw std::logic_error(label_ + ": regular element " + format(x) +
                               " is not a unit");
      }
    });
  });
}

std::string FiniteRing::format(const Elem& x) const {
  if (x.size() == 1) return std::to_string(x[0]);
  return format_vec(x);
}

const RingStructure& FiniteRing::structure() const {
  std::lock_guard lock(structure_mutex_);
  if (structure_) return *structure_;
  require_within(size_, default_budget().max_elements, label_ + " structure");

  std::vector<Elem> idem;
  std::vector<Elem> nil;
  std::uint64_t squarings = 1;
  while ((std::uint64_t{1} << squarings) <= size_) ++squarings;
  for_each_element([&](const Elem& x) {
    if (mul(x, x) == x) idem.push_back(x);
    Elem y = x;
    for (std::uint64_t s = 0; s < squarings && !is_zero(y); ++s) y = mul(y, y);
    if (is_zero(y)) nil.push_back(x);
  });

  std::vector<Elem> primitive;
  for (const Elem& e : idem) {
    if (is_zero(e)) continue;
    bool minimal = true;
    for (const Elem& f : idem) {
      if (is_zero(f) || f == e) continue;
      if (mul(f, e) == f) {
        minimal = false;
        break;
      }
    }
    if (minimal) primitive.push_back(e);
  }

  Subgroup nilrad = Subgroup::generated(orders_, nil);
  std::vector<Subgroup> maximal;
  for (const Elem& e : primitive) {
    Subgroup m = nilrad;
    m.insert_all(saturate(*this, {sub(one_, e)}).generators());
    maximal.push_back(std::move(m));
  }
  auto s = std::make_shared<RingStructure>(
      RingStructure{std::move(idem), std::move(primitive), std::move(nilrad),
                    std::move(maximal)});
  structure_ = s;
  return *structure_;
}

// --------------------------------------------------------------- builders

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

RingPtr make_zmod(std::int64_t n) {
  if (n < 2) throw AlgebraError("make_zmod: n must be at least 2");
  return std::make_shared<const FiniteRing>(Vec{n}, std::vector<Mat>{{{1}}},
                                            Elem{1}, "Z/" + std::to_string(n));
}

RingPtr make_quotient_poly(std::int64_t p, const std::vector<std::int64_t>& f) {
  if (!is_prime(p)) throw AlgebraError("make_quotient_poly: p must be prime");
  if (f.size() < 2) throw AlgebraError("make_quotient_poly: degree must be at least 1");
  if (mod_floor(f.back(), p) != 1) {
    throw AlgebraError("make_quotient_poly: polynomial must be monic");
  }
  const std::size_t n = f.size() - 1;
  // powers[m] = x^m reduced modulo f, for m < 2n - 1.
  Mat powers;
  Vec cur(n, 0);
  cur[0] = 1;
  for (std::size_t m = 0; m + 1 < 2 * n; ++m) {
    powers.push_back(cur);
    Vec next(n, 0);
    std::int64_t top = cur[n - 1];
    for (std::size_t i = n - 1; i > 0; --i) next[i] = cur[i - 1];
    for (std::size_t i = 0; i < n; ++i) {
      next[i] = mod_floor(next[i] - top * mod_floor(f[i], p), p);
    }
    cur = std::move(next);
  }
  std::vector<Mat> products(n, Mat(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) products[i][j] = powers[i + j];
  }
  Elem one(n, 0);
  one[0] = 1;
  return std::make_shared<const FiniteRing>(Vec(n, p), std::move(products),
                                            std::move(one), poly_label(p, f));
}

RingPtr make_product(const std::vector<RingPtr>& rings) {
  if (rings.empty()) throw AlgebraError("make_product: empty list of rings");
  ProductInfo info;
  Vec orders;
  Elem one;
  std::string label;
  for (const RingPtr& r : rings) {
    info.components.push_back(r);
    info.offsets.push_back(orders.size());
    orders.insert(orders.end(), r->orders().begin(), r->orders().end());
    one.insert(one.end(), r->one().begin(), r->one().end());
    if (!label.empty()) label += " x ";
    label += r->label();
  }
  const std::size_t k = orders.size();
  std::vector<Mat> products(k, Mat(k, Vec(k, 0)));
  for (std::size_t c = 0; c < rings.size(); ++c) {
    const std::size_t off = info.offsets[c];
    const std::size_t rk = rings[c]->rank();
    for (std::size_t i = 0; i < rk; ++i) {
      for (std::size_t j = 0; j < rk; ++j) {
        const Vec& p = rings[c]->basis_product(i, j);
        std::copy(p.begin(), p.end(), products[off + i][off + j].begin() +
                                          static_cast<std::ptrdiff_t>(off));
      }
    }
  }
  return std::make_shared<const FiniteRing>(std::move(orders), std::move(products),
                                            std::move(one), std::move(label),
                                            std::move(info));
}

Elem product_component(const FiniteRing& r, const Elem& x, std::size_t j) {
  const auto& info = r.product_info();
  if (!info) throw AlgebraError(r.label() + " is not a product ring");
  const std::size_t off = info->offsets.at(j);
  const std::size_t rk = info->components[j]->rank();
  return Elem(x.begin() + static_cast<std::ptrdiff_t>(off),
              x.begin() + static_cast<std::ptrdiff_t>(off + rk));
}

Elem product_assemble(const FiniteRing& r, const std::vector<Elem>& parts) {
  const auto& info = r.product_info();
  if (!info) throw AlgebraError(r.label() + " is not a product ring");
  if (parts.size() != info->components.size()) {
    throw AlgebraError("product_assemble: wrong number of components");
  }
  Elem x;
  for (const Elem& p : parts) x.insert(x.end(), p.begin(), p.end());
  return r.reduce(std::move(x));
}

// ------------------------------------------------------------- structure

const std::vector<Elem>& idempotents(const FiniteRing& r) {
  return r.structure().idempotents;
}

const std::vector<Elem>& primitive_idempotents(const FiniteRing& r) {
  return r.structure().primitive_idempotents;
}

bool is_idempotent(const FiniteRing& r, const Elem& x) { return r.mul(x, x) == x; }

bool is_nilpotent(const FiniteRing& r, const Elem& x) {
  Elem y = x;
  std::uint64_t steps = 1;
  while ((std::uint64_t{1} << steps) <= r.size()) ++steps;
  for (std::uint64_t s = 0; s <= steps; ++s) {
    if (r.is_zero(y)) return true;
    y = r.mul(y, y);
  }
  return r.is_zero(y);
}

Ideal nilradical(const RingPtr& r) {
  return Ideal::from_carrier(r, r->structure().nilradical);
}

std::vector<Ideal> maximal_ideals(const RingPtr& r) {
  std::vector<Ideal> out;
  for (const Subgroup& m : r->structure().maximal_ideals) {
    out.push_back(Ideal::from_carrier(r, m));
  }
  return out;
}

std::optional<Ideal> local_maximal_ideal(const RingPtr& r) {
  const auto& s = r->structure();
  if (s.maximal_ideals.size() != 1) return std::nullopt;
  return Ideal::from_carrier(r, s.maximal_ideals.front());
}

bool is_local(const RingPtr& r) { return r->structure().maximal_ideals.size() == 1; }

// --------------------------------------------------------- decomposition

std::vector<Elem> LocalDecomposition::forward(const Elem& x) const {
  std::vector<Elem> parts;
  for (std::size_t i = 0; i < factors.size(); ++i) parts.push_back(project(i, x));
  return parts;
}

Elem LocalDecomposition::backward(const std::vector<Elem>& parts) const {
  Elem x = ring->zero();
  for (std::size_t i = 0; i < factors.size(); ++i) x = ring->add(x, lift(i, parts[i]));
  return x;
}

Elem LocalDecomposition::lift(std::size_t factor, const Elem& y) const {
  const GroupPresentation& chart = factors[factor].chart;
  Elem x = ring->zero();
  for (std::size_t a = 0; a < y.size(); ++a) {
    x = ring->add(x, ring->scale(y[a], chart.basis[a]));
  }
  return x;
}

Elem LocalDecomposition::project(std::size_t factor, const Elem& x) const {
  const LocalFactor& f = factors[factor];
  return f.part.coords_in(f.chart, ring->mul(x, f.idempotent));
}

LocalDecomposition decompose_into_local(const RingPtr& r) {
  LocalDecomposition d{r, {}};
  const auto& prim = primitive_idempotents(*r);
  if (prim.size() == 1) {
    const std::size_t k = r->rank();
    GroupPresentation chart;
    chart.orders = r->orders();
    chart.to_coords.assign(k, Vec(k, 0));
    for (std::size_t i = 0; i < k; ++i) {
      chart.basis.push_back(r->basis(i));
      chart.to_coords[i][i] = 1;
      chart.kept.push_back(i);
    }
    d.factors.push_back({r, r->one(), Subgroup::whole(r->orders()), std::move(chart)});
    return d;
  }
  for (const Elem& e : prim) {
    Subgroup part = image(r->mult_map(e));
    GroupPresentation chart = part.presentation();
    const std::size_t k = chart.orders.size();
    std::vector<Mat> products(k, Mat(k));
    for (std::size_t a = 0; a < k; ++a) {
      for (std::size_t b = 0; b < k; ++b) {
        products[a][b] = part.coords_in(chart, r->mul(chart.basis[a], chart.basis[b]));
      }
    }
    Elem one = part.coords_in(chart, e);
    auto factor = std::make_shared<const FiniteRing>(
        chart.orders, std::move(products), std::move(one),
        r->label() + "*" + r->format(e));
    d.factors.push_back({std::move(factor), e, std::move(part), std::move(chart)});
  }
  // The maps are additive by construction; multiplicativity and the round
  // trip are checked on basis elements, which suffices by bilinearity.
  for (std::size_t i = 0; i < r->rank(); ++i) {
    const Elem bi = r->basis(i);
    if (d.backward(d.forward(bi)) != bi) {
      throw std::logic_error("local decomposition does not round-trip");
    }
    for (std::size_t j = i; j < r->rank(); ++j) {
      const Elem bj = r->basis(j);
      auto lhs = d.forward(r->mul(bi, bj));
      auto fi = d.forward(bi), fj = d.forward(bj);
      for (std::size_t c = 0; c < d.factors.size(); ++c) {
        if (lhs[c] != d.factors[c].ring->mul(fi[c], fj[c])) {
          throw std::logic_error("local decomposition is not multiplicative");
        }
      }
    }
  }
  for (const LocalFactor& f : d.factors) {
    if (!is_local(f.ring)) throw std::logic_error("decomposition factor is not local");
  }
  return d;
}

}  // namespace trivext
