#include "trivext/finmod.hpp"

#include <algorithm>
#include <stdexcept>

#include "trivext/errors.hpp"

namespace trivext {

namespace {

using i128 = __int128;

Mat identity_rows(std::size_t n) {
  Mat m(n, Vec(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::string power_label(const std::string& base, std::size_t n) {
  if (n == 1) return base;
  bool simple = base.find(' ') == std::string::npos;
  return (simple ? base : "(" + base + ")") + "^" + std::to_string(n);
}

}  // namespace

// ------------------------------------------------------------ FiniteModule

FiniteModule::FiniteModule(RingPtr ring, Vec orders, std::vector<Mat> action,
                           std::string label)
    : ring_(std::move(ring)),
      orders_(std::move(orders)),
      action_(std::move(action)),
      label_(std::move(label)) {
  const std::size_t kr = ring_->rank();
  const std::size_t km = rank();
  for (std::int64_t d : orders_) {
    if (d < 2) throw AlgebraError("module orders must be at least 2");
  }
  if (action_.size() != kr) throw AlgebraError("module action has the wrong shape");
  for (auto& row : action_) {
    if (row.size() != km) throw AlgebraError("module action has the wrong shape");
    for (auto& v : row) {
      if (v.size() != km) throw AlgebraError("module action has the wrong shape");
      reduce_mod(v, orders_);
    }
  }
  for (std::size_t i = 0; i < kr; ++i) {
    for (std::size_t j = 0; j < km; ++j) {
      if (!is_zero(scale(ring_->orders()[i], action_[i][j])) ||
          !is_zero(scale(orders_[j], action_[i][j]))) {
        throw AlgebraError(label_ + ": action ignores additive orders");
      }
    }
  }
  for (std::size_t j = 0; j < km; ++j) {
    if (act(ring_->one(), basis(j)) != basis(j)) {
      throw AlgebraError(label_ + ": one does not act as the identity");
    }
    for (std::size_t a = 0; a < kr; ++a) {
      for (std::size_t b = 0; b < kr; ++b) {
        if (act(ring_->basis_product(a, b), basis(j)) != act(ring_->basis(a), action_[b][j])) {
          throw AlgebraError(label_ + ": action is not associative");
        }
      }
    }
  }
}

Vec FiniteModule::basis(std::size_t j) const {
  Vec e(rank(), 0);
  e[j] = 1;
  return e;
}

Vec FiniteModule::reduce(Vec x) const {
  if (x.size() != rank()) {
    throw AlgebraError("vector " + format_vec(x) + " has the wrong length for " + label_);
  }
  reduce_mod(x, orders_);
  return x;
}

bool FiniteModule::is_zero(const Vec& x) const {
  return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v == 0; });
}

Vec FiniteModule::act(const Elem& a, const Vec& m) const {
  const std::size_t km = rank();
  std::vector<i128> acc(km, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < km; ++j) {
      if (m[j] == 0) continue;
      i128 c = static_cast<i128>(a[i]) * m[j];
      const Vec& p = action_[i][j];
      for (std::size_t l = 0; l < km; ++l) {
        if (p[l] == 0) continue;
        acc[l] = (acc[l] + (c % orders_[l]) * p[l]) % orders_[l];
      }
    }
  }
  Vec out(km);
  for (std::size_t l = 0; l < km; ++l) out[l] = static_cast<std::int64_t>(acc[l]);
  return out;
}

GroupHom FiniteModule::act_map(const Elem& a) const {
  GroupHom f{orders_, orders_, {}};
  for (std::size_t j = 0; j < rank(); ++j) f.images.push_back(act(a, basis(j)));
  return f;
}

void FiniteModule::for_each_element(const std::function<void(const Vec&)>& f) const {
  Subgroup::whole(orders_).for_each_element(f);
}

// --------------------------------------------------------------- ModuleMap

void ModuleMap::validate() const {
  if (source->ring() != target->ring()) {
    throw AlgebraError("module map between modules over different rings");
  }
  as_group_hom().check_well_defined();
  const RingPtr& r = source->ring();
  for (std::size_t i = 0; i < r->rank(); ++i) {
    for (std::size_t j = 0; j < source->rank(); ++j) {
      if (apply(source->act(r->basis(i), source->basis(j))) !=
          target->act(r->basis(i), images[j])) {
        throw AlgebraError("module map is not linear");
      }
    }
  }
}

Vec ModuleMap::apply(const Vec& x) const { return as_group_hom().apply(x); }

GroupHom ModuleMap::as_group_hom() const {
  return GroupHom{source->orders(), target->orders(), images};
}

// --------------------------------------------------------------- Submodule

Subgroup saturate_module(const FiniteModule& m, const std::vector<Vec>& gens) {
  Subgroup s(m.orders());
  Mat spans;
  const RingPtr& r = m.ring();
  for (const Vec& g : gens) {
    Vec x = m.reduce(g);
    if (m.is_zero(x)) continue;
    for (std::size_t i = 0; i < r->rank(); ++i) spans.push_back(m.act(r->basis(i), x));
  }
  s.insert_all(spans);
  return s;
}

Submodule::Submodule(ModulePtr ambient, std::vector<Vec> gens, Subgroup carrier)
    : ambient_(std::move(ambient)), gens_(std::move(gens)), carrier_(std::move(carrier)) {}

Submodule Submodule::generated(ModulePtr ambient, std::vector<Vec> gens) {
  for (Vec& g : gens) g = ambient->reduce(std::move(g));
  Subgroup c = saturate_module(*ambient, gens);
  return Submodule(std::move(ambient), std::move(gens), std::move(c));
}

Submodule Submodule::from_carrier(ModulePtr ambient, Subgroup carrier) {
  if (carrier.orders() != ambient->orders()) {
    throw AlgebraError("submodule carrier lives in a different group");
  }
  std::vector<Vec> gens;
  Subgroup span(ambient->orders());
  for (const Vec& x : carrier.generators()) {
    if (span == carrier) break;
    if (span.contains(x)) continue;
    gens.push_back(x);
    span = span.sum(saturate_module(*ambient, {x}));
  }
  if (!(span == carrier)) throw std::logic_error("carrier is not a submodule");
  return Submodule(std::move(ambient), std::move(gens), std::move(carrier));
}

Submodule Submodule::zero(ModulePtr ambient) {
  Subgroup c(ambient->orders());
  return Submodule(std::move(ambient), {}, std::move(c));
}

Submodule Submodule::whole(ModulePtr ambient) {
  Mat gens = identity_rows(ambient->rank());
  Subgroup c = Subgroup::whole(ambient->orders());
  return Submodule(std::move(ambient), std::move(gens), std::move(c));
}

bool Submodule::subset_of(const Submodule& other) const {
  if (ambient_ != other.ambient_) {
    throw AlgebraError("subset_of: submodules of different modules");
  }
  return carrier_.subset_of(other.carrier_);
}

void Submodule::assert_stable() const {
  const RingPtr& r = ambient_->ring();
  for (const Vec& g : carrier_.generators()) {
    for (std::size_t i = 0; i < r->rank(); ++i) {
      if (!carrier_.contains(ambient_->act(r->basis(i), g))) {
        throw std::logic_error("subgroup is not stable under " + r->label());
      }
    }
  }
}

Submodule kernel(const ModuleMap& f) {
  Submodule k = Submodule::from_carrier(f.source, kernel(f.as_group_hom()));
  k.assert_stable();
  return k;
}

Submodule image(const ModuleMap& f) {
  return Submodule::generated(f.target, f.images);
}

// ---------------------------------------------------------- constructions

ModulePtr free_module(RingPtr r, std::size_t n) {
  const std::size_t k = r->rank();
  Vec orders;
  for (std::size_t c = 0; c < n; ++c) {
    orders.insert(orders.end(), r->orders().begin(), r->orders().end());
  }
  std::vector<Mat> action(k, Mat(n * k, Vec(n * k, 0)));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t c = 0; c < n; ++c) {
      for (std::size_t j = 0; j < k; ++j) {
        const Vec& p = r->basis_product(i, j);
        std::copy(p.begin(), p.end(),
                  action[i][c * k + j].begin() + static_cast<std::ptrdiff_t>(c * k));
      }
    }
  }
  std::string label = power_label(r->label(), n);
  if (n == 0) label = "0";
  return std::make_shared<const FiniteModule>(std::move(r), std::move(orders),
                                              std::move(action), std::move(label));
}

ModulePtr direct_sum(const std::vector<ModulePtr>& parts) {
  if (parts.empty()) throw AlgebraError("direct_sum: no summands");
  const RingPtr& r = parts.front()->ring();
  Vec orders;
  std::vector<std::size_t> offsets;
  std::string label;
  for (const ModulePtr& p : parts) {
    if (p->ring() != r) throw AlgebraError("direct_sum: summands over different rings");
    offsets.push_back(orders.size());
    orders.insert(orders.end(), p->orders().begin(), p->orders().end());
    if (!label.empty()) label += " + ";
    label += p->label();
  }
  const std::size_t km = orders.size();
  std::vector<Mat> action(r->rank(), Mat(km, Vec(km, 0)));
  for (std::size_t s = 0; s < parts.size(); ++s) {
    const auto& a = parts[s]->action();
    for (std::size_t i = 0; i < r->rank(); ++i) {
      for (std::size_t j = 0; j < parts[s]->rank(); ++j) {
        std::copy(a[i][j].begin(), a[i][j].end(),
                  action[i][offsets[s] + j].begin() +
                      static_cast<std::ptrdiff_t>(offsets[s]));
      }
    }
  }
  return std::make_shared<const FiniteModule>(r, std::move(orders), std::move(action),
                                              std::move(label));
}

QuotientModule quotient_module(const Submodule& n) {
  n.assert_stable();
  const ModulePtr& m = n.ambient();
  const RingPtr& r = m->ring();
  GroupPresentation q = quotient_presentation(n.carrier());
  const std::size_t kq = q.orders.size();
  std::vector<Mat> action(r->rank(), Mat(kq));
  for (std::size_t i = 0; i < r->rank(); ++i) {
    for (std::size_t a = 0; a < kq; ++a) {
      action[i][a] = quotient_coords(q, m->act(r->basis(i), q.basis[a]));
    }
  }
  auto module = std::make_shared<const FiniteModule>(
      r, q.orders, std::move(action), m->label() + "/N");
  ModuleMap proj{m, module, {}};
  for (std::size_t j = 0; j < m->rank(); ++j) {
    proj.images.push_back(quotient_coords(q, m->basis(j)));
  }
  return {std::move(module), std::move(proj)};
}

SubmoduleModule as_module(const Submodule& n) {
  const ModulePtr& m = n.ambient();
  const RingPtr& r = m->ring();
  GroupPresentation p = n.carrier().presentation();
  const std::size_t kp = p.orders.size();
  std::vector<Mat> action(r->rank(), Mat(kp));
  for (std::size_t i = 0; i < r->rank(); ++i) {
    for (std::size_t a = 0; a < kp; ++a) {
      action[i][a] = n.carrier().coords_in(p, m->act(r->basis(i), p.basis[a]));
    }
  }
  auto module = std::make_shared<const FiniteModule>(r, p.orders, std::move(action),
                                                     "N<" + m->label());
  ModuleMap inc{module, m, p.basis};
  return {std::move(module), std::move(inc)};
}

Submodule ideal_as_submodule(const Ideal& i, const ModulePtr& ring_module) {
  if (ring_module->ring() != i.ring() || ring_module->rank() != i.ring()->rank()) {
    throw AlgebraError("ideal_as_submodule: module is not the ring itself");
  }
  return Submodule::generated(ring_module, i.gens());
}

QuotientModule residue_field(const RingPtr& a) {
  auto m = local_maximal_ideal(a);
  if (!m) throw AlgebraError(a->label() + " is not local");
  ModulePtr a1 = free_module(a, 1);
  QuotientModule q = quotient_module(ideal_as_submodule(*m, a1));
  auto field = std::make_shared<const FiniteModule>(
      a, q.module->orders(), q.module->action(), a->label() + "/M");
  q.projection.target = field;
  q.module = std::move(field);
  return q;
}

ModulePtr residue_field_power(const RingPtr& a, std::size_t r) {
  if (r < 1) throw AlgebraError("residue_field_power: rank must be at least 1");
  ModulePtr k = residue_field(a).module;
  if (r == 1) return k;
  ModulePtr sum = direct_sum(std::vector<ModulePtr>(r, k));
  return std::make_shared<const FiniteModule>(a, sum->orders(), sum->action(),
                                              power_label(k->label(), r));
}

// -------------------------------------------------------- trivial extension

Elem TrivialExtension::proj_a(const Elem& x) const {
  return Elem(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(base->rank()));
}

Vec TrivialExtension::proj_e(const Elem& x) const {
  return Vec(x.begin() + static_cast<std::ptrdiff_t>(base->rank()), x.end());
}

Elem TrivialExtension::embed(const Elem& a, const Vec& e) const {
  Elem x = base->reduce(a);
  Vec f = fiber->reduce(e);
  x.insert(x.end(), f.begin(), f.end());
  return x;
}

TrivialExtension trivial_extension(RingPtr a, ModulePtr e) {
  if (e->ring() != a) {
    throw AlgebraError("trivial_extension: module is over " + e->ring()->label() +
                       ", not " + a->label());
  }
  const std::size_t ka = a->rank();
  const std::size_t ke = e->rank();
  const std::size_t k = ka + ke;
  Vec orders = a->orders();
  orders.insert(orders.end(), e->orders().begin(), e->orders().end());
  group_order(orders);
  std::vector<Mat> products(k, Mat(k, Vec(k, 0)));
  for (std::size_t i = 0; i < ka; ++i) {
    for (std::size_t j = 0; j < ka; ++j) {
      const Vec& p = a->basis_product(i, j);
      std::copy(p.begin(), p.end(), products[i][j].begin());
    }
    for (std::size_t j = 0; j < ke; ++j) {
      const Vec& p = e->action()[i][j];
      std::copy(p.begin(), p.end(),
                products[i][ka + j].begin() + static_cast<std::ptrdiff_t>(ka));
      products[ka + j][i] = products[i][ka + j];
    }
  }
  Elem one = a->one();
  one.resize(k, 0);
  std::string label = a->label() + " ∝ " + e->label();
  auto ring = std::make_shared<const FiniteRing>(std::move(orders), std::move(products),
                                                 std::move(one), std::move(label));
  return TrivialExtension{std::move(a), std::move(e), std::move(ring)};
}

// ------------------------------------------------------------ local factors

Vec FactorModule::project(const FiniteModule& m, const Elem& idempotent,
                          const Vec& x) const {
  return part.coords_in(chart, m.act(idempotent, x));
}

FactorModule restrict_to_factor(const FiniteModule& m, const LocalDecomposition& d,
                                std::size_t factor) {
  if (d.ring != m.ring()) throw AlgebraError("restrict_to_factor: ring mismatch");
  const LocalFactor& f = d.factors.at(factor);
  Subgroup part = image(m.act_map(f.idempotent));
  GroupPresentation chart = part.presentation();
  const std::size_t kp = chart.orders.size();
  std::vector<Mat> action(f.ring->rank(), Mat(kp));
  for (std::size_t i = 0; i < f.ring->rank(); ++i) {
    Elem lifted = d.lift(factor, f.ring->basis(i));
    for (std::size_t b = 0; b < kp; ++b) {
      action[i][b] = part.coords_in(chart, m.act(lifted, chart.basis[b]));
    }
  }
  auto module = std::make_shared<const FiniteModule>(f.ring, chart.orders,
                                                     std::move(action),
                                                     m.label() + "*" + f.ring->label());
  return {std::move(module), std::move(part), std::move(chart)};
}

// ------------------------------------------------------ minimal generators

Subgroup maximal_times(const Submodule& n) {
  const ModulePtr& m = n.ambient();
  auto max = local_maximal_ideal(m->ring());
  if (!max) throw AlgebraError(m->ring()->label() + " is not local");
  Mat prods;
  for (const Elem& a : max->gens()) {
    for (const Vec& g : n.carrier().generators()) prods.push_back(m->act(a, g));
  }
  return saturate_module(*m, prods);
}

MinimalGenerators minimal_generators(const Submodule& n,
                                     const std::vector<Vec>& preferred) {
  const ModulePtr& m = n.ambient();
  Subgroup mn = maximal_times(n);
  Subgroup span = mn;
  MinimalGenerators out;
  auto consider = [&](const Vec& x) {
    if (span == n.carrier() || span.contains(x)) return;
    out.gens.push_back(x);
    span = span.sum(saturate_module(*m, {x}));
  };
  for (const Vec& x : preferred) {
    if (n.contains(x)) consider(m->reduce(x));
  }
  for (const Vec& x : n.gens()) consider(x);
  for (const Vec& x : n.carrier().generators()) consider(x);
  out.mu = out.gens.size();

  // Nakayama: the chosen lifts generate N, and |N / MN| = q^mu.
  if (!(saturate_module(*m, out.gens) == n.carrier())) {
    throw std::logic_error("minimal generators do not generate the submodule");
  }
  auto max = local_maximal_ideal(m->ring());
  std::uint64_t q = m->ring()->size() / max->size();
  std::uint64_t quotient = n.size() / mn.order();
  std::uint64_t expect = 1;
  for (std::size_t i = 0; i < out.mu; ++i) expect *= q;
  if (quotient != expect) {
    throw std::logic_error("minimal generator count disagrees with dim N/MN");
  }
  return out;
}

}  // namespace trivext
