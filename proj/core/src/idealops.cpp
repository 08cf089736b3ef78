#include "trivext/idealops.hpp"

#include <deque>
#include <set>
#include <sstream>
#include <stdexcept>

#include "trivext/budget.hpp"
#include "trivext/errors.hpp"
#include "trivext/finmod.hpp"

namespace trivext {

Ideal annihilator(const RingPtr& r, const Elem& x) {
  return Ideal::from_carrier(r, kernel(r->mult_map(r->reduce(x))));
}

Ideal intersect(const Ideal& i, const Ideal& j) {
  require_same_ring(i, j, "intersect");
  return Ideal::from_carrier(i.ring(), i.carrier().intersect(j.carrier()));
}

Ideal sum(const Ideal& i, const Ideal& j) {
  require_same_ring(i, j, "sum");
  std::vector<Elem> gens = i.gens();
  gens.insert(gens.end(), j.gens().begin(), j.gens().end());
  return Ideal::generated(i.ring(), std::move(gens));
}

Ideal product(const Ideal& i, const Ideal& j) {
  require_same_ring(i, j, "product");
  const FiniteRing& r = *i.ring();
  std::vector<Elem> gens;
  for (const Elem& a : i.gens()) {
    for (const Elem& b : j.gens()) {
      Elem ab = r.mul(a, b);
      if (!r.is_zero(ab)) gens.push_back(std::move(ab));
    }
  }
  return Ideal::generated(i.ring(), std::move(gens));
}

Ideal colon(const Ideal& i, const Ideal& j) {
  require_same_ring(i, j, "colon");
  const RingPtr& r = i.ring();
  const std::size_t k = r->rank();
  const std::size_t m = j.gens().size();
  if (m == 0) return Ideal::whole(r);
  // x ↦ (x g_1, ..., x g_m) into R^m; the colon is the preimage of I^m.
  GroupHom f;
  f.source_orders = r->orders();
  for (std::size_t c = 0; c < m; ++c) {
    f.target_orders.insert(f.target_orders.end(), r->orders().begin(), r->orders().end());
  }
  for (std::size_t b = 0; b < k; ++b) {
    Vec img;
    for (const Elem& g : j.gens()) {
      Elem p = r->mul(r->basis(b), g);
      img.insert(img.end(), p.begin(), p.end());
    }
    f.images.push_back(std::move(img));
  }
  Mat blocks;
  for (std::size_t c = 0; c < m; ++c) {
    for (const Vec& g : i.carrier().generators()) {
      Vec v(m * k, 0);
      std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>(c * k));
      blocks.push_back(std::move(v));
    }
  }
  Subgroup target = Subgroup::generated(f.target_orders, blocks);
  return Ideal::from_carrier(r, preimage(f, target));
}

Ideal inverse_finite(const Ideal& i) {
  if (i.is_zero()) {
    throw AlgebraError("the v-operation is defined for nonzero ideals only");
  }
  // Q(R) = R needs every regular element to be a unit; check it instead of
  // assuming it.
  i.ring()->assert_regular_is_unit();
  return colon(Ideal::whole(i.ring()), i);
}

Ideal v_closure_finite(const Ideal& i) { return inverse_finite(inverse_finite(i)); }

Ideal v_finite_witness_finite(const Ideal& i) {
  Ideal closure = v_closure_finite(i);
  Ideal witness = Ideal::whole(i.ring());
  if (!(v_closure_finite(witness) == closure)) {
    throw std::logic_error("R is not a v-finiteness witness for " + i.format());
  }
  return witness;
}

IdealMinimalGenerators minimal_generators(const Ideal& i,
                                          const std::vector<Elem>& preferred) {
  ModulePtr r1 = free_module(i.ring(), 1);
  MinimalGenerators mg = minimal_generators(ideal_as_submodule(i, r1), preferred);
  return IdealMinimalGenerators{i, std::move(mg.gens), mg.mu};
}

std::vector<Ideal> principal_ideals(const RingPtr& r) {
  require_within(r->size(), default_budget().max_ideal_ring, "principal ideal scan");
  std::vector<Ideal> out;
  std::set<Vec> seen;
  r->for_each_element([&](const Elem& x) {
    Ideal p = Ideal::principal(r, x);
    if (seen.insert(p.key()).second) out.push_back(std::move(p));
  });
  return out;
}

void for_each_ideal(const RingPtr& r, const std::function<bool(const Ideal&)>& visit,
                    std::uint64_t max_ideals) {
  std::vector<Ideal> principal = principal_ideals(r);
  std::set<Vec> seen;
  std::deque<Ideal> queue;
  Ideal zero = Ideal::zero(r);
  seen.insert(zero.key());
  queue.push_back(std::move(zero));
  while (!queue.empty()) {
    Ideal cur = std::move(queue.front());
    queue.pop_front();
    if (!visit(cur)) return;
    for (const Ideal& p : principal) {
      if (p.gens().empty() || cur.contains(p.gens().front())) continue;
      Subgroup c = cur.carrier().sum(p.carrier());
      if (!seen.insert(c.key()).second) continue;
      require_within(seen.size(), max_ideals, "ideal lattice of " + r->label());
      std::vector<Elem> gens = cur.gens();
      gens.push_back(p.gens().front());
      queue.push_back(Ideal::generated(r, std::move(gens)));
    }
  }
}

std::vector<Ideal> all_ideals(const RingPtr& r) {
  std::vector<Ideal> out;
  for_each_ideal(r, [&](const Ideal& i) {
    out.push_back(i);
    return true;
  }, default_budget().max_ideals);
  return out;
}

RingPredicate is_von_neumann_regular(const RingPtr& r) {
  std::set<Vec> idempotent_keys;
  for (const Elem& e : idempotents(*r)) idempotent_keys.insert(Ideal::principal(r, e).key());
  for (const Ideal& p : principal_ideals(r)) {
    if (!idempotent_keys.count(p.key())) return {false, p};
  }
  return {true, std::nullopt};
}

RingPredicate is_bezout(const RingPtr& r) {
  std::vector<Ideal> principal = principal_ideals(r);
  std::set<Vec> keys;
  for (const Ideal& p : principal) keys.insert(p.key());
  for (std::size_t a = 0; a < principal.size(); ++a) {
    for (std::size_t b = a + 1; b < principal.size(); ++b) {
      Subgroup c = principal[a].carrier().sum(principal[b].carrier());
      if (!keys.count(c.key())) return {false, sum(principal[a], principal[b])};
    }
  }
  return {true, std::nullopt};
}

Ideal component_ideal(const Ideal& i, std::size_t j) {
  const FiniteRing& r = *i.ring();
  const auto& info = r.product_info();
  if (!info) throw AlgebraError(r.label() + " is not a product ring");
  std::vector<Elem> gens;
  for (const Elem& g : i.gens()) gens.push_back(product_component(r, g, j));
  return Ideal::generated(info->components.at(j), std::move(gens));
}

Ideal product_of_ideals(const RingPtr& r, const std::vector<Ideal>& parts) {
  const auto& info = r->product_info();
  if (!info) throw AlgebraError(r->label() + " is not a product ring");
  if (parts.size() != info->components.size()) {
    throw AlgebraError("product_of_ideals: wrong number of components");
  }
  std::vector<Elem> gens;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    if (parts[j].ring() != info->components[j]) {
      throw AlgebraError("product_of_ideals: component ring mismatch");
    }
    for (const Elem& g : parts[j].gens()) {
      std::vector<Elem> pieces;
      for (std::size_t c = 0; c < parts.size(); ++c) {
        pieces.push_back(c == j ? g : info->components[c]->zero());
      }
      gens.push_back(product_assemble(*r, pieces));
    }
  }
  return Ideal::generated(r, std::move(gens));
}

ComponentwiseReport componentwise_check(const RingPtr& r, const std::vector<Elem>& elements,
                                        const std::vector<Ideal>& ideals) {
  const auto& info = r->product_info();
  if (!info) throw AlgebraError(r->label() + " is not a product ring");
  const std::size_t m = info->components.size();
  ComponentwiseReport rep;
  auto fail = [&](const std::string& what) {
    rep.holds = false;
    rep.detail = what;
  };

  for (const Elem& c : elements) {
    ++rep.cases;
    std::vector<Ideal> parts;
    for (std::size_t j = 0; j < m; ++j) {
      parts.push_back(annihilator(info->components[j], product_component(*r, c, j)));
    }
    if (!(annihilator(r, c) == product_of_ideals(r, parts))) {
      fail("(0:C) differs from the product of component annihilators at C = " +
           r->format(c));
      return rep;
    }
  }
  for (std::size_t a = 0; a < elements.size(); ++a) {
    for (std::size_t b = a + 1; b < elements.size(); ++b) {
      ++rep.cases;
      const Elem& x = elements[a];
      const Elem& y = elements[b];
      std::vector<Ideal> parts;
      for (std::size_t j = 0; j < m; ++j) {
        const RingPtr& rj = info->components[j];
        parts.push_back(intersect(Ideal::principal(rj, product_component(*r, x, j)),
                                  Ideal::principal(rj, product_component(*r, y, j))));
      }
      Ideal lhs = intersect(Ideal::principal(r, x), Ideal::principal(r, y));
      if (!(lhs == product_of_ideals(r, parts))) {
        fail("Ra ∩ Rb differs from the componentwise intersection at a = " +
             r->format(x) + ", b = " + r->format(y));
        return rep;
      }
    }
  }
  for (std::size_t a = 0; a < ideals.size(); ++a) {
    const Ideal& i = ideals[a];
    if (!i.is_zero()) {
      ++rep.cases;
      std::vector<Ideal> parts;
      for (std::size_t j = 0; j < m; ++j) {
        const RingPtr& rj = info->components[j];
        parts.push_back(colon(Ideal::whole(rj), component_ideal(i, j)));
      }
      if (!(inverse_finite(i) == product_of_ideals(r, parts))) {
        fail("I^-1 differs from the product of component inverses at " + i.format());
        return rep;
      }
    }
    for (std::size_t b = a + 1; b < ideals.size(); ++b) {
      ++rep.cases;
      const Ideal& j2 = ideals[b];
      std::vector<Ideal> parts;
      for (std::size_t j = 0; j < m; ++j) {
        parts.push_back(intersect(component_ideal(i, j), component_ideal(j2, j)));
      }
      if (!(intersect(i, j2) == product_of_ideals(r, parts))) {
        fail("I ∩ J differs from the componentwise intersection at " + i.format() +
             " and " + j2.format());
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace trivext
