#pragma once

// Brute-force reference computations used as test oracles.  They work on
// explicit element sets and share no code with the library beyond ring
// arithmetic on single elements.

#include <set>
#include <vector>

#include "trivext/finring.hpp"
#include "trivext/finmod.hpp"

namespace trivext::oracle {

using ElemSet = std::set<Vec>;

inline std::vector<Elem> elements(const FiniteRing& r) {
  std::vector<Elem> out;
  r.for_each_element([&](const Elem& x) { out.push_back(x); });
  return out;
}

inline ElemSet as_set(const Subgroup& s) {
  ElemSet out;
  s.for_each_element([&](const Vec& x) { out.insert(x); });
  return out;
}

/// Closure of `seed` under addition and multiplication by ring elements.
inline ElemSet ideal_closure(const FiniteRing& r, const ElemSet& seed) {
  auto all = elements(r);
  ElemSet s = seed;
  s.insert(r.zero());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> cur(s.begin(), s.end());
    for (const Elem& x : cur) {
      for (const Elem& y : cur) {
        if (s.insert(r.add(x, y)).second) grew = true;
      }
      for (const Elem& a : all) {
        if (s.insert(r.mul(a, x)).second) grew = true;
      }
    }
  }
  return s;
}

inline std::set<ElemSet> all_ideals(const FiniteRing& r) {
  auto all = elements(r);
  std::set<ElemSet> found;
  std::vector<ElemSet> frontier{ideal_closure(r, {})};
  found.insert(frontier.front());
  while (!frontier.empty()) {
    ElemSet cur = frontier.back();
    frontier.pop_back();
    for (const Elem& x : all) {
      if (cur.count(x)) continue;
      ElemSet bigger = cur;
      bigger.insert(x);
      bigger = ideal_closure(r, bigger);
      if (found.insert(bigger).second) frontier.push_back(bigger);
    }
  }
  return found;
}

inline ElemSet annihilator(const FiniteRing& r, const Elem& c) {
  ElemSet s;
  for (const Elem& y : elements(r)) {
    if (r.is_zero(r.mul(c, y))) s.insert(y);
  }
  return s;
}

inline std::vector<ElemSet> maximal_ideals(const FiniteRing& r) {
  auto ideals = all_ideals(r);
  std::vector<ElemSet> out;
  for (const ElemSet& i : ideals) {
    if (i.size() == r.size()) continue;
    bool maximal = true;
    for (const ElemSet& j : ideals) {
      if (j.size() == r.size() || j.size() <= i.size()) continue;
      bool contains = true;
      for (const Elem& x : i) contains = contains && j.count(x);
      if (contains) maximal = false;
    }
    if (maximal) out.push_back(i);
  }
  return out;
}

inline bool is_unit(const FiniteRing& r, const Elem& x) {
  for (const Elem& y : elements(r)) {
    if (r.mul(x, y) == r.one()) return true;
  }
  return false;
}

inline bool is_regular(const FiniteRing& r, const Elem& x) {
  for (const Elem& y : elements(r)) {
    if (!r.is_zero(y) && r.is_zero(r.mul(x, y))) return false;
  }
  return true;
}

/// Elements of R^n (as concatenated coordinates) annihilated by (r_i) ↦ Σ r_i g_i.
inline ElemSet syzygy(const FiniteRing& r, const std::vector<Elem>& gens) {
  ElemSet out;
  Vec orders;
  for (std::size_t c = 0; c < gens.size(); ++c) {
    orders.insert(orders.end(), r.orders().begin(), r.orders().end());
  }
  Subgroup::whole(orders).for_each_element([&](const Vec& v) {
    Elem acc = r.zero();
    for (std::size_t c = 0; c < gens.size(); ++c) {
      Elem part(v.begin() + static_cast<std::ptrdiff_t>(c * r.rank()),
                v.begin() + static_cast<std::ptrdiff_t>((c + 1) * r.rank()));
      acc = r.add(acc, r.mul(part, gens[c]));
    }
    if (r.is_zero(acc)) out.insert(v);
  });
  return out;
}

}  // namespace trivext::oracle
