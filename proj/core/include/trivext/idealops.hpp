#pragma once

// Ideal arithmetic and the v-operation over finite rings.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trivext/ideal.hpp"

namespace trivext {

/// (0 : x)
Ideal annihilator(const RingPtr& r, const Elem& x);
Ideal intersect(const Ideal& i, const Ideal& j);
Ideal sum(const Ideal& i, const Ideal& j);
Ideal product(const Ideal& i, const Ideal& j);
/// (I : J) = {x in R : xJ ⊆ I}
Ideal colon(const Ideal& i, const Ideal& j);

/// (R : I) computed inside R, which is its own total ring of quotients.
/// Rejects the zero ideal.
Ideal inverse_finite(const Ideal& i);
/// (R : (R : I))
Ideal v_closure_finite(const Ideal& i);
/// A finitely generated J with J_v = I_v (always R here), with the equality
/// recomputed before returning.
Ideal v_finite_witness_finite(const Ideal& i);

struct IdealMinimalGenerators {
  Ideal ideal;
  std::vector<Elem> gens;
  std::size_t mu = 0;
};

/// Lifts of a basis of I / MI over a local ring.  Generators listed in
/// `preferred` are tried first.
IdealMinimalGenerators minimal_generators(const Ideal& i,
                                          const std::vector<Elem>& preferred = {});

/// Distinct principal ideals Rx, in order of the first generating element.
std::vector<Ideal> principal_ideals(const RingPtr& r);

/// Walks the ideal lattice breadth-first from 0 by adding principal ideals.
/// `visit` returns false to stop early.  Throws ResourceError when more than
/// `max_ideals` ideals would be produced or |R| exceeds the ideal budget.
void for_each_ideal(const RingPtr& r, const std::function<bool(const Ideal&)>& visit,
                    std::uint64_t max_ideals);
std::vector<Ideal> all_ideals(const RingPtr& r);

struct RingPredicate {
  bool holds = true;
  std::optional<Ideal> witness;
};

/// Every principal ideal is generated by an idempotent.
RingPredicate is_von_neumann_regular(const RingPtr& r);
/// Every ideal generated by two elements is principal.  Pairs suffice: if
/// all 2-generated ideals are principal, induction on the number of
/// generators covers every finitely generated ideal.
RingPredicate is_bezout(const RingPtr& r);

/// Ideals of a product ring split into component ideals.
Ideal component_ideal(const Ideal& i, std::size_t j);
Ideal product_of_ideals(const RingPtr& r, const std::vector<Ideal>& parts);

struct ComponentwiseReport {
  bool holds = true;
  std::uint64_t cases = 0;
  std::string detail;
};

/// Checks (0:C) = Π(0:c_j), Ra ∩ Rb = Π(R_j a_j ∩ R_j b_j),
/// I ∩ J = Π(I_j ∩ J_j) and I^{-1} = Π I_j^{-1} on the given data.
ComponentwiseReport componentwise_check(const RingPtr& r, const std::vector<Elem>& elements,
                                        const std::vector<Ideal>& ideals);

}  // namespace trivext
