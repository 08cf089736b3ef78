#pragma once

// Finite modules over a FiniteRing, module maps, submodules, and the
// trivial extension A ∝ E.

#include <memory>
#include <string>
#include <vector>

#include "trivext/finring.hpp"
#include "trivext/ideal.hpp"

namespace trivext {

class FiniteModule {
 public:
  /// `action[i][j]` is b_i · m_j for ring basis b_i and module basis m_j.
  /// The axioms are checked on basis elements; AlgebraError on failure.
  FiniteModule(RingPtr ring, Vec orders, std::vector<Mat> action, std::string label);

  const RingPtr& ring() const { return ring_; }
  const Vec& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint64_t size() const { return group_order(orders_); }
  const std::string& label() const { return label_; }
  const std::vector<Mat>& action() const { return action_; }

  Vec zero() const { return Vec(rank(), 0); }
  Vec basis(std::size_t j) const;
  Vec add(const Vec& x, const Vec& y) const { return add_mod(x, y, orders_); }
  Vec sub(const Vec& x, const Vec& y) const { return sub_mod(x, y, orders_); }
  Vec scale(std::int64_t s, const Vec& x) const { return scale_mod(s, x, orders_); }
  Vec reduce(Vec x) const;
  bool is_zero(const Vec& x) const;

  /// a · m
  Vec act(const Elem& a, const Vec& m) const;
  /// m ↦ a · m as a group endomorphism.
  GroupHom act_map(const Elem& a) const;

  void for_each_element(const std::function<void(const Vec&)>& f) const;
  std::string format(const Vec& m) const { return format_vec(m); }

 private:
  RingPtr ring_;
  Vec orders_;
  std::vector<Mat> action_;
  std::string label_;
};

using ModulePtr = std::shared_ptr<const FiniteModule>;

/// A-linear map given by the images of the source basis vectors.
struct ModuleMap {
  ModulePtr source;
  ModulePtr target;
  Mat images;

  /// Throws AlgebraError unless the map is well defined and A-linear.
  void validate() const;
  Vec apply(const Vec& x) const;
  GroupHom as_group_hom() const;
};

class Submodule {
 public:
  static Submodule generated(ModulePtr ambient, std::vector<Vec> gens);
  /// The carrier must already be closed under the ring action.
  static Submodule from_carrier(ModulePtr ambient, Subgroup carrier);
  static Submodule zero(ModulePtr ambient);
  static Submodule whole(ModulePtr ambient);

  const ModulePtr& ambient() const { return ambient_; }
  const std::vector<Vec>& gens() const { return gens_; }
  const Subgroup& carrier() const { return carrier_; }

  bool contains(const Vec& x) const { return carrier_.contains(x); }
  bool subset_of(const Submodule& other) const;
  bool is_zero() const { return carrier_.is_zero(); }
  std::uint64_t size() const { return carrier_.order(); }

  /// Throws std::logic_error if the carrier is not stable under the ring.
  void assert_stable() const;

  friend bool operator==(const Submodule& a, const Submodule& b) {
    return a.ambient_ == b.ambient_ && a.carrier_ == b.carrier_;
  }

 private:
  Submodule(ModulePtr ambient, std::vector<Vec> gens, Subgroup carrier);

  ModulePtr ambient_;
  std::vector<Vec> gens_;
  Subgroup carrier_;
};

/// Additive span of {b_i · g}.
Subgroup saturate_module(const FiniteModule& m, const std::vector<Vec>& gens);

Submodule kernel(const ModuleMap& f);
Submodule image(const ModuleMap& f);

ModulePtr free_module(RingPtr r, std::size_t n);
ModulePtr direct_sum(const std::vector<ModulePtr>& parts);

struct QuotientModule {
  ModulePtr module;
  ModuleMap projection;  // ambient -> module
};
QuotientModule quotient_module(const Submodule& n);

struct SubmoduleModule {
  ModulePtr module;
  ModuleMap inclusion;  // module -> ambient
};
SubmoduleModule as_module(const Submodule& n);

/// An ideal as a submodule of the free module of rank one.
Submodule ideal_as_submodule(const Ideal& i, const ModulePtr& ring_module);

/// A/M for local A, with the projection from A.
QuotientModule residue_field(const RingPtr& a);
/// (A/M)^r for local A.
ModulePtr residue_field_power(const RingPtr& a, std::size_t r);

struct TrivialExtension {
  RingPtr base;
  ModulePtr fiber;
  RingPtr ring;

  Elem proj_a(const Elem& x) const;
  Vec proj_e(const Elem& x) const;
  Elem embed(const Elem& a, const Vec& e) const;
};

TrivialExtension trivial_extension(RingPtr a, ModulePtr e);

/// The part M e of a module for a local factor R e, as a module over the
/// factor ring.
struct FactorModule {
  ModulePtr module;
  Subgroup part;
  GroupPresentation chart;

  Vec project(const FiniteModule& m, const Elem& idempotent, const Vec& x) const;
};
FactorModule restrict_to_factor(const FiniteModule& m, const LocalDecomposition& d,
                                std::size_t factor);

struct MinimalGenerators {
  std::vector<Vec> gens;
  std::size_t mu = 0;
};

/// Lifts of a basis of N / M N over a local ring (R, M).  Candidates from
/// `preferred` are tried first.  Throws AlgebraError for non-local rings.
MinimalGenerators minimal_generators(const Submodule& n,
                                     const std::vector<Vec>& preferred = {});

/// The submodule M N for the maximal ideal M of a local ring.
Subgroup maximal_times(const Submodule& n);

}  // namespace trivext
