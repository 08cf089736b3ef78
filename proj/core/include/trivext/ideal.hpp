#pragma once

#include <string>
#include <vector>

#include "trivext/finring.hpp"

namespace trivext {

/// An ideal of a FiniteRing: a generator list plus its saturated carrier,
/// the additive subgroup spanned by all b_i * g.
class Ideal {
 public:
  static Ideal generated(RingPtr ring, std::vector<Elem> gens);
  /// The carrier must already be closed under multiplication; a short
  /// generator list is recomputed greedily.
  static Ideal from_carrier(RingPtr ring, Subgroup carrier);
  static Ideal zero(RingPtr ring);
  static Ideal whole(RingPtr ring);
  static Ideal principal(RingPtr ring, const Elem& x);

  const RingPtr& ring() const { return ring_; }
  const std::vector<Elem>& gens() const { return gens_; }
  const Subgroup& carrier() const { return carrier_; }

  bool contains(const Elem& x) const { return carrier_.contains(x); }
  bool subset_of(const Ideal& other) const;
  bool is_zero() const { return carrier_.is_zero(); }
  bool is_whole() const { return carrier_.is_whole(); }
  std::uint64_t size() const { return carrier_.order(); }
  std::vector<Elem> elements(std::uint64_t limit) const {
    return carrier_.elements(limit);
  }
  Vec key() const { return carrier_.key(); }

  std::string format() const;

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.ring_ == b.ring_ && a.carrier_ == b.carrier_;
  }

 private:
  Ideal(RingPtr ring, std::vector<Elem> gens, Subgroup carrier);

  RingPtr ring_;
  std::vector<Elem> gens_;
  Subgroup carrier_;
};

/// Additive span of {b_i * g}: the ideal generated by `gens`.
Subgroup saturate(const FiniteRing& r, const std::vector<Elem>& gens);

/// Greedy short generator list for an ideal carrier.
std::vector<Elem> greedy_generators(const FiniteRing& r, const Subgroup& carrier,
                                    const std::vector<Elem>& preferred = {});

/// Throws AlgebraError unless both ideals live in the same ring object.
void require_same_ring(const Ideal& a, const Ideal& b, const char* op);

}  // namespace trivext
