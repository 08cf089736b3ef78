#include "trivext/ideal.hpp"

#include <sstream>

#include "trivext/errors.hpp"

namespace trivext {

Subgroup saturate(const FiniteRing& r, const std::vector<Elem>& gens) {
  Subgroup s(r.orders());
  Mat spans;
  for (const Elem& g : gens) {
    Elem x = r.reduce(g);
    if (r.is_zero(x)) continue;
    for (std::size_t i = 0; i < r.rank(); ++i) spans.push_back(r.mul(r.basis(i), x));
  }
  s.insert_all(spans);
  return s;
}

std::vector<Elem> greedy_generators(const FiniteRing& r, const Subgroup& carrier,
                                    const std::vector<Elem>& preferred) {
  std::vector<Elem> chosen;
  Subgroup span(r.orders());
  auto consider = [&](const Elem& x) {
    if (span == carrier || span.contains(x)) return;
    chosen.push_back(x);
    span = span.sum(saturate(r, {x}));
  };
  for (const Elem& x : preferred) {
    if (carrier.contains(x)) consider(r.reduce(x));
  }
  for (const Elem& x : carrier.generators()) consider(x);
  if (!(span == carrier)) throw std::logic_error("carrier is not an ideal");
  return chosen;
}

void require_same_ring(const Ideal& a, const Ideal& b, const char* op) {
  if (a.ring() != b.ring()) {
    throw AlgebraError(std::string(op) + ": ideals of different rings (" +
                       a.ring()->label() + ", " + b.ring()->label() + ")");
  }
}

Ideal::Ideal(RingPtr ring, std::vector<Elem> gens, Subgroup carrier)
    : ring_(std::move(ring)), gens_(std::move(gens)), carrier_(std::move(carrier)) {}

Ideal Ideal::generated(RingPtr ring, std::vector<Elem> gens) {
  for (Elem& g : gens) g = ring->reduce(std::move(g));
  Subgroup c = saturate(*ring, gens);
  return Ideal(std::move(ring), std::move(gens), std::move(c));
}

Ideal Ideal::from_carrier(RingPtr ring, Subgroup carrier) {
  if (carrier.orders() != ring->orders()) {
    throw AlgebraError("ideal carrier lives in a different group");
  }
  auto gens = greedy_generators(*ring, carrier);
  return Ideal(std::move(ring), std::move(gens), std::move(carrier));
}

Ideal Ideal::zero(RingPtr ring) {
  Subgroup c(ring->orders());
  return Ideal(std::move(ring), {}, std::move(c));
}

Ideal Ideal::whole(RingPtr ring) {
  Subgroup c = Subgroup::whole(ring->orders());
  Elem one = ring->one();
  return Ideal(std::move(ring), {std::move(one)}, std::move(c));
}

Ideal Ideal::principal(RingPtr ring, const Elem& x) {
  return generated(std::move(ring), {x});
}

bool Ideal::subset_of(const Ideal& other) const {
  require_same_ring(*this, other, "subset_of");
  return carrier_.subset_of(other.carrier_);
}

std::string Ideal::format() const {
  if (size() == 1) return "0";
  std::ostringstream os;
  os << "R(";
  bool first = true;
  for (const Elem& g : gens_) {
    if (ring_->is_zero(g)) continue;
    os << (first ? "" : ", ") << ring_->format(g);
    first = false;
  }
  os << ") [" << size() << " elements]";
  return os.str();
}

}  // namespace trivext
