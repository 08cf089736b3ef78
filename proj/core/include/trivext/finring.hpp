#pragma once

// Finite commutative unital rings given by an additive presentation
// Z/d_1 x ... x Z/d_k and structure constants for the basis products.

#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "trivext/abelian.hpp"

namespace trivext {

class FiniteRing;
using RingPtr = std::shared_ptr<const FiniteRing>;

/// Ring elements are coefficient vectors over the additive basis.
using Elem = Vec;

/// Present on rings built by make_product.
struct ProductInfo {
  std::vector<RingPtr> components;
  std::vector<std::size_t> offsets;  // first basis index of each component
};

/// Structural data computed on first use by enumerating elements.
struct RingStructure {
  std::vector<Elem> idempotents;
  std::vector<Elem> primitive_idempotents;
  Subgroup nilradical;
  std::vector<Subgroup> maximal_ideals;
};

class FiniteRing {
 public:
  /// `products[i][j]` is the coefficient vector of b_i * b_j.  Validates the
  /// ring axioms on basis elements (which implies them everywhere by
  /// bilinearity) and throws AlgebraError on failure.
  FiniteRing(Vec orders, std::vector<Mat> products, Elem one, std::string label,
             std::optional<ProductInfo> product = std::nullopt);

  const Vec& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  std::uint64_t size() const { return size_; }
  const std::string& label() const { return label_; }
  const Elem& one() const { return one_; }
  Elem zero() const { return Elem(rank(), 0); }
  Elem basis(std::size_t i) const;
  const Elem& basis_product(std::size_t i, std::size_t j) const {
    return products_[i][j];
  }
  const std::vector<Mat>& structure_constants() const { return products_; }
  const std::optional<ProductInfo>& product_info() const { return product_; }

  Elem add(const Elem& x, const Elem& y) const { return add_mod(x, y, orders_); }
  Elem sub(const Elem& x, const Elem& y) const { return sub_mod(x, y, orders_); }
  Elem neg(const Elem& x) const { return sub_mod(zero(), x, orders_); }
  Elem scale(std::int64_t s, const Elem& x) const {
    return scale_mod(s, x, orders_);
  }
  Elem mul(const Elem& x, const Elem& y) const;
  Elem pow(Elem x, std::uint64_t e) const;
  bool is_zero(const Elem& x) const;
  Elem reduce(Elem x) const;

  std::uint64_t index(const Elem& x) const { return index_of(x, orders_); }
  Elem element(std::uint64_t i) const { return element_at(i, orders_); }
  void for_each_element(const std::function<void(const Elem&)>& f) const;

  /// Lookup tables over element indices, built for rings of at most
  /// kTableLimit elements.
  static constexpr std::uint64_t kTableLimit = 256;
  bool has_tables() const { return !mul_table_.empty(); }
  std::uint32_t mul_index(std::uint32_t i, std::uint32_t j) const {
    return mul_table_[i * size_ + j];
  }
  std::uint32_t add_index(std::uint32_t i, std::uint32_t j) const {
    return add_table_[i * size_ + j];
  }

  /// Multiplication by x as an endomorphism of the additive group.
  GroupHom mult_map(const Elem& x) const;

  std::optional<Elem> inverse(const Elem& x) const;
  bool is_unit(const Elem& x) const { return inverse(x).has_value(); }
  bool is_regular(const Elem& x) const;

  /// Checks once per ring that every regular element is a unit, which is
  /// what lets the v-operation be computed inside R.  Throws
  /// std::logic_error on failure.
  void assert_regular_is_unit() const;

  /// Idempotents, nilradical and maximal ideals; throws ResourceError when
  /// the ring exceeds the element budget.
  const RingStructure& structure() const;

  std::string format(const Elem& x) const;

 private:
  void validate() const;
  void build_tables();

  Vec orders_;
  std::vector<Mat> products_;
  Elem one_;
  std::string label_;
  std::optional<ProductInfo> product_;
  std::uint64_t size_ = 0;
  std::vector<std::uint16_t> mul_table_;
  std::vector<std::uint16_t> add_table_;
  mutable std::once_flag regular_checked_;
  mutable std::mutex structure_mutex_;
  mutable std::shared_ptr<const RingStructure> structure_;
};

RingPtr make_zmod(std::int64_t n);
/// F_p[x]/(f) with f given low degree first; f must be monic mod p.
RingPtr make_quotient_poly(std::int64_t p, const std::vector<std::int64_t>& f);
RingPtr make_product(const std::vector<RingPtr>& rings);

/// Projection of a product-ring element to component `j`, and the inverse
/// assembly.
Elem product_component(const FiniteRing& r, const Elem& x, std::size_t j);
Elem product_assemble(const FiniteRing& r, const std::vector<Elem>& parts);

bool is_prime(std::int64_t n);

const std::vector<Elem>& idempotents(const FiniteRing& r);
/// Minimal nonzero idempotents; they are orthogonal and sum to one.
const std::vector<Elem>& primitive_idempotents(const FiniteRing& r);
bool is_idempotent(const FiniteRing& r, const Elem& x);
bool is_nilpotent(const FiniteRing& r, const Elem& x);

class Ideal;
Ideal nilradical(const RingPtr& r);
std::vector<Ideal> maximal_ideals(const RingPtr& r);
/// The maximal ideal when R is local, nullopt otherwise.
std::optional<Ideal> local_maximal_ideal(const RingPtr& r);
bool is_local(const RingPtr& r);

struct LocalFactor {
  RingPtr ring;
  Elem idempotent;          // in R
  Subgroup part;            // the additive subgroup R e
  GroupPresentation chart;  // presentation of `part`
};

struct LocalDecomposition {
  RingPtr ring;
  std::vector<LocalFactor> factors;

  std::vector<Elem> forward(const Elem& x) const;
  Elem backward(const std::vector<Elem>& parts) const;
  /// Image in R of a factor element.
  Elem lift(std::size_t factor, const Elem& y) const;
  /// Coordinates of x e_i in factor i.
  Elem project(std::size_t factor, const Elem& x) const;
};

LocalDecomposition decompose_into_local(const RingPtr& r);

}  // namespace trivext
