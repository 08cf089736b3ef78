#pragma once

// Finite abelian groups Z/d_1 x ... x Z/d_k and their subgroups.
//
// A subgroup H is stored as the lattice L = pi^{-1}(H) in Z^k, which always
// contains diag(d).  L is kept in reduced row Hermite form: row i has its
// pivot p_i | d_i on the diagonal, zeros before it, and entries after it
// reduced into [0, p_j).  That form is unique, so equality of subgroups is
// equality of rows.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace trivext {

using Vec = std::vector<std::int64_t>;
using Mat = std::vector<Vec>;

std::int64_t mod_floor(std::int64_t a, std::int64_t m);

/// Reduce every coordinate of `v` into [0, orders[i]).
void reduce_mod(Vec& v, const Vec& orders);

Vec add_mod(const Vec& a, const Vec& b, const Vec& orders);
Vec sub_mod(const Vec& a, const Vec& b, const Vec& orders);
Vec scale_mod(std::int64_t s, const Vec& a, const Vec& orders);

/// Product of the orders; throws ResourceError above 2^62.
std::uint64_t group_order(const Vec& orders);

/// Lexicographic index (coordinate 0 most significant) and its inverse.
std::uint64_t index_of(const Vec& x, const Vec& orders);
Vec element_at(std::uint64_t index, const Vec& orders);

std::string format_vec(const Vec& v);

/// Smith form S = U A V of a square nonsingular integer matrix; only the
/// column transform V and its inverse are kept.
struct SmithForm {
  Vec diagonal;
  Mat v;
  Mat v_inverse;
};
SmithForm smith_normal_form(Mat a);

/// Explicit decomposition of a finite abelian group (a subgroup or a quotient)
/// as Z/s_1 x ... x Z/s_r with every s_i > 1.
struct GroupPresentation {
  Vec orders;             // invariant factors s_i
  Mat basis;              // generator of each cyclic factor, in ambient coords
  Mat to_coords;          // k x k transform applied to lifted coefficients
  std::vector<std::size_t> kept;  // columns of the transform that survive
};

class Subgroup {
 public:
  /// Zero subgroup of Z/orders.
  explicit Subgroup(Vec orders);

  static Subgroup whole(Vec orders);
  static Subgroup generated(Vec orders, std::span<const Vec> gens);

  void insert(const Vec& v);
  void insert_all(std::span<const Vec> gens);

  const Vec& orders() const { return orders_; }
  std::size_t rank() const { return orders_.size(); }
  const Mat& rows() const { return rows_; }
  std::int64_t pivot(std::size_t i) const { return rows_[i][i]; }

  bool contains(const Vec& x) const;
  bool is_zero() const;
  bool is_whole() const;
  std::uint64_t order() const;

  /// Rows whose pivot is a proper divisor of the order; together they
  /// generate the subgroup.
  Mat generators() const;

  /// Coefficients c with x = sum c_i rows_i (mod orders), or nullopt.
  std::optional<Vec> coefficients(const Vec& x) const;

  bool subset_of(const Subgroup& other) const;
  Subgroup sum(const Subgroup& other) const;
  Subgroup intersect(const Subgroup& other) const;

  void for_each_element(const std::function<void(const Vec&)>& f) const;
  Mat elements(std::uint64_t limit) const;

  GroupPresentation presentation() const;
  Vec coords_in(const GroupPresentation& p, const Vec& x) const;

  /// Canonical flattened form, usable as a map key.
  Vec key() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.orders_ == b.orders_ && a.rows_ == b.rows_;
  }

  /// Build directly from rows already in reduced Hermite form.
  static Subgroup from_hermite_rows(Vec orders, Mat rows);

 private:
  void insert_raw(Vec v);
  void normalize();

  Vec orders_;
  Mat rows_;
};

/// Presentation of the quotient group Z/orders modulo a subgroup.
GroupPresentation quotient_presentation(const Subgroup& sub);
/// Coordinates of an ambient element in the quotient presentation.
Vec quotient_coords(const GroupPresentation& q, const Vec& x);

/// A homomorphism Z/source -> Z/target given by the images of the standard
/// generators.
struct GroupHom {
  Vec source_orders;
  Vec target_orders;
  Mat images;

  /// Throws AlgebraError if some d_i * images[i] is nonzero.
  void check_well_defined() const;
  Vec apply(const Vec& x) const;
};

Subgroup kernel(const GroupHom& f);
Subgroup image(const GroupHom& f);
Subgroup image_of(const GroupHom& f, const Subgroup& sub);
Subgroup preimage(const GroupHom& f, const Subgroup& target_sub);
/// Some x with f(x) = y, or nullopt.
std::optional<Vec> solve(const GroupHom& f, const Vec& y);

}  // namespace trivext
