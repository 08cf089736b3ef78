#pragma once

// Presentations, syzygies and projective dimension over finite rings.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "trivext/finmod.hpp"
#include "trivext/idealops.hpp"

namespace trivext {

/// F_n -> ... -> F_0 -> N -> 0 for a submodule N of some ambient module.
struct Presentation {
  Submodule module;
  ModuleMap augmentation;             // F_0 -> ambient, image = N
  std::vector<ModuleMap> steps;       // steps[j] : F_{j+1} -> F_j
  std::vector<Submodule> syzygies;    // syzygies[j] = kernel of the map out of F_j

  std::size_t depth() const { return steps.size(); }
};

/// The map R^n -> X sending the c-th standard generator to gens[c].
ModuleMap map_from_free(const ModulePtr& target, const std::vector<Vec>& gens);

/// Builds `depth` steps.  Over a local ring every step uses minimal
/// generators; otherwise a short greedy generating set.
Presentation presentation(const Submodule& n, std::size_t depth);

/// Kernel of R^n -> R, (r_i) ↦ Σ r_i g_i.
Submodule syzygy(const RingPtr& r, const std::vector<Elem>& gens);
/// Same, for a local ring and a minimal generating set; NotMinimalError
/// otherwise.
Submodule minimal_syzygy(const RingPtr& r, const std::vector<Elem>& gens);

struct PdResult {
  enum class Kind { Free, NotFreeUpTo };
  Kind kind = Kind::Free;
  std::size_t bound = 0;
  /// Local ring, Free: a basis of the module.
  std::vector<Vec> basis;
  /// Local ring, NotFreeUpTo: the nonzero minimal syzygies at steps 0..bound-1.
  std::vector<Submodule> syzygies;
  /// Non-local ring: one result per local factor.
  std::vector<PdResult> factors;

  bool is_free() const { return kind == Kind::Free; }
  std::string describe() const;
};

/// Over a local ring: Free when the minimal first syzygy vanishes, else
/// NotFreeUpTo(bound).  Non-local rings go through the local decomposition
/// and report Free (projective) only when every factor does.
PdResult projective_dimension_up_to(const Submodule& n, std::size_t bound);

/// R/I as a module, with the projection from R.
QuotientModule cyclic_module(const Ideal& i);

struct ProjectiveCyclic {
  bool projective = false;
  std::optional<Elem> idempotent;
};
/// True iff I = Re for an idempotent e.
ProjectiveCyclic is_projective_cyclic(const Ideal& i);

struct WeakNdReport {
  bool holds = true;
  std::uint64_t ideals_checked = 0;
  std::optional<Ideal> witness;
  std::string detail;
};

/// Every cyclic module R/I is n-presented (a presentation of depth n is
/// built for each) and the check asks for pd(R/I) <= d, decided with
/// projective_dimension_up_to(., bound).  Requires bound > d.  Stops at the
/// first failing ideal.
WeakNdReport weak_nd_check_finite(const RingPtr& r, std::size_t n, std::size_t d,
                                  std::size_t bound, std::uint64_t max_ideals);

}  // namespace trivext
