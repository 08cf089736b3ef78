#include "trivext/resolve.hpp"

#include <sstream>
#include <stdexcept>

#include "trivext/errors.hpp"

namespace trivext {

namespace {

std::vector<Vec> generators_for(const Submodule& n, bool local) {
  if (local) return minimal_generators(n).gens;
  return Submodule::from_carrier(n.ambient(), n.carrier()).gens();
}

}  // namespace

ModuleMap map_from_free(const ModulePtr& target, const std::vector<Vec>& gens) {
  const RingPtr& r = target->ring();
  ModuleMap f{free_module(r, gens.size()), target, {}};
  for (const Vec& g : gens) {
    for (std::size_t j = 0; j < r->rank(); ++j) {
      f.images.push_back(target->act(r->basis(j), g));
    }
  }
  return f;
}

Presentation presentation(const Submodule& n, std::size_t depth) {
  const bool local = is_local(n.ambient()->ring());
  ModuleMap aug = map_from_free(n.ambient(), generators_for(n, local));
  Presentation p{n, aug, {}, {}};
  p.syzygies.push_back(kernel(aug));
  for (std::size_t j = 0; j < depth; ++j) {
    const Submodule& k = p.syzygies.back();
    ModuleMap step = map_from_free(k.ambient(), generators_for(k, local));
    Submodule next = kernel(step);
    p.steps.push_back(std::move(step));
    p.syzygies.push_back(std::move(next));
  }
  return p;
}

Submodule syzygy(const RingPtr& r, const std::vector<Elem>& gens) {
  return kernel(map_from_free(free_module(r, 1), gens));
}

Submodule minimal_syzygy(const RingPtr& r, const std::vector<Elem>& gens) {
  if (!is_local(r)) throw AlgebraError(r->label() + " is not local");
  Ideal i = Ideal::generated(r, gens);
  if (minimal_generators(i).mu != gens.size()) {
    throw NotMinimalError("generators are not a minimal generating set of " + i.format());
  }
  return syzygy(r, gens);
}

std::string PdResult::describe() const {
  std::ostringstream os;
  if (kind == Kind::Free) {
    os << "Free(0)";
  } else {
    os << "NotFreeUpTo(" << bound << ")";
  }
  return os.str();
}

namespace {

PdResult pd_local(const Submodule& n, std::size_t bound) {
  PdResult res;
  res.bound = bound;
  MinimalGenerators mg = minimal_generators(n);
  ModuleMap aug = map_from_free(n.ambient(), mg.gens);
  Submodule k = kernel(aug);
  if (k.is_zero()) {
    res.kind = PdResult::Kind::Free;
    res.basis = std::move(mg.gens);
    return res;
  }
  res.kind = PdResult::Kind::NotFreeUpTo;
  res.syzygies.push_back(k);
  while (res.syzygies.size() < bound) {
    const Submodule& cur = res.syzygies.back();
    Submodule next = kernel(map_from_free(cur.ambient(), minimal_generators(cur).gens));
    if (next.is_zero()) {
      throw std::logic_error("minimal resolution became free after a nonzero syzygy");
    }
    res.syzygies.push_back(std::move(next));
  }
  return res;
}

}  // namespace

PdResult projective_dimension_up_to(const Submodule& n, std::size_t bound) {
  if (bound < 1) throw AlgebraError("projective_dimension_up_to: bound must be positive");
  const RingPtr& r = n.ambient()->ring();
  if (is_local(r)) return pd_local(n, bound);

  LocalDecomposition d = decompose_into_local(r);
  SubmoduleModule whole = as_module(n);
  PdResult res;
  res.bound = bound;
  res.kind = PdResult::Kind::Free;
  for (std::size_t i = 0; i < d.factors.size(); ++i) {
    FactorModule fm = restrict_to_factor(*whole.module, d, i);
    PdResult part = pd_local(Submodule::whole(fm.module), bound);
    if (!part.is_free()) res.kind = PdResult::Kind::NotFreeUpTo;
    res.factors.push_back(std::move(part));
  }
  return res;
}

QuotientModule cyclic_module(const Ideal& i) {
  ModulePtr r1 = free_module(i.ring(), 1);
  return quotient_module(ideal_as_submodule(i, r1));
}

ProjectiveCyclic is_projective_cyclic(const Ideal& i) {
  for (const Elem& e : idempotents(*i.ring())) {
    if (Ideal::principal(i.ring(), e) == i) return {true, e};
  }
  return {false, std::nullopt};
}

WeakNdReport weak_nd_check_finite(const RingPtr& r, std::size_t n, std::size_t d,
                                  std::size_t bound, std::uint64_t max_ideals) {
  if (bound <= d) throw AlgebraError("weak_nd_check_finite: bound must exceed d");
  WeakNdReport rep;
  for_each_ideal(r, [&](const Ideal& i) {
    ++rep.ideals_checked;
    if (i.is_whole()) return true;
    QuotientModule q = cyclic_module(i);
    Submodule m = Submodule::whole(q.module);
    Presentation p = presentation(m, n);
    if (p.depth() != n) throw std::logic_error("presentation has the wrong depth");
    // Over a finite ring the projective dimension is 0 or infinite, so
    // pd <= d holds exactly when the module is projective.
    PdResult pd = projective_dimension_up_to(m, bound);
    if (!pd.is_free()) {
      rep.holds = false;
      rep.witness = i;
      rep.detail = "R/I has " + pd.describe() + " for I = " + i.format();
      return false;
    }
    return true;
  }, max_ideals);
  return rep;
}

}  // namespace trivext
