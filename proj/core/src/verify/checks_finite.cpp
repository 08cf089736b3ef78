#include <algorithm>
#include <sstream>

#include "internal.hpp"
#include "trivext/budget.hpp"
#include "trivext/errors.hpp"
#include "trivext/idealops.hpp"
#include "trivext/resolve.hpp"

namespace trivext::detail {

namespace {

Instance replay_instance(const RingSpec& spec, const std::string& ring) {
  return make_instance(spec, ring, "witness");
}

std::string str(const json& data, const char* key) {
  if (!data.contains(key) || !data[key].is_string()) {
    throw SpecError(std::string("witness: missing field '") + key + "'");
  }
  return data[key].get<std::string>();
}

/// "(c0,...,ck)" in the additive coordinates of a module.
Vec parse_fiber_element(const FiniteModule& e, const std::string& text) {
  if (text.size() < 2 || text.front() != '(' || text.back() != ')') {
    throw SpecError("witness: bad module element '" + text + "'");
  }
  Vec v;
  std::stringstream ss(text.substr(1, text.size() - 2));
  std::string part;
  try {
    while (std::getline(ss, part, ',')) v.push_back(std::stoll(part));
  } catch (const std::exception&) {
    throw SpecError("witness: bad module element '" + text + "'");
  }
  if (v.size() != e.rank()) throw SpecError("witness: module element has the wrong length");
  return e.reduce(v);
}

/// Ideal of R = A ∝ E with the given A-part and E-part carriers.
Ideal product_ideal(const TrivialExtension& t, const std::vector<Elem>& a_part,
                    const std::vector<Vec>& e_part) {
  std::vector<Elem> gens;
  for (const Elem& a : a_part) gens.push_back(t.embed(a, t.fiber->zero()));
  for (const Vec& e : e_part) gens.push_back(t.embed(t.base->zero(), e));
  return Ideal::generated(t.ring, gens);
}

std::vector<Vec> fiber_basis(const FiniteModule& e) {
  std::vector<Vec> out;
  for (std::size_t j = 0; j < e.rank(); ++j) out.push_back(e.basis(j));
  return out;
}

std::vector<Vec> fiber_elements(const FiniteModule& e) {
  std::vector<Vec> out;
  e.for_each_element([&](const Vec& v) { out.push_back(v); });
  return out;
}

/// {y ∈ A : y a = 0} by enumeration.
std::vector<Elem> brute_annihilator(const FiniteRing& a, const Elem& x) {
  std::vector<Elem> out;
  a.for_each_element([&](const Elem& y) {
    if (a.is_zero(a.mul(y, x))) out.push_back(y);
  });
  return out;
}

// ------------------------------------------------------------------ ax.ring

std::optional<std::string> axiom_triple(const Instance& inst, const Elem& x, const Elem& y,
                                        const Elem& z) {
  const FiniteRing& r = *inst.ring;
  auto f = [&](const Elem& v) { return r.format(v); };
  if (r.mul(x, y) != r.mul(y, x)) return "xy ≠ yx for x = " + f(x) + ", y = " + f(y);
  if (r.mul(r.mul(x, y), z) != r.mul(x, r.mul(y, z))) {
    return "(xy)z ≠ x(yz) for " + f(x) + ", " + f(y) + ", " + f(z);
  }
  if (r.mul(x, r.add(y, z)) != r.add(r.mul(x, y), r.mul(x, z))) {
    return "x(y+z) ≠ xy+xz for " + f(x) + ", " + f(y) + ", " + f(z);
  }
  if (r.mul(r.one(), x) != r.reduce(x)) return "1·x ≠ x for x = " + f(x);
  if (inst.trivext) {
    const TrivialExtension& t = *inst.trivext;
    Elem a = t.proj_a(x), b = t.proj_a(y);
    Vec e = t.proj_e(x), g = t.proj_e(y);
    Elem law = t.embed(t.base->mul(a, b), t.fiber->add(t.fiber->act(a, g), t.fiber->act(b, e)));
    if (r.mul(x, y) != law) {
      return "(a,e)(b,f) ≠ (ab, af+be) for " + f(x) + ", " + f(y);
    }
  }
  return std::nullopt;
}

Outcome run_axioms(CheckContext& ctx) {
  std::uint64_t run = 0, triples = 0;
  for (const Instance& inst : ctx.suite.instances) {
    const FiniteRing& r = *inst.ring;
    ++run;
    auto fail = [&](const Elem& x, const Elem& y, const Elem& z) -> std::optional<Outcome> {
      if (auto why = axiom_triple(inst, x, y, z)) {
        Failure f{json{{"x", literal(x)}, {"y", literal(y)}, {"z", literal(z)}}, *why};
        return counterexample(run, finite_witness("ax.ring", inst, f), inst.label() + ": " + *why);
      }
      return std::nullopt;
    };
    if (r.has_tables()) {
      const auto n = static_cast<std::uint32_t>(r.size());
      const auto one = static_cast<std::uint32_t>(r.index(r.one()));
      for (std::uint32_t i = 0; i < n; ++i) {
        if (r.mul_index(one, i) != i) return *fail(r.element(i), r.element(i), r.element(i));
        for (std::uint32_t j = 0; j < n; ++j) {
          const std::uint32_t ij = r.mul_index(i, j);
          if (ij != r.mul_index(j, i)) return *fail(r.element(i), r.element(j), r.element(j));
          for (std::uint32_t k = 0; k < n; ++k) {
            ++triples;
            const bool assoc = r.mul_index(ij, k) == r.mul_index(i, r.mul_index(j, k));
            const bool dist = r.mul_index(i, r.add_index(j, k)) ==
                              r.add_index(ij, r.mul_index(i, k));
            if (!assoc || !dist) return *fail(r.element(i), r.element(j), r.element(k));
          }
        }
      }
      if (inst.trivext) {
        for (std::uint32_t i = 0; i < n; ++i) {
          for (std::uint32_t j = 0; j < n; ++j) {
            Elem x = r.element(i), y = r.element(j);
            if (auto o = fail(x, y, r.zero())) return *o;
          }
        }
      }
    } else {
      std::uniform_int_distribution<std::uint64_t> pick(0, r.size() - 1);
      for (std::uint64_t s = 0; s < ctx.config.axiom_samples; ++s) {
        ++triples;
        Elem x = r.element(pick(ctx.rng)), y = r.element(pick(ctx.rng)), z = r.element(pick(ctx.rng));
        if (auto o = fail(x, y, z)) return *o;
      }
    }
  }
  return finish(run, std::to_string(run) + " rings, " + std::to_string(triples) +
                         " triples: commutative, associative, distributive, unital" +
                         " and the trivial-extension law on every A ∝ E instance");
}

std::optional<std::string> replay_axioms(const RingSpec& spec, const std::string& ring,
                                         const json& data) {
  Instance inst = replay_instance(spec, ring);
  const FiniteRing& r = *inst.ring;
  return axiom_triple(inst, parse_finite_element(r, str(data, "x")),
                      parse_finite_element(r, str(data, "y")),
                      parse_finite_element(r, str(data, "z")));
}

// ---------------------------------------------------------------- ex2.4.ann

std::optional<std::string> ann_equals_m(const Instance& inst, const Ideal& m, const Elem& c) {
  const FiniteRing& r = *inst.ring;
  Ideal ann = annihilator(inst.ring, c);
  std::vector<Elem> brute = brute_annihilator(r, c);
  bool same = ann == m && brute.size() == m.size() &&
              std::all_of(brute.begin(), brute.end(), [&](const Elem& y) { return m.contains(y); });
  if (same) return std::nullopt;
  return inst.label() + ": (0:" + r.format(c) + ") = " + ann.format() + " ≠ M = " + m.format();
}

Outcome run_ex24_ann(CheckContext& ctx) {
  std::uint64_t run = 0, elements = 0;
  for (const Instance& inst : ctx.suite.instances) {
    if (!inst.m2zero) continue;
    ++run;
    Ideal m = *local_maximal_ideal(inst.ring);
    for (const Elem& c : ideal_elements(m)) {
      if (inst.ring->is_zero(c)) continue;
      ++elements;
      if (auto why = ann_equals_m(inst, m, c)) {
        return counterexample(run, finite_witness("ex2.4.ann", inst, {json{{"c", literal(c)}}, *why}),
                              *why);
      }
    }
  }
  return finish(run, std::to_string(run) + " local rings with M² = 0, " + std::to_string(elements) +
                         " nonzero c ∈ M, (0:c) = M in every case");
}

std::optional<std::string> replay_ex24_ann(const RingSpec& spec, const std::string& ring,
                                           const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (!inst.m2zero) return std::nullopt;
  Elem c = parse_finite_element(*inst.ring, str(data, "c"));
  Ideal m = *local_maximal_ideal(inst.ring);
  if (!m.contains(c) || inst.ring->is_zero(c)) return std::nullopt;
  return ann_equals_m(inst, m, c);
}

// ---------------------------------------------------------------- ex2.4.ker

/// Minimal syzygy of a minimal generating set of a proper ideal is M^n.
std::optional<std::string> kernel_is_m_power(const Instance& inst, const Ideal& m,
                                             const std::vector<Elem>& gens) {
  const FiniteRing& r = *inst.ring;
  Submodule k = [&] {
    try {
      return minimal_syzygy(inst.ring, gens);
    } catch (const NotMinimalError&) {
      return syzygy(inst.ring, gens);
    }
  }();
  const std::size_t n = gens.size();
  std::uint64_t expected = 1;
  for (std::size_t i = 0; i < n; ++i) expected *= m.size();
  bool contains_mn = true;
  for (std::size_t c = 0; c < n && contains_mn; ++c) {
    for (const Elem& g : m.gens()) {
      Vec v(n * r.rank(), 0);
      std::copy(g.begin(), g.end(), v.begin() + static_cast<std::ptrdiff_t>(c * r.rank()));
      if (!k.contains(v)) contains_mn = false;
    }
  }
  if (contains_mn && k.size() == expected) return std::nullopt;
  std::ostringstream os;
  os << inst.label() << ": Ker(u) for " << n << " minimal generators has " << k.size()
     << " elements, M^" << n << " has " << expected;
  return os.str();
}

std::vector<Elem> minimal_gens_of(const Ideal& i) { return minimal_generators(i).gens; }

Outcome run_ex24_ker(CheckContext& ctx) {
  std::uint64_t run = 0, checked = 0, sampled = 0;
  for (std::size_t k = 0; k < ctx.suite.instances.size(); ++k) {
    const Instance& inst = ctx.suite.instances[k];
    if (!inst.m2zero) continue;
    ++run;
    Ideal m = *local_maximal_ideal(inst.ring);
    if (!ctx.suite.ideals(k).exhaustive) ++sampled;
    for (const Ideal& i : ctx.suite.ideals(k).ideals) {
      if (i.is_zero() || i.is_whole()) continue;
      ++checked;
      std::vector<Elem> gens = minimal_gens_of(i);
      if (auto why = kernel_is_m_power(inst, m, gens)) {
        return counterexample(
            run, finite_witness("ex2.4.ker", inst, {json{{"gens", literals(gens)}}, *why}), *why);
      }
    }
  }
  return finish(run, std::to_string(checked) + " proper nonzero ideals over " +
                         std::to_string(run) + " rings with M² = 0: Ker(u) = M^n each time" +
                         sampling_note(sampled));
}

std::optional<std::string> replay_ex24_ker(const RingSpec& spec, const std::string& ring,
                                           const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (!inst.m2zero) return std::nullopt;
  std::vector<Elem> gens = parse_literals(*inst.ring, data.at("gens"));
  Ideal i = Ideal::generated(inst.ring, gens);
  if (gens.empty() || i.is_zero() || i.is_whole()) return std::nullopt;
  if (minimal_generators(i).mu != gens.size()) return std::nullopt;
  return kernel_is_m_power(inst, *local_maximal_ideal(inst.ring), gens);
}

// ------------------------------------------------------------- ex2.5.strict

bool residue_fiber(const Instance& inst) {
  if (!inst.trivext || !inst.mezero) return false;
  const TrivialExtension& t = *inst.trivext;
  Ideal m = *local_maximal_ideal(t.base);
  return t.fiber->size() * m.size() == t.base->size();
}

struct StrictResult {
  std::optional<std::string> failure;
  std::string note;
};

StrictResult strict_case(const Instance& inst, const Elem& x) {
  const TrivialExtension& t = *inst.trivext;
  const FiniteRing& r = *inst.ring;
  Vec e1 = t.fiber->basis(0);
  Elem gen = t.embed(x, e1);
  Elem x0 = t.embed(x, t.fiber->zero());
  Ideal j = Ideal::principal(inst.ring, gen);
  std::vector<Elem> ax = ideal_elements(Ideal::principal(t.base, x));
  Ideal ie = product_ideal(t, ax, fiber_basis(*t.fiber));
  std::string note = inst.label() + ": " + r.format(x0) + " ∉ R" + r.format(gen) + " ⊊ (" +
                     t.base->format(x) + ") ∝ E";
  if (j.contains(x0)) return {inst.label() + ": " + r.format(x0) + " ∈ R" + r.format(gen), note};
  if (!j.subset_of(ie) || j == ie) {
    return {inst.label() + ": R" + r.format(gen) + " is not strictly inside (x) ∝ E", note};
  }
  return {std::nullopt, note};
}

Outcome run_ex25(CheckContext& ctx) {
  std::uint64_t run = 0, cases = 0;
  std::string first;
  for (const Instance& inst : ctx.suite.instances) {
    if (!residue_fiber(inst)) continue;
    ++run;
    for (const Elem& x : ideal_elements(*local_maximal_ideal(inst.trivext->base))) {
      if (inst.trivext->base->is_zero(x)) continue;
      ++cases;
      StrictResult s = strict_case(inst, x);
      if (s.failure) {
        return counterexample(
            run, finite_witness("ex2.5.strict", inst, {json{{"x", literal(x)}}, *s.failure}),
            *s.failure);
      }
      if (first.empty()) first = s.note;
    }
  }
  return finish(run, "J = R(x,1) ⊊ Ax ∝ E with (x,0) ∉ J for " + std::to_string(cases) +
                         " pairs (A, x) over " + std::to_string(run) + " rings; first: " + first);
}

std::optional<std::string> replay_ex25(const RingSpec& spec, const std::string& ring,
                                       const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (!residue_fiber(inst)) return std::nullopt;
  Elem x = parse_finite_element(*inst.trivext->base, str(data, "x"));
  if (!local_maximal_ideal(inst.trivext->base)->contains(x) || inst.trivext->base->is_zero(x)) {
    return std::nullopt;
  }
  return strict_case(inst, x).failure;
}

// ---------------------------------------------------------- lem2.7.formulas

std::optional<std::string> lemma27_case(const Instance& inst, const Elem& a, const Vec& e) {
  const TrivialExtension& t = *inst.trivext;
  const FiniteRing& r = *inst.ring;
  Elem c = t.embed(a, e);
  Ideal ann = annihilator(inst.ring, c);
  Ideal expected = [&] {
    if (t.fiber->is_zero(e)) {
      std::vector<Vec> killed;
      for (const Vec& f : fiber_elements(*t.fiber)) {
        if (t.fiber->is_zero(t.fiber->act(a, f))) killed.push_back(f);
      }
      return product_ideal(t, brute_annihilator(*t.base, a), killed);
    }
    if (t.base->is_zero(a)) {
      return product_ideal(t, ideal_elements(*local_maximal_ideal(t.base)), fiber_basis(*t.fiber));
    }
    return product_ideal(t, brute_annihilator(*t.base, a), fiber_basis(*t.fiber));
  }();
  if (ann == expected) return std::nullopt;
  return inst.label() + ": (0:" + r.format(c) + ") = " + ann.format() + ", formula gives " +
         expected.format();
}

Outcome run_lemma27(CheckContext& ctx) {
  std::uint64_t run = 0, zero_a = 0, nonzero_a = 0, pure = 0;
  for (const Instance& inst : ctx.suite.instances) {
    if (!inst.mezero) continue;
    ++run;
    const TrivialExtension& t = *inst.trivext;
    std::vector<Vec> es = fiber_elements(*t.fiber);
    auto fail = [&](const Elem& a, const Vec& e, const std::string& why) {
      json data{{"a", literal(a)}, {"e", literal(e)}};
      return counterexample(run, finite_witness("lem2.7.formulas", inst, {data, why}), why);
    };
    for (const Elem& a : ideal_elements(*local_maximal_ideal(t.base))) {
      for (const Vec& e : es) {
        if (t.fiber->is_zero(e)) continue;
        (t.base->is_zero(a) ? zero_a : nonzero_a) += 1;
        if (auto why = lemma27_case(inst, a, e)) return fail(a, e, *why);
      }
    }
    for (const Elem& a : all_elements(*t.base)) {
      ++pure;
      if (auto why = lemma27_case(inst, a, t.fiber->zero())) return fail(a, t.fiber->zero(), *why);
    }
  }
  std::ostringstream os;
  os << run << " pairs (A, E) with ME = 0: " << zero_a << " cases (0,e) with (0:c) = M ∝ E, "
     << nonzero_a << " cases (a≠0,e≠0) with (0:c) = (0:a) ∝ E, " << pure
     << " cases (a,0) with (0:c) = (0:a) ∝ {e : ae = 0}";
  return finish(run, os.str());
}

std::optional<std::string> replay_lemma27(const RingSpec& spec, const std::string& ring,
                                          const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (!inst.mezero) return std::nullopt;
  const TrivialExtension& t = *inst.trivext;
  Elem a = parse_finite_element(*t.base, str(data, "a"));
  Vec ev = parse_fiber_element(*t.fiber, str(data, "e"));
  if (!t.fiber->is_zero(ev) && !local_maximal_ideal(t.base)->contains(a)) return std::nullopt;
  return lemma27_case(inst, a, ev);
}

// --------------------------------------------------------------- thm2.6.ker

std::optional<std::string> kernel_split(const Instance& inst, const std::vector<Elem>& a_gens) {
  const TrivialExtension& t = *inst.trivext;
  const std::size_t n = a_gens.size();
  std::vector<Elem> gens;
  for (const Elem& a : a_gens) gens.push_back(t.embed(a, t.fiber->zero()));
  Submodule ku = [&] {
    try {
      return minimal_syzygy(inst.ring, gens);
    } catch (const NotMinimalError&) {
      return syzygy(inst.ring, gens);
    }
  }();
  Submodule kv = syzygy(t.base, a_gens);
  const std::size_t ka = t.base->rank(), kr = inst.ring->rank();
  std::vector<Vec> expected;
  for (const Vec& v : kv.gens()) {
    Vec w(n * kr, 0);
    for (std::size_t c = 0; c < n; ++c) {
      Elem part(v.begin() + static_cast<std::ptrdiff_t>(c * ka),
                v.begin() + static_cast<std::ptrdiff_t>((c + 1) * ka));
      Elem x = t.embed(part, t.fiber->zero());
      std::copy(x.begin(), x.end(), w.begin() + static_cast<std::ptrdiff_t>(c * kr));
    }
    expected.push_back(w);
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (const Vec& e : fiber_basis(*t.fiber)) {
      Vec w(n * kr, 0);
      Elem x = t.embed(t.base->zero(), e);
      std::copy(x.begin(), x.end(), w.begin() + static_cast<std::ptrdiff_t>(c * kr));
      expected.push_back(w);
    }
  }
  Submodule want = Submodule::generated(ku.ambient(), expected);
  if (want == ku) return std::nullopt;
  std::ostringstream os;
  os << inst.label() << ": Ker(u) has " << ku.size() << " elements, Ker(v) ∝ E^" << n << " has "
     << want.size();
  return os.str();
}

Outcome run_thm26_ker(CheckContext& ctx) {
  std::uint64_t run = 0, checked = 0, sampled = 0;
  for (std::size_t k = 0; k < ctx.suite.instances.size(); ++k) {
    const Instance& inst = ctx.suite.instances[k];
    if (!inst.mezero) continue;
    ++run;
    const TrivialExtension& t = *inst.trivext;
    Ideal m = *local_maximal_ideal(t.base);
    if (!ctx.suite.base_ideals(k).exhaustive) ++sampled;
    for (const Ideal& i : ctx.suite.base_ideals(k).ideals) {
      if (i.is_zero() || !i.subset_of(m)) continue;
      ++checked;
      std::vector<Elem> gens = minimal_gens_of(i);
      if (auto why = kernel_split(inst, gens)) {
        return counterexample(
            run, finite_witness("thm2.6.ker", inst, {json{{"gens", literals(gens)}}, *why}), *why);
      }
    }
  }
  return finish(run, std::to_string(checked) + " ideals I ⊆ M over " + std::to_string(run) +
                         " pairs (A, E): Ker(u) = Ker(v) ∝ E^n each time" + sampling_note(sampled));
}

std::optional<std::string> replay_thm26_ker(const RingSpec& spec, const std::string& ring,
                                            const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (!inst.mezero) return std::nullopt;
  std::vector<Elem> gens = parse_literals(*inst.trivext->base, data.at("gens"));
  Ideal m = *local_maximal_ideal(inst.trivext->base);
  for (const Elem& g : gens) {
    if (!m.contains(g)) return std::nullopt;
  }
  if (gens.empty()) return std::nullopt;
  return kernel_split(inst, gens);
}

// ------------------------------------------------------ thm2.6.intersection

std::optional<std::string> intersection_case(const Instance& inst, const std::vector<Elem>& cs) {
  const TrivialExtension& t = *inst.trivext;
  const FiniteRing& r = *inst.ring;
  std::vector<Ideal> principals;
  for (const Elem& c : cs) principals.push_back(Ideal::principal(inst.ring, c));
  Ideal j = principals.front();
  for (std::size_t i = 1; i < principals.size(); ++i) j = intersect(j, principals[i]);
  for (const Ideal& p : principals) {
    if (j == p) return std::nullopt;  // hypothesis J ⊊ R c_i fails
  }
  Ideal ia = Ideal::principal(t.base, t.proj_a(cs.front()));
  for (std::size_t i = 1; i < cs.size(); ++i) {
    ia = intersect(ia, Ideal::principal(t.base, t.proj_a(cs[i])));
  }
  Ideal expected = product_ideal(t, ideal_elements(ia), {});
  if (j == expected) return std::nullopt;
  std::ostringstream os;
  os << inst.label() << ": J = ";
  for (std::size_t i = 0; i < cs.size(); ++i) os << (i ? " ∩ " : "") << "R" << r.format(cs[i]);
  os << " = " << j.format() << " but (∩ Aa_i) ∝ 0 = " << expected.format();
  return os.str();
}

Outcome run_thm26_intersection(CheckContext& ctx) {
  std::uint64_t run = 0, pairs = 0;
  for (const Instance& inst : ctx.suite.instances) {
    if (!inst.mezero) continue;
    ++run;
    const TrivialExtension& t = *inst.trivext;
    Ideal m = *local_maximal_ideal(t.base);
    std::vector<Elem> cs;
    for (const Elem& x : all_elements(*inst.ring)) {
      if (!inst.ring->is_zero(x) && m.contains(t.proj_a(x))) cs.push_back(x);
    }
    for (std::size_t i = 0; i < cs.size(); ++i) {
      for (std::size_t j = i + 1; j < cs.size(); ++j) {
        ++pairs;
        if (auto why = intersection_case(inst, {cs[i], cs[j]})) {
          json data{{"gens", literals({cs[i], cs[j]})}};
          return counterexample(run, finite_witness("thm2.6.intersection", inst, {data, *why}),
                                *why);
        }
      }
    }
  }
  return finish(run, std::to_string(pairs) + " pairs c_1, c_2 ∈ M ∝ E over " +
                         std::to_string(run) + " rings: J = (∩ Aa_i) ∝ 0 whenever J ⊊ R c_i");
}

std::optional<std::string> replay_thm26_intersection(const RingSpec& spec,
                                                     const std::string& ring, const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (!inst.mezero) return std::nullopt;
  std::vector<Elem> cs = parse_literals(*inst.ring, data.at("gens"));
  if (cs.empty()) return std::nullopt;
  Ideal m = *local_maximal_ideal(inst.trivext->base);
  for (const Elem& c : cs) {
    if (!m.contains(inst.trivext->proj_a(c))) return std::nullopt;
  }
  return intersection_case(inst, cs);
}

// ------------------------------------------------------- prod.componentwise

std::optional<std::string> componentwise_case(const Instance& inst, const IdealList& ideals) {
  ComponentwiseReport rep = componentwise_check(inst.ring, all_elements(*inst.ring), ideals.ideals);
  if (rep.holds) return std::nullopt;
  return inst.label() + ": " + rep.detail;
}

Outcome run_componentwise(CheckContext& ctx) {
  std::uint64_t run = 0, cases = 0, sampled = 0;
  for (std::size_t k = 0; k < ctx.suite.instances.size(); ++k) {
    const Instance& inst = ctx.suite.instances[k];
    if (!inst.product) continue;
    ++run;
    const IdealList& ideals = ctx.suite.ideals(k);
    if (!ideals.exhaustive) ++sampled;
    ComponentwiseReport rep =
        componentwise_check(inst.ring, all_elements(*inst.ring), ideals.ideals);
    cases += rep.cases;
    if (!rep.holds) {
      std::string why = inst.label() + ": " + rep.detail;
      return counterexample(run, finite_witness("prod.componentwise", inst, {json::object(), why}),
                            why);
    }
  }
  return finish(run, std::to_string(cases) + " cases over " + std::to_string(run) +
                         " product rings: annihilators, principal intersections, ideal " +
                         "intersections and inverses split componentwise" + sampling_note(sampled));
}

std::optional<std::string> replay_componentwise(const RingSpec& spec, const std::string& ring,
                                                const json&) {
  Instance inst = replay_instance(spec, ring);
  if (!inst.product) return std::nullopt;
  InstanceSuite s = make_suite("witness", {inst}, VerifyConfig{}, 0);
  return componentwise_case(s.instances[0], s.ideals(0));
}

// ------------------------------------------------------------- fin.vtrivial

std::optional<std::string> unit_or_zero_divisor(const Instance& inst, const Elem& x) {
  const FiniteRing& r = *inst.ring;
  bool unit = false, zd = false;
  r.for_each_element([&](const Elem& y) {
    Elem p = r.mul(x, y);
    if (p == r.one()) unit = true;
    if (r.is_zero(p) && !r.is_zero(y)) zd = true;
  });
  if (unit || zd) return std::nullopt;
  return inst.label() + ": " + r.format(x) + " is neither a unit nor a zero divisor";
}

std::optional<std::string> v_trivial(const Instance& inst, const Ideal& i) {
  Ideal inv = inverse_finite(i);
  Ideal v = v_closure_finite(i);
  Ideal w = v_finite_witness_finite(i);
  if (inv.is_whole() && v.is_whole() && inverse_finite(w) == inv) return std::nullopt;
  return inst.label() + ": I = " + i.format() + " has I⁻¹ = " + inv.format() + ", I_v = " +
         v.format();
}

Outcome run_vtrivial(CheckContext& ctx) {
  std::uint64_t run = 0, elements = 0, ideals = 0, non_divisorial = 0, sampled = 0;
  std::string example;
  for (std::size_t k = 0; k < ctx.suite.instances.size(); ++k) {
    const Instance& inst = ctx.suite.instances[k];
    const FiniteRing& r = *inst.ring;
    ++run;
    for (const Elem& x : all_elements(r)) {
      ++elements;
      bool unit = false, zd = false;
      if (r.has_tables()) {
        const auto xi = static_cast<std::uint32_t>(r.index(x));
        const auto one = static_cast<std::uint32_t>(r.index(r.one()));
        for (std::uint32_t y = 0; y < r.size() && !unit && !zd; ++y) {
          std::uint32_t p = r.mul_index(xi, y);
          unit = p == one;
          zd = p == 0 && y != 0;
        }
        if (unit || zd) continue;
      }
      if (auto why = unit_or_zero_divisor(inst, x)) {
        return counterexample(
            run, finite_witness("fin.vtrivial", inst, {json{{"x", literal(x)}}, *why}), *why);
      }
    }
    if (!ctx.suite.ideals(k).exhaustive) ++sampled;
    for (const Ideal& i : ctx.suite.ideals(k).ideals) {
      if (i.is_zero()) continue;
      ++ideals;
      if (auto why = v_trivial(inst, i)) {
        return counterexample(
            run, finite_witness("fin.vtrivial", inst, {json{{"gens", literals(i.gens())}}, *why}),
            *why);
      }
      if (!i.is_whole()) {
        ++non_divisorial;
        if (example.empty() && i.gens().size() == 1) {
          example = inst.label() + ": (" + r.format(i.gens()[0]) + ")_v = " + inst.label() +
                    " ≠ (" + r.format(i.gens()[0]) + ")";
        }
      }
    }
  }
  std::ostringstream os;
  os << elements << " elements over " << run << " rings are units or zero divisors; "
     << ideals << " nonzero ideals have I⁻¹ = I_v = R, " << non_divisorial
     << " of them proper (not divisorial)";
  if (!example.empty()) os << "; first principal instance " << example;
  os << sampling_note(sampled);
  return finish(run, os.str());
}

std::optional<std::string> replay_vtrivial(const RingSpec& spec, const std::string& ring,
                                           const json& data) {
  Instance inst = replay_instance(spec, ring);
  if (data.contains("x")) {
    return unit_or_zero_divisor(inst, parse_finite_element(*inst.ring, str(data, "x")));
  }
  Ideal i = Ideal::generated(inst.ring, parse_literals(*inst.ring, data.at("gens")));
  if (i.is_zero()) return std::nullopt;
  return v_trivial(inst, i);
}

// -------------------------------------------------------------- thm3.10.fin

std::optional<std::string> weak20_case(const Instance& inst) {
  WeakNdReport weak = weak_nd_check_finite(inst.ring, 2, 0, 4, default_budget().max_ideals);
  RingPredicate vnr = is_von_neumann_regular(inst.ring);
  if (weak.holds == vnr.holds) return std::nullopt;
  return inst.label() + ": weak (2,0) " + (weak.holds ? "holds" : "fails") +
         " but von Neumann regular " + (vnr.holds ? "holds" : "fails");
}

Outcome run_thm310(CheckContext& ctx) {
  std::uint64_t run = 0, regular = 0;
  for (const Instance& inst : ctx.suite.instances) {
    ++run;
    if (auto why = weak20_case(inst)) {
      return counterexample(run, finite_witness("thm3.10.fin", inst, {json::object(), *why}), *why);
    }
    if (is_von_neumann_regular(inst.ring).holds) ++regular;
  }
  return finish(run, std::to_string(run) + " rings, " + std::to_string(regular) +
                         " von Neumann regular: weak (2,0) agrees on all of them");
}

std::optional<std::string> replay_thm310(const RingSpec& spec, const std::string& ring,
                                         const json&) {
  return weak20_case(replay_instance(spec, ring));
}

CheckDef def(std::string id, std::string anchor, std::function<Outcome(CheckContext&)> run,
             ReplayFn replay, bool open = false) {
  return CheckDef{CheckInfo{std::move(id), std::move(anchor), "finite", open}, std::move(run),
                  std::move(replay)};
}

}  // namespace

void register_finite_checks(std::vector<CheckDef>& defs) {
  defs.push_back(def("ax.ring", "R is commutative with identity; (a,e)(b,f) = (ab, af + be)",
                     run_axioms, replay_axioms));
  defs.push_back(def("ex2.4.ann", "M² = 0 and 0 ≠ c ∈ M imply Ann(c) = (0:c) = M", run_ex24_ann,
                     replay_ex24_ann));
  defs.push_back(def("ex2.4.ker", "M² = 0, minimal generators of I ⊊ R: Ker(u) = M^n",
                     run_ex24_ker, replay_ex24_ker));
  defs.push_back(def("ex2.5.strict", "J = R(x,1) ⊊ Ax ∝ E with (x,0) ∉ J, E = A/M", run_ex25,
                     replay_ex25));
  defs.push_back(def("lem2.7.formulas",
                     "ME = 0, c = (a,e): (0:c) = M ∝ E if a = 0, (0:a) ∝ E if a ≠ 0",
                     run_lemma27, replay_lemma27));
  defs.push_back(def("thm2.6.ker", "J = Σ R(a_i,0), a_i ∈ M: Ker(u) = Ker(v) ∝ E^n",
                     run_thm26_ker, replay_thm26_ker));
  defs.push_back(def("thm2.6.intersection", "J = ∩ R(a_i,e_i) ⊊ each R(a_i,e_i): J = ∩(Aa_i ∝ 0)",
                     run_thm26_intersection, replay_thm26_intersection, true));
  defs.push_back(def("prod.componentwise",
                     "annihilators, intersections and inverses in Π R_j split componentwise",
                     run_componentwise, replay_componentwise));
  defs.push_back(def("fin.vtrivial",
                     "a total ring of quotients is trivially v-coherent: I⁻¹ = I_v = R",
                     run_vtrivial, replay_vtrivial));
  defs.push_back(def("thm3.10.fin", "finite R: weak (2,0)-ring iff von Neumann regular",
                     run_thm310, replay_thm310));
}

}  // namespace trivext::detail
