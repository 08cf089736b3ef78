#include <algorithm>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>
#include <yaml-cpp/yaml.h>

#include "internal.hpp"
#include "trivext/errors.hpp"
#include "trivext/idealops.hpp"

namespace trivext {

using detail::json;

// ---------------------------------------------------------------- config

namespace {

template <typename F>
void for_each_field(VerifyConfig& c, F&& f) {
  f("max_ring", c.max_ring);
  f("max_product", c.max_product);
  f("ideal_cap", c.ideal_cap);
  f("random_ideals", c.random_ideals);
  f("axiom_samples", c.axiom_samples);
  f("samples", c.samples);
  f("zq_lists", c.zq_lists);
  f("submodules", c.submodules);
  f("pairs", c.pairs);
  f("uze_elements", c.uze_elements);
  f("coef", c.coef);
  f("den", c.den);
  f("support", c.support);
  f("vfinite_max_d", c.vfinite_max_d);
}

[[noreturn]] void config_fail(const std::string& source, const YAML::Mark& m,
                              const std::string& msg) {
  throw SpecError(source + ":" + std::to_string(m.line + 1) + ":" + std::to_string(m.column + 1) +
                  ": " + msg);
}

}  // namespace

VerifyConfig parse_verify_config(const std::string& text, const std::string& source) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::ParserException& e) {
    config_fail(source, e.mark, e.msg);
  }
  VerifyConfig c;
  if (root.IsNull()) return c;
  if (!root.IsMap()) config_fail(source, root.Mark(), "expected a mapping");
  std::set<std::string> known;
  for_each_field(c, [&](const char* key, auto&) { known.insert(key); });
  for (const auto& kv : root) {
    std::string key = kv.first.as<std::string>();
    if (!known.count(key)) config_fail(source, kv.first.Mark(), "unknown key '" + key + "'");
  }
  for_each_field(c, [&](const char* key, auto& field) {
    YAML::Node n = root[key];
    if (!n) return;
    using T = std::remove_reference_t<decltype(field)>;
    try {
      field = n.as<T>();
    } catch (const YAML::Exception&) {
      config_fail(source, n.Mark(), std::string("'") + key + "' must be a non-negative integer");
    }
  });
  if (c.den < 1 || c.coef < 1) config_fail(source, root.Mark(), "coef and den must be positive");
  if (c.max_ring < 2) config_fail(source, root.Mark(), "max_ring must be at least 2");
  return c;
}

VerifyConfig load_verify_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_verify_config(ss.str(), path);
}

json config_json(const VerifyConfig& config) {
  VerifyConfig c = config;
  json j = json::object();
  for_each_field(c, [&](const char* key, auto& field) { j[key] = field; });
  return j;
}

std::string config_digest(const VerifyConfig& c, const std::string& suite) {
  json j = config_json(c);
  j["suite"] = suite;
  const std::string text = j.dump();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream os;
  for (unsigned int i = 0; i < len; ++i) {
    os << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return os.str();
}

// ---------------------------------------------------------------- instances

std::string Instance::label() const { return ring->label(); }

namespace {

bool products_vanish(const FiniteRing& r, const std::vector<Elem>& xs,
                     const std::vector<Elem>& ys) {
  for (const Elem& x : xs) {
    for (const Elem& y : ys) {
      if (!r.is_zero(r.mul(x, y))) return false;
    }
  }
  return true;
}

}  // namespace

Instance make_instance(const RingSpec& recipe, const std::string& ring, std::string family) {
  auto ws = std::make_shared<const Workspace>(realize(recipe));
  const RealRing& rr = ws->ring(ring);
  if (rr.tier != RealRing::Tier::Finite) throw SpecError("ring '" + ring + "' is not finite");
  Instance inst;
  inst.family = std::move(family);
  inst.name = ring;
  inst.recipe = recipe;
  inst.ring = rr.finite;
  inst.trivext = rr.trivext;
  for (const auto& [name, ideal] : ws->ideals) {
    if (ideal.ring == ring && ideal.finite) inst.declared.push_back(*ideal.finite);
  }
  inst.workspace = ws;
  const RingPtr& r = inst.ring;
  inst.product = r->product_info().has_value();
  std::optional<Ideal> m = local_maximal_ideal(r);
  inst.local = m.has_value();
  if (m) inst.m2zero = !m->is_zero() && products_vanish(*r, m->gens(), m->gens());
  if (inst.trivext) {
    const TrivialExtension& t = *inst.trivext;
    if (std::optional<Ideal> ma = local_maximal_ideal(t.base)) {
      bool vanish = true;
      for (const Elem& a : ma->gens()) {
        for (std::size_t j = 0; j < t.fiber->rank(); ++j) {
          if (!t.fiber->is_zero(t.fiber->act(a, t.fiber->basis(j)))) vanish = false;
        }
      }
      inst.mezero = vanish;
    }
  }
  return inst;
}

namespace {

RingDef zmod_def(const std::string& name, std::int64_t n) {
  RingDef d;
  d.name = name;
  d.kind = RingDef::Kind::Zmod;
  d.n = n;
  return d;
}

RingDef poly_def(const std::string& name, std::int64_t p, std::vector<std::int64_t> f) {
  RingDef d;
  d.name = name;
  d.kind = RingDef::Kind::GfPoly;
  d.p = p;
  d.f = std::move(f);
  return d;
}

/// x^t
std::vector<std::int64_t> monomial(std::size_t t) {
  std::vector<std::int64_t> f(t + 1, 0);
  f[t] = 1;
  return f;
}

struct FieldRecipe {
  std::int64_t q;
  std::int64_t p;
  std::vector<std::int64_t> f;  // empty for prime fields
};

const std::vector<FieldRecipe>& field_catalog() {
  static const std::vector<FieldRecipe> fields = {
      {2, 2, {}},          {3, 3, {}},           {4, 2, {1, 1, 1}},     {5, 5, {}},
      {7, 7, {}},          {8, 2, {1, 1, 0, 1}}, {9, 3, {1, 0, 1}},     {11, 11, {}},
      {13, 13, {}},        {16, 2, {1, 1, 0, 0, 1}}, {25, 5, {2, 1, 1}}, {27, 3, {1, 2, 0, 1}},
      {32, 2, {1, 0, 1, 0, 0, 1}}, {49, 7, {1, 0, 1}},
  };
  return fields;
}

RingDef field_def(const std::string& name, const FieldRecipe& f) {
  return f.f.empty() ? zmod_def(name, f.q) : poly_def(name, f.p, f.f);
}

const std::vector<std::int64_t> kPrimes = {2, 3, 5, 7, 11, 13};

RingSpec single(RingDef d) {
  RingSpec s;
  s.items.push_back(std::move(d));
  return s;
}

RingSpec trivext_recipe(RingDef base, ModuleDef::Kind kind, std::int64_t rank) {
  RingSpec s;
  base.name = "A";
  s.items.push_back(base);
  ModuleDef m;
  m.name = "E";
  m.ring = "A";
  m.kind = kind;
  m.rank = rank;
  s.items.push_back(m);
  RingDef r;
  r.name = "R";
  r.kind = RingDef::Kind::TrivExt;
  r.base = "A";
  r.module = "E";
  s.items.push_back(r);
  return s;
}

std::int64_t ipow(std::int64_t b, std::int64_t e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

struct LocalRecipe {
  RingDef def;
  std::int64_t size;
  std::int64_t residue;  // |A/M|
};

/// Local non-field rings, small first.
std::vector<LocalRecipe> local_catalog() {
  return {
      {zmod_def("A", 4), 4, 2},           {poly_def("A", 2, monomial(2)), 4, 2},
      {zmod_def("A", 8), 8, 2},           {poly_def("A", 2, monomial(3)), 8, 2},
      {zmod_def("A", 9), 9, 3},           {poly_def("A", 3, monomial(2)), 9, 3},
      {zmod_def("A", 16), 16, 2},         {poly_def("A", 2, monomial(4)), 16, 2},
      {zmod_def("A", 25), 25, 5},         {poly_def("A", 5, monomial(2)), 25, 5},
      {zmod_def("A", 27), 27, 3},         {zmod_def("A", 32), 32, 2},
      {zmod_def("A", 49), 49, 7},
  };
}

void add(std::vector<Instance>& out, const RingSpec& recipe, const char* family) {
  out.push_back(make_instance(recipe, "R", family));
}

}  // namespace

// ---------------------------------------------------------------- ideal cache

struct InstanceSuite::Cache {
  struct Entry {
    std::once_flag once;
    IdealList list;
    std::once_flag base_once;
    IdealList base_list;
  };
  std::vector<std::unique_ptr<Entry>> entries;
};

namespace {

IdealList compute_ideals(const RingPtr& r, const std::vector<Ideal>& declared,
                         const VerifyConfig& config, std::uint64_t seed,
                         const std::string& label) {
  IdealList out;
  std::set<Vec> seen;
  auto push = [&](const Ideal& i) {
    if (seen.insert(i.key()).second) out.ideals.push_back(i);
  };
  try {
    std::vector<Ideal> walked;
    for_each_ideal(
        r,
        [&](const Ideal& i) {
          walked.push_back(i);
          return true;
        },
        config.ideal_cap);
    for (const Ideal& i : walked) push(i);
  } catch (const ResourceError&) {
    out.exhaustive = false;
    detail::Rng rng = detail::seeded_rng(seed, "ideals:" + label);
    push(Ideal::zero(r));
    push(Ideal::whole(r));
    if (std::optional<Ideal> m = local_maximal_ideal(r)) push(*m);
    std::uniform_int_distribution<std::uint64_t> pick(0, r->size() - 1);
    for (std::uint64_t k = 0; k < config.random_ideals; ++k) {
      std::vector<Elem> gens{r->element(pick(rng))};
      if (k % 2 == 1) gens.push_back(r->element(pick(rng)));
      push(Ideal::generated(r, gens));
    }
  }
  for (const Ideal& i : declared) push(i);
  return out;
}

}  // namespace

const IdealList& InstanceSuite::ideals(std::size_t k) const {
  auto& e = *cache->entries.at(k);
  const Instance& inst = instances[k];
  std::call_once(e.once, [&] {
    e.list = compute_ideals(inst.ring, inst.declared, config, seed,
                            std::to_string(k) + ":" + inst.label());
  });
  return e.list;
}

const IdealList& InstanceSuite::base_ideals(std::size_t k) const {
  auto& e = *cache->entries.at(k);
  const Instance& inst = instances[k];
  if (!inst.trivext) throw AlgebraError("instance is not a trivial extension");
  std::call_once(e.base_once, [&] {
    e.base_list = compute_ideals(inst.trivext->base, {}, config, seed,
                                 std::to_string(k) + ":base:" + inst.trivext->base->label());
  });
  return e.base_list;
}

InstanceSuite make_suite(const std::string& name, std::vector<Instance> instances,
                         const VerifyConfig& config, std::uint64_t seed) {
  InstanceSuite s;
  s.name = name;
  s.seed = seed;
  s.config = config;
  s.instances = std::move(instances);
  s.cache = std::make_shared<InstanceSuite::Cache>();
  for (std::size_t k = 0; k < s.instances.size(); ++k) {
    s.cache->entries.push_back(std::make_unique<InstanceSuite::Cache::Entry>());
  }
  std::set<std::string> fams;
  for (const Instance& i : s.instances) {
    if (fams.insert(i.family).second) s.families.push_back(i.family);
  }
  return s;
}

std::vector<Instance> generate_family(const std::string& family, std::uint64_t bound,
                                      std::uint64_t product_bound) {
  std::vector<Instance> out;
  const auto b = static_cast<std::int64_t>(bound);
  if (family == "zmod") {
    for (std::int64_t p : kPrimes) {
      for (std::int64_t q = p; q <= b; q *= p) add(out, single(zmod_def("R", q)), "zmod");
    }
  } else if (family == "trunc") {
    for (std::int64_t p : kPrimes) {
      for (std::size_t t = 2; ipow(p, static_cast<std::int64_t>(t)) <= b; ++t) {
        add(out, single(poly_def("R", p, monomial(t))), "trunc");
      }
    }
  } else if (family == "gf") {
    for (const FieldRecipe& f : field_catalog()) {
      if (!f.f.empty() && f.q <= b) add(out, single(field_def("R", f)), "gf");
    }
  } else if (family == "products") {
    const auto pb = static_cast<std::int64_t>(std::min(bound, product_bound));
    const std::vector<std::vector<std::pair<RingDef, std::int64_t>>> combos = {
        {{zmod_def("", 2), 2}, {zmod_def("", 3), 3}},
        {{zmod_def("", 2), 2}, {zmod_def("", 2), 2}},
        {{zmod_def("", 3), 3}, {zmod_def("", 5), 5}},
        {{zmod_def("", 2), 2}, {zmod_def("", 2), 2}, {zmod_def("", 2), 2}},
        {{zmod_def("", 4), 4}, {zmod_def("", 3), 3}},
        {{zmod_def("", 2), 2}, {poly_def("", 2, {1, 1, 1}), 4}},
        {{zmod_def("", 3), 3}, {zmod_def("", 3), 3}},
        {{zmod_def("", 4), 4}, {zmod_def("", 4), 4}},
        {{zmod_def("", 2), 2}, {poly_def("", 2, monomial(2)), 4}},
        {{zmod_def("", 8), 8}, {zmod_def("", 3), 3}},
        {{zmod_def("", 4), 4}, {zmod_def("", 2), 2}, {zmod_def("", 3), 3}},
        {{zmod_def("", 2), 2}, {zmod_def("", 3), 3}, {zmod_def("", 5), 5}},
        {{zmod_def("", 4), 4}, {zmod_def("", 9), 9}},
        {{zmod_def("", 7), 7}, {zmod_def("", 9), 9}},
    };
    for (const auto& combo : combos) {
      std::int64_t size = 1;
      for (const auto& part : combo) size *= part.second;
      if (size > pb) continue;
      RingSpec s;
      RingDef prod;
      prod.name = "R";
      prod.kind = RingDef::Kind::Product;
      for (std::size_t i = 0; i < combo.size(); ++i) {
        RingDef d = combo[i].first;
        d.name = "F" + std::to_string(i);
        prod.factors.push_back(d.name);
        s.items.push_back(d);
      }
      s.items.push_back(prod);
      add(out, s, "products");
    }
  } else if (family == "mezero") {
    for (const LocalRecipe& a : local_catalog()) {
      for (std::int64_t r = 1; a.size * ipow(a.residue, r) <= b; ++r) {
        add(out, trivext_recipe(a.def, ModuleDef::Kind::ResidueFieldPower, r), "mezero");
      }
    }
  } else if (family == "m2zero") {
    for (std::int64_t p : kPrimes) {
      if (p * p > b) continue;
      add(out, single(zmod_def("R", p * p)), "m2zero");
      add(out, single(poly_def("R", p, monomial(2))), "m2zero");
    }
    for (const FieldRecipe& f : field_catalog()) {
      for (std::int64_t r = 1; ipow(f.q, r + 1) <= b; ++r) {
        add(out, trivext_recipe(field_def("A", f), ModuleDef::Kind::Free, r), "m2zero");
      }
    }
  } else {
    throw SpecError("unknown family '" + family + "'");
  }
  return out;
}

InstanceSuite generate_suite(const std::string& name, const VerifyConfig& config,
                             std::uint64_t seed) {
  std::uint64_t bound = config.max_ring;
  if (name == "small") {
    bound = std::min<std::uint64_t>(bound, 64);
  } else if (name != "default") {
    throw SpecError("unknown suite '" + name + "' (expected default or small)");
  }
  std::vector<Instance> all;
  for (const char* family : {"zmod", "trunc", "gf", "products", "mezero", "m2zero"}) {
    std::vector<Instance> part = generate_family(family, bound, config.max_product);
    for (Instance& i : part) all.push_back(std::move(i));
  }
  return make_suite(name, std::move(all), config, seed);
}

InstanceSuite suite_from_spec(const RingSpec& spec, const VerifyConfig& config,
                              std::uint64_t seed) {
  Workspace ws = realize(spec);
  std::vector<Instance> all;
  for (const SpecItem& item : spec.items) {
    const auto* r = std::get_if<RingDef>(&item);
    if (!r || ws.ring(r->name).tier != RealRing::Tier::Finite) continue;
    all.push_back(make_instance(spec, r->name, "spec"));
  }
  return make_suite("spec", std::move(all), config, seed);
}

}  // namespace trivext
