#include "trivext/ringspec.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "trivext/errors.hpp"

namespace trivext {

namespace {

class Parser {
 public:
  explicit Parser(std::string source) : source_(std::move(source)) {}

  [[noreturn]] void fail(const YAML::Mark& m, const std::string& msg) const {
    std::ostringstream os;
    os << source_;
    if (m.line >= 0) os << ":" << m.line + 1 << ":" << m.column + 1;
    os << ": " << msg;
    throw SpecError(os.str());
  }

  RingSpec parse(const std::string& text) {
    YAML::Node root;
    try {
      root = YAML::Load(text);
    } catch (const YAML::ParserException& e) {
      fail(e.mark, e.msg);
    }
    if (!root.IsMap()) fail(root.Mark(), "expected a mapping with keys version and items");
    check_keys(root, {"version", "items"});
    RingSpec spec;
    YAML::Node version = root["version"];
    if (!version) fail(root.Mark(), "missing key 'version'");
    spec.version = static_cast<int>(integer(version));
    if (spec.version != 1) fail(version.Mark(), "unsupported version " + std::to_string(spec.version));
    YAML::Node items = root["items"];
    if (!items) fail(root.Mark(), "missing key 'items'");
    if (!items.IsSequence()) fail(items.Mark(), "'items' must be a list");
    for (const YAML::Node& item : items) spec.items.push_back(parse_item(item));
    return spec;
  }

 private:
  std::string source_;
  std::map<std::string, std::string> kinds_;  // name -> "ring" | "module" | "ideal"
  std::map<std::string, std::string> module_ring_;
  std::map<std::string, std::string> ideal_ring_;

  void check_keys(const YAML::Node& map, const std::set<std::string>& allowed) const {
    for (const auto& kv : map) {
      const std::string key = kv.first.as<std::string>();
      if (!allowed.count(key)) fail(kv.first.Mark(), "unknown key '" + key + "'");
    }
  }

  std::int64_t integer(const YAML::Node& n) const {
    if (!n.IsScalar()) fail(n.Mark(), "expected an integer");
    try {
      return n.as<std::int64_t>();
    } catch (const YAML::Exception&) {
      fail(n.Mark(), "expected an integer, got '" + n.Scalar() + "'");
    }
  }

  std::string text(const YAML::Node& n) const {
    if (!n.IsScalar()) fail(n.Mark(), "expected a string");
    return n.Scalar();
  }

  std::string name(const YAML::Node& n) const {
    static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
    std::string s = text(n);
    if (!std::regex_match(s, ident)) fail(n.Mark(), "'" + s + "' is not a valid name");
    return s;
  }

  void declare(const YAML::Node& n, const std::string& s, const std::string& kind) {
    if (kinds_.count(s)) fail(n.Mark(), "duplicate name '" + s + "'");
    kinds_[s] = kind;
  }

  void require(const YAML::Node& n, const std::string& s, const std::string& kind) const {
    auto it = kinds_.find(s);
    if (it == kinds_.end()) fail(n.Mark(), "unknown " + kind + " '" + s + "'");
    if (it->second != kind) fail(n.Mark(), "'" + s + "' is a " + it->second + ", not a " + kind);
  }

  YAML::Node need(const YAML::Node& map, const char* key) const {
    YAML::Node n = map[key];
    if (!n) fail(map.Mark(), std::string("missing key '") + key + "'");
    return n;
  }

  SpecItem parse_item(const YAML::Node& item) {
    if (!item.IsMap()) fail(item.Mark(), "each item must be a mapping");
    if (item["module"]) return parse_module(item);
    if (item["ideal"]) return parse_ideal(item);
    if (item["ring"]) return parse_ring(item);
    fail(item.Mark(), "item must declare a ring, module or ideal");
  }

  RingDef parse_ring(const YAML::Node& item) {
    check_keys(item, {"ring", "zmod", "gfpoly", "product", "trivext", "tier"});
    RingDef d;
    YAML::Node head = item["ring"];
    d.name = name(head);
    int kinds = 0;
    if (YAML::Node n = item["zmod"]) {
      ++kinds;
      d.kind = RingDef::Kind::Zmod;
      d.n = integer(n);
      if (d.n < 2) fail(n.Mark(), "zmod needs n >= 2");
    }
    if (YAML::Node n = item["gfpoly"]) {
      ++kinds;
      d.kind = RingDef::Kind::GfPoly;
      if (!n.IsMap()) fail(n.Mark(), "gfpoly needs keys p and f");
      check_keys(n, {"p", "f"});
      d.p = integer(need(n, "p"));
      YAML::Node f = need(n, "f");
      if (!f.IsSequence() || f.size() == 0) fail(f.Mark(), "f must be a nonempty list");
      for (const YAML::Node& c : f) d.f.push_back(integer(c));
    }
    if (YAML::Node n = item["product"]) {
      ++kinds;
      d.kind = RingDef::Kind::Product;
      if (!n.IsSequence() || n.size() < 2) fail(n.Mark(), "product needs at least two rings");
      for (const YAML::Node& c : n) {
        d.factors.push_back(name(c));
        require(c, d.factors.back(), "ring");
      }
    }
    if (YAML::Node n = item["trivext"]) {
      ++kinds;
      d.kind = RingDef::Kind::TrivExt;
      if (!n.IsMap()) fail(n.Mark(), "trivext needs keys base and module");
      check_keys(n, {"base", "module"});
      YAML::Node base = need(n, "base");
      YAML::Node module = need(n, "module");
      d.base = name(base);
      d.module = name(module);
      require(base, d.base, "ring");
      require(module, d.module, "module");
      if (module_ring_.at(d.module) != d.base) {
        fail(module.Mark(), "module '" + d.module + "' is not over '" + d.base + "'");
      }
    }
    if (YAML::Node n = item["tier"]) {
      ++kinds;
      std::string t = text(n);
      if (t == "zq") {
        d.kind = RingDef::Kind::ZQ;
      } else if (t == "uze") {
        d.kind = RingDef::Kind::UZE;
      } else {
        fail(n.Mark(), "unknown tier '" + t + "' (expected zq or uze)");
      }
    }
    if (kinds != 1) fail(item.Mark(), "ring '" + d.name + "' needs exactly one construction");
    declare(head, d.name, "ring");
    return d;
  }

  ModuleDef parse_module(const YAML::Node& item) {
    check_keys(item, {"module", "ring", "free", "residue_field_power", "ideal_module", "cyclic"});
    ModuleDef d;
    YAML::Node head = item["module"];
    d.name = name(head);
    YAML::Node ring = need(item, "ring");
    d.ring = name(ring);
    require(ring, d.ring, "ring");
    int kinds = 0;
    auto rank = [&](const char* key, ModuleDef::Kind k) {
      if (YAML::Node n = item[key]) {
        ++kinds;
        d.kind = k;
        d.rank = integer(n);
        if (d.rank < 0) fail(n.Mark(), "rank must be non-negative");
      }
    };
    auto by_ideal = [&](const char* key, ModuleDef::Kind k) {
      if (YAML::Node n = item[key]) {
        ++kinds;
        d.kind = k;
        d.ideal = name(n);
        require(n, d.ideal, "ideal");
        if (ideal_ring_.at(d.ideal) != d.ring) {
          fail(n.Mark(), "ideal '" + d.ideal + "' is not in ring '" + d.ring + "'");
        }
      }
    };
    rank("free", ModuleDef::Kind::Free);
    rank("residue_field_power", ModuleDef::Kind::ResidueFieldPower);
    by_ideal("ideal_module", ModuleDef::Kind::Ideal);
    by_ideal("cyclic", ModuleDef::Kind::Cyclic);
    if (kinds != 1) fail(item.Mark(), "module '" + d.name + "' needs exactly one construction");
    declare(head, d.name, "module");
    module_ring_[d.name] = d.ring;
    return d;
  }

  IdealDef parse_ideal(const YAML::Node& item) {
    check_keys(item, {"ideal", "ring", "gens"});
    IdealDef d;
    YAML::Node head = item["ideal"];
    d.name = name(head);
    YAML::Node ring = need(item, "ring");
    d.ring = name(ring);
    require(ring, d.ring, "ring");
    YAML::Node gens = need(item, "gens");
    if (!gens.IsSequence()) fail(gens.Mark(), "gens must be a list");
    for (const YAML::Node& g : gens) d.gens.push_back(text(g));
    declare(head, d.name, "ideal");
    ideal_ring_[d.name] = d.ring;
    return d;
  }
};

void emit_ints(YAML::Emitter& out, const std::vector<std::int64_t>& v) {
  out << YAML::Flow << YAML::BeginSeq;
  for (std::int64_t x : v) out << x;
  out << YAML::EndSeq;
}

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::int64_t parse_int(const std::string& s, const std::string& whole) {
  std::string t = trim(s);
  std::size_t pos = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(t, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (t.empty() || pos != t.size()) throw SpecError("bad integer '" + t + "' in '" + whole + "'");
  return v;
}

mpz_class parse_mpz(const std::string& s, const std::string& whole) {
  std::string t = trim(s);
  mpz_class v;
  if (t.empty() || v.set_str(t, 10) != 0) {
    throw SpecError("bad integer '" + t + "' in '" + whole + "'");
  }
  return v;
}

mpq_class parse_mpq(const std::string& s, const std::string& whole) {
  std::string t = trim(s);
  std::size_t slash = t.find('/');
  if (slash == std::string::npos) return mpq_class(parse_mpz(t, whole));
  mpz_class den = parse_mpz(t.substr(slash + 1), whole);
  if (den == 0) throw SpecError("zero denominator in '" + whole + "'");
  mpq_class q(parse_mpz(t.substr(0, slash), whole), den);
  q.canonicalize();
  return q;
}

// Contents of "( ... )", or nullopt for a bare scalar.
std::optional<std::string> parenthesized(const std::string& t, const std::string& whole) {
  if (t.empty() || t.front() != '(') return std::nullopt;
  if (t.back() != ')') throw SpecError("unbalanced parentheses in '" + whole + "'");
  return t.substr(1, t.size() - 2);
}

}  // namespace

RingSpec parse_ring_spec(const std::string& text, const std::string& source) {
  return Parser(source).parse(text);
}

RingSpec load_ring_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError(path + ": cannot open file");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_ring_spec(ss.str(), path);
}

std::string print_ring_spec(const RingSpec& spec) {
  YAML::Emitter out;
  out << YAML::BeginMap;
  out << YAML::Key << "version" << YAML::Value << spec.version;
  out << YAML::Key << "items" << YAML::Value << YAML::BeginSeq;
  for (const SpecItem& item : spec.items) {
    out << YAML::BeginMap;
    if (const auto* r = std::get_if<RingDef>(&item)) {
      out << YAML::Key << "ring" << YAML::Value << r->name;
      switch (r->kind) {
        case RingDef::Kind::Zmod: out << YAML::Key << "zmod" << YAML::Value << r->n; break;
        case RingDef::Kind::GfPoly:
          out << YAML::Key << "gfpoly" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "p" << YAML::Value << r->p;
          out << YAML::Key << "f" << YAML::Value;
          emit_ints(out, r->f);
          out << YAML::EndMap;
          break;
        case RingDef::Kind::Product:
          out << YAML::Key << "product" << YAML::Value << YAML::Flow << r->factors;
          break;
        case RingDef::Kind::TrivExt:
          out << YAML::Key << "trivext" << YAML::Value << YAML::BeginMap;
          out << YAML::Key << "base" << YAML::Value << r->base;
          out << YAML::Key << "module" << YAML::Value << r->module;
          out << YAML::EndMap;
          break;
        case RingDef::Kind::ZQ: out << YAML::Key << "tier" << YAML::Value << "zq"; break;
        case RingDef::Kind::UZE: out << YAML::Key << "tier" << YAML::Value << "uze"; break;
      }
    } else if (const auto* m = std::get_if<ModuleDef>(&item)) {
      out << YAML::Key << "module" << YAML::Value << m->name;
      out << YAML::Key << "ring" << YAML::Value << m->ring;
      switch (m->kind) {
        case ModuleDef::Kind::Free: out << YAML::Key << "free" << YAML::Value << m->rank; break;
        case ModuleDef::Kind::ResidueFieldPower:
          out << YAML::Key << "residue_field_power" << YAML::Value << m->rank;
          break;
        case ModuleDef::Kind::Ideal:
          out << YAML::Key << "ideal_module" << YAML::Value << m->ideal;
          break;
        case ModuleDef::Kind::Cyclic: out << YAML::Key << "cyclic" << YAML::Value << m->ideal; break;
      }
    } else {
      const auto& i = std::get<IdealDef>(item);
      out << YAML::Key << "ideal" << YAML::Value << i.name;
      out << YAML::Key << "ring" << YAML::Value << i.ring;
      out << YAML::Key << "gens" << YAML::Value << YAML::Flow << YAML::BeginSeq;
      for (const std::string& g : i.gens) out << YAML::DoubleQuoted << g;
      out << YAML::EndSeq;
    }
    out << YAML::EndMap;
  }
  out << YAML::EndSeq << YAML::EndMap;
  return std::string(out.c_str()) + "\n";
}

const RealRing& Workspace::ring(const std::string& name) const {
  auto it = rings.find(name);
  if (it == rings.end()) throw SpecError("unknown ring '" + name + "'");
  return it->second;
}

const RealModule& Workspace::module(const std::string& name) const {
  auto it = modules.find(name);
  if (it == modules.end()) throw SpecError("unknown module '" + name + "'");
  return it->second;
}

const RealIdeal& Workspace::ideal(const std::string& name) const {
  auto it = ideals.find(name);
  if (it == ideals.end()) throw SpecError("unknown ideal '" + name + "'");
  return it->second;
}

namespace {

const RingPtr& finite_ring(const Workspace& ws, const std::string& name, const std::string& who) {
  const RealRing& r = ws.ring(name);
  if (r.tier != RealRing::Tier::Finite) {
    throw SpecError(who + ": ring '" + name + "' is not a finite ring");
  }
  return r.finite;
}

void realize_item(Workspace& ws, const RingDef& d) {
  RealRing r;
  r.name = d.name;
  switch (d.kind) {
    case RingDef::Kind::Zmod: r.finite = make_zmod(d.n); break;
    case RingDef::Kind::GfPoly: r.finite = make_quotient_poly(d.p, d.f); break;
    case RingDef::Kind::Product: {
      std::vector<RingPtr> parts;
      for (const std::string& f : d.factors) parts.push_back(finite_ring(ws, f, "ring " + d.name));
      r.finite = make_product(parts);
      break;
    }
    case RingDef::Kind::TrivExt: {
      TrivialExtension t =
          trivial_extension(finite_ring(ws, d.base, "ring " + d.name), ws.module(d.module).module);
      r.finite = t.ring;
      r.trivext = std::move(t);
      break;
    }
    case RingDef::Kind::ZQ: r.tier = RealRing::Tier::ZQ; break;
    case RingDef::Kind::UZE: r.tier = RealRing::Tier::UZE; break;
  }
  ws.rings[d.name] = std::move(r);
}

void realize_item(Workspace& ws, const ModuleDef& d) {
  const RingPtr& r = finite_ring(ws, d.ring, "module " + d.name);
  RealModule m{d.name, d.ring, nullptr};
  switch (d.kind) {
    case ModuleDef::Kind::Free: m.module = free_module(r, static_cast<std::size_t>(d.rank)); break;
    case ModuleDef::Kind::ResidueFieldPower:
      m.module = residue_field_power(r, static_cast<std::size_t>(d.rank));
      break;
    case ModuleDef::Kind::Ideal:
      m.module = as_module(ideal_as_submodule(*ws.ideal(d.ideal).finite, free_module(r, 1))).module;
      break;
    case ModuleDef::Kind::Cyclic:
      m.module =
          quotient_module(ideal_as_submodule(*ws.ideal(d.ideal).finite, free_module(r, 1))).module;
      break;
  }
  ws.modules[d.name] = std::move(m);
}

void realize_item(Workspace& ws, const IdealDef& d) {
  const RealRing& r = ws.ring(d.ring);
  RealIdeal i{d.name, d.ring, d.gens, std::nullopt, {}, {}};
  switch (r.tier) {
    case RealRing::Tier::Finite: {
      std::vector<Elem> gens;
      for (const std::string& g : d.gens) gens.push_back(parse_finite_element(*r.finite, g));
      i.finite = Ideal::generated(r.finite, std::move(gens));
      break;
    }
    case RealRing::Tier::ZQ:
      for (const std::string& g : d.gens) i.zq.push_back(parse_zq_element(g));
      break;
    case RealRing::Tier::UZE:
      for (const std::string& g : d.gens) i.uze.push_back(parse_uze_element(g));
      break;
  }
  ws.ideals[d.name] = std::move(i);
}

std::string item_name(const SpecItem& item) {
  return std::visit([](const auto& d) { return d.name; }, item);
}

}  // namespace

Workspace realize(const RingSpec& spec) {
  Workspace ws;
  ws.spec = spec;
  for (const SpecItem& item : spec.items) {
    try {
      std::visit([&](const auto& d) { realize_item(ws, d); }, item);
    } catch (const SpecError& e) {
      throw SpecError("'" + item_name(item) + "': " + e.what());
    } catch (const AlgebraError& e) {
      throw SpecError("'" + item_name(item) + "': " + e.what());
    }
  }
  return ws;
}

Elem parse_finite_element(const FiniteRing& r, const std::string& text) {
  std::string t = trim(text);
  std::optional<std::string> inner = parenthesized(t, text);
  if (!inner) return r.scale(parse_int(t, text), r.one());
  Elem x;
  std::stringstream ss(*inner);
  std::string part;
  while (std::getline(ss, part, ',')) x.push_back(parse_int(part, text));
  if (x.size() != r.rank()) {
    throw SpecError("'" + text + "' has " + std::to_string(x.size()) + " coordinates, " +
                    r.label() + " needs " + std::to_string(r.rank()));
  }
  return r.reduce(std::move(x));
}

ZQElement parse_zq_element(const std::string& text) {
  std::string t = trim(text);
  std::optional<std::string> inner = parenthesized(t, text);
  if (!inner) return {parse_mpz(t, text), 0};
  std::size_t comma = inner->find(',');
  if (comma == std::string::npos) throw SpecError("expected (a,q) in '" + text + "'");
  return {parse_mpz(inner->substr(0, comma), text), parse_mpq(inner->substr(comma + 1), text)};
}

UZEElement parse_uze_element(const std::string& text) {
  std::string t = trim(text);
  std::optional<std::string> inner = parenthesized(t, text);
  if (!inner) return {parse_mpz(t, text), {}};
  std::size_t open = inner->find('{');
  std::size_t close = inner->find('}');
  std::size_t comma = inner->find(',');
  if (open == std::string::npos || close == std::string::npos || close < open ||
      comma == std::string::npos || comma > open) {
    throw SpecError("expected (a,{i,...}) in '" + text + "'");
  }
  mpz_class a = parse_mpz(inner->substr(0, comma), text);
  std::vector<std::uint32_t> support;
  std::stringstream ss(inner->substr(open + 1, close - open - 1));
  std::string part;
  while (std::getline(ss, part, ',')) {
    if (trim(part).empty()) continue;
    std::int64_t i = parse_int(part, text);
    if (i < 0 || i > 0xffffffffLL) throw SpecError("bad support index in '" + text + "'");
    support.push_back(static_cast<std::uint32_t>(i));
  }
  UZEElement x = uze_make(0, std::move(support));
  x.a = a;
  return x;
}

}  // namespace trivext
