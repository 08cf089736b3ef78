#pragma once

// A small YAML format describing rings, modules and ideals by construction,
// and its realization into library objects.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "trivext/finmod.hpp"
#include "trivext/ideal.hpp"
#include "trivext/uze.hpp"
#include "trivext/zq.hpp"

namespace trivext {

struct RingDef {
  enum class Kind { Zmod, GfPoly, Product, TrivExt, ZQ, UZE };
  std::string name;
  Kind kind = Kind::Zmod;
  std::int64_t n = 0;                // zmod
  std::int64_t p = 0;                // gfpoly
  std::vector<std::int64_t> f;       // gfpoly, low degree first
  std::vector<std::string> factors;  // product
  std::string base;                  // trivext
  std::string module;                // trivext

  bool operator==(const RingDef&) const = default;
};

struct ModuleDef {
  enum class Kind { Free, ResidueFieldPower, Ideal, Cyclic };
  std::string name;
  std::string ring;
  Kind kind = Kind::Free;
  std::int64_t rank = 0;  // free, residue_field_power
  std::string ideal;      // ideal, cyclic

  bool operator==(const ModuleDef&) const = default;
};

struct IdealDef {
  std::string name;
  std::string ring;
  std::vector<std::string> gens;

  bool operator==(const IdealDef&) const = default;
};

using SpecItem = std::variant<RingDef, ModuleDef, IdealDef>;

struct RingSpec {
  int version = 1;
  std::vector<SpecItem> items;

  bool operator==(const RingSpec&) const = default;
};

/// Throws SpecError with "source:line:col: message" on malformed input,
/// unknown keys, duplicate names and forward or dangling references.
RingSpec parse_ring_spec(const std::string& text, const std::string& source = "<spec>");
RingSpec load_ring_spec(const std::string& path);
/// Canonical form; parse_ring_spec(print_ring_spec(s)) == s.
std::string print_ring_spec(const RingSpec& spec);

/// A realized ring of any tier.
struct RealRing {
  enum class Tier { Finite, ZQ, UZE };
  std::string name;
  Tier tier = Tier::Finite;
  RingPtr finite;
  std::optional<TrivialExtension> trivext;
};

struct RealIdeal {
  std::string name;
  std::string ring;
  std::vector<std::string> literals;
  std::optional<Ideal> finite;
  std::vector<ZQElement> zq;
  std::vector<UZEElement> uze;
};

struct RealModule {
  std::string name;
  std::string ring;
  ModulePtr module;
};

struct Workspace {
  RingSpec spec;
  std::map<std::string, RealRing> rings;
  std::map<std::string, RealModule> modules;
  std::map<std::string, RealIdeal> ideals;

  const RealRing& ring(const std::string& name) const;
  const RealModule& module(const std::string& name) const;
  const RealIdeal& ideal(const std::string& name) const;
};

Workspace realize(const RingSpec& spec);

/// "(c0,...,ck)" in additive coordinates, or an integer n meaning n·1.
Elem parse_finite_element(const FiniteRing& r, const std::string& text);
/// "(a,q)" with q an integer or "num/den", or an integer a.
ZQElement parse_zq_element(const std::string& text);
/// "(a,{i,j,...})" or an integer a.
UZEElement parse_uze_element(const std::string& text);

}  // namespace trivext
