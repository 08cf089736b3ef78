#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "oracle.hpp"
#include "trivext/errors.hpp"
#include "trivext/verify.hpp"

namespace trivext {
namespace {

/// Compact description of a recipe, e.g. "Z/4;rfp1;ext".
std::string signature(const Instance& inst) {
  std::string out;
  for (const SpecItem& item : inst.recipe.items) {
    std::string part;
    if (const auto* r = std::get_if<RingDef>(&item)) {
      switch (r->kind) {
        case RingDef::Kind::Zmod: part = "Z/" + std::to_string(r->n); break;
        case RingDef::Kind::GfPoly: {
          part = "F" + std::to_string(r->p) + "[";
          for (std::size_t i = 0; i < r->f.size(); ++i) {
            part += (i ? "," : "") + std::to_string(r->f[i]);
          }
          part += "]";
          break;
        }
        case RingDef::Kind::Product: part = "prod"; break;
        case RingDef::Kind::TrivExt: part = "ext"; break;
        default: part = "?"; break;
      }
    } else if (const auto* m = std::get_if<ModuleDef>(&item)) {
      part = (m->kind == ModuleDef::Kind::Free ? "free" : "rfp") + std::to_string(m->rank);
    }
    out += (out.empty() ? "" : ";") + part;
  }
  return out;
}

std::set<std::string> signatures(const std::vector<Instance>& xs) {
  std::set<std::string> out;
  for (const Instance& i : xs) out.insert(signature(i));
  return out;
}

VerifyConfig tiny_config() {
  VerifyConfig c;
  c.max_ring = 16;
  c.samples = 40;
  c.zq_lists = 8;
  c.submodules = 12;
  c.pairs = 4;
  c.uze_elements = 20;
  c.random_ideals = 6;
  return c;
}

std::vector<std::string> all_ids() {
  std::vector<std::string> ids;
  for (const CheckInfo& c : check_registry()) ids.push_back(c.id);
  return ids;
}

const CheckReport& find(const std::vector<CheckReport>& rs, const std::string& id) {
  auto it = std::find_if(rs.begin(), rs.end(), [&](const CheckReport& r) { return r.check == id; });
  if (it == rs.end()) throw std::logic_error("missing report " + id);
  return *it;
}

TEST(Registry, OrderAndOpenStatus) {
  const auto& reg = check_registry();
  ASSERT_EQ(reg.size(), 23u);
  EXPECT_EQ(reg.front().id, "ax.ring");
  EXPECT_EQ(reg.back().id, "ex3.4.regann");
  std::set<std::string> ids;
  for (const CheckInfo& c : reg) {
    EXPECT_FALSE(c.anchor.empty()) << c.id;
    EXPECT_EQ(c.open, c.id == "thm2.6.intersection") << c.id;
    ids.insert(c.id);
  }
  EXPECT_EQ(ids.size(), reg.size());
  EXPECT_THROW(check_info("no.such.check"), SpecError);
}

TEST(Families, SmallestMembers) {
  EXPECT_TRUE(signatures(generate_family("m2zero", 16)).count("Z/4"));
  EXPECT_TRUE(signatures(generate_family("m2zero", 16)).count("F2[0,0,1]"));
  std::set<std::string> me = signatures(generate_family("mezero", 64));
  EXPECT_TRUE(me.count("Z/4;rfp1;ext"));
  EXPECT_TRUE(me.count("F2[0,0,1];rfp2;ext"));
  EXPECT_TRUE(signatures(generate_family("products", 36)).count("Z/2;Z/3;prod"));
  EXPECT_THROW(generate_family("bogus", 16), SpecError);
}

TEST(Families, RespectBoundsAndFlags) {
  for (const char* fam : {"zmod", "trunc", "gf", "products", "mezero", "m2zero"}) {
    for (const Instance& i : generate_family(fam, 32)) {
      EXPECT_LE(i.ring->size(), 32u) << i.label();
      EXPECT_EQ(i.family, fam);
    }
  }
  for (const Instance& i : generate_family("m2zero", 64)) {
    // M² = 0 checked by brute force over the non-units.
    std::vector<Elem> m;
    for (const Elem& x : oracle::elements(*i.ring)) {
      if (!oracle::is_unit(*i.ring, x)) m.push_back(x);
    }
    for (const Elem& x : m) {
      for (const Elem& y : m) EXPECT_TRUE(i.ring->is_zero(i.ring->mul(x, y))) << i.label();
    }
    EXPECT_TRUE(i.m2zero);
  }
}

TEST(Config, OverridesAndDigest) {
  VerifyConfig c = parse_verify_config("samples: 10\nzq_lists: 3\n", "c.yaml");
  EXPECT_EQ(c.samples, 10u);
  EXPECT_EQ(c.zq_lists, 3u);
  EXPECT_EQ(c.max_ring, VerifyConfig{}.max_ring);
  try {
    parse_verify_config("samples: 10\nbogus: 1\n", "c.yaml");
    FAIL() << "unknown key accepted";
  } catch (const SpecError& e) {
    EXPECT_NE(std::string(e.what()).find("c.yaml:2:1"), std::string::npos) << e.what();
  }
  std::string d = config_digest(VerifyConfig{}, "default");
  EXPECT_EQ(d.size(), 64u);
  EXPECT_EQ(d, config_digest(VerifyConfig{}, "default"));
  EXPECT_NE(d, config_digest(VerifyConfig{}, "small"));
  EXPECT_NE(d, config_digest(c, "default"));
}

TEST(RunSuite, EmptyListAndUnknownId) {
  InstanceSuite s = generate_suite("small", tiny_config(), 1);
  EXPECT_TRUE(run_suite({}, s).empty());
  EXPECT_THROW(run_check("no.such.check", s), SpecError);
  EXPECT_THROW(generate_suite("huge", tiny_config(), 1), SpecError);
}

TEST(RunSuite, DeterministicAndTotal) {
  InstanceSuite a = generate_suite("small", tiny_config(), 7);
  InstanceSuite b = generate_suite("small", tiny_config(), 7);
  std::string digest = config_digest(tiny_config(), "small");
  std::vector<CheckReport> ra = run_suite(all_ids(), a);
  std::vector<CheckReport> rb = run_suite(all_ids(), b);
  ASSERT_EQ(ra.size(), 23u);
  EXPECT_EQ(report_file_json(ra, 7, digest, false).dump(),
            report_file_json(rb, 7, digest, false).dump());
  for (const CheckReport& r : ra) {
    if (r.status == CheckStatus::Confirmed) EXPECT_GE(r.instances_run, 1u) << r.check;
    if (r.status == CheckStatus::Skipped) EXPECT_FALSE(r.reason.empty()) << r.check;
  }
}

TEST(RunSuite, IntersectionWitnessReplaysAndIsMinimal) {
  InstanceSuite s = generate_suite("small", tiny_config(), 7);
  CheckReport r = run_check("thm2.6.intersection", s);
  ASSERT_EQ(r.status, CheckStatus::Counterexample);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(replay(*r.witness));
  EXPECT_EQ((*r.witness)["data"]["gens"].size(), 2u);

  // Independent recomputation in Z/4 ∝ Z/2 with the witness generators.
  Workspace ws = realize(parse_ring_spec((*r.witness)["spec"].get<std::string>()));
  const FiniteRing& ring = *ws.ring((*r.witness)["ring"].get<std::string>()).finite;
  std::vector<oracle::ElemSet> principal;
  for (const auto& g : (*r.witness)["data"]["gens"]) {
    principal.push_back(oracle::ideal_closure(ring, {parse_finite_element(ring, g.get<std::string>())}));
  }
  oracle::ElemSet meet;
  std::set_intersection(principal[0].begin(), principal[0].end(), principal[1].begin(),
                        principal[1].end(), std::inserter(meet, meet.begin()));
  EXPECT_EQ(meet.size(), 1u);  // only zero
}

TEST(Replay, RejectsMalformedAndPassingCases) {
  EXPECT_THROW(replay(nlohmann::json::object()), SpecError);
  EXPECT_THROW(replay(nlohmann::json{{"check", "ex2.4.ann"}, {"spec", "version: 1\nitems: []\n"},
                                     {"ring", "R"}}),
               SpecError);
  // (0:(2)) = (2) in Z/4 holds, so this witness does not fail.
  nlohmann::json ok{{"check", "ex2.4.ann"},
                    {"spec", "version: 1\nitems:\n  - ring: R\n    zmod: 4\n"},
                    {"ring", "R"},
                    {"data", {{"c", "(2)"}}}};
  EXPECT_FALSE(replay(ok));
}

TEST(SpecSuite, SkipsWithReason) {
  RingSpec spec = parse_ring_spec("version: 1\nitems:\n  - ring: R\n    zmod: 6\n");
  InstanceSuite s = suite_from_spec(spec, tiny_config(), 0);
  ASSERT_EQ(s.instances.size(), 1u);
  CheckReport r = run_check("ex2.4.ann", s);
  EXPECT_EQ(r.status, CheckStatus::Skipped);
  EXPECT_FALSE(r.reason.empty());
  EXPECT_EQ(run_check("thm3.10.fin", s).status, CheckStatus::Confirmed);
}

TEST(ReportJson, FieldsAndTimings) {
  InstanceSuite s = generate_suite("small", tiny_config(), 3);
  CheckReport r = run_check("ex2.4.ann", s);
  nlohmann::json j = report_json(r, false);
  EXPECT_EQ(j["status"], "Confirmed");
  EXPECT_EQ(j["registry_status"], "expected");
  EXPECT_FALSE(j.contains("elapsed_ms"));
  EXPECT_TRUE(report_json(r, true).contains("elapsed_ms"));
  nlohmann::json f = report_file_json({r}, 3, "abc", false);
  EXPECT_EQ(f["version"], 1);
  EXPECT_EQ(f["seed"], 3);
  EXPECT_EQ(f["reports"].size(), 1u);
}

}  // namespace
}  // namespace trivext
