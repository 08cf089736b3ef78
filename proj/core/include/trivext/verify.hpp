#pragma once

// Registry-driven checks of structural identities over generated instance
// suites, with JSON reports, replayable witnesses and shrinking.

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trivext/ringspec.hpp"

namespace trivext {

/// Sizes and sample counts.  Every field can be overridden from YAML.
struct VerifyConfig {
  std::uint64_t max_ring = 256;        // largest ring in the default suite
  std::uint64_t max_product = 64;      // largest product ring
  std::uint64_t ideal_cap = 600;       // exhaustive ideal walk up to this many
  std::uint64_t random_ideals = 40;    // sampled ideals when the walk is capped
  std::uint64_t axiom_samples = 10000; // axiom triples for rings above 256
  std::uint64_t samples = 1000;        // membership samples per ideal
  std::uint64_t zq_lists = 100;        // random generator lists in Z ∝ Q
  std::uint64_t submodules = 200;      // random submodules of R^1..R^3
  std::uint64_t pairs = 30;            // ideal pairs per finite ring
  std::uint64_t uze_elements = 300;    // sampled elements of Z × ⊕F2
  std::int64_t coef = 12;              // integer range [-coef, coef]
  std::int64_t den = 12;               // denominators in [1, den]
  std::uint32_t support = 8;           // E-supports inside [0, support)
  std::int64_t vfinite_max_d = 100;    // FullLine d checked for d ≤ this

  bool operator==(const VerifyConfig&) const = default;
};

/// Reads overrides from a YAML mapping; unknown keys are rejected.
VerifyConfig load_verify_config(const std::string& path);
VerifyConfig parse_verify_config(const std::string& text, const std::string& source = "<config>");
nlohmann::json config_json(const VerifyConfig& c);
/// Hex SHA-256 of the canonical JSON of the config and suite name.
std::string config_digest(const VerifyConfig& c, const std::string& suite);

/// A finite ring of the suite with its construction recipe.
struct Instance {
  std::string family;
  std::string name;     // ring name inside `recipe`
  RingSpec recipe;
  std::shared_ptr<const Workspace> workspace;
  RingPtr ring;
  std::optional<TrivialExtension> trivext;
  std::vector<Ideal> declared;  // ideals named in the recipe

  // Properties used to decide applicability.
  bool local = false;
  bool m2zero = false;  // local with M ≠ 0 and M² = 0
  bool mezero = false;  // trivext over a local base with ME = 0
  bool product = false;

  std::string label() const;
};

/// Ideals of an instance, exhaustive up to the cap and sampled beyond it.
struct IdealList {
  std::vector<Ideal> ideals;
  bool exhaustive = true;
};

struct InstanceSuite {
  std::string name;
  std::uint64_t seed = 0;
  std::vector<std::string> families;
  std::vector<Instance> instances;

  /// Computed once per instance and shared between checks.
  const IdealList& ideals(std::size_t instance) const;
  const IdealList& base_ideals(std::size_t instance) const;

  struct Cache;
  std::shared_ptr<Cache> cache;
  VerifyConfig config;
};

/// Instances of one family with |R| <= bound; products are further capped
/// by product_bound.  Families: zmod, trunc, gf, products, mezero, m2zero.
std::vector<Instance> generate_family(const std::string& family, std::uint64_t bound,
                                      std::uint64_t product_bound = 64);
/// All families.  `name` is
/// "default" (rings up to config.max_ring) or "small" (up to 64).
InstanceSuite generate_suite(const std::string& name, const VerifyConfig& config,
                             std::uint64_t seed);
/// One instance per finite ring of a spec file.
InstanceSuite suite_from_spec(const RingSpec& spec, const VerifyConfig& config,
                              std::uint64_t seed);
InstanceSuite make_suite(const std::string& name, std::vector<Instance> instances,
                         const VerifyConfig& config, std::uint64_t seed);
/// Builds an instance from a recipe and the name of a ring in it.
Instance make_instance(const RingSpec& recipe, const std::string& ring, std::string family);

enum class CheckStatus { Confirmed, Counterexample, Skipped };
std::string to_string(CheckStatus s);

struct CheckInfo {
  std::string id;
  std::string anchor;
  std::string tier;  // finite | zq | uze | mixed
  bool open = false;
};

/// The registry, in report order.
const std::vector<CheckInfo>& check_registry();
const CheckInfo& check_info(const std::string& id);

struct CheckReport {
  std::string check;
  CheckStatus status = CheckStatus::Skipped;
  std::uint64_t instances_run = 0;
  std::optional<nlohmann::json> witness;
  std::string detail;
  std::string reason;
  double elapsed_ms = 0;
};

CheckReport run_check(const std::string& id, const InstanceSuite& suite);
/// Runs the checks concurrently and returns reports in the order of `ids`.
std::vector<CheckReport> run_suite(const std::vector<std::string>& ids,
                                   const InstanceSuite& suite);
/// Re-executes a serialized counterexample; true when it still fails.
/// Throws SpecError on a malformed witness.
bool replay(const nlohmann::json& witness);

nlohmann::json report_json(const CheckReport& r, bool timings);
nlohmann::json report_file_json(const std::vector<CheckReport>& reports, std::uint64_t seed,
                                const std::string& digest, bool timings);

}  // namespace trivext
