#pragma once

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "trivext/verify.hpp"

namespace trivext::detail {

using json = nlohmann::json;
using Rng = std::mt19937_64;

/// Independent stream per (seed, label).
Rng seeded_rng(std::uint64_t seed, const std::string& label);

/// "(c0,...,ck)" in additive coordinates; parse_finite_element reads it back.
std::string literal(const Elem& x);
json literals(const std::vector<Elem>& xs);
std::vector<Elem> parse_literals(const FiniteRing& r, const json& xs);

/// A failing case: the data needed to replay it and a human-readable note.
struct Failure {
  json data;
  std::string detail;
};

struct Outcome {
  CheckStatus status = CheckStatus::Confirmed;
  std::uint64_t instances_run = 0;
  std::optional<json> witness;
  std::string detail;
  std::string reason;
};

struct CheckContext {
  const InstanceSuite& suite;
  const VerifyConfig& config;
  Rng rng;
};

/// Re-runs one case from a witness.  Returns the failure note when the case
/// still fails.
using ReplayFn = std::function<std::optional<std::string>(const RingSpec& spec,
                                                          const std::string& ring,
                                                          const json& data)>;

struct CheckDef {
  CheckInfo info;
  std::function<Outcome(CheckContext&)> run;
  ReplayFn replay;
};

const std::vector<CheckDef>& check_defs();
void register_finite_checks(std::vector<CheckDef>& defs);
void register_tier_checks(std::vector<CheckDef>& defs);

/// Witness for a finite instance.
json finite_witness(const std::string& check, const Instance& inst, const Failure& f);
/// Witness for the symbolic tiers; its ring spec declares one ring of that tier.
json tier_witness(const std::string& check, const std::string& tier, const Failure& f);

/// Counterexample outcome from the first failing case.
Outcome counterexample(std::uint64_t instances_run, json witness, std::string detail);
/// Confirmed, or Skipped when nothing was applicable.
Outcome finish(std::uint64_t instances_run, std::string detail,
               const std::string& skipped_reason = "no applicable instances in the suite");

/// "; ideal lists sampled on N rings" when some lists hit the cap, else "".
std::string sampling_note(std::uint64_t sampled_rings);

/// Brute-force helpers shared by the finite checks.
std::vector<Elem> all_elements(const FiniteRing& r);
std::vector<Elem> ideal_elements(const Ideal& i);

}  // namespace trivext::detail
