#include <chrono>
#include <future>
#include <sstream>

#include "internal.hpp"
#include "trivext/errors.hpp"

namespace trivext {

namespace detail {

Rng seeded_rng(std::uint64_t seed, const std::string& label) {
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32)};
  for (unsigned char c : label) words.push_back(c);
  std::seed_seq seq(words.begin(), words.end());
  return Rng(seq);
}

std::string literal(const Elem& x) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < x.size(); ++i) os << (i ? "," : "") << x[i];
  os << ")";
  return os.str();
}

json literals(const std::vector<Elem>& xs) {
  json out = json::array();
  for (const Elem& x : xs) out.push_back(literal(x));
  return out;
}

std::vector<Elem> parse_literals(const FiniteRing& r, const json& xs) {
  if (!xs.is_array()) throw SpecError("witness: expected a list of elements");
  std::vector<Elem> out;
  for (const json& x : xs) {
    if (!x.is_string()) throw SpecError("witness: elements must be strings");
    out.push_back(parse_finite_element(r, x.get<std::string>()));
  }
  return out;
}

json finite_witness(const std::string& check, const Instance& inst, const Failure& f) {
  return json{{"check", check},
              {"spec", print_ring_spec(inst.recipe)},
              {"ring", inst.name},
              {"data", f.data},
              {"detail", f.detail}};
}

json tier_witness(const std::string& check, const std::string& tier, const Failure& f) {
  RingSpec spec;
  RingDef r;
  r.name = "R";
  r.kind = tier == "zq" ? RingDef::Kind::ZQ : RingDef::Kind::UZE;
  spec.items.push_back(r);
  return json{{"check", check},
              {"spec", print_ring_spec(spec)},
              {"ring", "R"},
              {"data", f.data},
              {"detail", f.detail}};
}

Outcome counterexample(std::uint64_t instances_run, json witness, std::string detail) {
  Outcome o;
  o.status = CheckStatus::Counterexample;
  o.instances_run = instances_run;
  o.witness = std::move(witness);
  o.detail = std::move(detail);
  return o;
}

Outcome finish(std::uint64_t instances_run, std::string detail,
               const std::string& skipped_reason) {
  Outcome o;
  o.instances_run = instances_run;
  o.detail = std::move(detail);
  if (instances_run == 0) {
    o.status = CheckStatus::Skipped;
    o.reason = skipped_reason;
  }
  return o;
}

std::string sampling_note(std::uint64_t sampled_rings) {
  if (sampled_rings == 0) return "";
  return "; ideal lists sampled above the cap on " + std::to_string(sampled_rings) + " rings";
}

std::vector<Elem> all_elements(const FiniteRing& r) {
  std::vector<Elem> out;
  out.reserve(r.size());
  for (std::uint64_t i = 0; i < r.size(); ++i) out.push_back(r.element(i));
  return out;
}

std::vector<Elem> ideal_elements(const Ideal& i) { return i.elements(i.size()); }

const std::vector<CheckDef>& check_defs() {
  static const std::vector<CheckDef> defs = [] {
    std::vector<CheckDef> d;
    register_finite_checks(d);
    register_tier_checks(d);
    // Report order follows the registry table.
    static const std::vector<std::string> order = {
        "ax.ring",         "ex2.3.regular",    "ex2.3.ann",        "ex2.3.inv",
        "ex2.4.ann",       "ex2.4.ker",        "ex2.5.strict",     "lem2.7.formulas",
        "thm2.6.ker",      "thm2.6.intersection", "thm2.8.ann",    "thm2.8.inv",
        "thm2.8.intersect", "thm2.8.nonfc",    "thm2.8.vfinite",   "prop2.2.chain",
        "prop3.5.bezout",  "lem3.2.split",     "lem3.3.present",   "prod.componentwise",
        "fin.vtrivial",    "thm3.10.fin",      "ex3.4.regann",
    };
    std::vector<CheckDef> sorted;
    for (const std::string& id : order) {
      for (const CheckDef& c : d) {
        if (c.info.id == id) sorted.push_back(c);
      }
    }
    if (sorted.size() != d.size()) throw std::logic_error("check registry is inconsistent");
    return sorted;
  }();
  return defs;
}

namespace {

const CheckDef& def_of(const std::string& id) {
  for (const CheckDef& d : check_defs()) {
    if (d.info.id == id) return d;
  }
  throw SpecError("unregistered check '" + id + "'");
}

/// Drops generators while the witness keeps failing.
void shrink(const CheckDef& def, json& witness) {
  json& data = witness["data"];
  if (!data.contains("gens") || !data["gens"].is_array()) return;
  RingSpec spec = parse_ring_spec(witness["spec"].get<std::string>(), "witness");
  const std::string ring = witness["ring"].get<std::string>();
  for (std::size_t i = data["gens"].size(); i-- > 0 && data["gens"].size() > 1;) {
    json trial = data;
    trial["gens"].erase(i);
    if (std::optional<std::string> still = def.replay(spec, ring, trial)) {
      data = std::move(trial);
      witness["detail"] = *still;
    }
  }
}

}  // namespace

}  // namespace detail

std::string to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::Confirmed: return "Confirmed";
    case CheckStatus::Counterexample: return "Counterexample";
    case CheckStatus::Skipped: return "Skipped";
  }
  return "?";
}

const std::vector<CheckInfo>& check_registry() {
  static const std::vector<CheckInfo> infos = [] {
    std::vector<CheckInfo> out;
    for (const detail::CheckDef& d : detail::check_defs()) out.push_back(d.info);
    return out;
  }();
  return infos;
}

const CheckInfo& check_info(const std::string& id) { return detail::def_of(id).info; }

CheckReport run_check(const std::string& id, const InstanceSuite& suite) {
  const detail::CheckDef& def = detail::def_of(id);
  CheckReport report;
  report.check = id;
  auto start = std::chrono::steady_clock::now();
  detail::CheckContext ctx{suite, suite.config, detail::seeded_rng(suite.seed, id)};
  detail::Outcome o;
  try {
    o = def.run(ctx);
  } catch (const ResourceError& e) {
    o = detail::Outcome{CheckStatus::Skipped, 0, std::nullopt, "", std::string("budget: ") + e.what()};
  }
  if (o.witness) detail::shrink(def, *o.witness);
  report.status = o.status;
  report.instances_run = o.instances_run;
  report.witness = std::move(o.witness);
  report.detail = std::move(o.detail);
  report.reason = std::move(o.reason);
  report.elapsed_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

std::vector<CheckReport> run_suite(const std::vector<std::string>& ids,
                                   const InstanceSuite& suite) {
  for (const std::string& id : ids) detail::def_of(id);
  std::vector<std::future<CheckReport>> futures;
  for (const std::string& id : ids) {
    futures.push_back(std::async(std::launch::async, [&suite, id] { return run_check(id, suite); }));
  }
  std::vector<CheckReport> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

bool replay(const nlohmann::json& witness) {
  auto field = [&](const char* key) -> std::string {
    if (!witness.is_object() || !witness.contains(key) || !witness[key].is_string()) {
      throw SpecError(std::string("witness: missing string field '") + key + "'");
    }
    return witness[key].get<std::string>();
  };
  const detail::CheckDef& def = detail::def_of(field("check"));
  RingSpec spec = parse_ring_spec(field("spec"), "witness");
  std::string ring = field("ring");
  if (!witness.contains("data") || !witness["data"].is_object()) {
    throw SpecError("witness: missing object field 'data'");
  }
  try {
    return def.replay(spec, ring, witness["data"]).has_value();
  } catch (const nlohmann::json::exception& e) {
    throw SpecError(std::string("witness: ") + e.what());
  }
}

nlohmann::json report_json(const CheckReport& r, bool timings) {
  const CheckInfo& info = check_info(r.check);
  nlohmann::json j{{"check", r.check},
                   {"anchor", info.anchor},
                   {"status", to_string(r.status)},
                   {"registry_status", info.open ? "open" : "expected"},
                   {"instances_run", r.instances_run}};
  if (r.witness) j["witness"] = *r.witness;
  if (!r.detail.empty()) j["detail"] = r.detail;
  if (!r.reason.empty()) j["reason"] = r.reason;
  if (timings) j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

nlohmann::json report_file_json(const std::vector<CheckReport>& reports, std::uint64_t seed,
                                const std::string& digest, bool timings) {
  nlohmann::json list = nlohmann::json::array();
  for (const CheckReport& r : reports) list.push_back(report_json(r, timings));
  return nlohmann::json{{"version", 1}, {"seed", seed}, {"config_digest", digest}, {"reports", list}};
}

}  // namespace trivext
