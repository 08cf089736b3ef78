// trivext: ring specs, ideal computations, resolutions and check suites
// from the command line.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "trivext/errors.hpp"
#include "trivext/idealops.hpp"
#include "trivext/resolve.hpp"
#include "trivext/verify.hpp"

namespace {

using namespace trivext;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitCounterexample = 2;

std::string join(const std::vector<std::string>& xs, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? sep : "") + xs[i];
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// ------------------------------------------------------------------- check

struct CheckOptions {
  std::string suite;
  std::string spec;
  std::string checks = "all";
  std::uint64_t seed = 0;
  std::string report;
  std::string config;
  bool timings = false;
};

int cmd_check(const CheckOptions& o) {
  VerifyConfig config = o.config.empty() ? VerifyConfig{} : load_verify_config(o.config);
  std::vector<std::string> ids;
  if (o.checks == "all") {
    for (const CheckInfo& c : check_registry()) ids.push_back(c.id);
  } else {
    ids = split_list(o.checks);
    for (const std::string& id : ids) check_info(id);
  }
  InstanceSuite suite;
  std::string suite_name;
  if (!o.spec.empty()) {
    suite = suite_from_spec(load_ring_spec(o.spec), config, o.seed);
    suite_name = "spec:" + o.spec;
  } else {
    suite_name = o.suite.empty() ? "default" : o.suite;
    suite = generate_suite(suite_name, config, o.seed);
  }
  std::vector<CheckReport> reports = run_suite(ids, suite);

  int code = kExitOk;
  for (const CheckReport& r : reports) {
    const CheckInfo& info = check_info(r.check);
    std::cout << r.check << "  " << to_string(r.status) << "  instances=" << r.instances_run
              << (info.open ? "  [open]" : "") << "\n";
    if (r.status == CheckStatus::Counterexample && !info.open) code = kExitCounterexample;
  }
  nlohmann::json file =
      report_file_json(reports, o.seed, config_digest(config, suite_name), o.timings);
  if (!o.report.empty()) {
    std::ofstream out(o.report);
    if (!out) throw SpecError("cannot write report '" + o.report + "'");
    out << file.dump(2) << "\n";
  }
  return code;
}

// ------------------------------------------------------------------- ideal

struct IdealOptions {
  std::string spec;
  std::string ring;
  std::string op;
  std::vector<std::string> args;
};

void require_args(const IdealOptions& o, std::size_t n) {
  if (o.args.size() != n) {
    throw SpecError("--op " + o.op + " takes " + std::to_string(n) + " argument(s)");
  }
}

const RealIdeal& declared_ideal(const Workspace& ws, const std::string& ring,
                                const std::string& name) {
  const RealIdeal& i = ws.ideal(name);
  if (i.ring != ring) throw SpecError("ideal '" + name + "' is not an ideal of '" + ring + "'");
  return i;
}

/// An ideal argument: a declared name, "whole" or "zero".
Ideal finite_ideal(const Workspace& ws, const RealRing& r, const std::string& arg) {
  if (arg == "whole") return Ideal::whole(r.finite);
  if (arg == "zero") return Ideal::zero(r.finite);
  return *declared_ideal(ws, r.name, arg).finite;
}

ZQIdealNF zq_ideal(const Workspace& ws, const RealRing& r, const std::string& arg) {
  if (arg == "whole") return ZQIdealNF::whole();
  if (arg == "zero") return ZQIdealNF::zero();
  return zq_ideal_nf(declared_ideal(ws, r.name, arg).zq);
}

void print_finite(const std::string& label, const Ideal& i) {
  const FiniteRing& r = *i.ring();
  std::cout << label << ": " << i.format() << "\n";
  std::cout << "  size: " << i.size() << "\n";
  std::vector<std::string> gens;
  for (const Elem& g : i.gens()) gens.push_back(r.format(g));
  std::cout << "  generators: " << (gens.empty() ? "none" : join(gens, ", ")) << "\n";
  if (i.size() <= 64) {
    std::vector<std::string> elems;
    for (const Elem& x : i.elements(i.size())) elems.push_back(r.format(x));
    std::cout << "  elements: " << join(elems, ", ") << "\n";
  }
}

void ideal_finite(const Workspace& ws, const RealRing& r, const IdealOptions& o) {
  if (o.op == "ann") {
    require_args(o, 1);
    print_finite("(0:" + o.args[0] + ")",
                 annihilator(r.finite, parse_finite_element(*r.finite, o.args[0])));
  } else if (o.op == "cap") {
    require_args(o, 2);
    print_finite(o.args[0] + " ∩ " + o.args[1],
                 intersect(finite_ideal(ws, r, o.args[0]), finite_ideal(ws, r, o.args[1])));
  } else if (o.op == "colon") {
    require_args(o, 2);
    print_finite("(" + o.args[0] + ":" + o.args[1] + ")",
                 colon(finite_ideal(ws, r, o.args[0]), finite_ideal(ws, r, o.args[1])));
  } else if (o.op == "inv") {
    require_args(o, 1);
    print_finite(o.args[0] + "⁻¹", inverse_finite(finite_ideal(ws, r, o.args[0])));
  } else if (o.op == "v") {
    require_args(o, 1);
    Ideal i = finite_ideal(ws, r, o.args[0]);
    print_finite(o.args[0] + "_v", v_closure_finite(i));
    print_finite("v-finite witness", v_finite_witness_finite(i));
  }
}

void print_zq_witness(const std::vector<ZQElement>& w) {
  std::vector<std::string> parts;
  for (const ZQElement& x : w) parts.push_back(zq_format(x));
  std::cout << "v-finite witness: " << (parts.empty() ? "none" : join(parts, ", ")) << "\n";
}

void ideal_zq(const Workspace& ws, const RealRing& r, const IdealOptions& o) {
  if (o.op == "ann") {
    require_args(o, 1);
    std::cout << "(0:" << o.args[0] << "): " << zq_format(zq_annihilator(parse_zq_element(o.args[0])))
              << "\n";
  } else if (o.op == "cap") {
    require_args(o, 2);
    std::cout << o.args[0] << " ∩ " << o.args[1] << ": "
              << zq_format(zq_intersect(zq_ideal(ws, r, o.args[0]), zq_ideal(ws, r, o.args[1])))
              << "\n";
  } else if (o.op == "colon") {
    require_args(o, 2);
    std::cout << "(" << o.args[0] << ":" << o.args[1] << "): "
              << zq_format(zq_colon(zq_ideal(ws, r, o.args[0]), zq_ideal(ws, r, o.args[1])))
              << "\n";
  } else if (o.op == "inv") {
    require_args(o, 1);
    std::cout << o.args[0] << "⁻¹: "
              << zq_format(zq_inverse(zq_fractional(zq_ideal(ws, r, o.args[0])))) << "\n";
  } else if (o.op == "v") {
    require_args(o, 1);
    ZQIdealNF i = zq_ideal(ws, r, o.args[0]);
    std::cout << o.args[0] << "_v: " << zq_format(zq_v_closure(zq_fractional(i))) << "\n";
    print_zq_witness(zq_v_finite_witness(ZQIdealResult{i}));
  }
}

void ideal_uze(const Workspace& ws, const RealRing& r, const IdealOptions& o) {
  if (o.op == "ann") {
    require_args(o, 1);
    std::cout << "(0:" << o.args[0] << "): " << uze_format(uze_annihilator(parse_uze_element(o.args[0])))
              << "\n";
  } else if (o.op == "inv") {
    require_args(o, 1);
    std::cout << o.args[0] << "⁻¹: "
              << uze_format(uze_inverse_class(declared_ideal(ws, r.name, o.args[0]).uze)) << "\n";
  } else {
    throw SpecError("--op " + o.op + " is not available for the uze tier");
  }
}

int cmd_ideal(const IdealOptions& o) {
  Workspace ws = realize(load_ring_spec(o.spec));
  const RealRing& r = ws.ring(o.ring);
  switch (r.tier) {
    case RealRing::Tier::Finite: ideal_finite(ws, r, o); break;
    case RealRing::Tier::ZQ: ideal_zq(ws, r, o); break;
    case RealRing::Tier::UZE: ideal_uze(ws, r, o); break;
  }
  return kExitOk;
}

// ----------------------------------------------------------------- resolve

int cmd_resolve(const std::string& spec, const std::string& module, std::size_t depth) {
  if (depth == 0) throw SpecError("--depth must be at least 1");
  Workspace ws = realize(load_ring_spec(spec));
  const RealModule& m = ws.module(module);
  Submodule n = Submodule::whole(m.module);
  Presentation p = presentation(n, depth);
  std::cout << module << " over " << m.ring << ", |" << module << "| = " << n.size() << "\n";
  std::cout << "  F0 -> " << module << ": rank " << p.augmentation.source->rank() << "\n";
  for (std::size_t j = 0; j < p.steps.size(); ++j) {
    const ModuleMap& step = p.steps[j];
    std::vector<std::string> images;
    for (const Vec& v : step.images) images.push_back(step.target->format(v));
    std::cout << "  F" << j + 1 << " -> F" << j << ": images [" << join(images, ", ")
              << "], |kernel of F" << j << "| = " << p.syzygies[j].size() << "\n";
  }
  std::cout << "pd: " << projective_dimension_up_to(n, depth).describe() << "\n";
  return kExitOk;
}

// ------------------------------------------------------------------ replay

int cmd_replay(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot read '" + path + "'");
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw SpecError(path + ": " + e.what());
  }
  // Accept a bare witness or a whole report file.
  std::vector<nlohmann::json> witnesses;
  if (doc.contains("reports")) {
    for (const auto& r : doc["reports"]) {
      if (r.contains("witness")) witnesses.push_back(r["witness"]);
    }
  } else {
    witnesses.push_back(doc);
  }
  bool all = true;
  for (const auto& w : witnesses) {
    bool fails = replay(w);
    all = all && fails;
    std::cout << w.value("check", "?") << ": " << (fails ? "still fails" : "no longer fails") << "\n";
  }
  return all ? kExitOk : kExitCounterexample;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact computations in trivial ring extensions"};
  app.require_subcommand(1);

  CheckOptions check;
  auto* check_cmd = app.add_subcommand("check", "Run registered checks and write a JSON report");
  auto* suite_opt = check_cmd->add_option("--suite", check.suite, "Generated suite: default or small");
  check_cmd->add_option("--spec", check.spec, "Ring-spec file whose finite rings form the suite")
      ->excludes(suite_opt);
  check_cmd->add_option("--checks", check.checks, "Comma-separated check ids, or all");
  check_cmd->add_option("--seed", check.seed, "Seed for all sampling");
  check_cmd->add_option("--report", check.report, "Path of the JSON report");
  check_cmd->add_option("--config", check.config, "YAML file overriding sizes and sample counts");
  check_cmd->add_flag("--timings", check.timings, "Record elapsed_ms in the report");

  IdealOptions ideal;
  auto* ideal_cmd = app.add_subcommand("ideal", "Compute with ideals of a ring from a spec file");
  ideal_cmd->add_option("--spec", ideal.spec, "Ring-spec file")->required();
  ideal_cmd->add_option("--ring", ideal.ring, "Ring name")->required();
  ideal_cmd->add_option("--op", ideal.op, "Operation")
      ->required()
      ->check(CLI::IsMember({"ann", "cap", "colon", "inv", "v"}));
  ideal_cmd->add_option("--args", ideal.args,
                        "Element literal for ann; ideal names, whole or zero otherwise")
      ->required();

  std::string resolve_spec, resolve_module;
  std::size_t depth = 4;
  auto* resolve_cmd = app.add_subcommand("resolve", "Resolve a module from a spec file");
  resolve_cmd->add_option("--spec", resolve_spec, "Ring-spec file")->required();
  resolve_cmd->add_option("--module", resolve_module, "Module name")->required();
  resolve_cmd->add_option("--depth", depth, "Number of syzygy steps");

  std::string witness;
  auto* replay_cmd = app.add_subcommand("replay", "Re-run counterexample witnesses");
  replay_cmd->add_option("--witness", witness, "Witness or report JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*check_cmd) return cmd_check(check);
    if (*ideal_cmd) return cmd_ideal(ideal);
    if (*resolve_cmd) return cmd_resolve(resolve_spec, resolve_module, depth);
    if (*replay_cmd) return cmd_replay(witness);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
