// Runs the default suite and prints one PASS/FAIL line per acceptance
// criterion.  Exit status is the number of failing criteria.

#include <chrono>
#include <fstream>
#include <iostream>

#include "oracle.hpp"
#include "trivext/idealops.hpp"
#include "trivext/verify.hpp"

namespace {

using namespace trivext;

int failures = 0;

void line(int n, bool ok, const std::string& text) {
  if (!ok) ++failures;
  std::cout << (ok ? "PASS" : "FAIL") << "  " << (n < 10 ? " " : "") << n << "  " << text << "\n";
}

const CheckReport& report(const std::vector<CheckReport>& rs, const std::string& id) {
  for (const CheckReport& r : rs) {
    if (r.check == id) return r;
  }
  throw std::logic_error("no report for " + id);
}

bool confirmed(const std::vector<CheckReport>& rs, const std::string& id) {
  return report(rs, id).status == CheckStatus::Confirmed;
}

std::string verdict(const std::vector<CheckReport>& rs, const std::string& id) {
  const CheckReport& r = report(rs, id);
  return id + " " + to_string(r.status) + " (" + std::to_string(r.instances_run) + ")";
}

std::size_t count_family(const InstanceSuite& s, bool Instance::*flag) {
  std::size_t n = 0;
  for (const Instance& i : s.instances) n += (i.*flag) ? 1 : 0;
  return n;
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t seed = 7;
  const VerifyConfig config;
  std::vector<std::string> ids;
  for (const CheckInfo& c : check_registry()) ids.push_back(c.id);

  auto start = std::chrono::steady_clock::now();
  InstanceSuite suite = generate_suite("default", config, seed);
  std::vector<CheckReport> rs = run_suite(ids, suite);
  double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const std::string digest = config_digest(config, "default");
  const std::string first = report_file_json(rs, seed, digest, false).dump(2);
  if (argc > 1) std::ofstream(argv[1]) << first << "\n";
  const std::size_t rings = suite.instances.size();

  // 1. Ring axioms and the trivial-extension law.
  line(1, confirmed(rs, "ax.ring") && report(rs, "ax.ring").instances_run == rings,
       verdict(rs, "ax.ring") + " over " + std::to_string(rings) + " suite rings");

  // 2. (0:c) = M on every M² = 0 local.
  {
    std::size_t m2 = 0;
    bool bounded = true;
    for (const Instance& i : suite.instances) {
      if (!i.m2zero) continue;
      ++m2;
      bounded = bounded && i.ring->size() <= 256;
    }
    line(2, confirmed(rs, "ex2.4.ann") && bounded && report(rs, "ex2.4.ann").instances_run == m2,
         verdict(rs, "ex2.4.ann") + " on " + std::to_string(m2) + " M² = 0 locals up to 256");
  }

  // 3. Minimal syzygies on at least 50 ideals across the suite.
  {
    std::size_t ker_ideals = 0, base_ideals = 0;
    for (std::size_t k = 0; k < rings; ++k) {
      const Instance& inst = suite.instances[k];
      if (inst.m2zero) {
        for (const Ideal& i : suite.ideals(k).ideals) {
          if (!i.is_zero() && i.size() < inst.ring->size()) ++ker_ideals;
        }
      }
      if (inst.mezero) {
        Ideal m = *local_maximal_ideal(inst.trivext->base);
        for (const Ideal& i : suite.base_ideals(k).ideals) {
          if (!i.is_zero() && i.subset_of(m)) ++base_ideals;
        }
      }
    }
    line(3,
         confirmed(rs, "ex2.4.ker") && confirmed(rs, "thm2.6.ker") && ker_ideals >= 50 &&
             base_ideals >= 50,
         verdict(rs, "ex2.4.ker") + " on " + std::to_string(ker_ideals) + " ideals, " +
             verdict(rs, "thm2.6.ker") + " on " + std::to_string(base_ideals) + " ideals");
  }

  // 4. Annihilator formulas on every ME = 0 pair.
  {
    std::size_t me = count_family(suite, &Instance::mezero);
    const std::string& d = report(rs, "lem2.7.formulas").detail;
    bool both = d.find("(0,e)") != std::string::npos && d.find("(a≠0,e≠0)") != std::string::npos;
    line(4,
         confirmed(rs, "lem2.7.formulas") && both &&
             report(rs, "lem2.7.formulas").instances_run == me,
         verdict(rs, "lem2.7.formulas") + " on " + std::to_string(me) + " ME = 0 pairs");
  }

  // 5. Ideals of Z/4 ∝ Z/2, μ(M ∝ E) and the strict inclusion.
  {
    RingPtr a = make_zmod(4);
    TrivialExtension t = trivial_extension(a, residue_field_power(a, 1));
    std::size_t lib = all_ideals(t.ring).size();
    std::size_t brute = oracle::all_ideals(*t.ring).size();
    Ideal m = Ideal::generated(t.ring, {t.embed({2}, {0}), t.embed({0}, {1})});
    std::size_t mu = minimal_generators(m).mu;
    bool strict = confirmed(rs, "ex2.5.strict") &&
                  report(rs, "ex2.5.strict").detail.find("(2,0) ∉ R(2,1)") != std::string::npos;
    line(5, lib == 6 && brute == 6 && mu == 2 && strict,
         "Z/4 ∝ Z/2 has " + std::to_string(lib) + " ideals (brute force " + std::to_string(brute) +
             "), μ(M ∝ E) = " + std::to_string(mu) + ", " + verdict(rs, "ex2.5.strict") +
             " with (2,0) ∉ R(2,1)");
  }

  // 6. Units or zero divisors, I_v = R, and (2)_v = Z/4.
  {
    RingPtr z4 = make_zmod(4);
    Ideal two = Ideal::principal(z4, {2});
    bool closure = v_closure_finite(two) == Ideal::whole(z4) && !(two == Ideal::whole(z4));
    line(6,
         confirmed(rs, "fin.vtrivial") && report(rs, "fin.vtrivial").instances_run == rings &&
             closure,
         verdict(rs, "fin.vtrivial") + ", (2)_v = Z/4 ≠ (2) computed");
  }

  // 7. The Z ∝ Q tier.
  {
    bool ok = report(rs, "prop3.5.bezout").instances_run >= 100 && config.samples >= 1000;
    std::string text;
    for (const char* id : {"thm2.8.ann", "thm2.8.inv", "thm2.8.intersect", "thm2.8.nonfc",
                           "thm2.8.vfinite", "prop2.2.chain", "prop3.5.bezout"}) {
      ok = ok && confirmed(rs, id);
      text += (text.empty() ? "" : ", ") + verdict(rs, id);
    }
    line(7, ok, text);
  }

  // 8. Split submodules and presentations over Z ∝ Q.
  {
    ZQSubmoduleNF cyc = zq_submodule_nf(1, {ZQVector{{0}, {1}}});
    bool r01 = !zq_is_n_presented(cyc, 1);
    bool ok = confirmed(rs, "lem3.2.split") && report(rs, "lem3.2.split").instances_run >= 200 &&
              r01 && report(rs, "lem3.3.present").status != CheckStatus::Skipped;
    line(8, ok,
         verdict(rs, "lem3.2.split") + ", R(0,1) finitely generated and " +
             (r01 ? "not 1-presented" : "1-presented") + "; " + verdict(rs, "lem3.3.present"));
  }

  // 9. Z × ⊕F₂.
  line(9,
       confirmed(rs, "ex2.3.regular") && confirmed(rs, "ex2.3.ann") && confirmed(rs, "ex2.3.inv") &&
           report(rs, "ex2.3.inv").instances_run >= 1000 && config.support <= 8,
       verdict(rs, "ex2.3.regular") + ", " + verdict(rs, "ex2.3.ann") + ", " +
           verdict(rs, "ex2.3.inv"));

  // 10. Weak (2,0) against von Neumann regularity.
  line(10, confirmed(rs, "thm3.10.fin") && report(rs, "thm3.10.fin").instances_run == rings,
       verdict(rs, "thm3.10.fin") + " over " + std::to_string(rings) + " suite rings");

  // 11. The open intersection check reaches a replayable verdict.
  {
    const CheckReport& r = report(rs, "thm2.6.intersection");
    bool ok = check_info(r.check).open;
    if (r.status == CheckStatus::Counterexample) {
      ok = ok && r.witness && replay(*r.witness);
    } else {
      ok = ok && r.status == CheckStatus::Confirmed;
    }
    line(11, ok, verdict(rs, r.check) + ", registry status open" +
                     (r.witness ? ", witness replays" : ""));
  }

  // 12. Determinism.
  {
    InstanceSuite again = generate_suite("default", config, seed);
    std::string second = report_file_json(run_suite(ids, again), seed, digest, false).dump(2);
    line(12, first == second, "two runs with seed 7 give byte-identical reports (" +
                                  std::to_string(first.size()) + " bytes)");
  }

  std::cout << "default suite: " << rings << " rings, " << seconds << " s\n";
  return failures;
}
