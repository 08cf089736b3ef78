"""Command-line contract of the trivext tool: exit codes, report schema,
ideal and resolve output, witness replay."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

BINARY = os.environ["TRIVEXT_BIN"]
SOURCE = os.environ["TRIVEXT_SOURCE_DIR"]
SPECS = os.path.join(SOURCE, "specs")

with open(os.path.join(SOURCE, "schema", "report.schema.json"), encoding="utf-8") as fh:
    SCHEMA = json.load(fh)


def run(*args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, check=False)


def spec(name):
    return os.path.join(SPECS, name)


class CheckCommand(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self.tmp.cleanup)

    def report_path(self, name="out.json"):
        return os.path.join(self.tmp.name, name)

    def load(self, path):
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        jsonschema.validate(doc, SCHEMA)
        return doc

    def test_expected_check_exits_zero(self):
        out = self.report_path()
        proc = run("check", "--suite", "small", "--checks", "ex2.4.ann", "--seed", "7", "--report", out)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        doc = self.load(out)
        self.assertEqual([r["check"] for r in doc["reports"]], ["ex2.4.ann"])
        self.assertEqual(doc["reports"][0]["status"], "Confirmed")

    def test_open_check_never_fails_the_process(self):
        out = self.report_path()
        proc = run("check", "--suite", "small", "--checks", "thm2.6.intersection", "--report", out)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        rep = self.load(out)["reports"][0]
        self.assertEqual(rep["registry_status"], "open")
        self.assertIn(rep["status"], ("Confirmed", "Counterexample"))

    def test_all_checks_one_entry_per_row(self):
        out = self.report_path()
        proc = run("check", "--suite", "small", "--checks", "all", "--seed", "7", "--report", out)
        doc = self.load(out)
        self.assertEqual(len(doc["reports"]), 23)
        self.assertEqual(doc["seed"], 7)
        failing = [r for r in doc["reports"]
                   if r["status"] == "Counterexample" and r["registry_status"] != "open"]
        self.assertEqual(proc.returncode, 2 if failing else 0)
        self.assertNotIn("elapsed_ms", json.dumps(doc))

    def test_reports_are_byte_identical(self):
        a, b = self.report_path("a.json"), self.report_path("b.json")
        for path in (a, b):
            run("check", "--suite", "small", "--checks", "ex2.4.ann,thm2.8.ann,ax.ring",
                "--seed", "11", "--report", path)
        with open(a, "rb") as fa, open(b, "rb") as fb:
            self.assertEqual(fa.read(), fb.read())

    def test_timings_are_opt_in(self):
        out = self.report_path()
        run("check", "--suite", "small", "--checks", "ex2.4.ann", "--timings", "--report", out)
        self.assertIn("elapsed_ms", self.load(out)["reports"][0])

    def test_spec_suite(self):
        out = self.report_path()
        proc = run("check", "--spec", spec("z6.yaml"), "--checks", "ex2.4.ann,thm3.10.fin",
                   "--report", out)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        reports = self.load(out)["reports"]
        self.assertEqual(reports[0]["status"], "Skipped")
        self.assertEqual(reports[1]["status"], "Confirmed")

    def test_parse_error_has_location(self):
        bad = self.report_path("bad.yaml")
        with open(bad, "w", encoding="utf-8") as fh:
            fh.write("version: 1\nitems:\n  - ring: R\n    zmod: 4\n    bogus: 1\n")
        proc = run("check", "--spec", bad)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("bad.yaml:5:5", proc.stderr)

    def test_unknown_check_and_config_key(self):
        self.assertEqual(run("check", "--suite", "small", "--checks", "nope").returncode, 1)
        cfg = self.report_path("cfg.yaml")
        with open(cfg, "w", encoding="utf-8") as fh:
            fh.write("samples: 5\nbogus: 2\n")
        proc = run("check", "--suite", "small", "--checks", "ex2.4.ann", "--config", cfg)
        self.assertEqual(proc.returncode, 1)
        self.assertIn("2:1", proc.stderr)

    def test_replay_report(self):
        out = self.report_path()
        run("check", "--suite", "small", "--checks", "thm2.6.intersection", "--report", out)
        proc = run("replay", "--witness", out)
        self.assertEqual(proc.returncode, 0, proc.stderr)
        self.assertIn("still fails", proc.stdout)


class IdealCommand(unittest.TestCase):
    def test_annihilator_in_z4_z2(self):
        proc = run("ideal", "--spec", spec("z4_z2.yaml"), "--ring", "R", "--op", "ann", "--args", "(0,1)")
        self.assertEqual(proc.returncode, 0, proc.stderr)
        self.assertIn("size: 4", proc.stdout)
        self.assertIn("elements: (0,0), (0,1), (2,0), (2,1)", proc.stdout)

    def test_cap_with_whole_ring(self):
        cap = run("ideal", "--spec", spec("z4_z2.yaml"), "--ring", "R", "--op", "cap", "--args", "I", "whole")
        ann = run("ideal", "--spec", spec("z4_z2.yaml"), "--ring", "R", "--op", "ann", "--args", "(0,1)")
        self.assertEqual(cap.stdout.split(": ", 1)[1], ann.stdout.split(": ", 1)[1])

    def test_zq_inverse(self):
        proc = run("ideal", "--spec", spec("zq.yaml"), "--ring", "R", "--op", "inv", "--args", "T")
        self.assertEqual(proc.stdout.strip(), "T⁻¹: (1/2)Z ∝ Q")

    def test_v_prints_witness(self):
        proc = run("ideal", "--spec", spec("zq.yaml"), "--ring", "R", "--op", "v", "--args", "I")
        self.assertIn("I_v: 2Z ∝ Q", proc.stdout)
        self.assertIn("v-finite witness:", proc.stdout)

    def test_unknown_names(self):
        self.assertEqual(run("ideal", "--spec", spec("zq.yaml"), "--ring", "S", "--op", "inv",
                             "--args", "T").returncode, 1)
        self.assertEqual(run("ideal", "--spec", spec("uze.yaml"), "--ring", "R", "--op", "cap",
                             "--args", "I", "I").returncode, 1)


class ResolveCommand(unittest.TestCase):
    def test_periodic_resolution_over_z4(self):
        proc = run("resolve", "--spec", spec("z4_z2.yaml"), "--module", "N", "--depth", "4")
        self.assertEqual(proc.returncode, 0, proc.stderr)
        self.assertEqual(proc.stdout.count("images [(2)]"), 4)
        self.assertIn("pd: NotFreeUpTo(4)", proc.stdout)

    def test_free_and_projective(self):
        free = run("resolve", "--spec", spec("z6.yaml"), "--module", "F", "--depth", "2")
        self.assertIn("pd: Free(0)", free.stdout)
        cyclic = run("resolve", "--spec", spec("z6.yaml"), "--module", "C", "--depth", "2")
        self.assertIn("pd: Free(0)", cyclic.stdout)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0], "-v"])
