"""Exit-code and output contract of the realiz command line tool."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

BIN = sys.argv[1] if len(sys.argv) > 1 else "realiz"
DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


def realiz(*args):
    return subprocess.run([BIN, *args], capture_output=True, text=True, timeout=600)


def records(stdout):
    return [json.loads(line) for line in stdout.splitlines() if line.strip()]


class Run(unittest.TestCase):
    def test_identity_on_continuation_stack(self):
        r = realiz("run", "--term", "\\x.x", "--stack", "k[pi0].pi0")
        self.assertEqual(r.returncode, 0)
        self.assertEqual(r.stdout.splitlines(), ["\\x0.x0 * k[pi0].pi0", "k[pi0] * pi0"])

    def test_y_exhausts_fuel(self):
        r = realiz("run", "--term", "<Y>", "--stack", "k[pi0].pi0", "--fuel", "20")
        self.assertEqual(r.returncode, 2)
        lines = r.stdout.splitlines()
        self.assertEqual(len(lines), 21)
        # the continuation fires and Y restarts on the restored stack pi0
        self.assertTrue(any(line.endswith(" * pi0") and not line.startswith("k[") for line in lines))
        self.assertIn("fuel exhausted", r.stderr)

    def test_malformed_term(self):
        r = realiz("run", "--term", "\\x.(x")
        self.assertEqual(r.returncode, 1)
        self.assertIn("offset 5", r.stderr)

    def test_golden_traces(self):
        with open(os.path.join(DATA, "golden_traces.txt")) as f:
            rows = [l for l in f.read().splitlines() if l and not l.startswith("#")]
        for row in rows[:10]:
            term, stack, fuel, status, steps, final = [c.strip() for c in row.split("|")]
            r = realiz("run", "--term", term, "--stack", stack, "--fuel", fuel)
            self.assertEqual(r.returncode, 0 if status == "stuck" else 2, row)
            self.assertEqual(len(r.stdout.splitlines()), int(steps) + 1, row)


class Check(unittest.TestCase):
    def test_single_validated(self):
        r = realiz("check", "--formula", "forall x y z. z eps y, z epsnot vset(x) -> y epsnot x",
                   "--term", "I")
        self.assertEqual(r.returncode, 0)
        rec = records(r.stdout)[0]
        self.assertEqual(rec["verdict"], "Validated")
        self.assertEqual(set(rec), {"formula", "term", "verdict", "tests"})

    def test_single_refuted(self):
        r = realiz("check", "--formula", "bot", "--term", "I")
        self.assertEqual(r.returncode, 3)
        rec = records(r.stdout)[0]
        self.assertEqual(rec["verdict"], "Refuted")
        self.assertIn("counterexample", rec)

    def test_realizer_suite_file(self):
        r = realiz("check", "--suite", os.path.join(DATA, "realizer_suite.jsonl"))
        self.assertEqual(r.returncode, 0, r.stderr)
        recs = records(r.stdout)
        self.assertEqual(len(recs), 17)
        self.assertTrue(all(x["verdict"] == "Validated" for x in recs))

    def test_mutation_suite_file(self):
        r = realiz("--config", os.path.join(DATA, "adversarial.json"), "check", "--suite",
                   os.path.join(DATA, "mutation_suite.jsonl"))
        self.assertEqual(r.returncode, 3, r.stderr)
        recs = records(r.stdout)
        self.assertGreater(len(recs), 100)
        self.assertTrue(all(x["verdict"] == "Refuted" for x in recs))

    def test_empty_explicit_pole(self):
        with tempfile.TemporaryDirectory() as d:
            pole = os.path.join(d, "empty.json")
            with open(pole, "w") as f:
                json.dump({"base": []}, f)
            for formula in ["bot", "forall x. x epsnot x -> bot", "forall x. x eps x"]:
                tv = realiz("truth", "--pole", "explicit:" + pole, "--formula", formula)
                self.assertGreater(records(tv.stdout)[0]["size"], 0, formula)
                for term in ["I", "Y", "\\x.\\y.x"]:
                    r = realiz("check", "--pole", "explicit:" + pole, "--formula", formula, "--term", term)
                    self.assertEqual(r.returncode, 3, (formula, term, r.stdout))

    def test_unknown_config_key(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "c.json")
            with open(path, "w") as f:
                json.dump({"universe": {"rank": 2, "colour": "red"}}, f)
            r = realiz("--config", path, "universe")
            self.assertEqual(r.returncode, 1)
            self.assertIn("colour", r.stderr)

    def test_non_positive_ceiling(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "c.json")
            for bad in [{"fuel": 0}, {"universe": {"rank": 0}}, {"universe": {"max_names": -1}}]:
                with open(path, "w") as f:
                    json.dump(bad, f)
                self.assertEqual(realiz("--config", path, "universe").returncode, 1, bad)


class Inspect(unittest.TestCase):
    def test_truth(self):
        r = realiz("truth", "--formula", "u epsnot gimel(v)", "--let", "u={}", "--let", "v={{}}")
        rec = records(r.stdout)[0]
        self.assertEqual(rec["size"], rec["of"])
        r = realiz("truth", "--formula", "u epsnot gimel(v)", "--let", "u={}", "--let", "v={}")
        self.assertEqual(records(r.stdout)[0]["size"], 0)

    def test_universe_seed(self):
        a = realiz("--seed", "1", "universe").stdout
        b = realiz("--seed", "1", "universe").stdout
        c = realiz("--seed", "2", "universe").stdout
        self.assertEqual(a, b)
        self.assertNotEqual(a, c)

    def test_decide_d(self):
        self.assertFalse(records(realiz("decide-d", "--alpha", "0").stdout)[0]["D"])
        self.assertTrue(records(realiz("decide-d", "--alpha", "1").stdout)[0]["D"])
        self.assertEqual(realiz("decide-d", "--alpha", "2").returncode, 1)

    def test_rank(self):
        r = realiz("--rank", "4", "--config", os.path.join(DATA, "pure.json"), "rank", "--relation", "in")
        self.assertEqual(r.returncode, 0)
        recs = records(r.stdout)
        self.assertEqual(recs[-1], {"relation": "in", "Rk": 4, "fixpoint": True})
        self.assertEqual(sorted({x["rank"] for x in recs[:-1]}), [0, 1, 2, 3])
        r = realiz("rank", "--relation", "less(0)")
        self.assertEqual(r.returncode, 4)
        self.assertFalse(records(r.stdout)[0]["wellfounded"])

    def test_md(self):
        r = realiz("md", "--los", "--corpus", os.path.join(DATA, "md_corpus.txt"))
        self.assertEqual(r.returncode, 0)
        recs = records(r.stdout)
        self.assertGreaterEqual(len(recs), 20)
        for x in recs:
            self.assertEqual(set(x), {"sentence", "m_value", "md_value", "agree", "los"})
            self.assertTrue(x["agree"] and x["los"])
        self.assertIn("semantically forced", r.stderr)


class Report(unittest.TestCase):
    def test_default_green_and_deterministic(self):
        a = realiz("report")
        b = realiz("report")
        self.assertEqual(a.returncode, 0, a.stderr)
        self.assertEqual(a.stdout, b.stdout)
        recs = records(a.stdout)
        self.assertEqual(recs[0]["record"], "header")
        self.assertTrue(any("semantically forced" in n for n in recs[0]["notes"]))
        self.assertEqual(recs[-1]["status"], "green")
        sections = {x["section"] for x in recs if "section" in x}
        self.assertEqual(sections, {"machine", "identities", "realizers", "decisions", "ranks", "sbs",
                                    "los", "elementarity", "collapse"})

    def test_depth_zero_marks_arrows_vacuous(self):
        recs = records(realiz("report", "--depth", "0").stdout)
        by_name = {x["check"]: x for x in recs if x.get("section") == "realizers"}
        self.assertEqual(by_name["D1"]["status"], "vacuous")
        self.assertEqual(by_name["parties_i"]["status"], "vacuous")
        self.assertEqual(recs[-1]["status"], "green")

    def test_output_file(self):
        with tempfile.TemporaryDirectory() as d:
            out = os.path.join(d, "r.jsonl")
            r = realiz("report", "--output", out)
            self.assertEqual(r.stdout, "")
            with open(out) as f:
                self.assertEqual(f.read(), realiz("report").stdout)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0], "-v"])
