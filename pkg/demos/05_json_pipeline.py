"""
The JSON analysis pipeline
==========================

Everything the library does, driven from a JSON document.  The same
pipeline backs the ``filtint`` command line tool:

    filtint analyze demos/systems/ct_p_case2.json
    filtint analyze --format json --lemma1 demos/systems/*.json
    filtint paper-suite

This script calls the underlying functions directly on the bundled
documents in demos/systems/.
"""

import json
import pathlib

from filtint.cli import analyze, parse_spec, report_to_json, report_to_text
from filtint.suite import paper_suite

SYSTEMS = pathlib.Path(__file__).parent / "systems"

# ---------------------------------------------------------------------------
# One document, human-readable report.

text = (SYSTEMS / "ct_p_case2.json").read_text()
doc = parse_spec(text)
report = analyze(doc, path="demos/systems/ct_p_case2.json")
print(report_to_text(report))

# ---------------------------------------------------------------------------
# Same analysis as machine-readable JSON (deterministic: key-sorted, and
# infinities spelled "+inf"/"-inf").  Shown truncated.

payload = report_to_json(report)
print("\n".join(payload.splitlines()[:14]))
print(f"... ({len(payload.splitlines())} lines total)")

# ---------------------------------------------------------------------------
# Validation failures come back as reports too, with exit_code 2 and the
# diagnostics in findings, so batch runs keep going.

obj = json.loads(text)
obj["f"]["poles"][0] = [0.68, 0.0]  # flip one filter pole unstable
bad_report = analyze(parse_spec(json.dumps(obj)), path="<modified>")
print(f"\nbroken variant: exit_code = {bad_report.exit_code}")
for finding in bad_report.findings:
    print("  finding:", finding)

# ---------------------------------------------------------------------------
# The built-in reference suite: nine analytically solved systems and the
# published values they must reproduce.

suite = paper_suite()
for row in suite.rows:
    print(f"{row.name:22s} {row.kind}  expected {row.expected:+10.4f}  "
          f"computed {row.computed:+12.6f}  "
          f"{'pass' if row.passed else 'FAIL'}")
print("all passed:", suite.all_passed)
