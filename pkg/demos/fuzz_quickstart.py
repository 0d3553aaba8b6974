"""Run each property suite briefly and print its summary line."""
from whtorsion.fuzz import SUITES, run_suite

for suite in SUITES:
    s = run_suite(suite, 20, seed=1)
    print(f"{suite:10s} {s['passed']}/{s['trials']} passed, checks: "
          + ", ".join(f"{k}={v['Trivial']}" for k, v in s["checks"].items()))
