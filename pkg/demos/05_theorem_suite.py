# Run every registered theorem check over the builtin corpus.
#
# Each entry evaluates hypotheses and conclusion on every instance; a
# THEOREM_VIOLATION would mean a decider disagrees with a proven statement.

import os

from rickartlab.corpus import builtins
from rickartlab.suite import run_suite

corpus = builtins()
print(len(corpus.ring_specs), "rings,", len(corpus.module_specs), "modules,",
      len(corpus.zmodule_specs), "abelian groups")

report = run_suite(corpus, threads=int(os.environ.get("RICKARTLAB_THREADS", "2")))
print(f"{'id':20s}{'instances':>10s}{'checked':>9s}{'violations':>12s}  breakdown")
for t in report.theorems:
    b = ", ".join(f"{k} {v}" for k, v in t.breakdown.items())
    print(f"{t.id:20s}{len(t.results):>10d}{t.checked:>9d}{len(t.violations):>12d}  {b}")
print("total violations:", report.violation_count, f"({report.seconds:.1f}s)")
