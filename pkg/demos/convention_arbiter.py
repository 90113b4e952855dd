"""Which conventions make coupling renormalization a Hopf morphism?

Three choices are not fixed by the combinatorics alone:

* the sign with which the 2-point graphs enter ``Z3``,
* whether a subgraph that can be inserted at several places of the
  quotient contributes once per place (insertion multiplicities),
* which way the coproduct of ``H_diff`` composes series.

The morphism ``α_n ↦ z_n`` (``z_n`` from ``g Z1 Z3^{-3/2}``) is checked
under all eight settings.  At two loops (orders g^3, g^5) only the sign
and the multiplicity matter; the orientation only shows up at g^7, which
needs three-loop graphs.  The sweeps are written to ``reports/``, together
with the report of the frozen setting.

Run:  python3 demos/convention_arbiter.py
"""

from pathlib import Path

from hopfren import cli, groups, io

out = Path(__file__).resolve().parent.parent / "reports"

for loops in (2, 3):
    sweep = groups.sweep_conventions(loops)
    io.atomic_write(out / f"thm2-sweep-max_loops{loops}.json", io.dump_json(sweep))
    print(f"{loops} loops, orders up to g^{sweep['max_order']}:")
    for row in sweep["settings"]:
        failing = row["first_failing_order"]
        verdict = "pass" if failing is None else f"fails at g^{failing}"
        print(f"    {row['flags']:<22} {verdict}")
    print(f"    orientation resolved: {sweep['orientation_resolved']}\n")

print(f"frozen setting: {groups.FROZEN_FLAGS.to_string()}")
code = cli.main(["check", "thm2", "--max-loops", "2", "--out", str(out)])
print(f"check thm2 at 2 loops with the frozen flags: exit {code}")
