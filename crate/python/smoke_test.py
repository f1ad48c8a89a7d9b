#!/usr/bin/env python3
"""Smoke test for the delfib_py extension module.

Build the extension first (`cargo build -p delfib-py`), then run this script
from anywhere; it locates the compiled cdylib under target/ and imports it
under the importable name delfib_py.
"""

import shutil
import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent


def load_module():
    candidates = [
        ROOT / "target" / profile / name
        for profile in ("release", "debug")
        for name in ("libdelfib_py.so", "delfib_py.so", "libdelfib_py.dylib", "delfib_py.pyd")
    ]
    for built in candidates:
        if built.exists():
            staging = Path(tempfile.mkdtemp(prefix="delfib-py-"))
            shutil.copy2(built, staging / "delfib_py.so")
            sys.path.insert(0, str(staging))
            import delfib_py

            return delfib_py
    sys.exit("no built extension found; run `cargo build -p delfib-py` first")


def main():
    d = load_module()

    assert [n for n, _ in d.stream("F", 0, 13)] == [
        1, 1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144, 233, 377,
    ]
    assert [n for n, _ in d.stream("G", -1, 10)] == [0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12]
    assert d.term("F", 40) == 165580141
    assert d.term("F", 6, ell=2) == 6
    assert d.term("H", 10) == 5

    num, den = d.param_gibonacci(1, 2, 6)
    assert (num, den) == (3, 1), (num, den)

    cubic = d.roots("cubic", digits=30)
    assert cubic["rho_a"].startswith("1.32471795724474602596")
    quad = d.roots("quadratic", digits=30)
    assert quad["eta_a"].startswith("1.61803398874989484820")

    coeffs = d.coefficients("G", digits=30)
    assert coeffs["a"].startswith("0.72212441830311284114")

    rounded, residual = d.binet("G", 100, digits=60)
    assert rounded == d.term("G", 100)
    assert abs(float(residual)) < 1e-5

    r = d.rank(7)
    assert (r["lower_m"], r["tie_above"], r["tie_count"]) == (11, True, 1)

    stages = d.breakpoints(6, k_max=70)
    assert (stages[0]["k_end"], stages[1]["k_end"]) == (14, 61)

    report = d.verify(k_max=100)
    assert report["passed"], [c for c in report["checks"] if not c["pass"]]

    assert d.binomial_sum(1, 6) == 13
    assert d.chains(3, 4) == ["SSSS", "B"]
    assert d.identity_check(2, k_max=60)["passed"]

    ratio = d.log_ratio(digits=30)["ratio"]
    assert ratio.startswith("0.584357157657404086746")

    mystery = d.mystery_quotient(digits=30)
    assert mystery["log_quotient"].startswith("0.200012250736641600")

    sample = d.growth_alignment(23, digits=30)
    assert (sample["n"], sample["g_m"], sample["f_n"]) == (13, 465, 377)

    print("smoke test passed:", len(dir(d)), "attributes exported, version", d.ARTIFACT_VERSION)


if __name__ == "__main__":
    main()
