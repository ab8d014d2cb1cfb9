"""End-to-end smoke test for the python package and the command-line driver.

Usage: test_smoke.py <path-to-whitcusp-binary>
Runs with PYTHONPATH pointing at the staged build-tree package.
"""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

import whitcusp as wc


def check(cond, what):
    if not cond:
        raise SystemExit(f"FAILED: {what}")


def main(cli):
    # Exact values out of the representation layer.
    theta = wc.first_regular_theta(2)
    check(theta == 1, "first regular exponent at q=2")
    pi = wc.DepthZeroRep(2, theta)
    check(pi.dim == 1, "model dimension q-1")
    check(pi.modulus == 6, "cyclotomic modulus q(q^2-1)")
    check(pi.zk_exponent(wc.GMat.diag_tpow(2, [1, 1])) == 1, "center detection")
    check(pi.zk_exponent(wc.GMat.diag_tpow(2, [0, 1])) is None, "off-support detection")

    W = wc.WhittakerFn(pi)
    check(W.support() == (-1, -1), "whittaker support bracket")
    check(W.dual_support() == (-1, -1), "dual support bracket")
    cell = wc.GMat.diag_tpow(2, [-1, 0])
    check(W.value(cell) != "0/1", "nonzero shell value")
    check(W.value(wc.GMat.diag_tpow(2, [0, 2])) == "0/1", "vanishing off the support")
    check(W.value(cell.dual().dual()) == W.value(cell), "dual involution")

    cond = wc.conductor(W)
    check(cond["f"] == 2 and cond["t"] == 2, "conductor f=2 at t=2")
    check(cond["eps"] == "1/1", "functional equation sign +1")

    fd = wc.formal_degrees(pi)
    check(fd["from_conductor"] == "4/3", "conductor-side formal degree at q=2")
    check(fd["direct"] == "1/1", "direct formal degree at q=2")
    check(fd["measure_ratio"] == "3/4", "volume normalization 1-q^-2")
    check(fd["steinberg_ratio"] == "2/1", "steinberg ratio")
    check(wc.twist_orders(W) == (2, 2), "unramified twist order")

    series = wc.zeta_series(W)
    check("x^-1" in series["cleared"] or "x^{-1}" in series["cleared"],
          "cleared series is the bottom-shell monomial")

    # The batch runner through the bindings.
    text = wc.run_suite(suite="rankin-selberg", q=2)
    summary = wc.parse_report_summary(text, "json")
    check(summary["failed"] == 0, "rankin-selberg suite passes via bindings")
    check(summary["passed"] >= 20, "suite emitted a full case list")
    check("f=2" in text and "t=2" in text, "report records the conductor datum")
    try:
        wc.run_suite(suite="nope")
        raise SystemExit("FAILED: bad suite must raise")
    except ValueError:
        pass

    # The command-line driver: exit codes, determinism, dump modes.
    run = lambda *args: subprocess.run([cli, *args], capture_output=True, text=True)
    ok = run("--suite", "whittaker", "--q", "2")
    check(ok.returncode == 0, "cli exit 0 on a passing run")
    rep = json.loads(ok.stdout)
    check(rep["failed"] == 0 and rep["cases"], "cli report content")

    again = run("--suite", "whittaker", "--q", "2")
    check(again.stdout == ok.stdout, "byte-identical rerun")

    bad = run("--q", "6")
    check(bad.returncode == 2, "cli exit 2 on a bad config")

    with tempfile.TemporaryDirectory() as tmp:
        cfg = Path(tmp) / "run.cfg"
        cfg.write_text("suite=rankin-selberg\nq=2\nformat=tsv\n")
        out = Path(tmp) / "report.tsv"
        res = run("--config", str(cfg), "--out", str(out))
        check(res.returncode == 0, "cli honors config files")
        lines = out.read_text().splitlines()
        check(lines[0].startswith("#suite=rankin-selberg"), "tsv suite line")
        check(any("\t1\t" in ln for ln in lines[2:]), "tsv pass flags")

    dump = run("--dump-support", "--q", "3")
    check(dump.returncode == 0 and "shell" in dump.stdout, "support dump")

    print("python smoke: all checks passed")


if __name__ == "__main__":
    if len(sys.argv) != 2:
        raise SystemExit("usage: test_smoke.py <whitcusp-binary>")
    main(sys.argv[1])
