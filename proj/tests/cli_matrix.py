#!/usr/bin/env python3
"""Exit-code matrix and byte-determinism checks for the icc3 binary."""

import subprocess
import sys
import tempfile
from pathlib import Path

BIN = Path(sys.argv[1]).resolve()
failures = []


def run(args, cwd):
    return subprocess.run([str(BIN)] + args, cwd=cwd, capture_output=True, text=True)


def expect(name, args, code, cwd):
    r = run(args, cwd)
    if r.returncode != code:
        failures.append(f"{name}: expected exit {code}, got {r.returncode}\n{r.stderr}")
    return r


def main():
    tmp = Path(tempfile.mkdtemp(prefix="icc3_cli_"))

    (tmp / "ok.icc").write_text("p icc 3 3\ni 1 1 3 1 1 1\n")
    (tmp / "bad.icc").write_text("p icc 3 3\ni 1 1 3 1 1 0\n")
    (tmp / "malformed.icc").write_text("p icc 2 3\ni 1 2 1 1 1 1\n")
    (tmp / "infeasible.icc").write_text("p icc 2 3\ni 1 1 1 1 0 0\ni 2 1 2 0 2 0\n")
    (tmp / "good.col").write_text("s FEASIBLE\nv 1 2 3\n")
    (tmp / "bad.col").write_text("s FEASIBLE\nv 1 1 3\n")
    (tmp / "malformed.cnf").write_text("p cnf 2 1\n1 -2 3 0\n")

    # usage errors
    expect("no subcommand", [], 1, tmp)
    expect("unknown flag", ["solve", "--frob", "ok.icc"], 1, tmp)

    # format errors
    expect("hi<lo", ["solve", "malformed.icc"], 2, tmp)
    expect("bad dimacs", ["reduce", "malformed.cnf", "-o", "o.icc", "--map", "o.map"], 2, tmp)
    r = expect("inconsistent instance", ["solve", "bad.icc"], 2, tmp)
    if "c inconsistent 1" not in r.stdout:
        failures.append("inconsistent-instance ids not reported")

    # solve statuses
    expect("feasible", ["solve", "ok.icc"], 0, tmp)
    expect("infeasible", ["solve", "infeasible.icc"], 10, tmp)
    expect("dpll infeasible", ["solve", "infeasible.icc", "--method", "dpll"], 10, tmp)

    # budget exhaustion
    expect("gen hdx", ["gen", "hdx", "--chain", "60", "--fragments", "3", "--min-len", "2",
                       "--max-len", "4", "--seed", "9", "-o", "big.icc"], 0, tmp)
    expect("unknown under budget", ["solve", "big.icc", "--budget", "1"], 20, tmp)

    # verify
    expect("verify ok", ["verify", "ok.icc", "good.col"], 0, tmp)
    expect("verify violated", ["verify", "ok.icc", "bad.col"], 10, tmp)

    # enumerate: single (1,1,1) interval over 3 nodes has 6 colorings
    r = expect("enumerate", ["solve", "ok.icc", "--enumerate", "10"], 0, tmp)
    vlines = [ln for ln in r.stdout.splitlines() if ln.startswith("v ")]
    if len(vlines) != 6:
        failures.append(f"enumerate expected 6 colorings, got:\n{r.stdout}")

    # max-sat
    r = expect("max-sat", ["solve", "ok.icc", "--max-sat"], 0, tmp)
    if not r.stdout.startswith("o 1"):
        failures.append(f"max-sat output unexpected: {r.stdout}")

    # end-to-end reduce/encode/verify/extract/audit
    expect("gen cnf", ["gen", "cnf", "--vars", "5", "--clauses", "6", "--seed", "3",
                       "-o", "f.cnf", "--plant", "a.txt"], 0, tmp)
    expect("reduce", ["reduce", "f.cnf", "-o", "f.icc", "--map", "f.map"], 0, tmp)
    expect("roundtrip", ["roundtrip", "f.cnf"], 0, tmp)
    expect("gap reduce", ["reduce", "--gap", "--seed", "9", "f.cnf", "-o", "g.icc",
                          "--map", "g.map"], 0, tmp)
    expect("encode", ["encode", "--map", "g.map", "--assignment", "a.txt", "-o", "g.col"], 0, tmp)
    expect("verify gap witness", ["verify", "g.icc", "g.col"], 0, tmp)
    expect("extract", ["extract", "--map", "g.map", "g.col"], 0, tmp)
    expect("extract lenient", ["extract", "--map", "g.map", "g.col", "--lenient"], 0, tmp)
    r = expect("audit witness", ["audit", "--map", "g.map", "--inst", "g.icc",
                                 "--coloring", "g.col"], 0, tmp)
    if "holds 1" not in r.stdout:
        failures.append(f"audit output unexpected: {r.stdout}")
    expect("audit trials", ["audit", "--map", "g.map", "--inst", "g.icc", "--trials", "20",
                            "--seed", "4"], 0, tmp)
    expect("audit needs gap map", ["audit", "--map", "f.map", "--inst", "f.icc",
                                   "--trials", "1", "--seed", "1"], 2, tmp)
    expect("gap roundtrip", ["roundtrip", "f.cnf", "--gap", "--seed", "12"], 0, tmp)
    expect("expander", ["expander", "--n", "12", "--degree", "4", "--seed", "5", "--check"], 0, tmp)

    # q=1 gap formula exercises the fallback certificates
    (tmp / "one.cnf").write_text("p cnf 3 1\n1 2 3 0\n")
    r = expect("gap on q=1", ["reduce", "--gap", "--seed", "2", "one.cnf", "-o", "one.icc",
                              "--map", "one.map"], 0, tmp)
    if "PATH_FALLBACK" not in (tmp / "one.map").read_text():
        failures.append("fallback certificates missing from q=1 gap map")

    # byte determinism of seeded commands
    def rerun_identical(name, args, outputs):
        first = {}
        r1 = run(args, tmp)
        for o in outputs:
            first[o] = (tmp / o).read_bytes()
        r2 = run(args, tmp)
        if r1.stdout != r2.stdout:
            failures.append(f"{name}: stdout differs between runs")
        for o in outputs:
            if (tmp / o).read_bytes() != first[o]:
                failures.append(f"{name}: {o} differs between runs")

    rerun_identical("reduce determinism",
                    ["reduce", "f.cnf", "-o", "d1.icc", "--map", "d1.map"], ["d1.icc", "d1.map"])
    rerun_identical("gap determinism",
                    ["reduce", "--gap", "--seed", "9", "f.cnf", "-o", "d2.icc", "--map", "d2.map"],
                    ["d2.icc", "d2.map"])
    rerun_identical("gen determinism",
                    ["gen", "hdx", "--chain", "30", "--fragments", "10", "--min-len", "2",
                     "--max-len", "6", "--seed", "11", "-o", "d3.icc"], ["d3.icc"])
    rerun_identical("audit determinism",
                    ["audit", "--map", "g.map", "--inst", "g.icc", "--trials", "10",
                     "--seed", "21"], [])

    if failures:
        print("cli matrix failures:")
        for f in failures:
            print(" -", f)
        return 1
    print("cli matrix ok")
    return 0


if __name__ == "__main__":
    sys.exit(main())
