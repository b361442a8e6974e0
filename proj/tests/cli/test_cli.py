"""End-to-end checks of the arbor command line tool: exit codes, JSON
round trips and deterministic reports."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

ARBOR = sys.argv[1]
failures = []


def run(*args):
    p = subprocess.run([ARBOR, *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + (f"  ({detail})" if detail and not cond else ""))
    if not cond:
        failures.append(name)


with tempfile.TemporaryDirectory() as tmp:
    tmp = Path(tmp)

    code, out, _ = run("fold", "--gens", "a^2", "a b a^-1")
    g = json.loads(out)
    check("fold exits 0", code == 0)
    check("fold gives the 2-vertex core", g["vertices"] == 2 and len(g["edges"]) == 3)

    core = tmp / "core.json"
    code, _, _ = run("core", "--gens", "a^2", "a b a^-1", "-o", str(core), "--dot", str(tmp / "core.dot"))
    check("core exits 0", code == 0)
    check("core dot written", (tmp / "core.dot").read_text().startswith("digraph"))

    # Emitted graph JSON re-parses to the same graph.
    code, out, _ = run("fold", "--graph", str(core))
    check("graph round trip", code == 0 and json.loads(out) == json.loads(core.read_text()))

    code, out, _ = run("member", str(core), "b", "a^-1 a", "b a^2 b^-1")
    verdicts = [r["member"] for r in json.loads(out)["results"]]
    check("member verdicts", verdicts == [False, True, False], verdicts)

    code, out, _ = run("extend", "C2xC2", "--p", "2", "--eq", "a b", "b a", "--enumerate")
    j = json.loads(out)
    check("extend order", j["ext_order"] == "128" and j["enumerated"] == 128)
    check("extend ab/ba distinct", j["eq"]["verdict"] == "distinct")

    code, out, _ = run("extend", "C2xC2", "--S", "A5", "--eq", "a b", "b a")
    check("extend over A5 distinct", code == 0 and json.loads(out)["eq"]["verdict"] == "distinct")

    code, out, err = run("tower", "--base", "C2xC2", "--primes", "2", "--mode", "exhaustive")
    check("tower passes", code == 0 and "PASS" in err)
    check("tower report passed", json.loads(out)["passed"] is True)

    code, out, err = run("tower", "--base", "C2xC2", "--primes", "1")
    check("identity tower fails with exit 1", code == 1, code)

    code, out, _ = run("dissolve", "--H", "C2xC2", "--G", "C2xC2")
    j = json.loads(out)
    check("self-dissolution fails with exit 1", code == 1 and not j["passed"])
    check("counterexample listed", any(l["verdict"] == "counterexample" for l in j["listed"]))

    code, out, _ = run("dissolve", "--H", "C2xC2^C2", "--G", "C2xC2", "--listed", "0")
    j = json.loads(out)
    check("extension dissolves", code == 0 and j["dissolved"] == j["constellations"] == 50094)
    check("bad extension exit code 3", run("dissolve", "--H", "C2xC2^x")[0] == 3)

    code, out, _ = run("rz", "--h1", "a", "--h2", "b", "--w", "b a")
    j = json.loads(out)
    check("rz separated at level 1", code == 0 and j["status"] == "separated" and j["separated_at"] == 1)

    code, out, _ = run("rz", "--h1", "a", "--h2", "b", "--w", "a b")
    check("rz member", code == 0 and json.loads(out)["status"] == "member")

    cfg = tmp / "tower.json"
    cfg.write_text(json.dumps({"base": "C3", "primes": [2], "budgets": {"enumeration": 1000}, "seed": 4}))
    code, out, _ = run("tower", "--config", str(cfg))
    j = json.loads(out)
    check("tower from config", code == 0 and j["base"] == "C3" and j["seed"] == 4)

    # Determinism: identical runs give identical bytes.
    a = run("--seed", "7", "dissolve", "--G", "S3", "--H", "S3", "--mode", "sampled", "--samples", "300")
    b = run("--seed", "7", "dissolve", "--G", "S3", "--H", "S3", "--mode", "sampled", "--samples", "300")
    check("deterministic reports", a == b and "seed=7" in a[1])

    check("budget exit code 2", run("dissolve", "--H", "S4", "--G", "S4")[0] == 2)
    check("bad prime exit code 3", run("tower", "--primes", "4")[0] == 3)
    check("bad word exit code 3", run("member", str(core), "c")[0] == 3)
    bad = tmp / "bad.json"
    bad.write_text('{"alphabet": ["a", "b"],\n "vertices": 2,\n "edges": [[0, "a", 1] [1, "b", 0]]}')
    code, _, err = run("fold", "--graph", str(bad))
    check("malformed json diagnostics", code == 3 and "bad.json:3:" in err, err)
    check("unknown subcommand exit code 3", run("frobnicate")[0] == 3)

sys.exit(1 if failures else 0)
