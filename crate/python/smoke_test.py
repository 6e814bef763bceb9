"""Smoke test for the ambarzumian_py extension module.

Build and install first:

    pip install --no-build-isolation ./crates/python

then run ``python python/smoke_test.py``. Exits nonzero on the first failure.
"""

import json
import math
import pathlib
import sys

import ambarzumian_py as amb

WITNESS = (-1.11542462377894, 0.527281667822498, 0.702345226288011)


def close(a, b, tol):
    return all(abs(x - y) <= tol for x, y in zip(a, b)) and len(a) == len(b)


def main():
    s3 = math.sqrt(3.0)
    assert close(amb.free_spectrum(5), [-s3, -1.0, 0.0, 1.0, s3], 1e-10)

    f5 = amb.JacobiMatrix.free(5)
    assert len(f5) == 5
    assert close(f5.eigenvalues(), amb.free_spectrum(5), 1e-10)
    assert abs(f5.charpoly(1.0)) < 1e-12
    assert f5.sturm_count(0.5) == 3

    s = amb.JacobiMatrix.schrodinger(5, list(WITNESS))
    ev = s.eigenvalues()
    assert close([ev[0], ev[2], ev[3]], [-s3, 0.0, 1.0], 1e-9), ev

    try:
        amb.JacobiMatrix([0.0, 0.0], [0.0])
    except ValueError:
        pass
    else:
        raise AssertionError("zero off-diagonal accepted")

    assert amb.symbolic_charpoly(1, 1) == "b1 - L"
    assert amb.symbolic_charpoly(5, 3).startswith("b1*b2*b3*L^2")

    case = amb.Case(5, 3, [1, 3, 4])
    assert amb.Case.parse(str(case)) == case
    assert case.mirror().positions == [2, 3, 5]

    rec = amb.verify_candidate(list(WITNESS), case, 1e-6)
    assert rec["passed"], rec

    cfg = amb.SolverConfig(starts=3000, seed=1)
    rep = amb.classify_case(case, cfg, system="both")
    assert rep["classification"] == "flexible", rep["note"]
    assert any(close(w["b"], WITNESS, 1e-6) for w in rep["witnesses"] if w["nontrivial"])
    assert rep["cross_check"]["classifications_agree"]

    sweep = amb.sweep(5, 3, amb.SolverConfig(starts=3000))
    verdicts = {tuple(c["representative"]): c["classification"] for c in sweep["classes"]}
    assert verdicts == {
        (1, 2, 3): "rigid",
        (1, 2, 4): "rigid",
        (1, 2, 5): "rigid",
        (1, 3, 4): "flexible",
        (1, 3, 5): "rigid",
        (2, 3, 4): "rigid",
    }, verdicts

    cert = amb.certificate_checks()
    assert cert["passed"], [c for c in cert["checks"] if not c["pass"]]

    roots = amb.real_roots([1.0, 0.0, -3.0, 0.0, 2.0])
    assert close(roots, [-math.sqrt(2), -1.0, 1.0, math.sqrt(2)], 1e-12), roots

    schema_path = pathlib.Path(__file__).resolve().parent.parent / "schema" / "report.schema.json"
    try:
        import jsonschema
    except ImportError:
        jsonschema = None
    if jsonschema is not None and schema_path.exists():
        schema = json.loads(schema_path.read_text())
        for report in (rep, sweep, cert):
            jsonschema.validate(report, schema)

    try:
        amb.SolverConfig(starts=0)
    except ValueError:
        pass
    else:
        raise AssertionError("starts=0 accepted")

    print("smoke test passed")


if __name__ == "__main__":
    try:
        main()
    except AssertionError as e:
        print(f"smoke test FAILED: {e}", file=sys.stderr)
        sys.exit(1)
