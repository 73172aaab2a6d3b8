"""Smoke test for the diffop Python bindings.

Build and install first:
    pip install --no-build-isolation ./crates/python
then run:
    python3 python/smoke_test.py
"""

import json
from fractions import Fraction

import diffop
from diffop import DiffopError, Operator

KUMMER = "z*D^2+(2-z)*D+3"
GAUSS = "z*(1-z)*D^2 + (1 - 2*z)*D - 1/4"


def expect_error(code, fn, *args, **kwargs):
    try:
        fn(*args, **kwargs)
    except DiffopError as e:
        assert e.args[1] == code, e.args
        return
    raise AssertionError(f"expected {code}")


def main():
    a, b = Operator("D-1"), Operator("D+1")
    assert str(a * b) == "D^2 - 1"
    assert a * b == diffop.parse("D^2-1")
    assert (a * b).order == 2
    assert str(Operator("z*D").adjoint()) == "-z*D - 1"
    assert str(Operator("D", var="x") * Operator("x", var="x")) == "x*D + 1"

    q, r = Operator("D^2-1").divmod(b)
    assert str(q) == "D - 1" and str(r) == "0"

    op = Operator("z*D^2+1/(z-1)")
    assert Operator.from_json(json.dumps(op.to_json())) == op

    census = Operator(KUMMER).census()
    assert census["S"] == 1 and census["fuchsian"] is False
    assert census["infinity_report"]["classification"] == "irregular"

    bounds = Operator(KUMMER).bounds(E=3, refine="nminus1")
    assert bounds["per_r"][0]["refined_ceiling"] == "8"
    bounds = Operator(KUMMER).bounds(E=3, S=0, refine="nminus1")
    assert bounds["per_r"][0]["refined_ceiling"] == "3"
    expect_error("needs-exponent-bound", Operator(KUMMER).bounds)

    direct = diffop.bound(1, 3, 1, 0, refine="nminus1")
    assert direct["refined_ceiling"] == "3"

    fuchs = Operator(GAUSS).fuchs()
    assert fuchs["holds"] and fuchs["total"] == "-2"

    poly = Operator("z^2*D^2 + (z^2-2)*D + 1").newton("0")
    assert [e["slope"] for e in poly["edges"]] == ["0", "1"]
    assert Operator("z^2*D^2 + (z^2-2)*D + 1").katz_rank("inf") == "1"
    assert Operator("(z^2-2)*D^2 + z*D + 1").newton("roots:z^2-2")["edges"][0]["length"] == 2

    rec = Operator("D-1").recurrence()
    assert rec["undetermined"] == [0]
    assert Operator("D-1").expand([1], 5) == ["1", "1", "1/2", "1/6", "1/24"]
    assert Operator("D+1").expand([Fraction(-1, 2)], 2) == ["-1/2", "1/2"]
    expect_error("needs-more-initial-terms", Operator(KUMMER).expand, [], 3)

    m = Operator("(D+z)*(D-1)").minimize([1, 1], degree_cap=1, E=1)
    assert m["order"] == 1 and m["divides"] and m["certificate"]["residual_zero"]
    assert m["factor"] == Operator("D-1")

    tower = diffop.exponent_tower(1, 2, 1, 3)
    assert tower["kappa"] == 1
    assert isinstance(diffop.valuation_cutoff(1, 2, 1, 2, Fraction(1)), int)

    expect_error("parse-error", Operator, "D^^2")
    expect_error("division-by-zero", a.divmod, Operator("0"))
    print("python smoke test: ok")


if __name__ == "__main__":
    main()
