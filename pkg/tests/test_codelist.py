"""Codelist structure and the static index-set analysis."""

import random

import numpy as np
import pytest

from hessbound import Codelist, Line, MalformedCodelist, compile_expression
from hessbound.harness import codelist_value


def test_validate_rejects_structural_errors():
    with pytest.raises(MalformedCodelist):
        Codelist(n=0, lines=()).validate()
    with pytest.raises(MalformedCodelist):  # non-var line inside the prefix
        Codelist(n=2, lines=(Line("var"), Line("add", i=1, j=1))).validate()
    with pytest.raises(MalformedCodelist):  # var line after the prefix
        Codelist(n=1, lines=(Line("var"), Line("var"))).validate()
    with pytest.raises(MalformedCodelist):  # forward/self reference
        Codelist(n=1, lines=(Line("var"), Line("add", i=2, j=1))).validate()
    with pytest.raises(MalformedCodelist):  # powNat exponent below 2
        Codelist(n=1, lines=(Line("var"), Line("powNat", i=1, m=1))).validate()
    with pytest.raises(MalformedCodelist):  # affine op without constant
        Codelist(n=1, lines=(Line("var"), Line("addC", i=1))).validate()
    with pytest.raises(MalformedCodelist):
        Codelist(n=1, lines=(Line("var"), Line("frobnicate", i=1))).validate()


def test_analysis_golden_sum_of_squares():
    cl = compile_expression("x1^2 + x2^2", 2)
    full = frozenset({1, 2})
    assert cl.indep[0] == frozenset({2}) and cl.linear[0] == full
    assert cl.indep[2] == frozenset({2}) and cl.linear[2] == frozenset({2})
    assert cl.indep[3] == frozenset({1}) and cl.linear[3] == frozenset({1})
    assert cl.indep[4] == frozenset() and cl.linear[4] == frozenset()


def test_analysis_golden_mixed_exponential():
    cl = compile_expression("x1^2 + x2*exp(x2)", 2)
    # lines: var var pow(1) exp(2) mul(2,4) add(3,5)
    assert cl.indep[3] == frozenset({1}) and cl.linear[3] == frozenset({1})
    assert cl.indep[4] == frozenset({1}) and cl.linear[4] == frozenset({1})
    assert cl.indep[5] == frozenset() and cl.linear[5] == frozenset()


def test_analysis_bilinear_has_empty_sets():
    cl = compile_expression("x1*x2", 2)
    # the mixed partial d2/dx1dx2 is nonzero, so no Hessian row vanishes
    assert cl.linear[-1] == frozenset()
    assert cl.indep[-1] == frozenset()


def test_analysis_separable_linear_term():
    cl = compile_expression("x1^2 + x2", 2)
    # the Hessian row/column of x2 is identically zero
    assert 2 in cl.linear[-1]
    assert 2 in cl.indep[-2] or cl.lines[-2].op == "powNat"


def test_analysis_affine_ops_preserve_sets():
    cl = compile_expression("2*x1^2 + 3", 1)
    pow_idx = next(k for k, l in enumerate(cl.lines) if l.op == "powNat")
    for k, line in enumerate(cl.lines):
        if line.op in ("mulByC", "addC"):
            assert cl.indep[k] == cl.indep[pow_idx]
            assert cl.linear[k] == cl.linear[pow_idx]


def test_analysis_idempotent():
    cl = compile_expression("x1*x2 + exp(x1)", 2)
    i1, l1 = cl.indep, cl.linear
    cl.analyze()
    assert cl.indep == i1 and cl.linear == l1


SOURCES = [
    ("x1^2 + x2^2", 2),
    ("x1*x2 + x3", 3),
    ("exp(x1) + x2*x3 + x3", 3),
    ("sqrt(x1 + x2) * x3", 3),
    ("x1 + 2*x2 - 3*x3", 3),
    ("ln(x1)*x2 + x1^3", 2),
]


@pytest.mark.parametrize("src,n", SOURCES)
def test_index_sets_sound_by_finite_differences(src, n):
    """I must contain only variables the line is independent of, and L only
    variables whose whole Hessian row vanishes; checked numerically."""
    cl = compile_expression(src, n)
    rng = random.Random(42)
    h = 1e-4

    def line_value(k, x):
        vals = []
        for idx, line in enumerate(cl.lines, start=1):
            if line.op == "var":
                vals.append(float(x[idx - 1]))
            elif line.op == "add":
                vals.append(vals[line.i - 1] + vals[line.j - 1])
            elif line.op == "mul":
                vals.append(vals[line.i - 1] * vals[line.j - 1])
            elif line.op == "powNat":
                vals.append(vals[line.i - 1] ** line.m)
            elif line.op == "oneOver":
                vals.append(1.0 / vals[line.i - 1])
            elif line.op == "sqrt":
                vals.append(np.sqrt(vals[line.i - 1]))
            elif line.op == "exp":
                vals.append(np.exp(vals[line.i - 1]))
            elif line.op == "ln":
                vals.append(np.log(vals[line.i - 1]))
            elif line.op == "addC":
                vals.append(vals[line.i - 1] + line.c)
            else:
                vals.append(vals[line.i - 1] * line.c)
            if idx == k:
                return vals[-1]

    for _ in range(5):
        x = np.array([rng.uniform(0.6, 1.4) for _ in range(n)])
        for k in range(1, len(cl.lines) + 1):
            f0 = line_value(k, x)
            for v in range(1, n + 1):
                xp, xm = x.copy(), x.copy()
                xp[v - 1] += h
                xm[v - 1] -= h
                d1 = (line_value(k, xp) - line_value(k, xm)) / (2 * h)
                if v in cl.indep[k - 1]:
                    assert abs(d1) < 1e-6, (src, k, v)
                if v in cl.linear[k - 1]:
                    # the whole Hessian row of v must vanish
                    d2 = (line_value(k, xp) - 2 * f0 + line_value(k, xm)) / h**2
                    assert abs(d2) < 1e-3, (src, k, v)
                    for w in range(1, n + 1):
                        if w == v:
                            continue
                        xpp, xpm, xmp, xmm = x.copy(), x.copy(), x.copy(), x.copy()
                        xpp[[v - 1, w - 1]] += h
                        xmm[[v - 1, w - 1]] -= h
                        xpm[v - 1] += h
                        xpm[w - 1] -= h
                        xmp[v - 1] -= h
                        xmp[w - 1] += h
                        mixed = (line_value(k, xpp) - line_value(k, xpm)
                                 - line_value(k, xmp) + line_value(k, xmm)) / (4 * h**2)
                        assert abs(mixed) < 1e-3, (src, k, v, w)


def test_dump_lists_sets():
    text = compile_expression("x1^2 + x2^2", 2).dump()
    assert "3: powNat(1,m=2) I={2} L={2}" in text
    assert text.splitlines()[-1].startswith("5: add(3,4)")


def test_round_trip_value_after_analysis():
    cl = compile_expression("sqrt(x1)*x2 + 1/(x2)", 2)
    assert abs(codelist_value(cl, (4.0, 2.0)) - (2 * 2 + 0.5)) < 1e-12
