"""Benchmark harness: deviation measure, classification, sampling, reports."""

import json
import math
import random

import numpy as np
import pytest

from hessbound import Box, Interval, PointOutsideBox, compile_expression, eval_improved
from hessbound.errors import InconsistentInputs
from hessbound.harness import (
    CorpusEntry,
    alpha_bb_eval,
    classify,
    codelist_value,
    dev,
    emit_report,
    random_boxes,
    random_function,
    read_corpus,
    run_compare,
    write_corpus,
)

from helpers import grid_points


# -- deviation measure ----------------------------------------------------

def test_dev_golden():
    assert dev(2.0, 0.0) == 1.0
    assert dev(-1.0, 1.0) == -2.0
    assert dev(5.0, 5.0) == 0.0


def test_dev_antisymmetric_and_scale_free():
    rng = random.Random(1)
    for _ in range(100):
        a, b = rng.uniform(-100, 100), rng.uniform(-100, 100)
        assert math.isclose(dev(a, b), -dev(b, a), rel_tol=1e-12)
    # large values of equal sign are compared relatively
    assert abs(dev(1e9 + 1.0, 1e9)) < 1e-8


# -- classification -------------------------------------------------------

G = Interval(-10, 10)
H = Interval(-5, 5)


@pytest.mark.parametrize("tested,expected", [
    (Interval(-4, 4), (5, 5)),      # strictly inside the vertex bounds
    (Interval(-5, 5), (4, 4)),      # equal to the vertex bounds
    (Interval(-7, 7), (3, 3)),      # strictly between
    (Interval(-10, 10), (2, 2)),    # equal to Gershgorin
    (Interval(-11, 11), (1, 1)),    # outside Gershgorin
    (Interval(-4, 11), (5, 1)),     # sides classified independently
])
def test_classify_fixtures(tested, expected):
    assert classify(tested, G, H) == expected


def test_classify_rejects_inconsistent_references():
    with pytest.raises(InconsistentInputs):
        classify(Interval(-1, 1), G, Interval(-11, 11))


def test_classify_eps_tolerance():
    # a hair away from the vertex bound counts as equal under a loose eps
    t = Interval(-5 - 1e-9, 5 + 1e-9)
    assert classify(t, G, H, eps=1e-6) == (4, 4)
    assert classify(t, G, H, eps=1e-12) == (3, 3)


def test_classify_monotone_in_eps():
    # growing eps can only move extreme classes toward the middle ones
    t = Interval(-5.001, 5.001)
    strict = classify(t, G, H, eps=1e-9)
    loose = classify(t, G, H, eps=1e-2)
    assert strict == (3, 3) and loose == (4, 4)


# -- convex underestimator ------------------------------------------------

def test_alpha_bb_golden_bilinear():
    cl = compile_expression("x1*x2", 2)
    box = Box.from_bounds([(0, 1), (0, 1)])
    # smallest eigenvalue over the box is -1, so at the center:
    # 0.25 - 0.5*(-1)*((0-.5)(1-.5)*2) = 0.25 - 0.25 = 0
    assert abs(alpha_bb_eval(cl, box, (0.5, 0.5), -1.0)) < 1e-12


def test_alpha_bb_equals_function_when_convex():
    cl = compile_expression("x1^2 + x2^2", 2)
    box = Box.from_bounds([(0, 1), (0, 1)])
    assert alpha_bb_eval(cl, box, (0.3, 0.4)) == codelist_value(cl, (0.3, 0.4))


def test_alpha_bb_underestimates_and_matches_at_vertices():
    for s in range(10):
        entry = random_function(2, seed=3000 + s, require_mul=True)
        cl = entry.compile()
        lam = eval_improved(cl, entry.domain).eigen.lo
        for v in entry.domain.vertices():
            assert math.isclose(alpha_bb_eval(cl, entry.domain, v, lam),
                                codelist_value(cl, v), rel_tol=1e-10, abs_tol=1e-10)
        for x in grid_points(entry.domain, 5):
            under = alpha_bb_eval(cl, entry.domain, x, lam)
            assert under <= codelist_value(cl, x) + 1e-10


def test_alpha_bb_rejects_outside_point():
    cl = compile_expression("x1*x2", 2)
    box = Box.from_bounds([(0, 1), (0, 1)])
    with pytest.raises(PointOutsideBox):
        alpha_bb_eval(cl, box, (2.0, 0.5))


# -- box sampling ---------------------------------------------------------

def test_random_boxes_deterministic_and_contained():
    domain = Box.from_bounds([(0, 1), (-2, 3)])
    a = random_boxes(domain, 20, seed=9)
    b = random_boxes(domain, 20, seed=9)
    assert a == b
    assert a != random_boxes(domain, 20, seed=10)
    for box in a:
        for d, dom in zip(box, domain):
            assert dom.lo <= d.lo <= d.hi <= dom.hi
            assert d.width >= 1e-9 * dom.width


# -- corpus files ---------------------------------------------------------

def test_corpus_round_trip(tmp_path):
    entries = [random_function(n, seed=40 + n) for n in (2, 3, 4)]
    write_corpus(str(tmp_path), entries)
    loaded = read_corpus(str(tmp_path))
    assert [e.name for e in loaded] == sorted(e.name for e in entries)
    by_name = {e.name: e for e in entries}
    for e in loaded:
        orig = by_name[e.name]
        assert e.n == orig.n and e.source == orig.source
        assert e.domain == orig.domain
        e.compile()  # must stay compilable


def test_read_corpus_rejects_incomplete_file(tmp_path):
    (tmp_path / "bad.txt").write_text("x1 + x2\n")
    with pytest.raises(ValueError):
        read_corpus(str(tmp_path))


def test_random_function_is_seed_deterministic_and_domain_safe():
    for s in (1, 2, 3):
        e1 = random_function(3, seed=s)
        e2 = random_function(3, seed=s)
        assert e1 == e2
        cl = e1.compile()
        for x in grid_points(e1.domain, 3):
            codelist_value(cl, x)  # no domain error anywhere on the grid


def test_random_function_require_mul():
    for s in range(20):
        entry = random_function(2, seed=s, require_mul=True)
        assert any(l.op == "mul" for l in entry.compile().lines), entry.source


# -- comparison driver and reports ----------------------------------------

@pytest.fixture(scope="module")
def small_result():
    entries = [random_function(n, seed=60 + n) for n in (2, 2, 3)]
    return run_compare(entries, boxes_per_function=8, seed=4, eps=1e-6)


def test_run_compare_is_deterministic(small_result):
    entries = [random_function(n, seed=60 + n) for n in (2, 2, 3)]
    again = run_compare(entries, boxes_per_function=8, seed=4, eps=1e-6)
    assert again.records == small_result.records
    assert again.skips == small_result.skips


def test_run_compare_covers_both_methods(small_result):
    methods = {r.method for r in small_result.records}
    assert methods == {"original", "improved"}


def test_report_percentages_sum_to_hundred(small_result):
    data = json.loads(emit_report(small_result, "json"))
    assert data["rows"]
    for row in data["rows"]:
        total = sum(row[f"class{i}"] for i in range(1, 6))
        assert abs(total - 100.0) < 0.01


def test_report_csv_shape_and_determinism(small_result):
    csv1 = emit_report(small_result, "csv")
    csv2 = emit_report(small_result, "csv")
    assert csv1 == csv2
    lines = csv1.strip().splitlines()
    assert lines[0] == "method,n,bound,cases,class1,class2,class3,class4,class5"
    # per-n rows plus an "all" aggregate per method and bound side
    assert any(",all," in l for l in lines[1:])
    for l in lines[1:]:
        assert len(l.split(",")) == 9


def test_report_table_renders(small_result):
    table = emit_report(small_result, "table")
    assert "method" in table and "cls5" in table


def test_report_unknown_format(small_result):
    with pytest.raises(ValueError):
        emit_report(small_result, "yaml")


def test_run_compare_skips_domain_violations():
    # 1/x over a domain straddling zero: every sampled box containing 0 skips
    entries = [CorpusEntry("straddle", 1, Box.from_bounds([(-1.0, 1.0)]), "1/(x1)")]
    res = run_compare(entries, boxes_per_function=30, seed=0)
    assert res.skips, "expected at least one skipped box"
    for s in res.skips:
        assert "DomainViolation" in s.reason
