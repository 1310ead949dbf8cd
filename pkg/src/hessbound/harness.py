"""Benchmark harness: box sampling, method comparison and reporting.

Compares the codelist eigenvalue bounds against the interval-Hessian
references on a corpus of functions.  Each (function, box) pair yields a
quality class per bound side:

    1  worse than the Gershgorin bound
    2  as good as the Gershgorin bound
    3  between the Gershgorin and vertex-enumeration bounds
    4  as good as the vertex-enumeration bound
    5  better than the vertex-enumeration bound

"as good as" is decided by a scale-free deviation measure with a relative
tolerance eps.  The module also hosts the convex underestimator and a
seeded random-function generator used to build corpora.
"""

from __future__ import annotations

import json
import math
import os
import random
import zlib
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .bounds import eval_improved, eval_original
from .codelist import Codelist
from .errors import (
    DomainViolation,
    HessboundError,
    InconsistentInputs,
    PointOutsideBox,
)
from .expressions import compile_expression
from .interval import Box, Interval
from .reference import gershgorin_bounds, hertz_rohn_bounds, interval_hessian

__all__ = [
    "DEFAULT_EPS",
    "dev",
    "classify",
    "alpha_bb_eval",
    "codelist_value",
    "random_boxes",
    "CorpusEntry",
    "read_corpus",
    "write_corpus",
    "random_function",
    "CompareRecord",
    "SkipRecord",
    "CompareResult",
    "run_compare",
    "emit_report",
]

DEFAULT_EPS = 1e-6
MIN_WIDTH_FRACTION = 1e-9


# -- scale-free comparison ------------------------------------------------

def dev(a: float, b: float) -> float:
    """Scale-free deviation of a from b; positive iff a is larger."""
    return (a - b) / (1.0 + 0.5 * abs(a + b))


def _greater(a: float, b: float, eps: float) -> bool:
    return dev(a, b) > eps


def _approx(a: float, b: float, eps: float) -> bool:
    return abs(dev(a, b)) <= eps


def classify(tested: Interval, gersh: Interval, vertex: Interval,
             eps: float = DEFAULT_EPS) -> Tuple[int, int]:
    """Quality classes (lower side, upper side) of the tested bounds.

    The vertex-enumeration interval is exact for the interval-Hessian
    relaxation, so it must sit inside the Gershgorin interval; if it does
    not (beyond eps), the inputs are inconsistent.
    """
    if _greater(gersh.lo, vertex.lo, eps) or _greater(vertex.hi, gersh.hi, eps):
        raise InconsistentInputs(
            f"vertex bounds {vertex} are not within Gershgorin bounds {gersh}")

    def side(t: float, g: float, v: float, better_is_larger: bool) -> int:
        sign = 1.0 if better_is_larger else -1.0
        if _greater(sign * t, sign * v, eps):
            return 5
        if _approx(t, v, eps):
            return 4
        if _greater(sign * g, sign * t, eps):
            return 1
        if _approx(t, g, eps):
            return 2
        return 3

    return (side(tested.lo, gersh.lo, vertex.lo, True),
            side(tested.hi, gersh.hi, vertex.hi, False))


# -- point evaluation and the convex underestimator ----------------------

def codelist_value(cl: Codelist, x: Sequence[float]) -> float:
    """Evaluate the codelist at a real point."""
    vals: List[float] = []
    for k, line in enumerate(cl.lines, start=1):
        if line.op == "var":
            vals.append(float(x[k - 1]))
        elif line.op == "add":
            vals.append(vals[line.i - 1] + vals[line.j - 1])
        elif line.op == "mul":
            vals.append(vals[line.i - 1] * vals[line.j - 1])
        elif line.op == "powNat":
            vals.append(vals[line.i - 1] ** line.m)
        elif line.op == "oneOver":
            vals.append(1.0 / vals[line.i - 1])
        elif line.op == "sqrt":
            vals.append(math.sqrt(vals[line.i - 1]))
        elif line.op == "exp":
            vals.append(math.exp(vals[line.i - 1]))
        elif line.op == "ln":
            vals.append(math.log(vals[line.i - 1]))
        elif line.op == "addC":
            vals.append(vals[line.i - 1] + line.c)
        else:  # mulByC
            vals.append(vals[line.i - 1] * line.c)
    return vals[-1]


def alpha_bb_eval(cl: Codelist, box: Box, x: Sequence[float],
                  lam_lo: Optional[float] = None) -> float:
    """Convex underestimator value at x.

    Shifts the function by the separable quadratic
    -0.5 * lam_lo * sum_i (lo_i - x_i)(hi_i - x_i) when the guaranteed
    smallest Hessian eigenvalue lam_lo over the box is negative; the shift
    vanishes at every vertex and is nonnegative inside the box.
    """
    if not box.contains_point(x, slack=1e-12):
        raise PointOutsideBox(f"{tuple(x)} is not in {box}")
    if lam_lo is None:
        lam_lo = eval_improved(cl, box).eigen.lo
    val = codelist_value(cl, x)
    if lam_lo >= 0.0:
        return val
    shift = sum((d.lo - xi) * (d.hi - xi) for d, xi in zip(box, x))
    return val - 0.5 * lam_lo * shift


# -- box sampling ---------------------------------------------------------

def random_boxes(domain: Box, count: int, seed: int) -> List[Box]:
    """Deterministic sample of sub-boxes of ``domain``.

    Each dimension gets two independent uniform draws, sorted; a dimension
    is redrawn while its width is below 1e-9 times the domain width.
    """
    rng = random.Random(seed)
    boxes: List[Box] = []
    for _ in range(count):
        dims = []
        for d in domain:
            while True:
                a = rng.uniform(d.lo, d.hi)
                b = rng.uniform(d.lo, d.hi)
                lo, hi = (a, b) if a <= b else (b, a)
                if hi - lo >= MIN_WIDTH_FRACTION * d.width:
                    break
            dims.append(Interval(lo, hi))
        boxes.append(Box(dims))
    return boxes


# -- corpus files ---------------------------------------------------------

@dataclass(frozen=True)
class CorpusEntry:
    name: str
    n: int
    domain: Box
    source: str

    def compile(self) -> Codelist:
        return compile_expression(self.source, self.n)


def _parse_domain(text: str, n: int) -> Box:
    parts = [p for p in text.split(";") if p.strip()]
    if len(parts) != n:
        raise ValueError(f"domain has {len(parts)} components, expected {n}")
    bounds = []
    for p in parts:
        lo_s, hi_s = p.split(",")
        bounds.append((float(lo_s), float(hi_s)))
    return Box.from_bounds(bounds)


def read_corpus(directory: str) -> List[CorpusEntry]:
    """Load every *.txt function file from a corpus directory.

    File layout: a ``vars: n`` line, a ``# domain: l,u;...;l,u`` line, then
    the expression on the remaining non-comment lines.
    """
    entries: List[CorpusEntry] = []
    for fname in sorted(os.listdir(directory)):
        if not fname.endswith(".txt"):
            continue
        n = None
        domain_text = None
        expr_lines: List[str] = []
        with open(os.path.join(directory, fname), encoding="utf-8") as fh:
            for raw in fh:
                line = raw.strip()
                if not line:
                    continue
                if line.lower().startswith("vars:"):
                    n = int(line.split(":", 1)[1])
                elif line.startswith("#"):
                    body = line.lstrip("#").strip()
                    if body.lower().startswith("domain:"):
                        domain_text = body.split(":", 1)[1]
                else:
                    expr_lines.append(line)
        if n is None or domain_text is None or not expr_lines:
            raise ValueError(f"{fname}: needs a vars: line, a domain comment and an expression")
        entries.append(CorpusEntry(
            name=fname[:-4],
            n=n,
            domain=_parse_domain(domain_text, n),
            source=" ".join(expr_lines),
        ))
    return entries


def write_corpus(directory: str, entries: Iterable[CorpusEntry]) -> None:
    os.makedirs(directory, exist_ok=True)
    for e in entries:
        domain = ";".join(f"{d.lo:.17g},{d.hi:.17g}" for d in e.domain)
        with open(os.path.join(directory, e.name + ".txt"), "w", encoding="utf-8") as fh:
            fh.write(f"vars: {e.n}\n# domain: {domain}\n{e.source}\n")


# -- seeded random function generation ------------------------------------

def random_function(n: int, seed: int, extra_ops: int = 3,
                    require_mul: bool = False) -> CorpusEntry:
    """Generate one random, domain-safe function of n variables.

    Builds the expression bottom-up from the variable pool, guarding every
    step with an interval evaluation over the domain so that reciprocal,
    sqrt and ln arguments stay clear of their singularities and exp never
    overflows.
    """
    rng = random.Random(seed)
    domain = Box(Interval(round(rng.uniform(0.2, 0.8), 3),
                          round(rng.uniform(1.0, 2.0), 3)) for _ in range(n))

    pool: List[Tuple[str, Interval]] = [
        (f"x{i}", domain[i - 1]) for i in range(1, n + 1)
    ]
    rng.shuffle(pool)
    used_mul = False

    def unary_choices(iv: Interval) -> List[str]:
        out = ["pow2", "addC", "mulByC"]
        if iv.mag < 20.0:
            out.append("exp")
        if iv.lo > 1e-6:
            out.extend(["sqrt", "ln", "recip"])
        return out

    def apply_unary(expr: str, iv: Interval) -> Tuple[str, Interval]:
        kind = rng.choice(unary_choices(iv))
        if kind == "pow2" and iv.mag < 1e3:
            return f"({expr})^2", iv.pow(2)
        if kind == "exp":
            return f"exp({expr})", iv.exp()
        if kind == "sqrt":
            return f"sqrt({expr})", iv.sqrt()
        if kind == "ln":
            return f"ln({expr})", iv.ln()
        if kind == "recip":
            return f"1/({expr})", iv.recip()
        if kind == "addC":
            c = round(rng.uniform(-2.0, 2.0), 3)
            return f"({expr}) + {c}" if c >= 0 else f"({expr}) - {-c}", iv.add_const(c)
        c = round(rng.uniform(0.5, 2.5), 3) * rng.choice([1.0, -1.0])
        return f"{c}*({expr})", iv.scale(c)

    steps = 0
    budget = extra_ops + len(pool)
    while len(pool) > 1 or steps < budget:
        steps += 1
        if steps > 10 * budget:
            break
        if len(pool) > 1 and (rng.random() < 0.6 or steps >= budget):
            (e1, v1) = pool.pop()
            (e2, v2) = pool.pop()
            if rng.random() < 0.5 and (v1 * v2).mag < 1e6:
                pool.append((f"({e1})*({e2})", v1 * v2))
                used_mul = True
            else:
                pool.append((f"({e1}) + ({e2})", v1 + v2))
        else:
            expr, iv = pool.pop()
            if iv.mag < 1e6:
                pool.append(apply_unary(expr, iv))
            else:
                c = 1e-3
                pool.append((f"{c}*({expr})", iv.scale(c)))
    expr, iv = pool[0]
    if require_mul and not used_mul:
        j = rng.randrange(1, n + 1)
        expr = f"({expr}) + (x{j})*(x{j % n + 1})"
    return CorpusEntry(name=f"fn_{n}_{seed}", n=n, domain=domain, source=expr)


# -- comparison driver ----------------------------------------------------

@dataclass(frozen=True)
class CompareRecord:
    function: str
    n: int
    box_index: int
    method: str
    lower_class: int
    upper_class: int


@dataclass(frozen=True)
class SkipRecord:
    function: str
    n: int
    box_index: int
    reason: str


@dataclass
class CompareResult:
    eps: float
    seed: int
    boxes_per_function: int
    records: List[CompareRecord] = field(default_factory=list)
    skips: List[SkipRecord] = field(default_factory=list)


def run_compare(entries: Sequence[CorpusEntry], boxes_per_function: int = 100,
                seed: int = 0, eps: float = DEFAULT_EPS,
                methods: Sequence[str] = ("original", "improved")) -> CompareResult:
    """Classify each method against the references on sampled sub-boxes.

    Boxes that make the function leave its domain (or a reference method
    fail) are skipped with a reason; everything else is deterministic in
    (entries order, seed).
    """
    result = CompareResult(eps=eps, seed=seed, boxes_per_function=boxes_per_function)
    evaluators = {"original": eval_original, "improved": eval_improved}
    for entry in entries:
        cl = entry.compile()
        box_seed = (seed * 1000003 + zlib.crc32(entry.name.encode())) & 0x7FFFFFFF
        for idx, box in enumerate(random_boxes(entry.domain, boxes_per_function, box_seed)):
            try:
                enc = interval_hessian(cl, box)
                gersh = gershgorin_bounds(enc)
                vertex = hertz_rohn_bounds(enc)
                for method in methods:
                    tested = evaluators[method](cl, box).eigen
                    low, up = classify(tested, gersh, vertex, eps)
                    result.records.append(CompareRecord(
                        entry.name, entry.n, idx, method, low, up))
            except HessboundError as err:
                result.skips.append(SkipRecord(entry.name, entry.n, idx,
                                               f"{type(err).__name__}: {err}"))
    return result


def _aggregate(result: CompareResult) -> List[dict]:
    """Percentage of boxes per class, per (method, n, bound side)."""
    buckets: Dict[Tuple[str, object, str], List[int]] = {}
    for rec in result.records:
        for n_key in (rec.n, "all"):
            for side, klass in (("lower", rec.lower_class), ("upper", rec.upper_class)):
                counts = buckets.setdefault((rec.method, n_key, side), [0] * 5)
                counts[klass - 1] += 1
    rows = []
    def sort_key(k):
        method, n_key, side = k
        return (method, (1, 0) if n_key == "all" else (0, n_key), side)
    for key in sorted(buckets, key=sort_key):
        method, n_key, side = key
        counts = buckets[key]
        total = sum(counts)
        rows.append({
            "method": method,
            "n": n_key,
            "bound": side,
            "cases": total,
            **{f"class{i+1}": 100.0 * counts[i] / total for i in range(5)},
        })
    return rows


def emit_report(result: CompareResult, fmt: str = "csv") -> str:
    """Render the aggregated comparison as csv, json or an aligned table."""
    rows = _aggregate(result)
    if fmt == "csv":
        out = ["method,n,bound,cases,class1,class2,class3,class4,class5"]
        for r in rows:
            out.append("{method},{n},{bound},{cases},".format(**r)
                       + ",".join(f"{r[f'class{i+1}']:.4f}" for i in range(5)))
        return "\n".join(out) + "\n"
    if fmt == "json":
        return json.dumps({
            "eps": result.eps,
            "seed": result.seed,
            "boxes_per_function": result.boxes_per_function,
            "rows": rows,
            "skipped": [s.__dict__ for s in result.skips],
        }, indent=2) + "\n"
    if fmt == "table":
        header = f"{'method':<10}{'n':>5}{'bound':>7}{'cases':>7}" + "".join(
            f"{'cls' + str(i+1):>9}" for i in range(5))
        lines = [header, "-" * len(header)]
        for r in rows:
            lines.append(f"{r['method']:<10}{str(r['n']):>5}{r['bound']:>7}{r['cases']:>7}"
                         + "".join(f"{r[f'class{i+1}']:>9.2f}" for i in range(5)))
        if result.skips:
            lines.append(f"skipped boxes: {len(result.skips)}")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown report format {fmt!r}")
