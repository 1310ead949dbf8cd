"""Straight-line IR for factorable functions plus static sparsity analysis.

A codelist is a sequence of lines; the first n lines introduce the
variables and every later line applies one elementary operation to earlier
lines.  :meth:`Codelist.analyze` attaches two index sets to every line k:

* ``indep[k]`` -- variables the intermediate function y_k is independent of,
* ``linear[k]`` -- variables y_k depends on at most linearly.

Both sets are determined by the operation structure alone; they do not
depend on the box the codelist is later evaluated over.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Tuple

from .errors import MalformedCodelist

__all__ = ["Line", "Codelist"]

UNARY_OPS = {"powNat", "oneOver", "sqrt", "exp", "ln", "addC", "mulByC"}
BINARY_OPS = {"add", "mul"}
AFFINE_OPS = {"addC", "mulByC"}


@dataclass(frozen=True)
class Line:
    """One codelist entry.  Operand refs i, j are 1-based line numbers."""

    op: str
    i: Optional[int] = None
    j: Optional[int] = None
    c: Optional[float] = None
    m: Optional[int] = None

    def describe(self) -> str:
        if self.op == "var":
            return "var"
        if self.op in BINARY_OPS:
            return f"{self.op}({self.i},{self.j})"
        if self.op == "powNat":
            return f"powNat({self.i},m={self.m})"
        if self.op in AFFINE_OPS:
            return f"{self.op}({self.i},c={self.c:g})"
        return f"{self.op}({self.i})"


@dataclass
class Codelist:
    """Straight-line program for one scalar function of n variables."""

    n: int
    lines: Tuple[Line, ...]
    indep: Optional[Tuple[frozenset, ...]] = field(default=None, repr=False)
    linear: Optional[Tuple[frozenset, ...]] = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def t(self) -> int:
        """Number of operation lines (codelist length minus var prefix)."""
        return len(self.lines) - self.n

    @property
    def analyzed(self) -> bool:
        return self.indep is not None

    def line(self, k: int) -> Line:
        return self.lines[k - 1]

    def validate(self) -> None:
        """Check structural invariants; raises MalformedCodelist."""
        n = self.n
        if n < 1:
            raise MalformedCodelist(0, "variable count must be at least 1")
        for k, line in enumerate(self.lines, start=1):
            if k <= n:
                if line.op != "var":
                    raise MalformedCodelist(k, "first n lines must be var lines")
                continue
            if line.op == "var":
                raise MalformedCodelist(k, "var line after the variable prefix")
            if line.op in BINARY_OPS:
                if line.i is None or line.j is None:
                    raise MalformedCodelist(k, f"{line.op} needs two operands")
                if not (1 <= line.i < k and 1 <= line.j < k):
                    raise MalformedCodelist(k, "operand refs must point to earlier lines")
            elif line.op in UNARY_OPS:
                if line.i is None or not 1 <= line.i < k:
                    raise MalformedCodelist(k, "operand ref must point to an earlier line")
                if line.op == "powNat" and (line.m is None or line.m < 2):
                    raise MalformedCodelist(k, "powNat exponent must be >= 2")
                if line.op in AFFINE_OPS and (line.c is None or not math.isfinite(line.c)):
                    raise MalformedCodelist(k, f"{line.op} needs a finite constant")
            else:
                raise MalformedCodelist(k, f"unknown operation {line.op!r}")
        if self.analyzed:
            full = frozenset(range(1, n + 1))
            for k in range(1, len(self.lines) + 1):
                ik, lk = self.indep[k - 1], self.linear[k - 1]
                if not ik <= lk:
                    raise MalformedCodelist(k, "independence set exceeds linear set")
                if ik == full:
                    raise MalformedCodelist(k, "a line cannot be independent of every variable")

    def analyze(self) -> "Codelist":
        """Populate the per-line index sets (idempotent)."""
        self.validate()
        n = self.n
        full = frozenset(range(1, n + 1))
        indep: list = []
        linear: list = []
        for k, line in enumerate(self.lines, start=1):
            if line.op == "var":
                indep.append(full - {k})
                linear.append(full)
            elif line.op == "add":
                indep.append(indep[line.i - 1] & indep[line.j - 1])
                linear.append(linear[line.i - 1] & linear[line.j - 1])
            elif line.op == "mul":
                both = indep[line.i - 1] & indep[line.j - 1]
                indep.append(both)
                linear.append(both)
            elif line.op in AFFINE_OPS:
                indep.append(indep[line.i - 1])
                linear.append(linear[line.i - 1])
            else:  # nonaffine unary
                indep.append(indep[line.i - 1])
                linear.append(indep[line.i - 1])
        self.indep = tuple(indep)
        self.linear = tuple(linear)
        self.validate()
        return self

    def dump(self) -> str:
        """Debug listing, one line per entry, with index sets if analyzed."""
        out = []
        for k, line in enumerate(self.lines, start=1):
            text = f"{k}: {line.describe()}"
            if self.analyzed:
                i = ",".join(map(str, sorted(self.indep[k - 1])))
                l = ",".join(map(str, sorted(self.linear[k - 1])))
                text += f" I={{{i}}} L={{{l}}}"
            out.append(text)
        return "\n".join(out)
