"""Gaussian elimination over Q with solution-set description."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exact import as_rational


@dataclass(frozen=True)
class LinSystem:
    matrix: tuple
    rhs: tuple

    def __init__(self, matrix: Sequence[Sequence], rhs: Sequence):
        rows = tuple(tuple(as_rational(v) for v in row) for row in matrix)
        vec = tuple(as_rational(v) for v in rhs)
        if len(rows) != len(vec):
            raise ValueError(f"{len(rows)} rows but {len(vec)} right-hand sides")
        if rows and len({len(r) for r in rows}) != 1:
            raise ValueError("ragged matrix")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "rhs", vec)

    @property
    def ncols(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0


@dataclass(frozen=True)
class Solution:
    """Outcome of :func:`solve_exact`.

    ``status`` is ``"unique"``, ``"parametric"`` or ``"inconsistent"``.  For a
    consistent system every solution is ``particular + sum t_i * null_basis[i]``;
    ``particular`` sets the free variables to zero.  An inconsistent result
    carries ``certificate``: row indices whose combination reads 0 = nonzero.
    """

    status: str
    particular: tuple = ()
    null_basis: tuple = ()
    pivots: tuple = ()
    certificate: tuple = field(default=())

    @property
    def consistent(self) -> bool:
        return self.status != "inconsistent"

    def contains(self, vector) -> bool:
        """Whether ``vector`` is in the solution set."""
        if not self.consistent:
            return False
        vector = [as_rational(v) for v in vector]
        free = [j for j in range(len(vector)) if j not in self.pivots]
        # free coordinates determine the candidate uniquely
        cand = list(self.particular)
        for t_idx, j in enumerate(free):
            t = vector[j]
            if t:
                for i, v in enumerate(self.null_basis[t_idx]):
                    cand[i] += t * v
        return cand == vector


def rref(matrix, ncols: int, track: bool = False):
    """Row reduce in place-free fashion.

    Returns (rows, pivots, history); ``history[i]`` (when ``track``) maps
    original row index -> multiplier producing reduced row ``i``.
    """
    rows = [list(r) for r in matrix]
    hist = [{i: Fraction(1)} for i in range(len(rows))] if track else None
    pivots = []
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        if track:
            hist[r], hist[piv] = hist[piv], hist[r]
        inv = 1 / rows[r][c]
        if inv != 1:
            rows[r] = [v * inv for v in rows[r]]
            if track:
                hist[r] = {k: v * inv for k, v in hist[r].items()}
        prow = rows[r]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
                if track:
                    h = dict(hist[i])
                    for k, v in hist[r].items():
                        s = h.get(k, 0) - f * v
                        if s:
                            h[k] = s
                        else:
                            h.pop(k, None)
                    hist[i] = h
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots, hist


def solve_exact(system: LinSystem | Sequence, rhs: Sequence | None = None) -> Solution:
    """Solve ``A v = b`` exactly.

    Accepts a :class:`LinSystem` or a ``(matrix, rhs)`` pair.
    """
    if not isinstance(system, LinSystem):
        system = LinSystem(system, rhs)
    n = system.ncols
    aug = [list(row) + [b] for row, b in zip(system.matrix, system.rhs)]
    rows, pivots, hist = rref(aug, n, track=True)
    rank = len(pivots)
    for i in range(rank, len(rows)):
        if rows[i][n]:
            return Solution("inconsistent", certificate=tuple(sorted(hist[i])))
    particular = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        particular[c] = rows[i][n]
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for j in free:
        v = [Fraction(0)] * n
        v[j] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][j]
        basis.append(tuple(v))
    status = "unique" if not free else "parametric"
    return Solution(status, tuple(particular), tuple(basis), tuple(pivots))


def nullspace(matrix, ncols: int) -> list:
    """Basis of {v : A v = 0}."""
    if not matrix:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    sol = solve_exact(LinSystem(matrix, [0] * len(matrix)))
    return [list(v) for v in sol.null_basis]


def minimal_infeasible_subset(system: LinSystem) -> tuple:
    """Row indices of an irreducible inconsistent subsystem.

    Starts from the elimination certificate and applies a deletion filter:
    every returned row is necessary for the contradiction.
    """
    sol = solve_exact(system)
    if sol.consistent:
        return ()
    keep = list(sol.certificate)
    i = 0
    while i < len(keep):
        trial = keep[:i] + keep[i + 1:]
        sub = LinSystem([system.matrix[k] for k in trial], [system.rhs[k] for k in trial])
        if trial and not solve_exact(sub).consistent:
            keep = trial
        else:
            i += 1
    return tuple(keep)
