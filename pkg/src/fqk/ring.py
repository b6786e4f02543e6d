"""Exact arithmetic in fusion rings and the Frobenius-Perron dimension engine.

A fusion ring is given by its simple basis, a non-negative integer structure
tensor ``N`` (``N[i][j][k]`` = multiplicity of simple ``k`` in the product of
simples ``i`` and ``j``), a distinguished unit index, and a dual involution.
Elements are plain integer coefficient tuples over the simple basis.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidDimension, NonConvergence

RingElement = tuple  # tuple[int, ...] over the simple basis

POWER_ITER_TOL = 1e-10
POWER_ITER_CAP = 10**6


def default_tol() -> float:
    """Numeric comparison tolerance; overridable via the FQK_TOL env var."""
    return float(os.environ.get("FQK_TOL", "1e-9"))


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def __str__(self) -> str:
        if self.ok and not self.warnings:
            return "valid"
        lines = [f"violation: {v}" for v in self.violations]
        lines += [f"warning: {w}" for w in self.warnings]
        return "\n".join(lines)


def _derive_dual(names, unit, N):
    """The dual permutation: for each i, the unique j with N[i][j][unit] = 1."""
    rank = len(names)
    dual = []
    for i in range(rank):
        hits = [j for j in range(rank) if N[i][j][unit] != 0]
        if len(hits) != 1 or N[i][hits[0]][unit] != 1:
            raise ValueError(
                f"cannot derive dual of simple {i} ({names[i]}): "
                f"N[{i}][j][unit] is not a delta function"
            )
        dual.append(hits[0])
    return tuple(dual)


@dataclass(frozen=True)
class FusionRing:
    names: tuple
    unit: int
    N: tuple  # rank x rank x rank nested tuples of non-negative ints
    dual: tuple

    @classmethod
    def from_data(cls, names, unit, N, dual=None):
        names = tuple(names)
        N = tuple(tuple(tuple(int(x) for x in row) for row in mat) for mat in N)
        if dual is None:
            dual = _derive_dual(names, unit, N)
        return cls(names=names, unit=unit, N=N, dual=tuple(dual))

    @property
    def rank(self) -> int:
        return len(self.names)

    def basis(self, i) -> RingElement:
        """The class of the i-th simple (index or name)."""
        if isinstance(i, str):
            i = self.names.index(i)
        return tuple(1 if k == i else 0 for k in range(self.rank))

    @property
    def one(self) -> RingElement:
        return self.basis(self.unit)

    def zero(self) -> RingElement:
        return (0,) * self.rank

    def left_mult_matrix(self, i):
        """Matrix of left multiplication by simple i on column coefficient
        vectors: entry [k][j] = N[i][j][k]."""
        return np.array(
            [[self.N[i][j][k] for j in range(self.rank)] for k in range(self.rank)],
            dtype=object,
        )


def validate(ring: FusionRing) -> ValidationReport:
    """Check every fusion-ring invariant on the data; violations are report
    entries, not exceptions."""
    rep = ValidationReport()
    r = ring.rank
    N, unit, dual = ring.N, ring.unit, ring.dual

    if len(ring.names) != r or len(N) != r or len(dual) != r:
        rep.violations.append("inconsistent rank across fields")
        return rep
    for i in range(r):
        if len(N[i]) != r or any(len(N[i][j]) != r for j in range(r)):
            rep.violations.append(f"N[{i}] has wrong shape")
            return rep

    for i in range(r):
        for j in range(r):
            for k in range(r):
                if N[i][j][k] < 0:
                    rep.violations.append(f"negative multiplicity N[{i}][{j}][{k}]")

    # unit law
    for j in range(r):
        for k in range(r):
            want = 1 if j == k else 0
            if N[unit][j][k] != want:
                rep.violations.append(f"unit law fails at N[unit][{j}][{k}]")
            if N[j][unit][k] != want:
                rep.violations.append(f"unit law fails at N[{j}][unit][{k}]")

    # associativity
    for i in range(r):
        for j in range(r):
            for k in range(r):
                for l in range(r):
                    lhs = sum(N[i][j][m] * N[m][k][l] for m in range(r))
                    rhs = sum(N[j][k][m] * N[i][m][l] for m in range(r))
                    if lhs != rhs:
                        rep.violations.append(
                            f"associativity fails at (i,j,k,l)=({i},{j},{k},{l})"
                        )

    # dual involution and rigidity
    if sorted(dual) != list(range(r)):
        rep.violations.append("dual is not a permutation")
        return rep
    for i in range(r):
        if dual[dual[i]] != i:
            rep.violations.append(f"dual not involutive at {i}")
    if dual[unit] != unit:
        rep.violations.append("dual(unit) != unit")
    for i in range(r):
        for j in range(r):
            want = 1 if j == dual[i] else 0
            if N[i][j][unit] != want:
                rep.violations.append(f"rigidity fails at N[{i}][{j}][unit]")
    for i in range(r):
        for j in range(r):
            for k in range(r):
                if N[i][j][k] != N[dual[j]][dual[i]][dual[k]]:
                    rep.violations.append(
                        f"dual symmetry fails at ({i},{j},{k})"
                    )
    return rep


def multiply(ring: FusionRing, x: RingElement, y: RingElement) -> RingElement:
    if len(x) != ring.rank or len(y) != ring.rank:
        raise ValueError("element length does not match ring rank")
    r = ring.rank
    out = [0] * r
    for i in range(r):
        if not x[i]:
            continue
        for j in range(r):
            if not y[j]:
                continue
            c = x[i] * y[j]
            row = ring.N[i][j]
            for k in range(r):
                if row[k]:
                    out[k] += c * row[k]
    return tuple(out)


def dual(ring: FusionRing, x: RingElement) -> RingElement:
    """Apply the dual involution to an element's coefficients."""
    out = [0] * ring.rank
    for i, c in enumerate(x):
        out[ring.dual[i]] = c
    return tuple(out)


def add(x: RingElement, y: RingElement) -> RingElement:
    return tuple(a + b for a, b in zip(x, y))


def sub(x: RingElement, y: RingElement) -> RingElement:
    return tuple(a - b for a, b in zip(x, y))


def scale(c: int, x: RingElement) -> RingElement:
    return tuple(c * a for a in x)


def perron_eigenpair(A, tol=POWER_ITER_TOL, cap=POWER_ITER_CAP):
    """Perron eigenvalue and positive eigenvector of a non-negative matrix
    with strictly positive Perron vector, by power iteration.

    Iterates on A + I so that periodic (but irreducible) matrices still
    converge; the Perron vector is unchanged and the eigenvalue shifts by 1.
    """
    A = np.asarray(A, dtype=float)
    n = A.shape[0]
    B = A + np.eye(n)
    v = np.ones(n) / math.sqrt(n)
    lam = 1.0
    for _ in range(cap):
        w = B @ v
        lam_new = float(np.linalg.norm(w))
        if lam_new == 0.0:
            raise NonConvergence("matrix annihilated the positive cone")
        w = w / lam_new
        if np.linalg.norm(w - v) < tol and abs(lam_new - lam) < tol:
            return lam_new - 1.0, w
        v, lam = w, lam_new
    raise NonConvergence(
        f"power iteration did not converge within {cap} iterations"
    )


@dataclass(frozen=True)
class FPVector:
    dims: tuple  # float per simple, dims[unit] = 1
    tol: float


def fpdim(ring: FusionRing, tol: float | None = None) -> FPVector:
    """Common Perron eigenvector of all left-multiplication matrices,
    normalized so the unit has dimension 1; entry i is FPdim of simple i."""
    if tol is None:
        tol = default_tol()
    total = np.zeros((ring.rank, ring.rank), dtype=float)
    mats = []
    for i in range(ring.rank):
        m = np.asarray(ring.left_mult_matrix(i), dtype=float)
        mats.append(m)
        total += m
    _, v = perron_eigenpair(total)
    v = v / v[ring.unit]
    # per-simple eigenvalue extraction: LeftMult(S_i) v = d_i v
    k = int(np.argmax(v))
    dims = tuple(float((m @ v)[k] / v[k]) for m in mats)
    return FPVector(dims=dims, tol=tol)


def fpdim_of(ring: FusionRing, x: RingElement, fpv: FPVector | None = None) -> float:
    if fpv is None:
        fpv = fpdim(ring)
    return float(sum(c * d for c, d in zip(x, fpv.dims)))


INFINITY = math.inf


def angle_label(f: float, tol: float | None = None):
    """Map a real dimension f to the integer m with f = 2cos(pi/m), with
    f >= 2 mapping to infinity and f = 0 mapping to 2."""
    if tol is None:
        tol = default_tol()
    if f < 0:
        raise InvalidDimension(f"negative dimension {f}")
    if f >= 2 - tol:
        return INFINITY
    if abs(f) < tol:
        return 2
    m = round(math.pi / math.acos(f / 2))
    if m < 2 or abs(2 * math.cos(math.pi / m) - f) >= tol:
        raise InvalidDimension(
            f"dimension {f} is below 2 but matches no 2cos(pi/m) within {tol}"
        )
    return m
