"""Semisimple module-category data over a fusion ring.

A module category is recorded by its action matrices: for each simple i of
the ring, ``act[i][l'][l]`` is the multiplicity of module-simple ``l'`` in
``S_i (x) L_l``.  All matrix products act on column coefficient vectors.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import SignIncoherentInput
from .ring import (
    FusionRing,
    RingElement,
    ValidationReport,
    perron_eigenpair,
)

ModuleElement = tuple  # tuple[int, ...] over Irr(M)


@dataclass(frozen=True)
class ActionLabel:
    """An edge label given only by its action matrix on Irr(M) (partial
    mode), with an optional explicit FP dimension."""

    matrix: tuple  # msize x msize nested tuples of non-negative ints
    fpdim_override: float | None = None

    @classmethod
    def from_rows(cls, rows, fpdim_override=None):
        return cls(
            matrix=tuple(tuple(int(x) for x in row) for row in rows),
            fpdim_override=fpdim_override,
        )

    @property
    def size(self) -> int:
        return len(self.matrix)

    def np_matrix(self):
        return np.array(self.matrix, dtype=object)

    def transpose(self) -> "ActionLabel":
        return ActionLabel(
            matrix=tuple(zip(*self.matrix)), fpdim_override=self.fpdim_override
        )

    def fpdim(self) -> float:
        if self.fpdim_override is not None:
            return self.fpdim_override
        lam, _ = perron_eigenpair(np.array(self.matrix, dtype=float))
        return lam


@dataclass(frozen=True)
class ModuleCategory:
    ring: FusionRing
    mnames: tuple
    act: tuple  # per ring simple: msize x msize nested tuples

    @classmethod
    def from_data(cls, ring, mnames, act):
        act = tuple(
            tuple(tuple(int(x) for x in row) for row in mat) for mat in act
        )
        return cls(ring=ring, mnames=tuple(mnames), act=act)

    @property
    def msize(self) -> int:
        return len(self.mnames)

    def basis(self, l) -> ModuleElement:
        if isinstance(l, str):
            l = self.mnames.index(l)
        return tuple(1 if k == l else 0 for k in range(self.msize))

    def zero(self) -> ModuleElement:
        return (0,) * self.msize

    def act_matrix(self, i):
        """Action matrix of ring simple i as a numpy object array."""
        return np.array(self.act[i], dtype=object)


def validate_module(M: ModuleCategory) -> ValidationReport:
    rep = ValidationReport()
    ring = M.ring
    r, n = ring.rank, M.msize

    if len(M.act) != r:
        rep.violations.append("number of action matrices != ring rank")
        return rep
    for i in range(r):
        if len(M.act[i]) != n or any(len(row) != n for row in M.act[i]):
            rep.violations.append(f"act[{i}] has wrong shape")
            return rep
        for row in M.act[i]:
            if any(x < 0 for x in row):
                rep.violations.append(f"act[{i}] has a negative entry")

    mats = [M.act_matrix(i) for i in range(r)]

    ident = np.eye(n, dtype=object)
    if not np.array_equal(mats[ring.unit], ident):
        rep.violations.append("act[unit] is not the identity")

    for i in range(r):
        for j in range(r):
            lhs = mats[i].dot(mats[j])
            rhs = np.zeros((n, n), dtype=object)
            for k in range(r):
                if ring.N[i][j][k]:
                    rhs = rhs + ring.N[i][j][k] * mats[k]
            if not np.array_equal(lhs, rhs):
                rep.violations.append(f"action axiom fails at (i,j)=({i},{j})")

    for i in range(r):
        if not np.array_equal(mats[ring.dual[i]], mats[i].T):
            rep.violations.append(f"transpose law fails at simple {i}")

    # connectedness of the union of action supports (warning only)
    adj = np.zeros((n, n), dtype=bool)
    for m in mats:
        adj |= np.asarray(m, dtype=float) > 0
    adj |= adj.T
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in range(n):
            if adj[u][w] and w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        rep.warnings.append("module appears decomposable (action support disconnected)")

    return rep


def regular_module(ring: FusionRing) -> ModuleCategory:
    """The ring acting on itself; act[i] is the left-multiplication matrix."""
    act = tuple(
        tuple(tuple(int(x) for x in row) for row in ring.left_mult_matrix(i))
        for i in range(ring.rank)
    )
    return ModuleCategory(ring=ring, mnames=ring.names, act=act)


def action_matrix_of(M: ModuleCategory, x: RingElement):
    """Matrix of the action of a ring element on column vectors over Irr(M)."""
    out = np.zeros((M.msize, M.msize), dtype=object)
    for i, c in enumerate(x):
        if c:
            out = out + c * M.act_matrix(i)
    return out


def act_on(M: ModuleCategory, x: RingElement, u: ModuleElement) -> ModuleElement:
    if len(x) != M.ring.rank or len(u) != M.msize:
        raise ValueError("dimension mismatch in module action")
    vec = np.array(u, dtype=object)
    out = action_matrix_of(M, x).dot(vec)
    return tuple(int(v) for v in out)


def sign_class(x) -> str:
    """Classify an integer vector as positive / zero / negative / incoherent."""
    has_pos = any(c > 0 for c in x)
    has_neg = any(c < 0 for c in x)
    if has_pos and has_neg:
        return "incoherent"
    if has_pos:
        return "positive"
    if has_neg:
        return "negative"
    return "zero"


def nonzero_action_check(M: ModuleCategory, x: RingElement, u: ModuleElement) -> bool:
    """Whether x annihilates u; for sign-coherent x and a nonzero object
    class u this holds exactly when x = 0."""
    if sign_class(x) == "incoherent":
        raise SignIncoherentInput("x has mixed-sign coefficients")
    if sign_class(u) != "positive":
        raise SignIncoherentInput("u must be a nonzero object class")
    return all(c == 0 for c in act_on(M, x, u))


def module_fpdims(M: ModuleCategory) -> tuple:
    """Common Perron eigenvector of the action matrices, normalized so the
    smallest simple has dimension 1."""
    total = np.zeros((M.msize, M.msize), dtype=float)
    for i in range(M.ring.rank):
        total += np.asarray(M.act_matrix(i), dtype=float)
    _, v = perron_eigenpair(total)
    return tuple(float(x) for x in v / v.min())


@dataclass(frozen=True)
class OrdinaryQuiver:
    """A plain directed multigraph with arrow multiplicities."""

    vertices: tuple  # names
    arrows: tuple  # (source index, target index, multiplicity)

    def arrow_dict(self):
        return {(s, t): m for s, t, m in self.arrows}


def _label_matrix(M: ModuleCategory | None, label):
    if isinstance(label, ActionLabel):
        return label.np_matrix()
    if M is None:
        raise ValueError("ring-element label requires a module")
    return action_matrix_of(M, label)


def mckay_quiver(M: ModuleCategory, label, separated: bool = False) -> OrdinaryQuiver:
    """McKay quiver of the module with respect to a label: an arrow L -> L'
    with multiplicity equal to the action-matrix entry at (L', L), diagonal
    included.  Separated mode returns the bipartite doubling."""
    mat = _label_matrix(M, label)
    n = M.msize
    if not separated:
        vertices = tuple(M.mnames)
        arrows = tuple(
            (l, lp, int(mat[lp][l]))
            for l in range(n)
            for lp in range(n)
            if mat[lp][l]
        )
        return OrdinaryQuiver(vertices=vertices, arrows=arrows)
    vertices = tuple(f"s:{nm}" for nm in M.mnames) + tuple(
        f"t:{nm}" for nm in M.mnames
    )
    arrows = tuple(
        (l, n + lp, int(mat[lp][l]))
        for l in range(n)
        for lp in range(n)
        if mat[lp][l]
    )
    return OrdinaryQuiver(vertices=vertices, arrows=arrows)
