"""Ring-valued bilinear form of a fusion quiver, the reflection action on
dimension vectors, two-colored quantum numbers (free and specialized),
rank-two orders, sign coherence, and enumeration of indecomposable dimension
vectors via root systems."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import (
    InconsistentVerdict,
    InfiniteType,
    MissingAction,
    OutOfRange,
    SignCoherenceViolation,
)
from .module import (
    ActionLabel,
    ModuleCategory,
    action_matrix_of,
    module_fpdims,
    regular_module,
    sign_class,
)
from .quiver import Edge, FusionQuiver, label_fpdim
from .ring import (
    FusionRing,
    INFINITY,
    add,
    angle_label,
    default_tol,
    dual as ring_dual,
    fpdim,
    fpdim_of,
    multiply,
    scale,
    sub,
)
from .unfold import positive_roots_simply_laced, unfold

ORBIT_GROWTH_STREAK = 50

# DimensionVector: tuple (one entry per quiver vertex) of module-coefficient
# tuples; hashable, so closures can live in plain sets.


def dimvec_basis(nv: int, msize: int, v: int, coeff) -> tuple:
    """The dimension vector with module coefficient `coeff` at vertex v."""
    zero = (0,) * msize
    return tuple(tuple(coeff) if w == v else zero for w in range(nv))


def dimvec_add(x, y):
    return tuple(add(a, b) for a, b in zip(x, y))


def dimvec_neg(x):
    return tuple(tuple(-c for c in a) for a in x)


def dimvec_is_positive(x) -> bool:
    return all(all(c >= 0 for c in a) for a in x) and any(
        c > 0 for a in x for c in a
    )


@dataclass(frozen=True)
class BilinearFormQ:
    ring: FusionRing
    entries: tuple  # nv x nv matrix of RingElements

    def real_matrix(self):
        fpv = fpdim(self.ring)
        return np.array(
            [[fpdim_of(self.ring, e, fpv) for e in row] for row in self.entries]
        )


def bilinear_form(Q: FusionQuiver) -> BilinearFormQ:
    """The ring-valued bilinear form on the vertex lattice: 2 on the
    diagonal, minus the dual label class along an arrow, minus the label
    class against it."""
    if Q.partial_mode:
        raise MissingAction(
            "ring-valued form needs ring-element labels; use real_bilinear_form"
        )
    ring = Q.ring
    two = scale(2, ring.one)
    zero = ring.zero()
    entries = [[two if v == w else zero for w in range(Q.nv)] for v in range(Q.nv)]
    for e in Q.edges:
        entries[e.source][e.target] = sub(
            entries[e.source][e.target], ring_dual(ring, e.label)
        )
        entries[e.target][e.source] = sub(entries[e.target][e.source], e.label)
    return BilinearFormQ(ring=ring, entries=tuple(tuple(r) for r in entries))


def real_bilinear_form(Q: FusionQuiver):
    """The real symmetric form: 2 on the diagonal, minus the FP dimension of
    the label off it.  Available in partial mode too."""
    fpv = fpdim(Q.ring) if Q.ring is not None else None
    g = np.zeros((Q.nv, Q.nv))
    np.fill_diagonal(g, 2.0)
    for e in Q.edges:
        f = label_fpdim(Q, e.label, fpv)
        g[e.source][e.target] -= f
        g[e.target][e.source] -= f
    return g


def _edge_action_matrix(Q: FusionQuiver, M: ModuleCategory | None, label):
    if isinstance(label, ActionLabel):
        return label.np_matrix()
    if M is None:
        raise MissingAction("ring-element label with no module data")
    return action_matrix_of(M, label)


def reflect_dimvec(Q: FusionQuiver, M: ModuleCategory | None, v: int, x) -> tuple:
    """Simple reflection at vertex v acting on a dimension vector: the
    coefficient at v becomes minus itself plus the (dual-)label actions on
    the neighboring coefficients; an involution."""
    if M is None and not Q.partial_mode:
        M = Q.resolved_module()
    new_v = np.array([-c for c in x[v]], dtype=object)
    for e in Q.edges:
        if e.source == v:
            mat = _edge_action_matrix(Q, M, e.label).T
            new_v = new_v + mat.dot(np.array(x[e.target], dtype=object))
        elif e.target == v:
            mat = _edge_action_matrix(Q, M, e.label)
            new_v = new_v + mat.dot(np.array(x[e.source], dtype=object))
    return tuple(
        tuple(int(c) for c in new_v) if w == v else x[w] for w in range(len(x))
    )


def dimvec_fpdim(M: ModuleCategory, x, mu=None):
    """Entrywise FP dimension of a dimension vector: one real per vertex."""
    if mu is None:
        mu = module_fpdims(M)
    return np.array([sum(c * d for c, d in zip(a, mu)) for a in x])


def reflect_real(Q: FusionQuiver, v: int, y):
    """The real shadow of reflect_dimvec on per-vertex FP dimensions."""
    fpv = fpdim(Q.ring) if Q.ring is not None else None
    out = np.array(y, dtype=float)
    acc = -y[v]
    for e in Q.edges:
        if e.source == v:
            acc += label_fpdim(Q, e.label, fpv) * y[e.target]
        elif e.target == v:
            acc += label_fpdim(Q, e.label, fpv) * y[e.source]
    out[v] = acc
    return out


# ---------------------------------------------------------------------------
# two-colored quantum numbers

D, DP = 0, 1  # the two non-commuting letters


@dataclass(frozen=True)
class NCPolynomial:
    """Integer polynomial in two non-commuting letters; terms map words
    (tuples over {d, d'}) to non-zero coefficients."""

    terms: tuple  # sorted tuple of (word, coeff)

    @classmethod
    def from_dict(cls, d: dict) -> "NCPolynomial":
        return cls(terms=tuple(sorted((w, c) for w, c in d.items() if c)))

    @classmethod
    def zero(cls) -> "NCPolynomial":
        return cls(terms=())

    @classmethod
    def one(cls) -> "NCPolynomial":
        return cls(terms=(((), 1),))

    @classmethod
    def letter(cls, a) -> "NCPolynomial":
        return cls(terms=(((a,), 1),))

    def __add__(self, other):
        d = dict(self.terms)
        for w, c in other.terms:
            d[w] = d.get(w, 0) + c
        return NCPolynomial.from_dict(d)

    def __neg__(self):
        return NCPolynomial(terms=tuple((w, -c) for w, c in self.terms))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return NCPolynomial.from_dict({w: c * other for w, c in self.terms})
        d: dict = {}
        for w1, c1 in self.terms:
            for w2, c2 in other.terms:
                w = w1 + w2
                d[w] = d.get(w, 0) + c1 * c2
        return NCPolynomial.from_dict(d)

    __rmul__ = __mul__

    def evaluate(self, ring: FusionRing, pi):
        """Specialize d to pi and d' to its dual, multiplying left to right."""
        pi_dual = ring_dual(ring, pi)
        out = ring.zero()
        for w, c in self.terms:
            term = ring.one
            for a in w:
                term = multiply(ring, term, pi if a == D else pi_dual)
            out = add(out, scale(c, term))
        return out

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms, key=lambda t: (len(t[0]), t[0])):
            word = "".join("d" if a == D else "d'" for a in w) or "1"
            if c == 1 and w:
                parts.append(word)
            elif c == -1 and w:
                parts.append(f"-{word}")
            elif w:
                parts.append(f"{c}{word}")
            else:
                parts.append(str(c))
        s = " + ".join(parts)
        return s.replace("+ -", "- ")


@lru_cache(maxsize=None)
def _qnum_free_pos(k: int, color: int) -> NCPolynomial:
    if k == 0:
        return NCPolynomial.zero()
    if k == 1:
        return NCPolynomial.one()
    other = 1 - color
    letter = NCPolynomial.letter(D if color == D else DP)
    return letter * _qnum_free_pos(k - 1, other) - _qnum_free_pos(k - 2, color)


def qnum_free(k: int, color: str = "d") -> NCPolynomial:
    """The two-colored quantum number [k] as a free polynomial in d, d'."""
    c = D if color == "d" else DP
    if k < 0:
        return -_qnum_free_pos(-k, c)
    return _qnum_free_pos(k, c)


def _qnum_pair_sequence(ring: FusionRing, pi, K: int):
    """([k]_d, [k]_d') for k = 1..K by the coupled ring recursion
    [k+1]_d = pi [k]_d' - [k-1]_d and its color swap."""
    pi_dual = ring_dual(ring, pi)
    a_prev, b_prev = ring.zero(), ring.zero()  # index 0
    a_cur, b_cur = ring.one, ring.one  # index 1
    out = []
    for _ in range(K):
        out.append((a_cur, b_cur))
        a_new = sub(multiply(ring, pi, b_cur), a_prev)
        b_new = sub(multiply(ring, pi_dual, a_cur), b_prev)
        a_prev, b_prev, a_cur, b_cur = a_cur, b_cur, a_new, b_new
    return out


def qnum_in_ring(ring: FusionRing, pi, k: int, color: str = "d"):
    """[k] specialized at d = pi, d' = dual(pi), by direct ring recursion."""
    neg = k < 0
    k = abs(k)
    if k == 0:
        return ring.zero()
    a, b = _qnum_pair_sequence(ring, pi, k)[-1]
    out = a if color == "d" else b
    return tuple(-c for c in out) if neg else out


@dataclass(frozen=True)
class SignCoherenceReport:
    minimal_m: object  # int or inf
    signs_d: tuple  # sign class of [k]_d for k = 1..K
    signs_dp: tuple


def sign_coherence(ring: FusionRing, pi, K: int, tol: float | None = None) -> SignCoherenceReport:
    """Classify the signs of [k]_d and [k]_d' for k up to K, locate the
    minimal vanishing index m, and verify the zero/sign alternation pattern
    (zeros exactly at multiples of m, signs flipping block by block)."""
    if K < 1:
        raise OutOfRange("K must be at least 1")
    if tol is None:
        tol = default_tol()
    fpv = fpdim(ring)
    pairs = _qnum_pair_sequence(ring, pi, K)
    vals_d = [a for a, _ in pairs]
    vals_dp = [b for _, b in pairs]
    signs_d = tuple(sign_class(x) for x in vals_d)
    signs_dp = tuple(sign_class(x) for x in vals_dp)
    for s in signs_d + signs_dp:
        if s == "incoherent":
            raise SignCoherenceViolation("mixed-sign quantum number encountered")

    minimal_m = INFINITY
    for k in range(1, K + 1):
        zd = signs_d[k - 1] == "zero"
        zdp = signs_dp[k - 1] == "zero"
        small = abs(fpdim_of(ring, vals_d[k - 1], fpv)) < tol
        if zd != zdp or zd != small:
            raise SignCoherenceViolation(
                f"vanishing criteria disagree at k = {k}"
            )
        if zd and minimal_m == INFINITY:
            minimal_m = k

    for k in range(1, K + 1):
        if minimal_m == INFINITY:
            want = "positive"
        else:
            c, j = divmod(k, minimal_m)
            want = "zero" if j == 0 else ("positive" if c % 2 == 0 else "negative")
        if signs_d[k - 1] != want or signs_dp[k - 1] != want:
            raise SignCoherenceViolation(
                f"sign pattern violated at k = {k}: got "
                f"({signs_d[k-1]}, {signs_dp[k-1]}), expected {want}"
            )
    return SignCoherenceReport(minimal_m=minimal_m, signs_d=signs_d, signs_dp=signs_dp)


# ---------------------------------------------------------------------------
# rank-two machinery

def _two_vertex_quiver(ring, pi, module):
    return FusionQuiver(
        vertices=("a", "b"),
        edges=(Edge(0, 1, pi),),
        ring=ring,
        module=module,
    )


def _orbit_size(Q, M, start, cap, mu=None, fp_label=None):
    """Size of the orbit of sigma_a sigma_b on a dimension vector, with an
    FP-norm growth streak as an early infinite-order certificate."""
    x = start
    streak = 0
    prev_norm = None
    for step in range(1, cap + 1):
        x = reflect_dimvec(Q, M, 0, reflect_dimvec(Q, M, 1, x))
        if x == start:
            return step
        if mu is not None:
            norm = float(
                np.linalg.norm(
                    [sum(c * d for c, d in zip(a, mu)) for a in x]
                )
            )
            if prev_norm is not None and norm > prev_norm + 1e-12:
                streak += 1
                if streak >= ORBIT_GROWTH_STREAK:
                    return INFINITY
            else:
                streak = 0
            prev_norm = norm
    return INFINITY


def rank_two_order(ring: FusionRing | None, pi, module: ModuleCategory | None = None):
    """Order of sigma_a sigma_b for the one-edge quiver labeled pi, computed
    three independent ways (FP-dimension angle, minimal vanishing quantum
    number, reflection orbit size) and cross-checked."""
    results = {}

    if isinstance(pi, ActionLabel):
        f = pi.fpdim()
        M = module
        msize = pi.size
    else:
        if ring is None:
            raise ValueError("ring required for ring-element labels")
        f = fpdim_of(ring, pi)
        M = module if module is not None else regular_module(ring)
        msize = M.msize
    results["angle"] = angle_label(f)

    if not isinstance(pi, ActionLabel):
        K = 2 * results["angle"] + 2 if results["angle"] != INFINITY else 50
        results["qnum"] = sign_coherence(ring, pi, K).minimal_m

    Q = _two_vertex_quiver(ring, pi, module)
    mu = module_fpdims(M) if M is not None else tuple([1.0] * msize)
    cap = max(1000, 4 * results["angle"]) if results["angle"] != INFINITY else 1000
    orbit_sizes = set()
    for l in range(msize):
        start = dimvec_basis(2, msize, 0, tuple(1 if j == l else 0 for j in range(msize)))
        orbit_sizes.add(_orbit_size(Q, M, start, cap, mu=mu))
    if len(orbit_sizes) != 1:
        raise InconsistentVerdict(f"orbit sizes differ across simples: {orbit_sizes}")
    results["orbit"] = orbit_sizes.pop()

    if len(set(results.values())) != 1:
        raise InconsistentVerdict(f"rank-two order methods disagree: {results}")
    return results["angle"]


def sigma_matrices(ring: FusionRing, pi):
    """The 2x2 generator matrices over the ring for the one-edge quiver."""
    one, zero = ring.one, ring.zero()
    neg_one = scale(-1, one)
    pi_dual = ring_dual(ring, pi)
    sigma_a = ((neg_one, pi_dual), (zero, one))
    sigma_b = ((one, zero), (pi, neg_one))
    return sigma_a, sigma_b


def _mat2_mul(ring, A, B):
    out = []
    for i in range(2):
        row = []
        for j in range(2):
            acc = ring.zero()
            for k in range(2):
                acc = add(acc, multiply(ring, A[i][k], B[k][j]))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def matrix_power_identity_check(ring: FusionRing, pi, k: int) -> bool:
    """Whether (sigma_a sigma_b)^k equals the closed-form matrix of
    two-colored quantum numbers [[ [2k+1]', -[2k]' ], [ [2k], -[2k-1] ]]."""
    if k < 0:
        raise OutOfRange("k must be non-negative")
    sigma_a, sigma_b = sigma_matrices(ring, pi)
    step = _mat2_mul(ring, sigma_a, sigma_b)
    one, zero = ring.one, ring.zero()
    power = ((one, zero), (zero, one))
    for _ in range(k):
        power = _mat2_mul(ring, power, step)
    neg = lambda x: scale(-1, x)
    expected = (
        (qnum_in_ring(ring, pi, 2 * k + 1, "d'"), neg(qnum_in_ring(ring, pi, 2 * k, "d'"))),
        (qnum_in_ring(ring, pi, 2 * k, "d"), neg(qnum_in_ring(ring, pi, 2 * k - 1, "d"))),
    )
    return power == expected


def x_ell_dimvec(ring: FusionRing, M: ModuleCategory, pi, L, ell: int):
    """Dimension vector of the ell-th zigzag indecomposable over the one-edge
    quiver, seeded at module simple L: the closed form in two-colored quantum
    numbers acting on [L]."""
    from .module import act_on

    m = rank_two_order(ring, pi, module=M)
    if ell < 1 or (m != INFINITY and ell > m):
        raise OutOfRange(f"ell = {ell} outside 1..{m}")
    if isinstance(L, (int, str)):
        L = M.basis(L)
    if ell % 2 == 1:
        coeff_a = qnum_in_ring(ring, pi, ell, "d'")
        coeff_b = qnum_in_ring(ring, pi, ell - 1, "d")
    else:
        coeff_a = qnum_in_ring(ring, pi, ell - 1, "d'")
        coeff_b = qnum_in_ring(ring, pi, ell, "d")
    return (act_on(M, coeff_a, L), act_on(M, coeff_b, L))


# ---------------------------------------------------------------------------
# enumeration

def fold_root(U, root) -> tuple:
    """Fold an unfolded positive root back to a dimension vector: the module
    coefficient at quiver vertex v collects the root entries over (v, L)."""
    nq, nm = len(U.qvertices), len(U.mnames)
    return tuple(
        tuple(root[v * nm + l] for l in range(nm)) for v in range(nq)
    )


def unfold_coords(x) -> tuple:
    """Flatten a dimension vector to unfolded coordinates (vertex-major)."""
    return tuple(c for a in x for c in a)


def enumerate_indecomposables(Q: FusionQuiver, M: ModuleCategory | None = None):
    """Dimension vectors of all indecomposable representations of a
    finite-type quiver: positive roots of the unfolding, folded back, sorted
    lexicographically."""
    from .unfold import is_finite_type

    verdict = is_finite_type(Q, M)
    if not verdict.finite:
        raise InfiniteType("quiver is of infinite representation type")
    U = unfold(Q, M)
    roots = positive_roots_simply_laced(U)
    return sorted(fold_root(U, r) for r in roots)


def enumerate_by_closure(Q: FusionQuiver, M: ModuleCategory | None = None, cap: int = 10**6):
    """Independent enumeration oracle: reflection closure of the simple
    dimension vectors [L] alpha_v directly in the module-coefficient lattice,
    keeping positive vectors."""
    if M is None:
        M = Q.resolved_module()
    msize = M.msize if M is not None else len(Q.module_names())
    found = set()
    frontier = []
    for v in range(Q.nv):
        for l in range(msize):
            x = dimvec_basis(Q.nv, msize, v, tuple(1 if j == l else 0 for j in range(msize)))
            found.add(x)
            frontier.append(x)
    while frontier:
        x = frontier.pop()
        for v in range(Q.nv):
            y = reflect_dimvec(Q, M, v, x)
            if y not in found and dimvec_is_positive(y):
                found.add(y)
                frontier.append(y)
                if len(found) > cap:
                    raise InfiniteType("closure exceeded the vector cap")
    return sorted(found)


@dataclass(frozen=True)
class ExtendedRootReport:
    phi_plus: tuple  # W(Q)-orbit of the unit vertex roots, positive part
    extended: tuple  # phi_plus scaled on the right by every simple class
    orbits: tuple  # per root in phi_plus: the tuple of its simple multiples


def extended_positive_roots(Q: FusionQuiver) -> ExtendedRootReport:
    """Over the regular module: the positive part of the reflection orbit of
    the unit roots alpha_v, its simple-multiple extension, and the check that
    the extension coincides with the full enumeration."""
    if Q.partial_mode:
        raise MissingAction("extended roots need full-ring mode")
    ring = Q.ring
    M = regular_module(ring)
    starts = [dimvec_basis(Q.nv, ring.rank, v, ring.one) for v in range(Q.nv)]

    seen = set()
    positives = set()
    frontier = list(starts)
    for x in starts:
        seen.add(x)
        if dimvec_is_positive(x):
            positives.add(x)
    while frontier:
        x = frontier.pop()
        for v in range(Q.nv):
            y = reflect_dimvec(Q, M, v, x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
                if dimvec_is_positive(y):
                    positives.add(y)
                if len(seen) > 10**6:
                    raise InfiniteType("orbit closure exceeded the vector cap")

    orbits = []
    extended = set()
    for r in sorted(positives):
        mults = []
        for l in range(ring.rank):
            e_l = ring.basis(l)
            scaled = tuple(multiply(ring, coeff, e_l) for coeff in r)
            mults.append(scaled)
            extended.add(scaled)
        orbits.append((r, tuple(mults)))

    expected = set(enumerate_indecomposables(Q, M))
    if extended != expected:
        raise InconsistentVerdict(
            "extended roots do not match the enumerated indecomposables"
        )
    return ExtendedRootReport(
        phi_plus=tuple(sorted(positives)),
        extended=tuple(sorted(extended)),
        orbits=tuple(orbits),
    )
