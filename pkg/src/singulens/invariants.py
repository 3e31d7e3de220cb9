"""Numerical invariants of a hypersurface singularity at the origin.

Milnor and Tjurina numbers are colengths at the origin of the Jacobian
ideal and of (f) plus the Jacobian ideal.  Quasi-homogeneity is decided by
the membership criterion of K. Saito: f lies in its Jacobian ideal locally
exactly when f is quasi-homogeneous in suitable coordinates, and in the
given coordinates a positive rational weight vector is searched for
exactly.  A two-part decomposition f = g + h into consecutive homogeneous
pieces with h outside the Jacobian ideal of g certifies the negative case.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .ideals import DEFAULT_DEGREE_CAP, INFINITE, Ideal, local_colength
from .polyring import Exponent, Polynomial

__all__ = [
    "QHVerdict",
    "SqhObstruction",
    "WeightSystem",
    "find_weights",
    "is_quasi_homogeneous",
    "jacobian_ideal",
    "milnor_number",
    "tjurina_number",
    "sqh_obstruction",
]


@dataclass(frozen=True)
class WeightSystem:
    """Positive rational weights, one per ring variable."""

    weights: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValueError("empty weight system")
        ws = tuple(Fraction(w) for w in self.weights)
        if any(w <= 0 for w in ws):
            raise ValueError("weights must be positive")
        object.__setattr__(self, "weights", ws)

    @property
    def arity(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i: int) -> Fraction:
        return self.weights[i]

    def rho(self, u: Exponent) -> Fraction:
        """The shifted weight sum (u_1+1)w_1 + ... + (u_n+1)w_n."""
        if len(u) != len(self.weights):
            raise ValueError("exponent arity does not match the weight system")
        return sum((e + 1) * w for e, w in zip(u, self.weights))

    def __str__(self) -> str:
        return "(" + ", ".join(str(w) for w in self.weights) + ")"


@dataclass(frozen=True)
class QHVerdict:
    """Outcome of the quasi-homogeneity test.

    ``witness`` carries weights making f weighted homogeneous in the given
    coordinates when such weights exist; ``obstruction`` carries the
    higher homogeneous piece h of a certified f = g + h decomposition
    proving the negative verdict.
    """

    quasi_homogeneous: bool
    witness: WeightSystem | None = None
    obstruction: Polynomial | None = None


@dataclass(frozen=True)
class SqhObstruction:
    """Certificate that g + h is not in its own Jacobian ideal locally.

    Valid when g is homogeneous of degree d >= 3 with an isolated critical
    point, h is homogeneous of degree d + 1, and h lies outside the
    Jacobian ideal of g.
    """

    principal: Polynomial
    perturbation: Polynomial
    degree: int

    @property
    def f(self) -> Polynomial:
        return self.principal + self.perturbation


def jacobian_ideal(f: Polynomial) -> Ideal:
    """The ideal of all first partial derivatives of f."""
    return Ideal(f.ring, [f.partial_derivative(i) for i in range(f.ring.arity)])


def _warn_nonvanishing(f: Polynomial) -> None:
    if f.constant_term:
        warnings.warn("polynomial does not vanish at the origin", stacklevel=3)


def milnor_number(f: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Colength of the Jacobian ideal at the origin; INFINITE if non-isolated."""
    _warn_nonvanishing(f)
    return local_colength(jacobian_ideal(f), degree_cap)


def tjurina_number(f: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP):
    """Colength of (f) + Jacobian ideal at the origin; INFINITE if non-isolated."""
    _warn_nonvanishing(f)
    gens = [f] + [f.partial_derivative(i) for i in range(f.ring.arity)]
    return local_colength(Ideal(f.ring, gens), degree_cap)


def is_quasi_homogeneous(f: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP) -> QHVerdict:
    """Decide whether f is quasi-homogeneous as a germ at the origin.

    The verdict is the local membership of f in its Jacobian ideal.  A
    weight witness is attached when one exists in the given coordinates,
    and a homogeneous two-piece obstruction certificate is attached when
    the verdict is negative and such a decomposition applies.
    """
    if milnor_number(f, degree_cap) == INFINITE:
        raise ValueError("non-isolated singularity")
    verdict = jacobian_ideal(f).local_member(f)
    witness = find_weights(f)
    obstruction = None
    if not verdict:
        obstruction = _try_sqh_decomposition(f)
    return QHVerdict(verdict, witness, obstruction)


def _try_sqh_decomposition(f: Polynomial) -> Polynomial | None:
    parts = f.homogeneous_components()
    if len(parts) != 2:
        return None
    (d, g), (e, h) = sorted(parts.items())
    if e != d + 1 or d < 3:
        return None
    try:
        cert = sqh_obstruction(g, h)
    except ValueError:
        return None
    return None if cert is None else cert.perturbation


def sqh_obstruction(principal: Polynomial, perturbation: Polynomial) -> SqhObstruction | None:
    """Certify that principal + perturbation is not quasi-homogeneous.

    Returns a certificate when the perturbation lies outside the Jacobian
    ideal of the principal part, None when it lies inside (no conclusion).
    Hypothesis violations raise ValueError individually.
    """
    g, h = principal, perturbation
    if g.is_zero() or not g.is_homogeneous():
        raise ValueError("principal part must be homogeneous and nonzero")
    d = g.total_degree()
    if d < 3:
        raise ValueError("principal part must have degree at least 3")
    if h.is_zero() or not h.is_homogeneous() or h.total_degree() != d + 1:
        raise ValueError("perturbation must be homogeneous of degree one above the principal part")
    jac = jacobian_ideal(g)
    if not jac.is_m_primary():
        raise ValueError("principal part must have an isolated critical point")
    if jac.member(h):
        return None
    return SqhObstruction(principal=g, perturbation=h, degree=d)


# ---------------------------------------------------------------------------
# weight detection: solve <u, w> = 1 over Q for every exponent u of f


def find_weights(f: Polynomial) -> WeightSystem | None:
    """Positive rational weights giving every term of f weight exactly 1.

    With a unique solution, positivity decides.  When the linear system is
    underdetermined, the strictly positive vertex of {Aw = 1, w >= 0}
    minimizing the weight sum is preferred; failing that, any strictly
    positive solution found by elimination is returned.
    """
    if f.is_zero():
        return None
    rows = [e for e, _ in f.items()]
    n = f.ring.arity
    sol = _solve_affine([list(r) for r in rows], [Fraction(1)] * len(rows), n)
    if sol is None:
        return None
    particular, nullspace = sol
    if not nullspace:
        return WeightSystem(tuple(particular)) if all(w > 0 for w in particular) else None
    positive = [v for v in _vertices(rows, n) if all(w > 0 for w in v)]
    if positive:
        best = min(positive, key=lambda v: (sum(v), v))
        return WeightSystem(best)
    point = _strictly_positive_point(particular, nullspace)
    return None if point is None else WeightSystem(tuple(point))


def _solve_affine(rows: list[list], rhs: list[Fraction], n: int):
    """Exact solve of rows * w = rhs: (particular, nullspace basis) or None."""
    aug = [[Fraction(v) for v in row] + [r] for row, r in zip(rows, rhs)]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, len(aug)) if aug[i][col]), None)
        if pivot_row is None:
            continue
        aug[r], aug[pivot_row] = aug[pivot_row], aug[r]
        inv = 1 / aug[r][col]
        aug[r] = [v * inv for v in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][col]:
                factor = aug[i][col]
                aug[i] = [a - factor * b for a, b in zip(aug[i], aug[r])]
        pivots.append(col)
        r += 1
        if r == len(aug):
            break
    if any(aug[i][n] for i in range(r, len(aug))):
        return None
    particular = [Fraction(0)] * n
    for i, col in enumerate(pivots):
        particular[col] = aug[i][n]
    free = [c for c in range(n) if c not in pivots]
    nullspace = []
    for fc in free:
        vec = [Fraction(0)] * n
        vec[fc] = Fraction(1)
        for i, col in enumerate(pivots):
            vec[col] = -aug[i][fc]
        nullspace.append(vec)
    return particular, nullspace


def _vertices(rows: Sequence[Exponent], n: int) -> list[tuple[Fraction, ...]]:
    """Vertices of {w : rows * w = 1, w >= 0}, by active-set enumeration."""
    seen: set[tuple[Fraction, ...]] = set()
    base = [list(r) for r in rows]
    base_rhs = [Fraction(1)] * len(rows)
    for k in range(n + 1):
        for zeros in combinations(range(n), k):
            extra = [[Fraction(1 if j == i else 0) for j in range(n)] for i in zeros]
            sol = _solve_affine(base + extra, base_rhs + [Fraction(0)] * len(zeros), n)
            if sol is None:
                continue
            particular, nullspace = sol
            if nullspace:
                continue
            if all(w >= 0 for w in particular):
                seen.add(tuple(particular))
    return sorted(seen)


def _strictly_positive_point(particular, nullspace):
    """A strictly positive point of the affine solution set, or None.

    Fourier-Motzkin elimination over the free parameters with strict
    inequalities w_i(s) > 0.
    """
    r = len(nullspace)
    n = len(particular)
    # inequality i: particular[i] + sum_j nullspace[j][i] * s_j > 0
    ineqs = [
        ([nullspace[j][i] for j in range(r)], particular[i]) for i in range(n)
    ]
    point = _fm_solve(ineqs, r)
    if point is None:
        return None
    w = [
        particular[i] + sum(nullspace[j][i] * point[j] for j in range(r))
        for i in range(n)
    ]
    if any(v <= 0 for v in w):
        raise AssertionError("elimination produced a non-positive point")
    return w


def _fm_solve(ineqs, r):
    """Point satisfying all strict inequalities coeffs . s + const > 0, or None."""
    if r == 0:
        return [] if all(c > 0 for _, c in ineqs) else None
    lowers, uppers, passed = [], [], []
    for coeffs, const in ineqs:
        a = coeffs[r - 1]
        head = coeffs[: r - 1]
        if a > 0:
            lowers.append((a, head, const))
        elif a < 0:
            uppers.append((a, head, const))
        else:
            passed.append((head, const))
    projected = list(passed)
    for al, hl, cl in lowers:
        for au, hu, cu in uppers:
            # (-au) * (first) + al * (second) eliminates s_{r-1}
            coeffs = [(-au) * x + al * y for x, y in zip(hl, hu)]
            projected.append((coeffs, (-au) * cl + al * cu))
    inner = _fm_solve(projected, r - 1)
    if inner is None:
        return None
    low = None
    for a, head, const in lowers:
        v = -(const + sum(x * s for x, s in zip(head, inner))) / a
        low = v if low is None else max(low, v)
    high = None
    for a, head, const in uppers:
        v = -(const + sum(x * s for x, s in zip(head, inner))) / a
        high = v if high is None else min(high, v)
    if low is None and high is None:
        value = Fraction(0)
    elif low is None:
        value = high - 1
    elif high is None:
        value = low + 1
    else:
        if low >= high:
            return None
        value = (low + high) / 2
    return inner + [value]
