"""Reduced genus of an isolated hypersurface singularity, two ways.

For a point whose tangent cone is smooth (an ordinary point of
multiplicity d in n variables), a single blowup resolves and the
multiplier-style ideal and its adjoint companion are the powers m^(d-n)
and m^(d-n+1) of the maximal ideal, clamped at 0.  For a weighted
homogeneous polynomial the two ideals are spanned by the monomials x^u
with rho(u) >= 1 and rho(u) > 1, where rho(u) = sum_i (u_i + 1) w_i.  In
both cases the reduced genus is the vector-space dimension of the
quotient, and the singularity is log canonical exactly when the first
ideal is the whole ring.

When a germ admits both descriptions the two computations are run and
must agree; a mismatch raises instead of picking a side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .ideals import DEFAULT_DEGREE_CAP, INFINITE, Ideal, maximal_ideal_power, quotient_dimension
from .invariants import WeightSystem, find_weights, jacobian_ideal, tjurina_number
from .polyring import Exponent, Polynomial, RingContext
from .sections import euler_check

__all__ = [
    "GenusResult",
    "SingularityClass",
    "classify",
    "compute_genus",
    "genus_ordinary",
    "genus_weighted",
    "multiplier_span_generators",
    "rho",
]

ORDINARY_EXTRAPOLATION_NOTE = (
    "multiplicity is not ambient dimension plus one; "
    "single-blowup formula applied beyond its stated case"
)


@dataclass(frozen=True)
class SingularityClass:
    """Which genus routes apply to a germ: ordinary, weighted, both, or neither."""

    ordinary_multiplicity: int | None
    weights: WeightSystem | None

    @property
    def is_ordinary(self) -> bool:
        return self.ordinary_multiplicity is not None

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    @property
    def tag(self) -> str:
        if self.is_ordinary and self.is_weighted:
            return "ordinary+weighted"
        if self.is_ordinary:
            return "ordinary"
        if self.is_weighted:
            return "weighted"
        return "unclassified"

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "ordinary_multiplicity": self.ordinary_multiplicity,
            "weights": None if self.weights is None else [str(w) for w in self.weights],
        }


def _lowest_component(f: Polynomial) -> tuple[int, Polynomial]:
    parts = f.homogeneous_components()
    d = min(parts)
    return d, parts[d]


def classify(f: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP) -> SingularityClass:
    """Detect the ordinary and weighted homogeneous descriptions of the germ.

    Requires an isolated singular point at the origin.  The ordinary test
    asks whether the Jacobian ideal of the tangent cone is primary for the
    maximal ideal (a smooth projective tangent cone); the weighted test
    searches for exact positive weights.
    """
    if f.is_zero() or f.constant_term:
        raise ValueError("no singularity: polynomial does not vanish at the origin")
    if any(f.partial_derivative(i).constant_term for i in range(f.ring.arity)):
        raise ValueError("no singularity: origin is a smooth point")
    if tjurina_number(f, degree_cap) == INFINITE:
        raise ValueError("non-isolated singularity")
    d, cone = _lowest_component(f)
    ordinary = jacobian_ideal(cone).is_m_primary()
    weights = find_weights(f)
    if weights is not None and not euler_check(f, weights):
        raise AssertionError("weight search returned weights failing the Euler identity")
    return SingularityClass(d if ordinary else None, weights)


def rho(u: Exponent, weights: WeightSystem) -> Fraction:
    """Shifted weight sum sum_i (u_i + 1) w_i of a monomial exponent."""
    return weights.rho(u)


def multiplier_span_generators(
    ring: RingContext,
    weights: WeightSystem,
    threshold: Fraction,
    strict: bool = False,
) -> Ideal:
    """Monomial ideal spanned by all x^u with rho(u) >= threshold (> if strict).

    Generators are the minimal qualifying monomials: those none of whose
    single-step predecessors u - e_i qualifies.  The qualifying set is
    upward closed since rho increases in every coordinate.
    """
    if weights.arity != ring.arity:
        raise ValueError("weight system arity does not match the ring")
    threshold = Fraction(threshold)

    def qualifies(u: Exponent) -> bool:
        r = weights.rho(u)
        return r > threshold if strict else r >= threshold

    w_max = max(weights)
    bounds = [max(0, math.ceil((threshold + w_max) / w)) for w in weights]
    gens: list[Polynomial] = []
    for u in _box(bounds):
        if not qualifies(u):
            continue
        if any(
            u[i] > 0 and qualifies(tuple(u[j] - (1 if j == i else 0) for j in range(len(u))))
            for i in range(len(u))
        ):
            continue
        gens.append(Polynomial.monomial(ring, u))
    if not gens:
        raise AssertionError("threshold admits no qualifying monomials in the search box")
    return Ideal(ring, gens)


@dataclass(frozen=True)
class GenusResult:
    """Reduced genus with the two ideals it is the quotient dimension of."""

    g: int
    multiplier: Ideal
    adjoint: Ideal
    log_canonical: bool
    provenance: str
    notes: tuple[str, ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "g": self.g,
            "log_canonical": self.log_canonical,
            "multiplier_generators": [str(p) for p in self.multiplier.generators],
            "adjoint_generators": [str(p) for p in self.adjoint.generators],
            "provenance": self.provenance,
            "notes": list(self.notes),
        }


def genus_ordinary(f: Polynomial, degree_cap: int = DEFAULT_DEGREE_CAP) -> GenusResult:
    """Reduced genus of an ordinary point via the single-blowup ideals."""
    ring = f.ring
    n = ring.arity
    d, cone = _lowest_component(f)
    if not jacobian_ideal(cone).is_m_primary():
        raise ValueError("tangent cone is not smooth; ordinary route does not apply")
    multiplier = maximal_ideal_power(ring, max(d - n, 0))
    adjoint = maximal_ideal_power(ring, max(d - n + 1, 0))
    g = quotient_dimension(multiplier, adjoint, degree_cap)
    if g != math.comb(d - 1, n - 1):
        raise AssertionError("quotient dimension disagrees with the closed form")
    notes = () if d == n + 1 else (ORDINARY_EXTRAPOLATION_NOTE,)
    return GenusResult(
        g=g,
        multiplier=multiplier,
        adjoint=adjoint,
        log_canonical=d <= n,
        provenance="ordinary",
        notes=notes,
    )


def genus_weighted(
    f: Polynomial,
    weights: WeightSystem | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> GenusResult:
    """Reduced genus of a weighted homogeneous germ via rho thresholds."""
    ring = f.ring
    if weights is None:
        weights = find_weights(f)
        if weights is None:
            raise ValueError("no weight system found; weighted route does not apply")
    if not euler_check(f, weights):
        raise ValueError("weights do not satisfy the Euler identity for f")
    one = Fraction(1)
    multiplier = multiplier_span_generators(ring, weights, one, strict=False)
    adjoint = multiplier_span_generators(ring, weights, one, strict=True)
    g = quotient_dimension(multiplier, adjoint, degree_cap)
    lattice = _count_rho_equal_one(weights)
    if g != lattice:
        raise AssertionError("quotient dimension disagrees with the lattice count")
    return GenusResult(
        g=g,
        multiplier=multiplier,
        adjoint=adjoint,
        log_canonical=weights.rho(ring.zero_exponent()) >= 1,
        provenance="weighted",
        notes=(),
    )


def _count_rho_equal_one(weights: WeightSystem) -> int:
    bounds = [max(0, math.ceil(1 / w)) for w in weights]
    return sum(1 for u in _box(bounds) if weights.rho(u) == 1)


def compute_genus(
    f: Polynomial,
    cls: SingularityClass | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> GenusResult | None:
    """Reduced genus by every applicable route, demanding agreement.

    Returns None when neither the ordinary nor the weighted description
    applies.  When both apply, the results must agree in genus, log
    canonicity, and both ideals.
    """
    if cls is None:
        cls = classify(f, degree_cap)
    ordinary = genus_ordinary(f, degree_cap) if cls.is_ordinary else None
    weighted = genus_weighted(f, cls.weights, degree_cap) if cls.is_weighted else None
    if ordinary is not None and weighted is not None:
        same_ideals = (
            ordinary.multiplier.contains_ideal(weighted.multiplier)
            and weighted.multiplier.contains_ideal(ordinary.multiplier)
            and ordinary.adjoint.contains_ideal(weighted.adjoint)
            and weighted.adjoint.contains_ideal(ordinary.adjoint)
        )
        if (
            ordinary.g != weighted.g
            or ordinary.log_canonical != weighted.log_canonical
            or not same_ideals
        ):
            raise RuntimeError(
                "ordinary and weighted genus computations disagree: "
                f"g {ordinary.g} vs {weighted.g}, "
                f"log canonical {ordinary.log_canonical} vs {weighted.log_canonical}, "
                f"ideals equal: {same_ideals}"
            )
        return GenusResult(
            g=ordinary.g,
            multiplier=ordinary.multiplier,
            adjoint=ordinary.adjoint,
            log_canonical=ordinary.log_canonical,
            provenance="ordinary+weighted",
            notes=ordinary.notes + weighted.notes,
        )
    return ordinary if ordinary is not None else weighted


def _box(bounds: list[int]):
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for tail in _box(bounds[1:]):
            yield (head,) + tail
