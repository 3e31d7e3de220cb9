"""Rational sections p / f^m and polynomial-coefficient differential operators.

A section is stored in cancelled form: the pole order is reduced whenever
the denominator divides the numerator exactly.  Differentiation follows
the quotient rule and respects that normalization, so iterated partials
of g / f stay exact at every step.

The order-k numerator ideal of an ideal I collects, for each generator g
and each multi-index b with |b| <= k, the polynomial f^(k+1) * d^b(g / f);
membership of f^k in that ideal at the origin is the levelwise test used
by the length certificates.

The Euler layer certifies, for f weighted homogeneous with weights w, the
rewriting of a monomial section x^u / f^(k+1) as a weighted sum of first
partials of sections x^(u+e_i) / f^(k+1).  Each step stores its scale
1 / (rho(u) - (k+1)) and is replayed exactly on construction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .ideals import Ideal
from .invariants import WeightSystem
from .polyring import Exponent, Polynomial, RingContext, exact_div

__all__ = [
    "DescentChain",
    "DescentStep",
    "DiffOp",
    "RationalSection",
    "euler_check",
    "euler_descent_witness",
    "generation_descent",
    "jk_ideal",
]


class RationalSection:
    """A section numerator / base^pole over a fixed nonzero base polynomial."""

    __slots__ = ("base", "numerator", "pole")

    def __init__(self, base: Polynomial, numerator: Polynomial, pole: int = 0) -> None:
        if base.is_zero():
            raise ValueError("section base must be nonzero")
        if numerator.ring != base.ring:
            raise ValueError("numerator and base live in different rings")
        if pole < 0:
            raise ValueError("pole order must be nonnegative")
        if numerator.is_zero():
            pole = 0
        else:
            while pole > 0:
                reduced = exact_div(numerator, base)
                if reduced is None:
                    break
                numerator = reduced
                pole -= 1
        object.__setattr__(self, "base", base)
        object.__setattr__(self, "numerator", numerator)
        object.__setattr__(self, "pole", pole)

    def __setattr__(self, name, value):
        raise AttributeError("RationalSection is immutable")

    @property
    def ring(self) -> RingContext:
        return self.base.ring

    @classmethod
    def reciprocal_power(cls, base: Polynomial, pole: int = 1) -> "RationalSection":
        """The section 1 / base^pole."""
        return cls(base, base.ring.one(), pole)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_polynomial(self) -> bool:
        return self.pole == 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalSection):
            return NotImplemented
        return (
            self.base == other.base
            and self.pole == other.pole
            and self.numerator == other.numerator
        )

    def __hash__(self) -> int:
        return hash((RationalSection, self.base, self.numerator, self.pole))

    def _coerce(self, other) -> "RationalSection":
        if isinstance(other, RationalSection):
            if other.base != self.base:
                raise ValueError("sections over different bases cannot be combined")
            return other
        if isinstance(other, Polynomial):
            return RationalSection(self.base, other, 0)
        raise TypeError(f"cannot combine a section with {type(other).__name__}")

    def __add__(self, other) -> "RationalSection":
        other = self._coerce(other)
        m = max(self.pole, other.pole)
        p = self.numerator * self.base ** (m - self.pole)
        q = other.numerator * self.base ** (m - other.pole)
        return RationalSection(self.base, p + q, m)

    __radd__ = __add__

    def __neg__(self) -> "RationalSection":
        return RationalSection(self.base, -self.numerator, self.pole)

    def __sub__(self, other) -> "RationalSection":
        return self + (-self._coerce(other))

    def __mul__(self, other) -> "RationalSection":
        if isinstance(other, (int, Fraction, Polynomial)):
            return RationalSection(self.base, self.numerator * other, self.pole)
        if isinstance(other, RationalSection):
            if other.base != self.base:
                raise ValueError("sections over different bases cannot be combined")
            return RationalSection(
                self.base, self.numerator * other.numerator, self.pole + other.pole
            )
        return NotImplemented

    __rmul__ = __mul__

    def derive(self, variable) -> "RationalSection":
        """Partial derivative, by the quotient rule with exact cancellation."""
        i = self.ring.index(variable)
        dp = self.numerator.partial_derivative(i)
        if self.pole == 0:
            return RationalSection(self.base, dp, 0)
        df = self.base.partial_derivative(i)
        numerator = dp * self.base - self.pole * self.numerator * df
        return RationalSection(self.base, numerator, self.pole + 1)

    def __str__(self) -> str:
        if self.pole == 0:
            return str(self.numerator)
        denom = f"({self.base})" if self.pole == 1 else f"({self.base})^{self.pole}"
        return f"({self.numerator}) / {denom}"

    def __repr__(self) -> str:
        return f"RationalSection({self!s})"


def _beta_str(ring: RingContext, beta: Exponent) -> str:
    parts = []
    for name, b in zip(ring.names, beta):
        if b == 1:
            parts.append(f"d_{name}")
        elif b > 1:
            parts.append(f"d_{name}^{b}")
    return "*".join(parts) if parts else "1"


class DiffOp:
    """A finite sum of terms coeff * d^beta with polynomial coefficients.

    Terms are kept normal ordered (all derivatives to the right of their
    coefficient); there is no operator composition, only application to
    sections and module operations.
    """

    __slots__ = ("ring", "terms")

    def __init__(self, ring: RingContext, terms: Iterable[tuple[Polynomial, Exponent]]) -> None:
        merged: dict[Exponent, Polynomial] = {}
        for coeff, beta in terms:
            if coeff.ring != ring:
                raise ValueError("coefficient from a different ring")
            if len(beta) != ring.arity or any(b < 0 for b in beta):
                raise ValueError("bad derivative multi-index")
            beta = tuple(beta)
            merged[beta] = merged.get(beta, ring.zero()) + coeff
        cleaned = tuple(
            (c, b)
            for b, c in sorted(merged.items(), key=lambda kv: (sum(kv[0]), kv[0]))
            if not c.is_zero()
        )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "terms", cleaned)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOp is immutable")

    @classmethod
    def identity(cls, ring: RingContext) -> "DiffOp":
        return cls(ring, [(ring.one(), ring.zero_exponent())])

    @classmethod
    def partial(cls, ring: RingContext, variable, k: int = 1) -> "DiffOp":
        i = ring.index(variable)
        beta = tuple(k if j == i else 0 for j in range(ring.arity))
        return cls(ring, [(ring.one(), beta)])

    @property
    def order(self) -> int:
        return max((sum(b) for _, b in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self.ring == other.ring and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((DiffOp, self.ring, self.terms))

    def __add__(self, other) -> "DiffOp":
        if not isinstance(other, DiffOp):
            return NotImplemented
        if other.ring != self.ring:
            raise ValueError("operators over different rings")
        return DiffOp(self.ring, self.terms + other.terms)

    def __neg__(self) -> "DiffOp":
        return DiffOp(self.ring, [(-c, b) for c, b in self.terms])

    def __sub__(self, other) -> "DiffOp":
        if not isinstance(other, DiffOp):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other) -> "DiffOp":
        if isinstance(other, (int, Fraction, Polynomial)):
            return DiffOp(self.ring, [(c * other, b) for c, b in self.terms])
        return NotImplemented

    __rmul__ = __mul__

    def apply(self, section: RationalSection) -> RationalSection:
        """Apply the operator to a section."""
        if section.ring != self.ring:
            raise ValueError("section over a different ring")
        total = RationalSection(section.base, self.ring.zero(), 0)
        for coeff, beta in self.terms:
            current = section
            for i, b in enumerate(beta):
                for _ in range(b):
                    current = current.derive(i)
            total = total + current * coeff
        return total

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for coeff, beta in self.terms:
            d = _beta_str(self.ring, beta)
            if d == "1":
                parts.append(f"({coeff})")
            else:
                parts.append(f"({coeff})*{d}")
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"DiffOp({self!s})"


def jk_ideal(f: Polynomial, ideal: Ideal, k: int) -> Ideal:
    """Order-k numerator ideal of the sections d^b(g / f), |b| <= k, g in I.

    Each generator is f^(k+1) * d^b(g / f) written as a polynomial, using
    the cancelled pole order of the derived section.  Distinct multi-indices
    are enumerated once, by taking derivatives in non-decreasing variable
    order.
    """
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if f.is_zero():
        raise ValueError("denominator polynomial must be nonzero")
    if ideal.ring != f.ring:
        raise ValueError("ideal and polynomial live in different rings")
    n = f.ring.arity
    out: list[Polynomial] = []
    seen: set[Polynomial] = set()

    def emit(section: RationalSection) -> None:
        gen = f ** (k + 1 - section.pole) * section.numerator
        if not gen.is_zero() and gen not in seen:
            seen.add(gen)
            out.append(gen)

    def walk(section: RationalSection, budget: int, start: int) -> None:
        emit(section)
        if budget == 0 or section.is_zero():
            return
        for i in range(start, n):
            walk(section.derive(i), budget - 1, i)

    for g in ideal.generators:
        walk(RationalSection(f, g, 1), k, 0)
    return Ideal(f.ring, out)


def euler_check(f: Polynomial, weights: WeightSystem) -> bool:
    """Whether sum_i w_i x_i df/dx_i equals f exactly."""
    ring = f.ring
    if weights.arity != ring.arity:
        raise ValueError("weight system arity does not match the ring")
    total = ring.zero()
    for i, w in enumerate(weights):
        total = total + ring.gens()[i] * f.partial_derivative(i) * w
    return total == f


@dataclass(frozen=True)
class DescentStep:
    """One certified rewriting of x^u / f^(k+1) through first partials.

    The step asserts x^u / f^(k+1) = scale * sum_i w_i d_i (x^(u+e_i) / f^(k+1))
    with scale = 1 / (rho(u) - (k+1)); ``replay`` re-derives both sides
    exactly.
    """

    u: Exponent
    level: int
    scale: Fraction
    weights: WeightSystem

    def inputs(self) -> tuple[Exponent, ...]:
        """The exponents u + e_i whose sections the rewriting consumes."""
        n = len(self.u)
        return tuple(
            tuple(self.u[j] + (1 if j == i else 0) for j in range(n))
            for i in range(n)
        )

    def replay(self, f: Polynomial) -> bool:
        ring = f.ring
        target = RationalSection(f, Polynomial.monomial(ring, self.u), self.level + 1)
        total = RationalSection(f, ring.zero(), 0)
        for i, u_plus in enumerate(self.inputs()):
            section = RationalSection(f, Polynomial.monomial(ring, u_plus), self.level + 1)
            total = total + section.derive(i) * (self.scale * self.weights[i])
        return total == target

    def to_dict(self) -> dict:
        return {
            "u": list(self.u),
            "scale": str(self.scale),
            "operator": [
                {"variable_index": i, "coefficient": str(self.scale * w)}
                for i, w in enumerate(self.weights)
            ],
            "verified": True,
        }


def euler_descent_witness(
    f: Polynomial, weights: WeightSystem, u: Exponent, k: int
) -> DescentStep:
    """Build and replay the rewriting step for x^u / f^(k+1).

    Requires the Euler identity for (f, weights) and rho(u) < k + 1; the
    constructed step is replayed before being returned.
    """
    if k < 0:
        raise ValueError("level must be nonnegative")
    if len(u) != f.ring.arity or any(e < 0 for e in u):
        raise ValueError("bad exponent")
    if not euler_check(f, weights):
        raise ValueError("weights do not satisfy the Euler identity for f")
    r = weights.rho(u)
    if r == k + 1:
        raise ValueError("base case: rho(u) equals k + 1, scale undefined")
    if r > k + 1:
        raise ValueError("base case: rho(u) exceeds k + 1, no rewriting needed")
    step = DescentStep(u=tuple(u), level=k, scale=1 / (r - (k + 1)), weights=weights)
    if not step.replay(f):
        raise AssertionError("descent step failed its replay")
    return step


@dataclass(frozen=True)
class DescentChain:
    """All rewriting steps at a fixed level, ordered for induction.

    Steps are listed in decreasing total degree of u, so every section a
    step consumes is either a base-case monomial (rho >= k + 1) or the
    target of an earlier step.
    """

    f: Polynomial
    weights: WeightSystem
    level: int
    steps: tuple[DescentStep, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self) -> bool:
        return all(step.replay(self.f) for step in self.steps)

    def to_dict(self) -> dict:
        return {
            "f": str(self.f),
            "weights": [str(w) for w in self.weights],
            "level": self.level,
            "steps": [step.to_dict() for step in self.steps],
        }


def generation_descent(f: Polynomial, weights: WeightSystem, k: int = 0) -> DescentChain:
    """Certified chain rewriting every x^u / f^(k+1) with rho(u) < k + 1.

    Exhausting these targets expresses 1 / f^(k+1) (and every section below
    the threshold) through first partials of sections at or above it.  The
    enumeration is finite: rho(u) < k + 1 forces u_i < (k + 1) / w_i.
    """
    if k < 0:
        raise ValueError("level must be nonnegative")
    if not euler_check(f, weights):
        raise ValueError("weights do not satisfy the Euler identity for f")
    bounds = [math.ceil(Fraction(k + 1) / w) for w in weights]
    targets = [
        u for u in _box(bounds) if weights.rho(u) < k + 1
    ]
    targets.sort(key=lambda u: (-sum(u), u))
    steps = tuple(euler_descent_witness(f, weights, u, k) for u in targets)
    return DescentChain(f=f, weights=weights, level=k, steps=steps)


def _box(bounds: list[int]):
    if not bounds:
        yield ()
        return
    for head in range(bounds[0] + 1):
        for tail in _box(bounds[1:]):
            yield (head,) + tail
