"""Ideals in Q[x1..xn]: Groebner bases, membership, quotients, colengths.

The Buchberger loop works fraction-free on primitive integer polynomials
(dict exponent -> int).  Pairs are selected by minimal lcm degree (normal
strategy) and pruned by the coprime and chain criteria.  The reduced basis
(minimal, monic, tails fully reduced) is unique for a given monomial order
and is cached on the Ideal per order name; a cache fill is idempotent, so
concurrent readers either see the stored tuple or recompute an equal one.

Questions about the local ring at the origin are answered without local
orders.  When a power of every variable lies in the ideal, its zero locus
is the origin alone and localizing changes nothing.  Otherwise colengths
at the origin use the Nakayama stopping rule: at the first N for which
m^N lies in I + m^(N+1), the ideal I + m^N agrees with I locally, and its
colength is the local one.  Local membership falls back to the ideal
quotient: p lies in I locally exactly when (I : p) contains an element
with nonzero constant term.
"""

from __future__ import annotations

import heapq
import math
from bisect import insort
from fractions import Fraction
from typing import Iterable, Iterator

from .polyring import (
    ELIMINATION_VARIABLE,
    GREVLEX,
    Exponent,
    MonomialOrder,
    Polynomial,
    RingContext,
    elimination_order,
    exact_div,
)

__all__ = [
    "DegreeCapExceeded",
    "INFINITE",
    "Ideal",
    "InfiniteColengthError",
    "local_colength",
    "maximal_ideal",
    "maximal_ideal_power",
    "quotient_dimension",
]

DEFAULT_DEGREE_CAP = 40

INFINITE = float("inf")


class InfiniteColengthError(ValueError):
    """Raised when a colength is requested for a non-finite quotient."""


class DegreeCapExceeded(RuntimeError):
    """Raised when Nakayama stabilization does not occur below the cap."""


def _divides(a: Exponent, b: Exponent) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


# ---------------------------------------------------------------------------
# integer polynomial layer used inside the Buchberger loop

_IntPoly = dict  # Exponent -> int, content 1


def _primitive(p: _IntPoly) -> _IntPoly:
    if not p:
        return p
    g = 0
    for v in p.values():
        g = math.gcd(g, v)
        if g == 1:
            return p
    return {e: v // g for e, v in p.items()}


def _int_poly(p: Polynomial) -> _IntPoly:
    den = 1
    for _, q in p.items():
        den = den * q.denominator // math.gcd(den, q.denominator)
    return _primitive({e: int(q * den) for e, q in p.items()})


def _strip_pair(work: _IntPoly, out: _IntPoly) -> None:
    g = 0
    for v in work.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    for v in out.values():
        g = math.gcd(g, v)
        if g == 1:
            return
    if g > 1:
        for e in work:
            work[e] //= g
        for e in out:
            out[e] //= g


def _ff_reduce(p: _IntPoly, reds: list, key) -> _IntPoly:
    """Full normal form of p against reducer records, fraction-free.

    ``reds`` holds tuples (deg, lmkey, lm, lc, tail) sorted ascending, so
    the scan can stop once reducer head degrees exceed the current monomial
    degree.  The state may be rescaled by integers along the way; the
    result is only meaningful up to scale and is returned primitive.
    """
    work = dict(p)
    out: _IntPoly = {}
    heap = [(tuple(-k for k in key(e)), e) for e in work]
    heapq.heapify(heap)
    steps = 0
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, 0)
        if not c:
            continue
        mdeg = sum(m)
        hit = None
        for deg, _, lm, lc, tail in reds:
            if deg > mdeg:
                break
            if _divides(lm, m):
                hit = (lm, lc, tail)
                break
        if hit is None:
            out[m] = c
            continue
        lm, lc, tail = hit
        g = math.gcd(c, lc)
        a = lc // g
        b = c // g
        if a < 0:
            a, b = -a, -b
        if a != 1:
            for e in work:
                work[e] *= a
            for e in out:
                out[e] *= a
            c *= a
        shift = tuple(x - y for x, y in zip(m, lm))
        for e, q in tail:
            t = tuple(x + y for x, y in zip(e, shift))
            prev = work.get(t)
            v = (prev if prev is not None else 0) - b * q
            if v:
                work[t] = v
                if prev is None:
                    heapq.heappush(heap, (tuple(-k for k in key(t)), t))
            elif prev is not None:
                del work[t]
        steps += 1
        if steps % 64 == 0:
            _strip_pair(work, out)
    return _primitive(out)


def _spoly(pa: _IntPoly, lma: Exponent, pb: _IntPoly, lmb: Exponent) -> _IntPoly:
    lca, lcb = pa[lma], pb[lmb]
    g = math.gcd(lca, lcb)
    ca = lcb // g
    cb = lca // g
    lcm = tuple(max(x, y) for x, y in zip(lma, lmb))
    sa = tuple(l - x for l, x in zip(lcm, lma))
    sb = tuple(l - x for l, x in zip(lcm, lmb))
    out: _IntPoly = {}
    for e, c in pa.items():
        out[tuple(x + y for x, y in zip(e, sa))] = c * ca
    for e, c in pb.items():
        t = tuple(x + y for x, y in zip(e, sb))
        v = out.get(t, 0) - c * cb
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _buchberger(gens: list[_IntPoly], key, known_prefix: int = 0) -> list[_IntPoly]:
    """Groebner basis of the ideal spanned by ``gens`` for the key's order.

    ``known_prefix`` generators are trusted to already form a Groebner
    basis among themselves; pairs internal to that prefix are skipped.
    """
    basis: list[tuple[_IntPoly, Exponent, int]] = []
    reds: list = []
    pending: set[tuple[int, int]] = set()
    heap: list = []
    seen: set = set()

    def add(p: _IntPoly, in_prefix: bool) -> bool:
        lm = max(p, key=key)
        if sum(lm) == 0:
            return True
        t = len(basis)
        basis.append((p, lm, p[lm]))
        tail = tuple((e, c) for e, c in p.items() if e != lm)
        insort(reds, (sum(lm), key(lm), lm, p[lm], tail))
        for i in range(t):
            if in_prefix and i < known_prefix:
                continue
            lmi = basis[i][1]
            if all(x == 0 or y == 0 for x, y in zip(lmi, lm)):
                continue
            lcm = tuple(max(x, y) for x, y in zip(lmi, lm))
            pending.add((i, t))
            heapq.heappush(heap, (sum(lcm), key(lcm), i, t, lcm))
        return False

    def unit_like(p: _IntPoly) -> _IntPoly:
        arity = len(next(iter(p)))
        return {(0,) * arity: 1}

    for idx, g in enumerate(gens):
        if not g:
            continue
        fp = frozenset(g.items())
        if fp in seen:
            continue
        seen.add(fp)
        if add(g, idx < known_prefix):
            return [unit_like(g)]

    while heap:
        _, _, i, j, lcm = heapq.heappop(heap)
        if (i, j) not in pending:
            continue
        pending.remove((i, j))
        chained = False
        for t in range(len(basis)):
            if t == i or t == j:
                continue
            if _divides(basis[t][1], lcm):
                a = (i, t) if i < t else (t, i)
                b = (j, t) if j < t else (t, j)
                if a not in pending and b not in pending:
                    chained = True
                    break
        if chained:
            continue
        s = _spoly(basis[i][0], basis[i][1], basis[j][0], basis[j][1])
        if not s:
            continue
        r = _ff_reduce(s, reds, key)
        if r and add(r, False):
            return [unit_like(r)]
    return [rec[0] for rec in basis]


def _reduced_basis(polys: list[_IntPoly], key) -> list[dict[Exponent, Fraction]]:
    """Minimalize, tail-reduce and monicize a Groebner basis."""
    if not polys:
        return []
    with_lm = sorted(((max(p, key=key), p) for p in polys), key=lambda t: key(t[0]))
    kept: list[tuple[Exponent, _IntPoly]] = []
    for lm, p in with_lm:
        if any(_divides(km, lm) for km, _ in kept):
            continue
        kept.append((lm, p))
    out = []
    for idx, (lm, p) in enumerate(kept):
        reds = sorted(
            (
                (sum(km), key(km), km, q[km], tuple((e, c) for e, c in q.items() if e != km))
                for j, (km, q) in enumerate(kept)
                if j != idx
            ),
        )
        r = _ff_reduce(p, reds, key)
        rl = max(r, key=key)
        lc = r[rl]
        out.append((key(rl), {e: Fraction(c, lc) for e, c in r.items()}))
    out.sort(key=lambda t: t[0])
    return [d for _, d in out]


# ---------------------------------------------------------------------------
# rational normal form against a monic reduced basis


def _nf_fraction(p: Polynomial, basis: tuple[Polynomial, ...], order: MonomialOrder) -> Polynomial:
    key = order.key
    reds = sorted(
        (
            (
                sum(lm),
                key(lm),
                lm,
                tuple((e, c) for e, c in g.items() if e != lm),
            )
            for g in basis
            for lm in (g.leading_monomial(order),)
        ),
    )
    work = {e: c for e, c in p.items()}
    out: dict[Exponent, Fraction] = {}
    heap = [(tuple(-k for k in key(e)), e) for e in work]
    heapq.heapify(heap)
    while heap:
        _, m = heapq.heappop(heap)
        c = work.pop(m, None)
        if c is None:
            continue
        mdeg = sum(m)
        hit = None
        for deg, _, lm, tail in reds:
            if deg > mdeg:
                break
            if _divides(lm, m):
                hit = (lm, tail)
                break
        if hit is None:
            out[m] = c
            continue
        lm, tail = hit
        shift = tuple(x - y for x, y in zip(m, lm))
        for e, q in tail:
            t = tuple(x + y for x, y in zip(e, shift))
            prev = work.get(t)
            v = (prev if prev is not None else Fraction(0)) - c * q
            if v:
                work[t] = v
                if prev is None:
                    heapq.heappush(heap, (tuple(-k for k in key(t)), t))
            elif prev is not None:
                del work[t]
    return Polynomial(p.ring, out)


# ---------------------------------------------------------------------------
# exponent enumeration helpers


def _exponents_of_degree(arity: int, degree: int) -> Iterator[Exponent]:
    if arity == 1:
        yield (degree,)
        return
    for first in range(degree, -1, -1):
        for rest in _exponents_of_degree(arity - 1, degree - first):
            yield (first,) + rest


def maximal_ideal(ring: RingContext) -> "Ideal":
    """The ideal m generated by all the ring variables."""
    return Ideal(ring, ring.gens())


def maximal_ideal_power(ring: RingContext, k: int) -> "Ideal":
    """m^k, generated by the monomials of total degree k (unit ideal for k=0)."""
    if k < 0:
        raise ValueError("negative power of the maximal ideal")
    if k == 0:
        return Ideal(ring, (ring.one(),))
    gens = [Polynomial.monomial(ring, e) for e in _exponents_of_degree(ring.arity, k)]
    return Ideal(ring, gens)


# ---------------------------------------------------------------------------


class Ideal:
    """Finitely generated ideal with per-order cached reduced Groebner bases."""

    __slots__ = ("ring", "generators", "_cache")

    def __init__(self, ring: RingContext, generators: Iterable[Polynomial] = ()):
        gens = []
        for g in generators:
            if g.ring.names != ring.names:
                raise ValueError("generator from a different ring")
            if not g.is_zero():
                gens.append(g)
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "generators", tuple(gens))
        object.__setattr__(self, "_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("Ideal is immutable")

    def __repr__(self) -> str:
        inside = ", ".join(str(g) for g in self.generators) or "0"
        return f"<ideal ({inside}) in {self.ring}>"

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ideal)
            and self.ring.names == other.ring.names
            and self.generators == other.generators
        )

    def __hash__(self) -> int:
        return hash((self.ring.names, self.generators))

    # -- basis and membership -------------------------------------------

    def groebner_basis(self, order: MonomialOrder = GREVLEX) -> tuple[Polynomial, ...]:
        """The reduced Groebner basis: minimal, monic, fully tail-reduced.

        Unique for the given order, sorted by ascending leading monomial.
        """
        cached = self._cache.get(order.name)
        if cached is not None:
            return cached
        ints = [_int_poly(g) for g in self.generators]
        raw = _buchberger(ints, order.key)
        reduced = _reduced_basis(raw, order.key)
        basis = tuple(Polynomial(self.ring, d) for d in reduced)
        self._cache[order.name] = basis
        return basis

    def normal_form(self, p: Polynomial, order: MonomialOrder = GREVLEX) -> Polynomial:
        """Canonical remainder of p modulo the reduced basis."""
        if p.ring.names != self.ring.names:
            raise ValueError("polynomial from a different ring")
        basis = self.groebner_basis(order)
        if not basis:
            return p
        return _nf_fraction(p, basis, order)

    def member(self, p: Polynomial, order: MonomialOrder = GREVLEX) -> bool:
        return self.normal_form(p, order).is_zero()

    def __contains__(self, p: Polynomial) -> bool:
        return self.member(p)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.member(g) for g in other.generators)

    def is_zero(self) -> bool:
        return not self.groebner_basis()

    def is_unit(self) -> bool:
        basis = self.groebner_basis()
        return len(basis) == 1 and basis[0].total_degree() == 0

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: "Ideal") -> "Ideal":
        if not isinstance(other, Ideal):
            return NotImplemented
        return Ideal(self.ring, _dedup(self.generators + other.generators))

    def __mul__(self, other: "Ideal") -> "Ideal":
        if not isinstance(other, Ideal):
            return NotImplemented
        products = [a * b for a in self.generators for b in other.generators]
        return Ideal(self.ring, _dedup(products))

    def __pow__(self, k: int) -> "Ideal":
        if not isinstance(k, int) or k < 0:
            raise ValueError("ideal powers take a nonnegative int")
        result = Ideal(self.ring, (self.ring.one(),))
        for _ in range(k):
            result = result * self
        return result

    # -- quotient and local membership ----------------------------------

    def quotient(self, p: Polynomial) -> "Ideal":
        """The ideal quotient (I : p) = {q : q*p in I}.

        Computed through the intersection with (p): one auxiliary variable
        t is prepended, t*I + (1-t)*(p) is intersected with the base ring
        by a block order eliminating t, and the survivors are divided by p.
        """
        if p.is_zero():
            raise ValueError("quotient by the zero polynomial")
        if p.ring.names != self.ring.names:
            raise ValueError("polynomial from a different ring")
        if not self.generators:
            return Ideal(self.ring, ())
        ext = RingContext((ELIMINATION_VARIABLE,) + self.ring.names)
        t = Polynomial.variable(ext, 0)
        lifted = [_lift(g, ext) * t for g in self.groebner_basis()]
        lifted.append((ext.one() - t) * _lift(p, ext))
        order = elimination_order()
        raw = _buchberger([_int_poly(g) for g in lifted], order.key)
        reduced = _reduced_basis(raw, order.key)
        gens = []
        for d in reduced:
            if any(e[0] for e in d):
                continue
            low = Polynomial(self.ring, {e[1:]: c for e, c in d.items()})
            q = exact_div(low, p)
            if q is None:
                raise AssertionError("intersection member not divisible by p")
            gens.append(q)
        return Ideal(self.ring, gens)

    def local_member(self, p: Polynomial) -> bool:
        """Membership in the localization of I at the origin.

        Global membership is checked first.  If the ideal provably contains
        a power of every variable, localizing at the origin is lossless and
        the global answer stands.  Otherwise (I : p) is inspected for an
        element with nonzero constant term, which is a local unit.
        """
        if p.is_zero() or self.member(p):
            return True
        if self._power_of_m_inside() is not None:
            return False
        quo = self.quotient(p)
        return any(g.constant_term != 0 for g in quo.groebner_basis())

    # -- finiteness and counting ----------------------------------------

    def is_m_primary(self) -> bool:
        """True when the quotient ring is finite dimensional over Q.

        Detected on the reduced basis: the unit ideal qualifies, otherwise a
        pure power of every variable must occur among the leading terms.
        """
        return self._pure_power_degrees() is not None

    def _pure_power_degrees(self) -> tuple[int, ...] | None:
        cached = self._cache.get("pure_powers", False)
        if cached is not False:
            return cached
        basis = self.groebner_basis()
        result: tuple[int, ...] | None
        if not basis:
            result = None
        elif basis[0].total_degree() == 0:
            result = (0,) * self.ring.arity
        else:
            arity = self.ring.arity
            degs = [None] * arity
            for g in basis:
                lm = g.leading_monomial()
                hot = [i for i, e in enumerate(lm) if e]
                if len(hot) == 1:
                    i = hot[0]
                    if degs[i] is None or lm[hot[0]] < degs[i]:
                        degs[i] = lm[hot[0]]
            result = None if any(d is None for d in degs) else tuple(degs)
        self._cache["pure_powers"] = result
        return result

    def colength(self) -> int:
        """dim_Q of the quotient ring, counting standard monomials."""
        degs = self._pure_power_degrees()
        if degs is None:
            raise InfiniteColengthError("infinite colength")
        basis = self.groebner_basis()
        if basis and basis[0].total_degree() == 0:
            return 0
        lts = [g.leading_monomial() for g in basis]
        count = 0
        for e in _box(degs):
            if not any(_divides(lt, e) for lt in lts):
                count += 1
        return count

    def _power_of_m_inside(self) -> int | None:
        """An N with m^N inside I, or None when no such N exists.

        Searches for a pure power of each variable inside the ideal; the
        nilpotency degree of the quotient bounds the search, so failure is
        a proof of absence.
        """
        cached = self._cache.get("m_power", False)
        if cached is not False:
            return cached
        result = self._compute_power_of_m()
        self._cache["m_power"] = result
        return result

    def _compute_power_of_m(self) -> int | None:
        degs = self._pure_power_degrees()
        if degs is None:
            return None
        if degs == (0,) * self.ring.arity:
            return 0
        bound = self.colength() + 1
        total = 1
        for i, start in enumerate(degs):
            found = None
            for k in range(start, bound + 1):
                e = tuple(k if j == i else 0 for j in range(self.ring.arity))
                if self.member(Polynomial.monomial(self.ring, e)):
                    found = k
                    break
            if found is None:
                return None
            total += found - 1
        return total


def _dedup(gens: Iterable[Polynomial]) -> list[Polynomial]:
    seen = set()
    out = []
    for g in gens:
        if g.is_zero() or g in seen:
            continue
        seen.add(g)
        out.append(g)
    return out


def _lift(p: Polynomial, ext: RingContext) -> Polynomial:
    return Polynomial(ext, {(0,) + e: c for e, c in p.items()})


def _box(degs: tuple[int, ...]) -> Iterator[Exponent]:
    if not degs:
        yield ()
        return
    for first in range(degs[0]):
        for rest in _box(degs[1:]):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# colengths at the origin


def local_colength(ideal: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP):
    """dim_Q of the localized quotient at the origin.

    Returns an int, or INFINITE when the quotient is provably infinite
    dimensional (certified here for homogeneous ideals).  Non-homogeneous
    inputs that fail to stabilize below the cap raise DegreeCapExceeded.
    """
    if not ideal.generators:
        return INFINITE
    if ideal.is_unit():
        return 0
    if ideal._power_of_m_inside() is not None:
        return ideal.colength()
    if all(g.is_homogeneous() for g in ideal.generators):
        # A homogeneous ideal has a conical zero locus: finite at the
        # origin exactly when finite overall, and that case was handled.
        return INFINITE
    ring = ideal.ring
    base = ideal.groebner_basis()
    for n in range(1, degree_cap + 1):
        cut = Ideal(
            ring,
            list(base)
            + [Polynomial.monomial(ring, e) for e in _exponents_of_degree(ring.arity, n + 1)],
        )
        gb = _groebner_with_prefix(cut, len(base))
        if all(
            _nf_fraction(Polynomial.monomial(ring, e), gb, GREVLEX).is_zero()
            for e in _exponents_of_degree(ring.arity, n)
        ):
            return Ideal(ring, list(gb)).colength()
    raise DegreeCapExceeded(f"colength at the origin not stabilized by degree {degree_cap}")


def _groebner_with_prefix(ideal: Ideal, prefix: int) -> tuple[Polynomial, ...]:
    cached = ideal._cache.get(GREVLEX.name)
    if cached is not None:
        return cached
    ints = [_int_poly(g) for g in ideal.generators]
    raw = _buchberger(ints, GREVLEX.key, known_prefix=prefix)
    basis = tuple(Polynomial(ideal.ring, d) for d in _reduced_basis(raw, GREVLEX.key))
    ideal._cache[GREVLEX.name] = basis
    return basis


def quotient_dimension(big: Ideal, small: Ideal, degree_cap: int = DEFAULT_DEGREE_CAP) -> int:
    """dim_Q (big/small) for nested ideals small inside big, at the origin.

    Both colengths are taken at the origin; for a pair of m-primary ideals
    this is the plain colength difference.
    """
    if not big.contains_ideal(small):
        raise ValueError("quotient_dimension needs the second ideal inside the first")
    if small.contains_ideal(big):
        return 0
    a = local_colength(big, degree_cap)
    b = local_colength(small, degree_cap)
    if a == INFINITE or b == INFINITE:
        raise InfiniteColengthError("quotient of a pair with infinite colength")
    return b - a
