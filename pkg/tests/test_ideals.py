"""Groebner engine: bases, membership, quotients, colengths.

The reduced basis is cross-checked against an independent implementation
(sympy) on random inputs, and monomial-ideal membership in two variables
against a brute-force divisibility oracle.
"""

import threading
from fractions import Fraction

import pytest
import sympy

from singulens.ideals import (
    DegreeCapExceeded,
    INFINITE,
    Ideal,
    InfiniteColengthError,
    local_colength,
    maximal_ideal,
    maximal_ideal_power,
    quotient_dimension,
)
from singulens.polyring import GREVLEX, LEX, MonomialOrder, Polynomial, parse

from conftest import random_polynomial

CASES = 220


def _random_ideal(rng, ring, max_gens=3, **kwargs):
    count = rng.randint(1, max_gens)
    gens = [
        random_polynomial(rng, ring, allow_zero=False, **kwargs)
        for _ in range(count)
    ]
    return Ideal(ring, gens)


def test_frozen_lex_basis(ring, P):
    ideal = Ideal(ring, [P("x^2 + y^2 - 1"), P("x*y - 1")])
    basis = ideal.groebner_basis(LEX)
    assert [str(p) for p in basis] == ["y^4 - y^2 + 1", "y^3 + x - y"]


def test_unit_and_zero_ideals(ring, P):
    assert Ideal(ring, [P("2")]).is_unit()
    assert Ideal(ring, []).is_zero()
    assert Ideal(ring, [P("0")]).is_zero()
    assert Ideal(ring, [P("x"), P("x + 1")]).is_unit()


def test_membership_basics(ring, P):
    jac = Ideal(ring, [P("x^3"), P("y^3"), P("z^3")])
    assert not jac.member(P("x*y^2*z^2"))
    assert jac.member(P("x^3*y + 7*z^5"))
    assert P("x^4") in jac
    assert P("x^2*y^2*z^2") not in jac


def test_normal_form_is_canonical(rng, ring, random_poly):
    ideal = Ideal(ring, [parse("x^2 - y", ring), parse("y^2 - z", ring)])
    for _ in range(80):
        p = random_poly(rng, ring)
        r = ideal.normal_form(p)
        assert ideal.member(p - r)
        assert ideal.normal_form(r) == r


def test_reduced_basis_unique_under_permutation_and_scaling(rng, ring, random_poly):
    done = 0
    while done < CASES:
        ideal = _random_ideal(rng, ring, max_terms=3, max_degree=2, coeff_bound=5)
        reference = ideal.groebner_basis(GREVLEX)
        gens = list(ideal.generators)
        rng.shuffle(gens)
        scaled = [
            g * Fraction(rng.choice([1, 2, 3, 5, -1, -2, 7]), rng.choice([1, 2, 3]))
            for g in gens
        ]
        other = Ideal(ideal.ring, scaled)
        assert other.groebner_basis(GREVLEX) == reference
        done += 1


def test_spolynomials_reduce_to_zero(rng, ring, random_poly):
    checked = 0
    while checked < CASES:
        ideal = _random_ideal(rng, ring, max_terms=3, max_degree=2, coeff_bound=5)
        basis = ideal.groebner_basis(GREVLEX)
        for i in range(len(basis)):
            for j in range(i + 1, len(basis)):
                a, b = basis[i], basis[j]
                ea = a.leading_monomial(GREVLEX)
                eb = b.leading_monomial(GREVLEX)
                lcm = tuple(max(p, q) for p, q in zip(ea, eb))
                ma = Polynomial.monomial(ring, tuple(l - p for l, p in zip(lcm, ea)))
                mb = Polynomial.monomial(ring, tuple(l - q for l, q in zip(lcm, eb)))
                s = ma * a * (1 / a.leading_coefficient(GREVLEX)) - mb * b * (
                    1 / b.leading_coefficient(GREVLEX)
                )
                assert ideal.normal_form(s).is_zero()
                checked += 1


def test_sympy_cross_check(rng, ring, random_poly):
    symbols = sympy.symbols("x y z")

    def to_sympy(p):
        total = sympy.Integer(0)
        for exponent, coeff in p.items():
            term = sympy.Rational(coeff.numerator, coeff.denominator)
            for s, e in zip(symbols, exponent):
                term *= s**e
            total += term
        return total

    def from_sympy(expr):
        p = parse(str(expr).replace("**", "^").replace(" ", ""), ring)
        return p * (1 / p.leading_coefficient(GREVLEX))

    for _ in range(50):
        ideal = _random_ideal(rng, ring, max_terms=3, max_degree=3, coeff_bound=7)
        mine = ideal.groebner_basis(GREVLEX)
        theirs = sympy.groebner(
            [to_sympy(g) for g in ideal.generators],
            *symbols,
            order="grevlex",
        )
        converted = sorted(
            (from_sympy(e) for e in theirs.exprs),
            key=lambda p: GREVLEX.key(p.leading_monomial(GREVLEX)),
        )
        assert list(mine) == converted


def test_monomial_membership_against_divisibility_oracle(rng, ring2):
    for _ in range(CASES):
        gens = []
        for _ in range(rng.randint(1, 4)):
            e = (rng.randint(0, 4), rng.randint(0, 4))
            gens.append(Polynomial.monomial(ring2, e))
        ideal = Ideal(ring2, gens)
        target_exp = (rng.randint(0, 5), rng.randint(0, 5))
        target = Polynomial.monomial(ring2, target_exp)
        oracle = any(
            all(ge <= te for ge, te in zip(g.leading_monomial(GREVLEX), target_exp))
            for g in gens
        )
        assert ideal.member(target) == oracle


def test_ideal_operations(ring, P):
    a = Ideal(ring, [P("x")])
    b = Ideal(ring, [P("y")])
    assert (a + b).member(P("x + 3*y"))
    product = a * b
    assert product.member(P("x*y"))
    assert not product.member(P("x"))
    assert a**2 == a * a
    assert a.contains_ideal(a**3)
    assert not (a**3).contains_ideal(a)


def test_quotient_examples(ring, P):
    ideal = Ideal(ring, [P("x*y"), P("x*z")])
    q = ideal.quotient(P("x"))
    assert q.member(P("y")) and q.member(P("z"))
    assert not q.member(P("1"))
    principal = Ideal(ring, [P("x^2")])
    assert principal.quotient(P("x")).member(P("x"))


def test_quotient_generator_law(rng, ring, random_poly):
    done = 0
    while done < CASES:
        ideal = _random_ideal(rng, ring, max_terms=2, max_degree=2, coeff_bound=4)
        p = random_polynomial(
            rng, ring, max_terms=2, max_degree=2, coeff_bound=4, allow_zero=False
        )
        quotient = ideal.quotient(p)
        for q in quotient.generators:
            assert ideal.member(q * p)
            done += 1
        assert quotient.contains_ideal(ideal)


def test_local_membership_unit_complement(ring, P):
    principal = Ideal(ring, [P("x + x^2")])
    assert not principal.member(P("x"))
    assert principal.local_member(P("x"))
    assert not principal.local_member(P("y"))
    assert maximal_ideal(ring).local_member(P("x + x^2"))
    assert not maximal_ideal(ring).local_member(P("1 + x"))


def test_local_membership_matches_global_for_m_primary_ideals(rng, ring):
    jac = Ideal(ring, [parse("x^3", ring), parse("y^3", ring), parse("z^3", ring)])
    for _ in range(60):
        p = random_polynomial(rng, ring, max_terms=4, max_degree=4)
        assert jac.local_member(p) == jac.member(p)


def test_colengths_frozen(ring, P):
    assert maximal_ideal(ring).colength() == 1
    assert maximal_ideal_power(ring, 2).colength() == 4
    assert Ideal(ring, [P("x^2"), P("y^2"), P("z^2")]).colength() == 8
    assert Ideal(ring, [P("x^3"), P("y^3"), P("z^3")]).colength() == 27
    assert Ideal(ring, [P("1")]).colength() == 0
    with pytest.raises(InfiniteColengthError):
        Ideal(ring, [P("x"), P("y")]).colength()


def test_local_colength_cases(ring, P):
    assert local_colength(Ideal(ring, [P("1 + x")])) == 0
    assert local_colength(maximal_ideal(ring)) == 1
    assert local_colength(Ideal(ring, [P("x"), P("y")])) == INFINITE
    # unit multiple changes nothing locally
    shifted = Ideal(ring, [P("x*(1+x)"), P("y*(1+y)"), P("z*(1+z)")])
    assert local_colength(shifted) == 1
    # global colength can exceed the local one
    assert local_colength(Ideal(ring, [P("x + x^2"), P("y"), P("z")])) == 1


def test_local_colength_degree_cap(ring, P):
    with pytest.raises(DegreeCapExceeded):
        local_colength(Ideal(ring, [P("x + y^2")]), degree_cap=12)


def test_quotient_dimension(ring, P):
    m = maximal_ideal(ring)
    assert quotient_dimension(m, maximal_ideal_power(ring, 2)) == 3
    assert quotient_dimension(m, m) == 0
    with pytest.raises(ValueError):
        quotient_dimension(maximal_ideal_power(ring, 2), m)


def test_is_m_primary(ring, P):
    assert Ideal(ring, [P("x^3"), P("y^3"), P("z^3")]).is_m_primary()
    assert Ideal(ring, [P("1")]).is_m_primary()
    assert not Ideal(ring, [P("x"), P("y")]).is_m_primary()
    assert not Ideal(ring, [P("x*y")]).is_m_primary()


def test_groebner_cache_is_thread_safe(ring, P):
    ideal = Ideal(
        ring,
        [P("x^2*y - z^3"), P("x*z - y^2"), P("y*z^2 - x^3 + x")],
    )
    results = []

    def work():
        results.append(ideal.groebner_basis(GREVLEX))

    threads = [threading.Thread(target=work) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    assert len(results) == 8
    assert all(r == results[0] for r in results)


def test_structural_equality_and_hash(ring, P):
    a = Ideal(ring, [P("x"), P("y")])
    b = Ideal(ring, [P("x"), P("y")])
    c = Ideal(ring, [P("y"), P("x")])
    assert a == b
    assert hash(a) == hash(b)
    assert a != c  # generator order is part of the structure
    assert a.contains_ideal(c) and c.contains_ideal(a)
