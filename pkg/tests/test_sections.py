"""Rational sections, differential operators, derivative ideals, descent."""

from fractions import Fraction

import pytest

from singulens.ideals import Ideal, maximal_ideal
from singulens.invariants import WeightSystem, jacobian_ideal
from singulens.polyring import Polynomial, parse
from singulens.sections import (
    DescentStep,
    DiffOp,
    RationalSection,
    euler_check,
    euler_descent_witness,
    generation_descent,
    jk_ideal,
)

from conftest import random_polynomial

CASES = 220

QUARTER = WeightSystem((Fraction(1, 4), Fraction(1, 4), Fraction(1, 4)))


def _random_section(rng, ring, base):
    numerator = random_polynomial(rng, ring, max_terms=3, max_degree=3, coeff_bound=5)
    return RationalSection(base, numerator, rng.randint(0, 2))


def test_construction_and_normalization(ring, P):
    f = P("x^4 + y^4 + z^4")
    s = RationalSection(f, f * P("x"), 2)
    assert s == RationalSection(f, P("x"), 1)
    assert RationalSection(f, f, 1) == RationalSection(f, P("1"), 0)
    zero = RationalSection(f, P("0"), 3)
    assert zero.pole == 0 and zero.is_zero()
    assert RationalSection.reciprocal_power(f, 2).pole == 2
    with pytest.raises(ValueError):
        RationalSection(P("0"), P("x"), 1)
    with pytest.raises(ValueError):
        RationalSection(f, P("x"), -1)


def test_normalization_respects_arithmetic(rng, ring):
    f = parse("x^4 + y^4 + z^4", ring)
    for _ in range(60):
        p = random_polynomial(rng, ring, max_terms=3, max_degree=3, allow_zero=False)
        m = rng.randint(0, 2)
        assert RationalSection(f, f * p, m + 1) == RationalSection(f, p, m)


def test_frozen_derivatives(ring, P):
    f = P("x^4 + y^4 + z^4")
    inv = RationalSection.reciprocal_power(f)
    d = inv.derive("x")
    assert d == RationalSection(f, P("-4*x^3"), 2)
    # constant section: zero derivative
    assert RationalSection(f, f, 1).derive("y").is_zero()
    # polynomial sections derive termwise
    assert RationalSection(f, P("x^2*y"), 0).derive("x") == RationalSection(
        f, P("2*x*y"), 0
    )


def test_euler_operator_extracts_perturbation(ring, P):
    f = P("x^4 + y^4 + z^4 + x*y^2*z^2")
    inv = RationalSection.reciprocal_power(f)
    total = RationalSection(f, P("0"), 0)
    for name in ("x", "y", "z"):
        total = total + inv.derive(name) * P(name)
    applied = -(total + inv * 4)
    assert applied == RationalSection(f, P("x*y^2*z^2"), 2)


def test_section_str(ring, P):
    f = P("x^4 + y^4 + z^4")
    assert str(RationalSection(f, P("x"), 1)) == "(x) / (x^4 + y^4 + z^4)"
    assert str(RationalSection(f, P("x"), 2)) == "(x) / (x^4 + y^4 + z^4)^2"
    assert str(RationalSection(f, P("x + y"), 0)) == "x + y"


def test_arithmetic_laws(rng, ring):
    done = 0
    while done < CASES:
        base = random_polynomial(
            rng, ring, max_terms=2, max_degree=2, coeff_bound=4, allow_zero=False
        )
        s = _random_section(rng, ring, base)
        t = _random_section(rng, ring, base)
        u = _random_section(rng, ring, base)
        assert (s + t) + u == s + (t + u)
        assert s + t == t + s
        assert s * (t + u) == s * t + s * u
        assert (s - s).is_zero()
        p = random_polynomial(rng, ring, max_terms=2, max_degree=2)
        assert s + p == s + RationalSection(base, p, 0)
        assert s * 3 == s + s + s
        done += 1


def test_mismatched_bases_rejected(ring, P):
    a = RationalSection(P("x"), P("1"), 1)
    b = RationalSection(P("y"), P("1"), 1)
    with pytest.raises(ValueError):
        a + b
    with pytest.raises(ValueError):
        a * b
    with pytest.raises(TypeError):
        a + "nope"


def test_leibniz_rule_for_sections(rng, ring):
    done = 0
    while done < CASES:
        base = random_polynomial(
            rng, ring, max_terms=2, max_degree=3, coeff_bound=5, allow_zero=False
        )
        s = _random_section(rng, ring, base)
        p = random_polynomial(rng, ring, max_terms=3, max_degree=3, coeff_bound=5)
        i = rng.randrange(3)
        left = (s * p).derive(i)
        right = s * p.partial_derivative(i) + s.derive(i) * p
        assert left == right
        done += 1


def test_mixed_partials_commute(rng, ring):
    for _ in range(CASES):
        base = random_polynomial(
            rng, ring, max_terms=2, max_degree=2, coeff_bound=4, allow_zero=False
        )
        s = _random_section(rng, ring, base)
        i = rng.randrange(3)
        j = rng.randrange(3)
        assert s.derive(i).derive(j) == s.derive(j).derive(i)


def test_diffop_basics(ring, P):
    f = P("x^4 + y^4 + z^4")
    s = RationalSection.reciprocal_power(f)
    identity = DiffOp.identity(ring)
    assert identity.apply(s) == s
    dx = DiffOp.partial(ring, "x")
    assert dx.apply(s) == s.derive("x")
    assert dx.order == 1 and identity.order == 0
    # normal ordering: the coefficient multiplies after differentiation
    op = dx * P("x")
    assert op.apply(s) == s.derive("x") * P("x")
    assert str(DiffOp.partial(ring, "x", 2) * P("3")) == "(3)*d_x^2"
    assert str(identity - identity) == "0"
    merged = dx + dx
    assert merged == DiffOp.partial(ring, "x") * 2


def test_diffop_linearity(rng, ring):
    for _ in range(100):
        base = random_polynomial(
            rng, ring, max_terms=2, max_degree=2, coeff_bound=4, allow_zero=False
        )
        s = _random_section(rng, ring, base)
        ops = []
        for _ in range(2):
            terms = []
            for _ in range(rng.randint(1, 3)):
                coeff = random_polynomial(rng, ring, max_terms=2, max_degree=2)
                beta = tuple(rng.randint(0, 1) for _ in range(3))
                terms.append((coeff, beta))
            ops.append(DiffOp(ring, terms))
        a, b = ops
        assert (a + b).apply(s) == a.apply(s) + b.apply(s)
        assert (a - b).apply(s) == a.apply(s) - b.apply(s)
        assert (a * 2).apply(s) == a.apply(s) * 2


def test_jk_order_zero_recovers_the_ideal(ring, P):
    f = P("x^4 + y^4 + z^4")
    jac = jacobian_ideal(f)
    assert jk_ideal(f, jac, 0).generators == jac.generators
    assert jk_ideal(f, maximal_ideal(ring), 0).generators == (P("x"), P("y"), P("z"))


def test_jk_generator_count_and_dedup(ring, P):
    witness = P("x^4 + y^4 + z^4 + x*y^2*z^2")
    j1 = jk_ideal(witness, maximal_ideal(ring), 1)
    assert len(j1.generators) == 12
    doubled = Ideal(ring, [P("x"), P("x")])
    assert jk_ideal(witness, doubled, 0).generators == (P("x"),)


def test_jk_scaling_chain(rng, ring):
    """f times each order-(k-1) generator lands in the order-k ideal."""
    polys = [
        parse("x^4 + y^4 + z^4", ring),
        parse("x^4 + y^4 + z^4 + x*y^2*z^2", ring),
        parse("x^2*y + y^3 + z^4", ring),
    ]
    combos = 0
    for f in polys:
        m = maximal_ideal(ring)
        ladder = [jk_ideal(f, m, k) for k in range(4)]
        for k in range(1, 4):
            lower, upper = ladder[k - 1], ladder[k]
            for g in lower.generators:
                assert upper.member(f * g)
            for _ in range(24):
                combo = ring.zero()
                for g in lower.generators:
                    if rng.random() < 0.5:
                        combo = combo + g * random_polynomial(
                            rng, ring, max_terms=2, max_degree=2, coeff_bound=3
                        )
                assert upper.member(f * combo)
                combos += 1
    assert combos >= 200


def test_euler_check(ring, P):
    assert euler_check(
        P("x^3 + y^3 + z^3"),
        WeightSystem((Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))),
    )
    assert euler_check(
        P("x^2 + y^3 + z^5"),
        WeightSystem((Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))),
    )
    assert euler_check(
        P("x^2*y + y^3 + z^4"),
        WeightSystem((Fraction(1, 3), Fraction(1, 3), Fraction(1, 4))),
    )
    assert not euler_check(P("x^4 + y^4 + z^4 + x*y^2*z^2"), QUARTER)
    assert not euler_check(
        P("x^4 + y^4 + z^4"),
        WeightSystem((Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))),
    )
    with pytest.raises(ValueError):
        euler_check(P("x^4 + y^4 + z^4"), WeightSystem((Fraction(1, 4),)))


def test_single_descent_step_frozen(ring, P):
    f = P("x^4 + y^4 + z^4")
    chain = generation_descent(f, QUARTER, 0)
    assert len(chain) == 1
    step = chain.steps[0]
    assert step.u == (0, 0, 0)
    assert step.scale == Fraction(-4)
    assert step.replay(f)
    # the identity the step certifies, assembled by hand:
    # 1/f = -(d_x(x/f) + d_y(y/f) + d_z(z/f))
    total = RationalSection(f, P("0"), 0)
    for name in ("x", "y", "z"):
        total = total + RationalSection(f, P(name), 1).derive(name)
    assert -total == RationalSection.reciprocal_power(f)
    # and through operator application
    by_op = RationalSection(f, P("0"), 0)
    for name in ("x", "y", "z"):
        by_op = by_op + DiffOp.partial(ring, name).apply(
            RationalSection(f, P(name), 1)
        )
    assert by_op * (-1) == RationalSection.reciprocal_power(f)


def test_descent_chain_level_one(ring, P):
    f = P("x^4 + y^4 + z^4")
    chain = generation_descent(f, QUARTER, 1)
    # targets are the monomials of total degree at most four
    assert len(chain) == 35
    assert chain.replay()
    d = chain.to_dict()
    assert d["level"] == 1
    assert all(entry["verified"] for entry in d["steps"])


def test_chain_orders_steps_for_induction(ring, P):
    cases = [
        (parse("x^4 + y^4 + z^4", ring), QUARTER, 2),
        (
            parse("x^2*y + y^3 + z^4", ring),
            WeightSystem((Fraction(1, 3), Fraction(1, 3), Fraction(1, 4))),
            1,
        ),
    ]
    for f, weights, k in cases:
        chain = generation_descent(f, weights, k)
        assert chain.replay()
        seen: set[tuple[int, ...]] = set()
        for step in chain.steps:
            for consumed in step.inputs():
                assert weights.rho(consumed) >= k + 1 or consumed in seen
            seen.add(step.u)


def test_base_case_errors(ring, P):
    f = P("x^4 + y^4 + z^4")
    with pytest.raises(ValueError, match="equals k \\+ 1, scale undefined"):
        euler_descent_witness(f, QUARTER, (1, 0, 0), 0)
    with pytest.raises(ValueError, match="exceeds k \\+ 1, no rewriting needed"):
        euler_descent_witness(f, QUARTER, (2, 0, 0), 0)
    with pytest.raises(ValueError, match="Euler identity"):
        euler_descent_witness(
            f, WeightSystem((Fraction(1, 3), Fraction(1, 3), Fraction(1, 3))), (0, 0, 0), 0
        )
    with pytest.raises(ValueError, match="level"):
        euler_descent_witness(f, QUARTER, (0, 0, 0), -1)
    with pytest.raises(ValueError, match="bad exponent"):
        euler_descent_witness(f, QUARTER, (0, 0), 0)


def test_step_serialization(ring, P):
    f = P("x^4 + y^4 + z^4")
    step = euler_descent_witness(f, QUARTER, (0, 0, 0), 0)
    d = step.to_dict()
    assert d["u"] == [0, 0, 0]
    assert d["scale"] == "-4"
    assert d["operator"] == [
        {"variable_index": 0, "coefficient": "-1"},
        {"variable_index": 1, "coefficient": "-1"},
        {"variable_index": 2, "coefficient": "-1"},
    ]
    assert d["verified"] is True


def test_replay_detects_tampering(ring, P):
    f = P("x^4 + y^4 + z^4")
    good = euler_descent_witness(f, QUARTER, (0, 0, 0), 0)
    bad = DescentStep(u=good.u, level=good.level, scale=good.scale + 1, weights=good.weights)
    assert not bad.replay(f)
