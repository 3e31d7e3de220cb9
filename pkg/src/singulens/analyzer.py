"""End-to-end singularity analysis and the strict-inequality witness suite.

The analysis pipeline screens a polynomial for an isolated singular point,
computes its Milnor and Tjurina numbers, decides quasi-homogeneity,
classifies the germ, computes the reduced genus g, reports the length
lower bound g + 2, and attempts to certify equality levelwise or through
a weighted homogeneous descent chain.

A fixed witness polynomial, a quartic cone with one quintic perturbation,
is bundled together with seven independently checkable certificates.  The
suite evaluates every certificate from scratch; when all pass and the
level-one equality test is refuted, the reported conclusion is that the
module length strictly exceeds the bound, with the final Hodge-filtration
strictness step recorded as trusted rather than re-verified.
"""

from __future__ import annotations

import os
import random
import time
import warnings
from dataclasses import dataclass, field

from .genus import GenusResult, SingularityClass, classify, compute_genus
from .ideals import (
    DEFAULT_DEGREE_CAP,
    INFINITE,
    Ideal,
    maximal_ideal,
    maximal_ideal_power,
)
from .invariants import (
    QHVerdict,
    is_quasi_homogeneous,
    jacobian_ideal,
    milnor_number,
    tjurina_number,
)
from .polyring import Polynomial, RingContext, parse
from .sections import euler_check, generation_descent, jk_ideal

__all__ = [
    "AnalysisReport",
    "Certificate",
    "EqualityVerdict",
    "ScreenResult",
    "analyze",
    "counterexample_certificates",
    "counterexample_polynomial",
    "counterexample_suite",
    "equality_certificate",
    "length_bound",
    "screen_isolated",
    "COUNTEREXAMPLE_TEXT",
]

COUNTEREXAMPLE_TEXT = "x^4 + y^4 + z^4 + x*y^2*z^2"
COUNTEREXAMPLE_ENV = "SINGULENS_COUNTEREXAMPLE_POLY"

# citation anchors: stable names for the mathematical facts a verdict rests on
CITE_LOWER_BOUND = "length-lower-bound:genus-plus-two"
CITE_EQUALITY = "equality-criterion:unit-section-generation"
CITE_GENUS_ORDINARY = "genus:ordinary-blowup-ideals"
CITE_GENUS_WEIGHTED = "genus:weighted-rho-thresholds"
CITE_DESCENT = "euler-descent:weighted-rewriting"
CITE_SQH = "sqh-criterion:jacobian-obstruction"
CITE_SAITO = "quasi-homogeneity:jacobian-membership"
CITE_HODGE = "hodge-strictness:trusted-not-reverified"


@dataclass(frozen=True)
class ScreenResult:
    """Isolation screen: V(f, gradient f) = {origin} near the origin."""

    isolated: bool
    jacobian_m_primary: bool

    def to_dict(self) -> dict:
        return {
            "isolated": self.isolated,
            "jacobian_m_primary": self.jacobian_m_primary,
        }


def screen_isolated(f: Polynomial) -> ScreenResult:
    """Check that (f) + Jacobian(f) is primary for the maximal ideal.

    The extra flag records whether the Jacobian ideal alone is already
    primary (no critical locus through the origin besides the origin).
    """
    jac = jacobian_ideal(f)
    tjurina_like = Ideal(f.ring, (f,)) + jac
    return ScreenResult(
        isolated=tjurina_like.is_m_primary(),
        jacobian_m_primary=jac.is_m_primary(),
    )


def length_bound(genus: GenusResult) -> int:
    """Lower bound g + 2 for the length of the localization module."""
    return genus.g + 2


@dataclass(frozen=True)
class EqualityVerdict:
    """Outcome of the equality certification for the length bound.

    ``status`` is one of ``proven_at_level`` (f^k lies in the order-k
    numerator ideal locally for the recorded level), ``proven_by_descent``
    (a replayed weighted rewriting chain generates the unit section), or
    ``unknown_up_to`` (every level test up to the recorded level failed
    and no descent applies).
    """

    status: str
    level: int | None
    refuted_at_level_one: bool
    level_results: tuple[tuple[int, bool], ...]
    descent_steps: int | None = None

    def label(self) -> str:
        if self.status == "proven_at_level":
            return f"equality proven at level {self.level}"
        if self.status == "proven_by_descent":
            return f"equality proven by descent ({self.descent_steps} steps)"
        suffix = "; level-1 test refuted" if self.refuted_at_level_one else ""
        return f"equality unknown up to level {self.level}{suffix}"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "level": self.level,
            "refuted_at_level_one": self.refuted_at_level_one,
            "level_results": [
                {"level": k, "member": ok} for k, ok in self.level_results
            ],
            "descent_steps": self.descent_steps,
        }


def equality_certificate(
    f: Polynomial,
    multiplier: Ideal,
    max_level: int = 3,
    weights=None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> EqualityVerdict:
    """Try to certify that the length equals its lower bound.

    Levelwise: for k = 0..max_level test whether f^k lies, locally at the
    origin, in the order-k numerator ideal of the multiplier ideal.  The
    first success proves equality.  If every level fails and weights are
    supplied, a replayed level-0 descent chain proves equality for the
    weighted homogeneous case.
    """
    if max_level < 0:
        raise ValueError("maximum level must be nonnegative")
    results: list[tuple[int, bool]] = []

    def refuted() -> bool:
        return any(k == 1 and not ok for k, ok in results)

    for k in range(max_level + 1):
        jk = jk_ideal(f, multiplier, k)
        ok = jk.local_member(f**k)
        results.append((k, ok))
        if ok:
            return EqualityVerdict(
                "proven_at_level", k, refuted(), tuple(results)
            )
    if weights is not None and euler_check(f, weights):
        chain = generation_descent(f, weights, 0)
        if chain.replay():
            return EqualityVerdict(
                "proven_by_descent", None, refuted(), tuple(results), len(chain)
            )
    return EqualityVerdict("unknown_up_to", max_level, refuted(), tuple(results))


@dataclass(frozen=True)
class Certificate:
    """One named, independently checkable claim with its verdict."""

    name: str
    statement: str
    verdict: bool
    citation: str
    details: tuple[tuple[str, str], ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "statement": self.statement,
            "verdict": self.verdict,
            "citation": self.citation,
            "details": dict(self.details),
        }


@dataclass(frozen=True)
class AnalysisReport:
    """Everything the analysis pipeline established about one polynomial."""

    input_text: str
    variables: tuple[str, ...]
    screen: ScreenResult
    mu: object
    tau: object
    qh: QHVerdict | None
    singularity_class: SingularityClass | None
    genus: GenusResult | None
    bound: int | None
    equality: EqualityVerdict | None
    certificates: tuple[Certificate, ...]
    strict: bool | None
    conclusion: str
    citations: tuple[str, ...]
    notes: tuple[str, ...]
    elapsed: float
    order_name: str = "grevlex"

    def to_dict(self) -> dict:
        def number(v):
            if v is None:
                return None
            return "infinite" if v == INFINITE else int(v)

        qh = None
        if self.qh is not None:
            qh = {
                "quasi_homogeneous": self.qh.quasi_homogeneous,
                "witness_weights": (
                    None
                    if self.qh.witness is None
                    else [str(w) for w in self.qh.witness]
                ),
                "obstruction": (
                    None if self.qh.obstruction is None else str(self.qh.obstruction)
                ),
            }
        genus = None
        if self.genus is not None:
            genus = {
                "g": self.genus.g,
                "i0": [str(p) for p in self.genus.multiplier.generators],
                "adj": [str(p) for p in self.genus.adjoint.generators],
                "log_canonical": self.genus.log_canonical,
                "provenance": self.genus.provenance,
            }
        length = {
            "lower_bound": self.bound,
            "equality": None if self.equality is None else self.equality.status,
            "level": None if self.equality is None else self.equality.level,
            "refuted_at_level_one": (
                None if self.equality is None else self.equality.refuted_at_level_one
            ),
            "level_results": (
                []
                if self.equality is None
                else [
                    {"level": k, "member": ok}
                    for k, ok in self.equality.level_results
                ]
            ),
            "descent_steps": (
                None if self.equality is None else self.equality.descent_steps
            ),
            "strict": self.strict,
        }
        return {
            "input": self.input_text,
            "ring": {"variables": list(self.variables), "order": self.order_name},
            "class": (
                None
                if self.singularity_class is None
                else self.singularity_class.to_dict()
            ),
            "invariants": {
                "mu": number(self.mu),
                "tau": number(self.tau),
                "qh": qh,
            },
            "genus": genus,
            "length": length,
            "certificates": [c.to_dict() for c in self.certificates],
            "screen": self.screen.to_dict(),
            "conclusion": self.conclusion,
            "citations": list(self.citations),
            "notes": list(self.notes),
            "elapsed_seconds": round(self.elapsed, 6),
        }

    def all_certificates_pass(self) -> bool:
        return bool(self.certificates) and all(c.verdict for c in self.certificates)


def _vanishes_to_second_order(f: Polynomial) -> bool:
    if f.is_zero() or f.constant_term:
        return False
    return not any(
        f.partial_derivative(i).constant_term for i in range(f.ring.arity)
    )


def analyze(
    f: Polynomial,
    max_level: int = 3,
    degree_cap: int = DEFAULT_DEGREE_CAP,
) -> AnalysisReport:
    """Full pipeline: screen, invariants, classification, genus, bound, equality."""
    t0 = time.perf_counter()
    ring = f.ring
    notes: list[str] = []
    citations: list[str] = []
    if f.is_zero():
        raise ValueError("cannot analyze the zero polynomial")
    if f.constant_term:
        notes.append("polynomial does not vanish at the origin")

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        screen = screen_isolated(f)
        mu = milnor_number(f, degree_cap)
        tau = tjurina_number(f, degree_cap)
        qh = None
        if mu != INFINITE and _vanishes_to_second_order(f):
            qh = is_quasi_homogeneous(f, degree_cap)
            citations.append(CITE_SAITO)
            if qh.obstruction is not None:
                citations.append(CITE_SQH)

        cls = None
        genus = None
        bound = None
        equality = None
        try:
            cls = classify(f, degree_cap)
        except ValueError as err:
            notes.append(str(err))
        if cls is not None:
            if ring.arity < 3:
                notes.append(
                    "genus and length bound are stated for at least three variables; skipped"
                )
            elif cls.is_ordinary or cls.is_weighted:
                genus = compute_genus(f, cls, degree_cap)
            else:
                notes.append(
                    "germ is neither ordinary nor recognizably weighted homogeneous; "
                    "no genus route applies"
                )
        if genus is not None:
            if cls.is_ordinary:
                citations.append(CITE_GENUS_ORDINARY)
            if cls.is_weighted:
                citations.append(CITE_GENUS_WEIGHTED)
            notes.extend(genus.notes)
            bound = length_bound(genus)
            citations.append(CITE_LOWER_BOUND)
            equality = equality_certificate(
                f, genus.multiplier, max_level, cls.weights, degree_cap
            )
            citations.append(CITE_EQUALITY)
            if equality.status == "proven_by_descent":
                citations.append(CITE_DESCENT)

    if bound is None:
        conclusion = "no length bound computed"
    elif equality is not None and equality.status in (
        "proven_at_level",
        "proven_by_descent",
    ):
        conclusion = (
            f"module length equals the lower bound {bound} ({equality.label()})"
        )
    else:
        conclusion = (
            f"module length at least {bound}; {equality.label()}"
        )
    return AnalysisReport(
        input_text=str(f),
        variables=ring.names,
        screen=screen,
        mu=mu,
        tau=tau,
        qh=qh,
        singularity_class=cls,
        genus=genus,
        bound=bound,
        equality=equality,
        certificates=(),
        strict=None,
        conclusion=conclusion,
        citations=tuple(dict.fromkeys(citations)),
        notes=tuple(dict.fromkeys(notes)),
        elapsed=time.perf_counter() - t0,
    )


def counterexample_polynomial(ring: RingContext | None = None) -> Polynomial:
    """The bundled witness polynomial (environment override honored)."""
    text = os.environ.get(COUNTEREXAMPLE_ENV, COUNTEREXAMPLE_TEXT)
    if ring is None:
        ring = RingContext(("x", "y", "z"))
    return parse(text, ring)


def _split_principal(f: Polynomial) -> tuple[Polynomial, Polynomial]:
    parts = f.homogeneous_components()
    d = min(parts)
    principal = parts[d]
    return principal, f - principal


def _detail(**kwargs) -> tuple[tuple[str, str], ...]:
    return tuple((k, str(v)) for k, v in kwargs.items())


def _cert_perturbation_outside_principal_jacobian(f: Polynomial) -> Certificate:
    principal, rest = _split_principal(f)
    outside = (not rest.is_zero()) and not jacobian_ideal(principal).member(rest)
    return Certificate(
        name="C1",
        statement=(
            "the above-cone part lies outside the Jacobian ideal "
            "of the tangent cone"
        ),
        verdict=outside,
        citation=CITE_SQH,
        details=_detail(tangent_cone=principal, above_cone_part=rest),
    )


def _cert_not_quasi_homogeneous(f: Polynomial) -> Certificate:
    direct = not jacobian_ideal(f).local_member(f)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        try:
            qh = is_quasi_homogeneous(f)
            obstructed = qh.obstruction is not None and not qh.quasi_homogeneous
        except ValueError:
            obstructed = False
    return Certificate(
        name="C2",
        statement=(
            "f is not quasi-homogeneous: f lies outside its Jacobian ideal "
            "locally, and the consecutive-piece criterion certifies it"
        ),
        verdict=direct and obstructed,
        citation=CITE_SAITO,
        details=_detail(direct_nonmembership=direct, obstruction_certificate=obstructed),
    )


def _cert_ordinary_genus(f: Polynomial) -> Certificate:
    ring = f.ring
    try:
        cls = classify(f)
        genus = compute_genus(f, cls)
    except (ValueError, RuntimeError) as err:
        return Certificate(
            name="C3",
            statement="ordinary multiplicity-4 point with reduced genus 3",
            verdict=False,
            citation=CITE_GENUS_ORDINARY,
            details=_detail(error=err),
        )
    m = maximal_ideal(ring)
    m2 = maximal_ideal_power(ring, 2)
    ok = (
        cls.ordinary_multiplicity == 4
        and genus is not None
        and genus.g == 3
        and genus.multiplier.contains_ideal(m)
        and m.contains_ideal(genus.multiplier)
        and genus.adjoint.contains_ideal(m2)
        and m2.contains_ideal(genus.adjoint)
        and not genus.log_canonical
    )
    return Certificate(
        name="C3",
        statement="ordinary multiplicity-4 point with reduced genus 3",
        verdict=ok,
        citation=CITE_GENUS_ORDINARY,
        details=_detail(
            ordinary_multiplicity=cls.ordinary_multiplicity,
            genus=None if genus is None else genus.g,
        ),
    )


def _cert_f_plus_perturbation_in_j1(f: Polynomial) -> Certificate:
    ring = f.ring
    _, rest = _split_principal(f)
    j1 = jk_ideal(f, maximal_ideal(ring), 1)
    target = f + rest
    member = j1.member(target)
    combination = ring.zero()
    for i in range(ring.arity):
        combination = combination + (
            f - ring.gens()[i] * f.partial_derivative(i)
        )
    witness = combination == -target
    return Certificate(
        name="C4",
        statement=(
            "f plus its above-cone part lies in the order-1 numerator ideal, "
            "with the explicit combination sum_i (f - x_i df/dx_i) = -(f + h)"
        ),
        verdict=member and witness,
        citation=CITE_EQUALITY,
        details=_detail(global_membership=member, explicit_combination_replayed=witness),
    )


def _cert_m6_inside_j1(f: Polynomial) -> Certificate:
    ring = f.ring
    j1 = jk_ideal(f, maximal_ideal(ring), 1)
    m6 = maximal_ideal_power(ring, 6)
    ok = j1.contains_ideal(m6)
    return Certificate(
        name="C5",
        statement="every monomial of degree 6 lies in the order-1 numerator ideal",
        verdict=ok,
        citation=CITE_EQUALITY,
        details=_detail(monomial_count=len(m6.generators)),
    )


def _cert_perturbation_outside_j1_plus_m6(f: Polynomial) -> Certificate:
    ring = f.ring
    _, rest = _split_principal(f)
    j1 = jk_ideal(f, maximal_ideal(ring), 1)
    enlarged = j1 + maximal_ideal_power(ring, 6)
    ok = (not rest.is_zero()) and not enlarged.member(rest)
    return Certificate(
        name="C6",
        statement=(
            "the above-cone part stays outside the order-1 numerator ideal "
            "even after adding all degree-6 monomials"
        ),
        verdict=ok,
        citation=CITE_EQUALITY,
        details=_detail(above_cone_part=rest),
    )


def _cert_f_outside_j1_locally(f: Polynomial) -> Certificate:
    ring = f.ring
    j1 = jk_ideal(f, maximal_ideal(ring), 1)
    ok = not j1.local_member(f)
    return Certificate(
        name="C7",
        statement=(
            "f lies outside the order-1 numerator ideal locally at the origin, "
            "refuting the level-1 equality test"
        ),
        verdict=ok,
        citation=CITE_EQUALITY,
        details=_detail(local_membership=not ok),
    )


_CERTIFICATE_BUILDERS = (
    _cert_perturbation_outside_principal_jacobian,
    _cert_not_quasi_homogeneous,
    _cert_ordinary_genus,
    _cert_f_plus_perturbation_in_j1,
    _cert_m6_inside_j1,
    _cert_perturbation_outside_j1_plus_m6,
    _cert_f_outside_j1_locally,
)


def counterexample_certificates(
    f: Polynomial | None = None, seed: int | None = None
) -> tuple[Certificate, ...]:
    """Evaluate the seven witness certificates, each from scratch.

    A seed shuffles evaluation order; the result is always reported in
    name order and must not depend on the evaluation order.
    """
    if f is None:
        f = counterexample_polynomial()
    builders = list(_CERTIFICATE_BUILDERS)
    if seed is not None:
        random.Random(seed).shuffle(builders)
    certs = [build(f) for build in builders]
    certs.sort(key=lambda c: c.name)
    return tuple(certs)


def counterexample_suite(
    f: Polynomial | None = None,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    seed: int | None = None,
) -> AnalysisReport:
    """Analysis of the bundled witness plus its strictness certificates.

    Levelwise equality testing stops at level 1; the suite's point is the
    refutation there.  When every certificate passes, the conclusion is
    the strict inequality: length greater than the bound, at least 6,
    with the closing strictness argument trusted rather than re-verified.
    """
    if f is None:
        f = counterexample_polynomial()
    base = analyze(f, max_level=1, degree_cap=degree_cap)
    certs = counterexample_certificates(f, seed=seed)
    all_pass = bool(certs) and all(c.verdict for c in certs)
    refuted = base.equality is not None and base.equality.refuted_at_level_one
    strict = all_pass and refuted and base.bound is not None
    citations = list(base.citations) + [c.citation for c in certs]
    if strict:
        citations.append(CITE_HODGE)
        conclusion = (
            f"module length strictly exceeds the lower bound {base.bound}: "
            f"length at least {base.bound + 1} "
            "(closing strictness step trusted, not re-verified)"
        )
    else:
        failed = [c.name for c in certs if not c.verdict]
        conclusion = (
            "strict inequality not established"
            + (f"; failed certificates: {', '.join(failed)}" if failed else "")
        )
    return AnalysisReport(
        input_text=base.input_text,
        variables=base.variables,
        screen=base.screen,
        mu=base.mu,
        tau=base.tau,
        qh=base.qh,
        singularity_class=base.singularity_class,
        genus=base.genus,
        bound=base.bound,
        equality=base.equality,
        certificates=certs,
        strict=strict,
        conclusion=conclusion,
        citations=tuple(dict.fromkeys(citations)),
        notes=base.notes,
        elapsed=base.elapsed,
    )
