"""Command line surface: parse inputs, dispatch computations, render reports.

Every subcommand accepts the same configuration flags.  A positional
input is either a polynomial expression or a path to a corpus file with
one polynomial per line, annotated with expected verdicts:

    <polynomial> ; key=value,key=value,...     ('#' starts a comment)

Exit codes are a stable contract: 0 for success, 1 for a failed
certificate, failed expectation, or computation that cannot run on the
given input, 2 for usage and syntax errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .analyzer import (
    AnalysisReport,
    analyze,
    counterexample_suite,
)
from .genus import classify, compute_genus
from .ideals import (
    DEFAULT_DEGREE_CAP,
    INFINITE,
    DegreeCapExceeded,
    Ideal,
    InfiniteColengthError,
    maximal_ideal,
)
from .invariants import find_weights, is_quasi_homogeneous, milnor_number, tjurina_number
from .polyring import MonomialOrder, ParseError, Polynomial, RingContext, parse
from .sections import generation_descent, jk_ideal

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2

DEGREE_CAP_ENV = "SINGULENS_DEGREE_CAP"


@dataclass(frozen=True)
class Config:
    """Per-invocation settings shared by all subcommands."""

    variables: tuple[str, ...] = ("x", "y", "z")
    order: str = "grevlex"
    max_level: int = 3
    degree_cap: int = DEFAULT_DEGREE_CAP
    json_output: bool = False
    seed: int | None = None

    def ring(self) -> RingContext:
        return RingContext(self.variables)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singulens",
        description=(
            "Invariants of hypersurface singularities: Milnor and Tjurina "
            "numbers, quasi-homogeneity, reduced genus, and certified "
            "length bounds for the localization module."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(sp: argparse.ArgumentParser, needs_input: bool = True) -> None:
        sp.add_argument(
            "--vars",
            default="x,y,z",
            help="comma-separated variable names (default x,y,z)",
        )
        sp.add_argument(
            "--order",
            choices=("grevlex", "lex", "grlex"),
            default="grevlex",
            help="monomial order (default grevlex)",
        )
        sp.add_argument(
            "--max-level",
            type=int,
            default=3,
            help="deepest equality level to test (default 3, minimum 1)",
        )
        sp.add_argument(
            "--degree-cap",
            type=int,
            default=None,
            help=(
                "colength search cap (default 40, minimum 10; env "
                f"{DEGREE_CAP_ENV} overrides the default)"
            ),
        )
        sp.add_argument("--json", action="store_true", help="emit a JSON document")
        sp.add_argument("--seed", type=int, default=None, help="shuffle seed")
        if needs_input:
            sp.add_argument(
                "input",
                metavar="POLY_OR_FILE",
                help="polynomial expression, or path to a corpus file",
            )

    add_common(sub.add_parser("analyze", help="full analysis report"))
    add_common(
        sub.add_parser(
            "counterexample",
            help="run the bundled strict-inequality witness suite",
        ),
        needs_input=False,
    )
    add_common(sub.add_parser("invariants", help="Milnor, Tjurina, quasi-homogeneity"))
    add_common(sub.add_parser("genus", help="classification and reduced genus"))
    add_common(
        sub.add_parser("gb", help="reduced Groebner basis of comma-separated generators")
    )
    membership = sub.add_parser(
        "membership", help="ideal membership, global and local at the origin"
    )
    membership.add_argument(
        "--ideal", required=True, help="comma-separated ideal generators"
    )
    add_common(membership)
    jk = sub.add_parser("jk", help="order-k numerator ideal generators")
    jk.add_argument("--k", type=int, default=1, help="derivative order bound (default 1)")
    jk.add_argument(
        "--ideal",
        default=None,
        help="comma-separated ideal generators (default: all variables)",
    )
    add_common(jk)
    descent = sub.add_parser(
        "descent", help="certified weighted homogeneous rewriting chain"
    )
    descent.add_argument("--k", type=int, default=0, help="level (default 0)")
    add_common(descent)
    return parser


def _config_from_args(args, parser: argparse.ArgumentParser) -> Config:
    names = tuple(v.strip() for v in args.vars.split(","))
    if not names or any(not v for v in names):
        parser.error("--vars needs a nonempty comma-separated list of names")
    if len(set(names)) != len(names):
        parser.error("--vars names must be distinct")
    if args.max_level < 1:
        parser.error("--max-level must be at least 1")
    cap = args.degree_cap
    if cap is None:
        env = os.environ.get(DEGREE_CAP_ENV)
        if env is not None:
            try:
                cap = int(env)
            except ValueError:
                parser.error(f"{DEGREE_CAP_ENV} must be an integer, got {env!r}")
        else:
            cap = DEFAULT_DEGREE_CAP
    if cap < 10:
        parser.error("--degree-cap must be at least 10")
    return Config(
        variables=names,
        order=args.order,
        max_level=args.max_level,
        degree_cap=cap,
        json_output=args.json,
        seed=args.seed,
    )


def _parse_poly(text: str, ring: RingContext) -> Polynomial:
    return parse(text, ring)


def _parse_generators(text: str, ring: RingContext) -> list[Polynomial]:
    parts = [p.strip() for p in text.split(",")]
    if not any(parts):
        raise ParseError("empty generator list", 0)
    return [parse(p, ring) for p in parts if p]


def _emit(document: dict, config: Config, text: str) -> None:
    if config.json_output:
        print(json.dumps(document, indent=2, sort_keys=False))
    else:
        print(text)


# ---------------------------------------------------------------------------
# corpus handling


def load_corpus(text: str) -> list[tuple[str, dict[str, str]]]:
    """Parse corpus lines into (polynomial text, annotation map) pairs."""
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        poly_text, _, annotation_text = line.partition(";")
        annotations: dict[str, str] = {}
        for item in annotation_text.split(","):
            item = item.strip()
            if not item:
                continue
            key, sep, value = item.partition("=")
            if not sep:
                raise ValueError(f"bad corpus annotation {item!r}")
            annotations[key.strip()] = value.strip()
        entries.append((poly_text.strip(), annotations))
    return entries


def bundled_corpus_text() -> str:
    from importlib import resources

    return (
        resources.files("singulens").joinpath("data/corpus.txt").read_text()
    )


_KNOWN_ANNOTATIONS = {
    "name", "mu", "tau", "qh", "class", "g", "lc", "bound", "level", "refuted1",
}


def _number_str(v) -> str:
    if v is None:
        return "none"
    return "infinite" if v == INFINITE else str(int(v))


def _bool_str(v) -> str:
    if v is None:
        return "none"
    return "true" if v else "false"


def check_annotations(report: AnalysisReport, annotations: dict[str, str]) -> list[str]:
    """Compare a report against corpus expectations; return mismatch texts."""
    mismatches: list[str] = []

    def expect(key: str, actual: str) -> None:
        stated = annotations.get(key)
        if stated is not None and stated != actual:
            mismatches.append(f"{key}: expected {stated}, computed {actual}")

    for key in annotations:
        if key not in _KNOWN_ANNOTATIONS:
            mismatches.append(f"unknown annotation key {key!r}")
    expect("mu", _number_str(report.mu))
    expect("tau", _number_str(report.tau))
    expect("qh", _bool_str(None if report.qh is None else report.qh.quasi_homogeneous))
    cls = report.singularity_class
    expect("class", "none" if cls is None else cls.tag)
    expect("g", "none" if report.genus is None else str(report.genus.g))
    expect("lc", _bool_str(None if report.genus is None else report.genus.log_canonical))
    expect("bound", "none" if report.bound is None else str(report.bound))
    if report.equality is None:
        level = "none"
    elif report.equality.status == "proven_at_level":
        level = str(report.equality.level)
    elif report.equality.status == "proven_by_descent":
        level = "descent"
    else:
        level = "unknown"
    expect("level", level)
    expect(
        "refuted1",
        _bool_str(None if report.equality is None else report.equality.refuted_at_level_one),
    )
    return mismatches


# ---------------------------------------------------------------------------
# rendering


def _render_report(report: AnalysisReport) -> str:
    lines = [f"input: {report.input_text}"]
    lines.append(
        "ring: Q[" + ",".join(report.variables) + f"] ({report.order_name})"
    )
    lines.append(
        "screen: isolated="
        + _bool_str(report.screen.isolated)
        + " jacobian-m-primary="
        + _bool_str(report.screen.jacobian_m_primary)
    )
    qh = report.qh
    lines.append(
        f"invariants: mu={_number_str(report.mu)} tau={_number_str(report.tau)}"
        + (
            ""
            if qh is None
            else f" quasi-homogeneous={_bool_str(qh.quasi_homogeneous)}"
        )
    )
    if qh is not None and qh.witness is not None:
        lines.append(f"  weights: {qh.witness}")
    if qh is not None and qh.obstruction is not None:
        lines.append(f"  obstruction: {qh.obstruction}")
    cls = report.singularity_class
    if cls is not None:
        extra = ""
        if cls.is_ordinary:
            extra = f" (multiplicity {cls.ordinary_multiplicity})"
        lines.append(f"class: {cls.tag}{extra}")
        if cls.weights is not None:
            lines.append(f"  weights: {cls.weights}")
    if report.genus is not None:
        genus = report.genus
        lines.append(
            f"genus: g={genus.g} log-canonical={_bool_str(genus.log_canonical)}"
            f" [{genus.provenance}]"
        )
        lines.append(
            "  i0  = (" + ", ".join(str(p) for p in genus.multiplier.generators) + ")"
        )
        lines.append(
            "  adj = (" + ", ".join(str(p) for p in genus.adjoint.generators) + ")"
        )
    if report.bound is not None:
        lines.append(f"length: lower bound {report.bound}; {report.equality.label()}")
    for cert in report.certificates:
        mark = "PASS" if cert.verdict else "FAIL"
        lines.append(f"certificate {cert.name}: {mark}  {cert.statement}")
    lines.append(f"conclusion: {report.conclusion}")
    if report.citations:
        lines.append("citations: " + "; ".join(report.citations))
    for note in report.notes:
        lines.append(f"note: {note}")
    return "\n".join(lines)


# ---------------------------------------------------------------------------
# subcommands


def cmd_analyze(args, config: Config) -> int:
    ring = config.ring()
    if os.path.isfile(args.input):
        with open(args.input, encoding="utf-8") as handle:
            entries = load_corpus(handle.read())
        documents = []
        blocks = []
        failures = 0
        for poly_text, annotations in entries:
            f = _parse_poly(poly_text, ring)
            report = analyze(f, config.max_level, config.degree_cap)
            mismatches = check_annotations(report, annotations)
            failures += bool(mismatches)
            name = annotations.get("name", poly_text)
            documents.append(
                {
                    "name": name,
                    "report": report.to_dict(),
                    "expected": annotations,
                    "mismatches": mismatches,
                }
            )
            status = "ok" if not mismatches else "MISMATCH"
            block = [f"[{status}] {name}: {poly_text}"]
            block.extend(f"    {m}" for m in mismatches)
            blocks.append("\n".join(block))
        summary = f"{len(entries) - failures}/{len(entries)} corpus entries match"
        _emit(
            {"entries": documents, "summary": summary},
            config,
            "\n".join(blocks + [summary]),
        )
        return EXIT_FAIL if failures else EXIT_OK
    f = _parse_poly(args.input, ring)
    report = analyze(f, config.max_level, config.degree_cap)
    _emit(report.to_dict(), config, _render_report(report))
    return EXIT_OK


def cmd_counterexample(args, config: Config) -> int:
    report = counterexample_suite(degree_cap=config.degree_cap, seed=config.seed)
    _emit(report.to_dict(), config, _render_report(report))
    return EXIT_OK if report.all_certificates_pass() else EXIT_FAIL


def cmd_invariants(args, config: Config) -> int:
    ring = config.ring()
    f = _parse_poly(args.input, ring)
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        mu = milnor_number(f, config.degree_cap)
        tau = tjurina_number(f, config.degree_cap)
        qh = None
        if mu != INFINITE:
            try:
                qh = is_quasi_homogeneous(f, config.degree_cap)
            except ValueError:
                qh = None
    document = {
        "input": str(f),
        "ring": {"variables": list(config.variables), "order": config.order},
        "invariants": {
            "mu": "infinite" if mu == INFINITE else int(mu),
            "tau": "infinite" if tau == INFINITE else int(tau),
            "qh": (
                None
                if qh is None
                else {
                    "quasi_homogeneous": qh.quasi_homogeneous,
                    "witness_weights": (
                        None if qh.witness is None else [str(w) for w in qh.witness]
                    ),
                    "obstruction": (
                        None if qh.obstruction is None else str(qh.obstruction)
                    ),
                }
            ),
        },
    }
    lines = [f"mu = {_number_str(mu)}", f"tau = {_number_str(tau)}"]
    if qh is not None:
        lines.append(f"quasi-homogeneous: {_bool_str(qh.quasi_homogeneous)}")
        if qh.witness is not None:
            lines.append(f"weights: {qh.witness}")
        if qh.obstruction is not None:
            lines.append(f"obstruction: {qh.obstruction}")
    _emit(document, config, "\n".join(lines))
    return EXIT_OK


def cmd_genus(args, config: Config) -> int:
    ring = config.ring()
    f = _parse_poly(args.input, ring)
    cls = classify(f, config.degree_cap)
    result = compute_genus(f, cls, config.degree_cap)
    if result is None:
        print(
            "no genus route applies: germ is neither ordinary nor recognizably "
            "weighted homogeneous",
            file=sys.stderr,
        )
        return EXIT_FAIL
    document = {
        "input": str(f),
        "ring": {"variables": list(config.variables), "order": config.order},
        "class": cls.to_dict(),
        "genus": {
            "g": result.g,
            "i0": [str(p) for p in result.multiplier.generators],
            "adj": [str(p) for p in result.adjoint.generators],
            "log_canonical": result.log_canonical,
            "provenance": result.provenance,
        },
    }
    lines = [
        f"class: {cls.tag}",
        f"g = {result.g}",
        f"log canonical: {_bool_str(result.log_canonical)}",
        "i0  = (" + ", ".join(str(p) for p in result.multiplier.generators) + ")",
        "adj = (" + ", ".join(str(p) for p in result.adjoint.generators) + ")",
    ]
    _emit(document, config, "\n".join(lines))
    return EXIT_OK


def cmd_gb(args, config: Config) -> int:
    ring = config.ring()
    generators = _parse_generators(args.input, ring)
    ideal = Ideal(ring, generators)
    order = MonomialOrder.by_name(config.order)
    basis = ideal.groebner_basis(order)
    document = {
        "generators": [str(p) for p in generators],
        "order": config.order,
        "basis": [str(p) for p in basis],
    }
    _emit(document, config, "\n".join(str(p) for p in basis))
    return EXIT_OK


def cmd_membership(args, config: Config) -> int:
    ring = config.ring()
    target = _parse_poly(args.input, ring)
    ideal = Ideal(ring, _parse_generators(args.ideal, ring))
    member = ideal.member(target)
    local = member or ideal.local_member(target)
    document = {
        "target": str(target),
        "ideal": [str(p) for p in ideal.generators],
        "member": member,
        "local_member": local,
    }
    text = f"member: {_bool_str(member)}\nlocal member at origin: {_bool_str(local)}"
    _emit(document, config, text)
    return EXIT_OK


def cmd_jk(args, config: Config) -> int:
    ring = config.ring()
    if args.k < 0:
        print("--k must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    f = _parse_poly(args.input, ring)
    if args.ideal is None:
        ideal = maximal_ideal(ring)
    else:
        ideal = Ideal(ring, _parse_generators(args.ideal, ring))
    result = jk_ideal(f, ideal, args.k)
    document = {
        "input": str(f),
        "k": args.k,
        "ideal": [str(p) for p in ideal.generators],
        "generators": [str(p) for p in result.generators],
    }
    _emit(document, config, "\n".join(str(p) for p in result.generators))
    return EXIT_OK


def cmd_descent(args, config: Config) -> int:
    ring = config.ring()
    if args.k < 0:
        print("--k must be nonnegative", file=sys.stderr)
        return EXIT_USAGE
    f = _parse_poly(args.input, ring)
    weights = find_weights(f)
    if weights is None:
        print(
            "no weight system found: polynomial is not weighted homogeneous "
            "in these coordinates",
            file=sys.stderr,
        )
        return EXIT_FAIL
    chain = generation_descent(f, weights, args.k)
    verified = chain.replay()
    document = dict(chain.to_dict(), verified=verified)
    names = ring.names
    lines = [f"weights: {weights}", f"level: {args.k}", f"steps: {len(chain)}"]
    for step in chain.steps:
        u_text = _monomial_text(names, step.u)
        terms = []
        for i, name in enumerate(names):
            shifted = tuple(
                step.u[j] + (1 if j == i else 0) for j in range(len(names))
            )
            terms.append(
                f"{step.scale * step.weights[i]}*d_{name}"
                f"({_monomial_text(names, shifted)}/f^{step.level + 1})"
            )
        lines.append(f"  {u_text}/f^{step.level + 1} = " + " + ".join(terms))
    lines.append(f"verified: {_bool_str(verified)}")
    _emit(document, config, "\n".join(lines))
    return EXIT_OK if verified else EXIT_FAIL


def _monomial_text(names: tuple[str, ...], u: tuple[int, ...]) -> str:
    parts = []
    for name, e in zip(names, u):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


_HANDLERS = {
    "analyze": cmd_analyze,
    "counterexample": cmd_counterexample,
    "invariants": cmd_invariants,
    "genus": cmd_genus,
    "gb": cmd_gb,
    "membership": cmd_membership,
    "jk": cmd_jk,
    "descent": cmd_descent,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    config = _config_from_args(args, parser)
    handler = _HANDLERS[args.command]
    try:
        return handler(args, config)
    except ParseError as err:
        print(f"syntax error: {err}", file=sys.stderr)
        return EXIT_USAGE
    except (DegreeCapExceeded, InfiniteColengthError) as err:
        print(f"computation failed: {err}", file=sys.stderr)
        return EXIT_FAIL
    except (ValueError, RuntimeError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
