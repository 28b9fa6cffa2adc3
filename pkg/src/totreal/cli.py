"""Command-line interface: one subcommand per operation, JSON or text on stdout."""
from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Callable, Sequence

import sympy

from . import constructions, cyclo, padics, units
from .config import Config, ConfigError, load_config
from .errors import TotrealError
from .exactnum import FieldElement, IntPolynomial, NumberField, field_create
from .qlattice import (
    high_coverage_search, is_positive_definite, lattice_create, random_positive_definite, represent,
    represented_unit_classes,
)


class UsageError(Exception):
    """Malformed or invalid command-line input; exit status 2."""


# ---------------------------------------------------------------------------
# argument parsing helpers


def parse_polynomial(text: str) -> IntPolynomial:
    """A univariate integer polynomial such as ``x^3+x^2-2x-1``."""
    try:
        expr = sympy.parse_expr(
            text, transformations=sympy.parsing.sympy_parser.standard_transformations
            + (sympy.parsing.sympy_parser.implicit_multiplication_application, sympy.parsing.sympy_parser.convert_xor))
    except (SyntaxError, TypeError, ValueError, sympy.SympifyError) as exc:
        raise UsageError(f"cannot parse polynomial {text!r}: {exc}") from None
    symbols = sorted(expr.free_symbols, key=str)
    if len(symbols) > 1:
        raise UsageError(f"polynomial {text!r} has more than one variable")
    var = symbols[0] if symbols else sympy.Symbol("x")
    try:
        poly = sympy.Poly(expr, var)
    except sympy.PolynomialError as exc:
        raise UsageError(f"{text!r} is not a polynomial: {exc}") from None
    coeffs = poly.all_coeffs()[::-1]
    if not all(c.is_integer for c in coeffs):
        raise UsageError(f"polynomial {text!r} must have integer coefficients")
    return IntPolynomial(int(c) for c in coeffs)


def parse_field(text: str) -> NumberField:
    try:
        return field_create(parse_polynomial(text))
    except TotrealError as exc:
        raise UsageError(f"invalid field {text!r}: {exc.code}: {exc}") from None


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational {text!r}") from None


def _parse_coords(value) -> list[Fraction]:
    if isinstance(value, list):
        return [parse_rational(v) for v in value]
    return [parse_rational(value)]


def parse_element(K: NumberField, text: str) -> FieldElement:
    """Power-basis coordinates: a JSON list, a comma-separated list, or a single rational."""
    text = text.strip()
    if text.startswith("["):
        try:
            value = json.loads(text)
        except json.JSONDecodeError as exc:
            raise UsageError(f"cannot parse coordinates {text!r}: {exc}") from None
    else:
        value = text.split(",")
    coords = _parse_coords(value)
    if len(coords) > K.degree:
        raise UsageError(f"{len(coords)} coordinates given for a degree {K.degree} field")
    return K.element(coords)


def parse_gram(K: NumberField, text: str) -> list[list[FieldElement]]:
    try:
        rows = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"cannot parse Gram matrix: {exc}") from None
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise UsageError("Gram matrix must be a non-empty JSON list of rows")
    if any(len(r) != len(rows) for r in rows):
        raise UsageError("Gram matrix must be square")
    out = []
    for row in rows:
        entries = []
        for v in row:
            coords = _parse_coords(v)
            if len(coords) > K.degree:
                raise UsageError(f"Gram entry {v!r} has too many coordinates")
            entries.append(K.element(coords))
        out.append(entries)
    return out


def parse_g(text: str) -> cyclo.GExpr:
    """``g(s/n)`` or ``s/n``."""
    body = text.strip()
    if body.startswith("g(") and body.endswith(")"):
        body = body[2:-1]
    a = parse_rational(body)
    return cyclo.g_element(a.numerator, a.denominator)


def parse_g_list(text: str) -> list[cyclo.GExpr]:
    return [parse_g(t) for t in text.replace(",", " ").split()]


def _embedding(K: NumberField, index: int | None) -> int | None:
    if index is not None and not 0 <= index < K.degree:
        raise UsageError(f"embedding index must lie in [0, {K.degree})")
    return index


def _interval_json(lo: Fraction, hi: Fraction) -> list[str]:
    return [str(lo), str(hi)]


# ---------------------------------------------------------------------------
# subcommands; each returns a JSON-serializable object


def cmd_field_info(args, cfg: Config):
    K = parse_field(args.field)
    return {
        "minpoly": K.minpoly.to_json(),
        "degree": K.degree,
        "discriminant": str(K.discriminant),
        "embeddings": [_interval_json(*e.enclosure(cfg.default_precision_bits)) for e in K.embeddings],
        "principal_embedding": K.principal_embedding,
    }


def cmd_g(args, cfg: Config):
    ge = cyclo.g_element(args.s, args.n)
    out = ge.to_json()
    out["expr"] = str(ge)
    out["interval"] = _interval_json(*ge.value.enclosure(cfg.default_precision_bits))
    out["is_unit"] = cyclo.is_unit_g(ge.s, ge.n)
    return out


def cmd_classify_small(args, cfg: Config):
    K = parse_field(args.field)
    alpha = parse_element(K, args.alpha)
    n, s = cyclo.classify_small(alpha)
    out = {"n": n, "s": s, "expr": str(cyclo.g_element(s, n)) + "^2"}
    if args.case:
        out["case"] = cyclo.classify_square_case(K, alpha).value
    return out


def cmd_gamma(args, cfg: Config):
    K = parse_field(args.field)
    return cyclo.gamma(K, _embedding(K, args.embedding)).to_json()


def cmd_units(args, cfg: Config):
    return units.tp_unit_square_classes(args.D).to_json()


def cmd_represent(args, cfg: Config):
    K = parse_field(args.field)
    L = lattice_create(K, parse_gram(K, args.gram))
    alpha = parse_element(K, args.alpha)
    if not is_positive_definite(L):
        raise UsageError("Gram matrix is not positive definite")
    w = represent(L, alpha, args.budget or cfg.enumeration_budget)
    return {
        "alpha": alpha.to_json(),
        "outcome": "Represented" if w is not None else "Exhausted",
        "witness": w.to_json() if w is not None else None,
    }


def _rng(args, cfg: Config) -> random.Random:
    return random.Random(args.seed if args.seed is not None else cfg.seed)


def cmd_verify_bound(args, cfg: Config):
    report = units.tp_unit_square_classes(args.D)
    K = report.field
    rng = _rng(args, cfg)
    budget = args.budget or cfg.enumeration_budget
    house = parse_rational(args.house_bound)
    counts = []
    applicable = None
    for _ in range(args.trials):
        L = random_positive_definite(K, args.rank, house, rng)
        cov = represented_unit_classes(L, report, budget, applicable)
        applicable = cov.bound_n_applicable
        counts.append(cov.count)
    return {
        "D": args.D,
        "rank": args.rank,
        "trials": args.trials,
        "seed": args.seed if args.seed is not None else cfg.seed,
        "class_count": report.class_count,
        "bound_2n_minus_2": 2 * args.rank - 2,
        "bound_n_applicable": applicable,
        "max_represented": max(counts, default=0),
        "histogram": {str(c): counts.count(c) for c in sorted(set(counts))},
        "violations": 0,
    }


def cmd_coverage_search(args, cfg: Config):
    report = units.tp_unit_square_classes(args.D)
    found = high_coverage_search(report, args.rank, parse_rational(args.bound),
                                 args.budget or cfg.enumeration_budget, args.limit)
    return {
        "D": args.D,
        "rank": args.rank,
        "class_count": report.class_count,
        "lattices_checked": len(found),
        "exceeding_rank": sum(c.exceeds_rank for c in found),
        "results": [c.to_json() for c in found[:args.top]],
    }


def cmd_prime_seq(args, cfg: Config):
    return list(constructions.prime_sequence(args.count).primes)


def cmd_squarefree_scan(args, cfg: Config):
    return constructions.squarefree_triple_scan(args.limit)


def cmd_tower(args, cfg: Config):
    seq = constructions.prime_sequence(max(args.stages, 1))
    return [constructions.tower_stage(i, seq, args.base_bound, with_minpolys=not args.no_minpolys).to_json()
            for i in range(args.stages + 1)]


def cmd_house(args, cfg: Config):
    K = parse_field(args.field)
    x = parse_element(K, args.alpha)
    r = parse_rational(args.r)
    return {"alpha": x.to_json(), "r": str(r), "ordering": x.house_compare(r).value}


def cmd_member(args, cfg: Config):
    K = parse_field(args.field)
    emb = _embedding(K, args.embedding)
    inside = parse_g_list(args.inside or "")
    outside = parse_g_list(args.outside or "")
    open_set = constructions.BasicOpen(tuple(g.value for g in inside), tuple(g.value for g in outside))
    detail = []
    for ge, want in [(g, True) for g in inside] + [(g, False) for g in outside]:
        x = cyclo.in_field(K, ge, emb)
        detail.append({"expr": str(ge), "required": want, "element": x.to_json() if x is not None else None})
    return {
        "field": K.minpoly.to_json(),
        "empty": open_set.is_empty,
        "member": constructions.basic_open_membership(K, open_set, emb),
        "elements": detail,
    }


def cmd_local_represent(args, cfg: Config):
    try:
        alpha = padics.PadicInt.of(args.p, args.precision, args.alpha)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    w = padics.local_represent(args.p, alpha)
    out = w.to_json()
    out["alpha"] = str(alpha.residue)
    return out


# ---------------------------------------------------------------------------


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a non-negative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="totreal", description=__doc__)
    p.add_argument("--format", choices=("json", "text"), help="output format (default from config)")
    p.add_argument("--precision-bits", type=int, help="interval precision in bits (default from config)")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, func: Callable, help: str, aliases: Sequence[str] = ()) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help, description=help, aliases=list(aliases))
        sp.set_defaults(func=func)
        return sp

    sp = add("field-info", cmd_field_info, "degree, discriminant and isolated embeddings of a field")
    sp.add_argument("--field", required=True, help="monic minimal polynomial, e.g. 'x^2-2'")

    sp = add("g", cmd_g, "minimal polynomial and enclosure of 2cos(2 pi s/n)")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--n", type=_positive, required=True)

    sp = add("classify-small", cmd_classify_small, "write 0 < alpha < 4 as g(s/n)^2")
    sp.add_argument("--field", required=True)
    sp.add_argument("--alpha", required=True, help="power-basis coordinates, e.g. '3/2,-1/2'")
    sp.add_argument("--case", action="store_true", help="also report the square-class case of alpha")

    sp = add("gamma", cmd_gamma, "the first 2-power cosine level leaving the field")
    sp.add_argument("--field", required=True)
    sp.add_argument("--embedding", type=int)

    sp = add("units", cmd_units, "totally positive unit square classes of Q(sqrt D)")
    sp.add_argument("--D", type=int, required=True)

    sp = add("represent", cmd_represent, "decide whether a lattice represents alpha")
    sp.add_argument("--field", required=True)
    sp.add_argument("--gram", required=True, help="JSON matrix; entries are rationals or coordinate lists")
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--budget", type=_positive)

    sp = add("verify-bound", cmd_verify_bound, "random battery for the represented unit class bound")
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--rank", type=_positive, required=True)
    sp.add_argument("--trials", type=_positive, required=True)
    sp.add_argument("--seed", type=_nonnegative)
    sp.add_argument("--house-bound", default="10")
    sp.add_argument("--budget", type=_positive)

    sp = add("coverage-search", cmd_coverage_search,
             "search small Gram matrices for lattices covering many unit classes", aliases=["q42-search"])
    sp.add_argument("--D", type=int, required=True)
    sp.add_argument("--rank", type=_positive, required=True)
    sp.add_argument("--bound", default="3", help="entries have house below this bound")
    sp.add_argument("--limit", type=_positive, help="stop after this many lattices")
    sp.add_argument("--top", type=_nonnegative, default=10, help="report this many lattices in full")
    sp.add_argument("--budget", type=_positive)

    sp = add("prime-seq", cmd_prime_seq, "primes 3 mod 4 with pairwise gcd(q-1, q'-1) = 2")
    sp.add_argument("--count", type=_positive, required=True)

    sp = add("squarefree-scan", cmd_squarefree_scan, "n = 1 mod 12 with n(n+1), 3n(3n+4), (3n+3)(3n+4) squarefree")
    sp.add_argument("--limit", type=_positive, required=True)

    sp = add("tower", cmd_tower, "stages of the cosine field tower")
    sp.add_argument("--stages", type=_nonnegative, required=True)
    sp.add_argument("--base-bound", type=int, default=2)
    sp.add_argument("--no-minpolys", action="store_true", help="skip generator minimal polynomials")

    sp = add("house", cmd_house, "compare the house of alpha with a rational")
    sp.add_argument("--field", required=True)
    sp.add_argument("--alpha", required=True)
    sp.add_argument("--r", required=True)

    sp = add("member", cmd_member, "whether a field contains every --in element and no --out element")
    sp.add_argument("--field", required=True)
    sp.add_argument("--in", dest="inside", help="g-expressions such as 'g(1/7),g(2/7)'")
    sp.add_argument("--out", dest="outside")
    sp.add_argument("--embedding", type=int)

    sp = add("local-represent", cmd_local_represent, "p-adic witness for w^2+wx+x^2+y^2+z^2 = alpha")
    sp.add_argument("--p", type=int, required=True)
    sp.add_argument("--alpha", type=int, required=True)
    sp.add_argument("--precision", type=_positive, default=8, help="p-adic precision k")
    return p


def _is_flat(v) -> bool:
    return not isinstance(v, (dict, list)) or (isinstance(v, list) and not any(isinstance(e, (dict, list)) for e in v))


def _scalar_text(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, list):
        return " ".join(str(e) for e in v) if v else "[]"
    return str(v)


def _text_lines(obj, indent: str = "") -> list[str]:
    lines = []
    items = obj.items() if isinstance(obj, dict) else (("-", e) for e in obj)
    sep = ":" if isinstance(obj, dict) else ""
    for key, v in items:
        if _is_flat(v):
            lines.append(f"{indent}{key}{sep} {_scalar_text(v)}")
        else:
            lines.append(f"{indent}{key}{sep}")
            lines.extend(_text_lines(v, indent + "  "))
    return lines


def render_text(obj) -> str:
    return _scalar_text(obj) if _is_flat(obj) else "\n".join(_text_lines(obj))


def _emit_error(obj: dict, fmt: str) -> None:
    if fmt == "json":
        print(json.dumps(obj), file=sys.stderr)
    else:
        print(f"error: {obj['error']}: {obj['message']}", file=sys.stderr)


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = load_config()
        if args.format or args.precision_bits:
            cfg = Config(args.precision_bits or cfg.default_precision_bits, cfg.enumeration_budget,
                         args.format or cfg.output_format, cfg.seed)
    except ConfigError as exc:
        _emit_error({"error": "ConfigError", "message": str(exc)}, args.format or "json")
        return 2
    try:
        result = args.func(args, cfg)
    except UsageError as exc:
        _emit_error({"error": "UsageError", "message": str(exc)}, cfg.output_format)
        return 2
    except TotrealError as exc:
        _emit_error(exc.to_json(), cfg.output_format)
        return 1
    if cfg.output_format == "json":
        print(json.dumps(result, indent=2))
    else:
        print(render_text(result))
    return 0


def main() -> None:
    sys.exit(run())
