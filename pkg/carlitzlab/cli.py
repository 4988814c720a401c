import argparse
import json
import logging
import sys

from .carlitz import carlitz_coeffs, cyclotomic_poly
from .cogalois import (
    SubextSpec,
    cog_order,
    cyclic_cog_exponent,
    group_structure,
    is_radical,
    is_radical_cyclotomic,
    mu_of_fixed_field,
    purity_check,
    subext_report,
)
from .config import load_caps
from .cycfield import CycField, subgroup_lattice
from .errors import (
    CarlitzlabError,
    ConfigError,
    HypothesisNotMet,
    NotNested,
    ParseError,
    SpecMismatch,
    TooLarge,
    ZeroInput,
)
from .gf import field_for_q
from .kummer import kummer_splitting_degree
from .polyring import format_poly, parse_poly, phi
from .worked_examples import example_names, verify_examples

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INVALID = 2
EXIT_TOO_LARGE = 3

_INVALID = (ParseError, ZeroInput, ConfigError, SpecMismatch, NotNested)


def _print_json(payload):
    print(json.dumps(payload, ensure_ascii=False, indent=2))


def _parse_modulus(text):
    if text is None:
        return None
    try:
        return tuple(int(c) for c in text.split(","))
    except ValueError as exc:
        raise ParseError(f"--modulus expects comma-separated integers, lowest degree first; got {text!r}.") from exc


def _spec(args):
    return field_for_q(args.q, _parse_modulus(args.modulus))


def _power_of(n, q):
    """[q, e] when n = q^e, else None."""
    e = 0
    while n > 1 and n % q == 0:
        n //= q
        e += 1
    return [q, e] if n == 1 else None


def _order(n, q):
    return {"value": n, "as_power": _power_of(n, q)}


def _field(args):
    return CycField(parse_poly(args.M, _spec(args)))


def _subgroup(field, text):
    """Generator list like ``1+T,2``; ``full`` is the whole Galois group and ``1`` or empty the trivial one."""
    text = (text or "").strip()
    if text == "full":
        return field.full_group
    gens = [parse_poly(item, field.spec) for item in text.split(",") if item.strip()]
    return field.subgroup([g for g in gens if not g.is_one()])


def _subgroup_echo(H):
    return {"gens": [format_poly(A) for A in H.gens], "order": H.order}


def _subext(args):
    field = _field(args)
    upper = _subgroup(field, args.upper)
    lower = _subgroup(field, args.lower)
    return SubextSpec(field, upper, lower)


def _warn_small_field(args):
    if args.q == 2:
        logger.warning("q = 2: the purity results assume an odd characteristic; read the verdict with care.")


def build_parser():
    parser = argparse.ArgumentParser(
        description="Carlitz modules, cyclotomic function fields and cogalois groups over F_q(T)."
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    logging_options = argparse.ArgumentParser(add_help=False)
    logging_options.add_argument(
        "--log-level",
        default="WARNING",
        type=str.upper,
        choices=("DEBUG", "INFO", "WARNING", "ERROR"),
        help="Logging level for messages on stderr.",
    )
    field_options = argparse.ArgumentParser(add_help=False, parents=[logging_options])
    field_options.add_argument("--q", type=int, default=3, help="Size of the constant field F_q.")
    field_options.add_argument(
        "--modulus",
        help="Irreducible modulus for F_q when q is not prime, as coefficients lowest first (e.g. 1,0,1).",
    )

    phi_parser = subparsers.add_parser(
        "phi", parents=[field_options], help="Size of (R_T/(M))^*."
    )
    phi_parser.add_argument("M", help="Polynomial in T, e.g. T^2+1.")

    carlitz_parser = subparsers.add_parser(
        "carlitz", parents=[field_options], help="Coefficients of C_M(X)."
    )
    carlitz_parser.add_argument("M")

    cycpoly_parser = subparsers.add_parser(
        "cycpoly", parents=[field_options], help="The cyclotomic polynomial Psi_M(X)."
    )
    cycpoly_parser.add_argument("M")

    galois_parser = subparsers.add_parser(
        "galois", parents=[field_options], help="Galois group of k(Lambda_M)/k."
    )
    galois_parser.add_argument("M")
    galois_parser.add_argument("--lattice", action="store_true", help="Also list every subgroup.")

    mu_parser = subparsers.add_parser(
        "mu", parents=[field_options], help="Torsion of the field fixed by a subgroup."
    )
    mu_parser.add_argument("M")
    mu_parser.add_argument("--subgroup", default="", help="Generators, comma-separated (or 'full').")

    for command, help_text in (
        ("purity", "Decide whether L/K is pure."),
        ("cog-order", "Order of the cogalois group of L/K."),
    ):
        sub_parser = subparsers.add_parser(command, parents=[field_options], help=help_text)
        sub_parser.add_argument("M")
        sub_parser.add_argument("--upper", default="full", help="Generators of Gal(E/K).")
        sub_parser.add_argument("--lower", default="", help="Generators of Gal(E/L).")
        sub_parser.add_argument("--report", action="store_true", help="Append the full subextension record.")

    radical_parser = subparsers.add_parser(
        "radical", parents=[field_options], help="Decide whether L'/L is radical."
    )
    radical_parser.add_argument("M")
    radical_parser.add_argument("--lower", default="full", help="Generators of Gal(E/L).")
    radical_parser.add_argument("--target", default="", help="Generators of Gal(E/L').")

    kummer_parser = subparsers.add_parser(
        "kummer-degree", parents=[field_options], help="Degree of X^P - z over k(lambda_P)."
    )
    kummer_parser.add_argument("P")
    kummer_parser.add_argument("Z")

    verify_parser = subparsers.add_parser(
        "verify-paper", parents=[logging_options], help="Replay the worked examples."
    )
    verify_parser.add_argument("--example", choices=example_names(), help="Run a single example.")
    verify_parser.add_argument("--q", type=int, help="Run the example(s) at this q only.")

    return parser


def _run(args):
    if args.command == "phi":
        M = parse_poly(args.M, _spec(args))
        _print_json({"command": "phi", "q": args.q, "M": format_poly(M), "phi": _order(phi(M), args.q)})
        return EXIT_OK

    if args.command == "carlitz":
        M = parse_poly(args.M, _spec(args))
        if not M:
            raise ZeroInput("C_0 is the zero map; give a nonzero M.")
        _print_json({"command": "carlitz", "q": args.q, **carlitz_coeffs(M).to_json()})
        return EXIT_OK

    if args.command == "cycpoly":
        M = parse_poly(args.M, _spec(args))
        _print_json({"command": "cycpoly", "q": args.q, **cyclotomic_poly(M).to_json()})
        return EXIT_OK

    if args.command == "galois":
        field = _field(args)
        group = field.full_group
        payload = {
            "command": "galois",
            "q": args.q,
            "M": format_poly(field.M),
            "order": _order(group.order, args.q),
            "invariants": group_structure(group),
            "elements": group.to_json(),
        }
        if args.lattice:
            payload["lattice"] = [
                {"order": H.order, "gens": [format_poly(A) for A in H.gens]} for H in subgroup_lattice(field)
            ]
        _print_json(payload)
        return EXIT_OK

    if args.command == "mu":
        field = _field(args)
        H = _subgroup(field, args.subgroup)
        D = mu_of_fixed_field(field, H)
        _print_json(
            {"command": "mu", "q": args.q, "M": format_poly(field.M), "subgroup": _subgroup_echo(H), "mu": format_poly(D)}
        )
        return EXIT_OK

    if args.command in ("purity", "cog-order"):
        _warn_small_field(args)
        s = _subext(args)
        payload = {
            "command": args.command,
            "q": args.q,
            "M": format_poly(s.field.M),
            "upper": _subgroup_echo(s.H_upper),
            "lower": _subgroup_echo(s.H_lower),
            "degree": s.degree,
            "mu_L": format_poly(s.mu_L),
            "mu_K": format_poly(s.mu_K),
        }
        if args.command == "purity":
            payload["pure"] = purity_check(s)
        else:
            payload["cog_order"] = _order(cog_order(s), args.q)
            if s.degree == s.field.spec.p:
                payload["t"] = cyclic_cog_exponent(s)
        if args.report:
            payload["report"] = subext_report(s)
        _print_json(payload)
        return EXIT_OK

    if args.command == "radical":
        _warn_small_field(args)
        field = _field(args)
        s = SubextSpec(field, _subgroup(field, args.lower), _subgroup(field, args.target))
        _print_json(
            {
                "command": "radical",
                "q": args.q,
                "M": format_poly(field.M),
                "lower": _subgroup_echo(s.H_upper),
                "target": _subgroup_echo(s.H_lower),
                "degree": s.degree,
                "radical": is_radical(s),
                "radical_cyclotomic": is_radical_cyclotomic(s),
            }
        )
        return EXIT_OK

    if args.command == "kummer-degree":
        spec = _spec(args)
        P, z = parse_poly(args.P, spec), parse_poly(args.Z, spec)
        degree = kummer_splitting_degree(P, z)
        _print_json(
            {"command": "kummer-degree", "q": args.q, "P": format_poly(P), "z": format_poly(z), "degree": _order(degree, args.q)}
        )
        return EXIT_OK

    if args.command == "verify-paper":
        payload = verify_examples(args.example, args.q)
        _print_json(payload)
        return EXIT_OK if payload["passed"] else EXIT_FAILED

    raise ConfigError(f"Unknown command {args.command!r}.")


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=args.log_level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )
    try:
        load_caps()
        return _run(args)
    except TooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE
    except _INVALID as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except HypothesisNotMet as exc:
        print(f"hypothesis not met: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except CarlitzlabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
