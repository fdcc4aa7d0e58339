"""Command-line entry point: ``borelhilb <command> [options]``.

Exit status is 0 on success, 2 on a domain error (one line on stderr) and
1 on anything unexpected.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import degeneration as dg
from .hilbert import HilbertPolynomial, NotAHilbertPolynomial, gotzmann_number, macaulay_form
from .ideals import (
    MonomialIdeal,
    NotBorelFixed,
    enumerate_borel_points,
    is_borel_fixed,
    regularity_borel,
    saturate_borel,
    truncation_filter,
)
from .linalg import identity
from .monomials import format_monomial, parse_monomial, pretty_monomial
from .poset import DEFAULT_CAP, PosetTooLarge, build_poset, flip
from .tangent import (
    NotAHilbertPoint,
    enumerate_borel_eigenvectors,
    is_borel_eigenvector,
    is_tangent,
    tangent_dimension,
    tangent_vector_from_json,
    torus_eigenvector_type,
)
from .formats import dumps, ideal_text, load_ideal, load_points, read_text


class DomainError(Exception):
    pass


def _poly(args) -> HilbertPolynomial:
    try:
        return HilbertPolynomial.parse(args.poly)
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"cannot read Hilbert polynomial {args.poly!r}") from None


def _weight(text: str | None):
    if text is None:
        return None
    try:
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise DomainError(f"cannot read weight {text!r}") from None


def _emit(args, payload: dict, text: str):
    sys.stdout.write(dumps(payload) if args.output == "json" else text.rstrip("\n") + "\n")


def cmd_gotzmann(args):
    rho = _poly(args)
    m_list = macaulay_form(rho)
    payload = {"hilbert_polynomial": rho.to_json(), "macaulay": list(m_list),
               "gotzmann": gotzmann_number(rho)}
    _emit(args, payload, f"m={list(m_list)}\ngotzmann={m_list[0]}")


def cmd_enumerate_borel(args):
    rho = _poly(args)
    points = enumerate_borel_points(rho, args.n, args.cap)
    records, lines = [], []
    for f in points:
        sat = saturate_borel(MonomialIdeal.of_filter(f))
        records.append({"filter": f.to_json(), "saturation": [list(g) for g in sat.generators]})
        lines.append(ideal_text(sat.generators))
    payload = {"hilbert_polynomial": rho.to_json(), "n": args.n,
               "m": gotzmann_number(rho), "count": len(points), "points": records}
    _emit(args, payload, f"{len(points)} Borel-fixed points\n" + "\n".join(lines))


def _monomial_ideal(path: str) -> MonomialIdeal:
    ideal = load_ideal(path)
    if not isinstance(ideal, MonomialIdeal):
        raise DomainError("expected a monomial ideal (generators as exponent lists)")
    if not is_borel_fixed(ideal):
        raise NotBorelFixed("not Borel-fixed")
    return ideal


def cmd_eigenvectors(args):
    ideal = _monomial_ideal(args.ideal)
    rho = _poly(args) if args.poly else None
    if args.m is not None:
        m = args.m
    elif rho is not None:
        m = gotzmann_number(rho)
    else:
        m = regularity_borel(ideal)
    f = truncation_filter(ideal, m, args.cap)
    families = enumerate_borel_eigenvectors(f, rho)
    payload = {"ideal": ideal.to_json(), "m": m, "tangent_dimension": tangent_dimension(f),
               "count": len(families), "families": [e.to_json() for e in families]}
    lines = [f"{len(families)} Borel eigenvector families at {ideal_text(ideal.generators)}, m={m}"]
    for e in families:
        terms = ", ".join(f"{pretty_monomial(a)}:{e.coefficients[a]}"
                          for a in sorted(e.coefficients, reverse=True))
        lines.append(f"K={list(e.type.K)}  {terms}" + ("  [multi-component]" if e.flagged else ""))
    _emit(args, payload, "\n".join(lines))


def cmd_tangent_check(args):
    v = tangent_vector_from_json(json.loads(read_text(args.tangent)))
    rho = _poly(args) if args.poly else None
    tangent = is_tangent(v, rho)
    borel = is_borel_eigenvector(v)
    t = None if v.is_zero() else torus_eigenvector_type(v)
    payload = {"is_tangent": tangent, "is_borel_eigenvector": borel,
               "type": t.to_json() if t is not None else None}
    _emit(args, payload, f"tangent={tangent}\nborel_eigenvector={borel}")


def _input_ideal(args, rho):
    if (args.ideal is None) == (args.points is None):
        raise DomainError("give exactly one of --ideal or --points")
    if args.ideal is not None:
        return load_ideal(args.ideal)
    points = load_points(args.points)
    return dg.ideal_of_points(points, gotzmann_number(rho))


def _report_text(rep: dg.DegenerationReport) -> str:
    lines = [f"limit: {ideal_text(MonomialIdeal.of_filter(rep.limit_filter).generators)}"
             f" in degree {rep.m}",
             f"borel_fixed_limit={rep.borel_fixed_limit}"]
    if rep.K is not None:
        moves = ", ".join(f"{pretty_monomial(a)}->{pretty_monomial(b)}:{c}"
                          for (a, b), c in sorted(rep.tangent.entries.items(), reverse=True))
        lines += [f"K={list(rep.K)}", f"tangent: {moves}",
                  f"borel_eigenvector_tangent={rep.borel_eigenvector_tangent}",
                  f"is_tangent={rep.is_tangent}"]
    lines.append(f"note: {rep.genericity_note}")
    return "\n".join(lines)


def cmd_degenerate(args):
    rho = _poly(args)
    ideal = _input_ideal(args, rho)
    g = identity(ideal.n + 1) if args.identity else None
    rep = dg.degenerate_report(ideal, rho, _weight(args.weight), args.seed, g,
                               walls=args.walls)
    _emit(args, rep.to_json(), _report_text(rep))


def cmd_fan(args):
    rho = _poly(args)
    ideal = _input_ideal(args, rho)
    samples = dg.first_order_fan_sample(ideal, rho, args.seed, args.trials, workers=args.workers)
    records = [{"weight": list(w), "limit_filter": f.to_json(),
                "type": t.to_json() if t is not None else None}
               for w, (f, t) in samples.items()]
    chambers = [{"limit_filter": f.to_json(), "type": t.to_json() if t is not None else None,
                 "weights": [list(w) for w in ws]}
                for f, t, ws in dg.fan_chambers(samples)]
    payload = {"seed": args.seed, "trials": args.trials, "samples": records, "chambers": chambers}
    lines = [f"{len(records)} samples in {len(chambers)} groups"]
    for f, t, ws in dg.fan_chambers(samples):
        k = list(t.K) if t is not None else None
        lines.append(f"{len(ws)} x  limit "
                     f"{ideal_text(MonomialIdeal.of_filter(f).generators)}  K={k}")
    _emit(args, payload, "\n".join(lines))


def cmd_flip(args):
    try:
        a = parse_monomial(args.monomial, args.n + 1)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.m is not None and sum(a) != args.m:
        raise DomainError(f"monomial has degree {sum(a)}, not {args.m}")
    b = flip(a)
    text = format_monomial(b, "y")
    _emit(args, {"input": list(a), "image": list(b), "text": text}, text)


def cmd_poset(args):
    p = build_poset(args.m, args.n, args.cap)
    highlight = ()
    if args.ideal:
        ideal = load_ideal(args.ideal)
        if not isinstance(ideal, MonomialIdeal):
            raise DomainError("expected a monomial ideal (generators as exponent lists)")
        highlight = truncation_filter(ideal, args.m, args.cap).members
    if args.dot:
        sys.stdout.write(p.to_dot(highlight))
        return
    payload = {"m": p.m, "n": p.n, "size": len(p),
               "elements": [list(a) for a in p.elements],
               "covers": [[list(lo), list(hi)] for lo, hi in p.covers()],
               "highlight": [list(a) for a in highlight]}
    text = f"P({p.m},{p.n}): {len(p)} elements, {len(payload['covers'])} covers"
    _emit(args, payload, text)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest poset to build")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="borelhilb",
        description="Borel-fixed points, tangent vectors and degenerations on Hilbert schemes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(func=func)
        return sp

    poly_help = "Hilbert polynomial coefficients, lowest degree first (\"1,2\" is 2z+1)"

    sp = add("gotzmann", cmd_gotzmann, "Macaulay form and Gotzmann number")
    sp.add_argument("--poly", required=True, help=poly_help)

    sp = add("enumerate-borel", cmd_enumerate_borel, "Borel-fixed points of Hilb^rho(P^n)")
    sp.add_argument("--poly", required=True, help=poly_help)
    sp.add_argument("--n", type=int, required=True)

    sp = add("eigenvectors", cmd_eigenvectors, "Borel eigenvectors in a tangent space")
    sp.add_argument("--ideal", required=True, help="ideal JSON file, '-' for stdin")
    sp.add_argument("--poly", help=poly_help)
    sp.add_argument("--m", type=int, help="degree (default: Gotzmann number or regularity)")

    sp = add("tangent-check", cmd_tangent_check, "test a tangent vector")
    sp.add_argument("--tangent", required=True, help="tangent vector JSON, '-' for stdin")
    sp.add_argument("--poly", help=poly_help)

    for name, func, help_ in (("degenerate", cmd_degenerate, "limit and arrival direction"),
                              ("fan", cmd_fan, "sample the first-order Groebner fan")):
        sp = add(name, func, help_)
        sp.add_argument("--poly", required=True, help=poly_help)
        sp.add_argument("--ideal", help="ideal JSON file, '-' for stdin")
        sp.add_argument("--points", help="points file, one point per line")
        if name == "degenerate":
            sp.add_argument("--weight", help="comma-separated weight vector")
            sp.add_argument("--identity", action="store_true",
                            help="use the identity instead of a random coordinate change")
            sp.add_argument("--walls", action="store_true",
                            help="experimental: accept weights that only separate degree m"
                                 " and report tied directions instead of failing")
        else:
            sp.add_argument("--trials", type=int, default=10)
            sp.add_argument("--workers", type=int, default=1)

    sp = add("flip", cmd_flip, "the isomorphism P(m,n) -> P(n,m)")
    sp.add_argument("--monomial", required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--n", type=int, required=True)

    sp = add("poset", cmd_poset, "the Borel poset P(m,n)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--dot", action="store_true", help="Graphviz output")
    sp.add_argument("--ideal", help="highlight this ideal's degree-m piece")
    return parser


_DOMAIN_ERRORS = (DomainError, NotAHilbertPolynomial, NotBorelFixed, NotAHilbertPoint,
                  PosetTooLarge, dg.DegenerationError, ValueError, OSError, KeyError)


def _message(exc: Exception) -> str:
    if isinstance(exc, NotAHilbertPolynomial):
        return f"not a Hilbert polynomial: {exc}"
    if isinstance(exc, NotBorelFixed):
        return "not Borel-fixed"
    return str(exc).splitlines()[0] if str(exc) else type(exc).__name__


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s: %(message)s")
    try:
        args.func(args)
    except _DOMAIN_ERRORS as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return 2
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
