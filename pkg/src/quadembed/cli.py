"""Command-line front end: compute objects, emit JSON, run verification suites.

Exit codes: 0 all good, 1 a property suite reported a violation, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .clifford import CliffordElement, cl_mul
from .qspace import QuadraticSpace, diagonal_space, hyperbolic
from .scalars import QQ, Ring, RingError, ShapeError, ZZ, Zmod, parse_scalar
from .suites import SUITES, run_suites
from .suslin import (
    FAMILIES,
    catalog_generators,
    catalog_space,
    check_suslin_identities,
    derive_j,
    hyperbolic_clifford_iso,
    suslin,
    suslin_bar,
    suslin_pair,
)


def _parse_ring(text: str | None) -> Ring:
    if text is None or text == "z":
        return ZZ
    if text == "q":
        return QQ
    if text.startswith("zmod:"):
        return Zmod(int(text.split(":", 1)[1]))
    raise ValueError(f"unknown ring {text!r}; use z, q or zmod:m")


def _parse_vector(text: str, ring: Ring):
    return [parse_scalar(part, ring) for part in text.split(",")]


def _parse_space(text: str, ring: Ring) -> QuadraticSpace:
    if text.startswith("{"):
        return QuadraticSpace.from_json(json.loads(text))
    if text.startswith("hyp:"):
        return hyperbolic(int(text.split(":", 1)[1]), ring)
    if text.startswith("diag:"):
        return diagonal_space(_parse_vector(text.split(":", 1)[1], ring), ring)
    raise ValueError(f"cannot parse space {text!r}; use hyp:N, diag:c1,..,cn or JSON")


def _parse_element(text: str, space: QuadraticSpace) -> CliffordElement:
    if text.startswith("{"):
        data = json.loads(text)
        terms = {
            int(t["mask"]): parse_scalar(t["coeff"], space.ring)
            for t in data["terms"]
        }
        return CliffordElement(space, terms)
    terms = {}
    for chunk in text.split(","):
        mask, coeff = chunk.split(":")
        terms[int(mask)] = parse_scalar(coeff, space.ring)
    return CliffordElement(space, terms)


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def _cmd_suslin(args) -> int:
    ring = _parse_ring(args.ring)
    pair = suslin_pair(ring, _parse_vector(args.v, ring), _parse_vector(args.w, ring))
    out = {"n": len(pair.v) - 1, "s": suslin(pair).to_json()["entries"]}
    if args.bar:
        out["sbar"] = suslin_bar(pair).to_json()["entries"]
    if args.check:
        report = check_suslin_identities(pair)
        out["identities"] = report.to_json()
        _emit(out)
        return 0 if report.passed else 1
    _emit(out)
    return 0


def _cmd_clifford_mul(args) -> int:
    ring = _parse_ring(args.ring)
    space = _parse_space(args.space, ring)
    a = _parse_element(args.a, space)
    b = _parse_element(args.b, space)
    _emit(cl_mul(a, b).to_json())
    return 0


def _cmd_derive_j(args) -> int:
    j = derive_j(args.n)
    _emit(j.to_json())
    return 0


def _cmd_iso(args) -> int:
    ring = _parse_ring(args.ring)
    if ring not in (ZZ, QQ):
        raise ValueError("the rank certificate needs ring z or q")
    phi = hyperbolic_clifford_iso(args.n, ring)
    monomials = 1 << (2 * args.n)
    _emit(
        {
            "n": args.n,
            "ring": ring.name,
            "monomials": monomials,
            "rank": phi.monomial_rank,
            "isomorphism": phi.monomial_rank == monomials,
        }
    )
    return 0


def _cmd_catalog(args) -> int:
    ring = _parse_ring(args.ring)
    gens = catalog_generators(args.family, args.n, ring)
    space = catalog_space(args.family, args.n, ring)
    _emit(
        {
            "family": args.family,
            "n": args.n,
            "space": space.to_json(),
            "generators": [g.to_json() for g in gens],
        }
    )
    return 0


def _cmd_verify(args) -> int:
    ring = _parse_ring(args.ring)
    report = run_suites(args.suite, args.seed, args.samples, ring)
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if args.emit:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0 if report["passed"] else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="quadembed",
        description="exact computations with embedded quadratic spaces",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("suslin", help="emit a Suslin matrix (and identity report)")
    p.add_argument("--v", required=True, help="comma-separated coordinates")
    p.add_argument("--w", required=True, help="comma-separated coordinates")
    p.add_argument("--bar", action="store_true", help="also emit the companion matrix")
    p.add_argument("--check", action="store_true", help="verify the defining identities")
    p.add_argument("--ring", default=None, help="z (default), q, or zmod:m")
    p.set_defaults(fn=_cmd_suslin)

    p = sub.add_parser("clifford", help="Clifford algebra computations")
    csub = p.add_subparsers(dest="clifford_command", required=True)
    pm = csub.add_parser("mul", help="multiply two elements")
    pm.add_argument("--space", required=True, help="hyp:N, diag:c1,..,cn or JSON")
    pm.add_argument("--a", required=True, help="element as mask:coeff[,mask:coeff..]")
    pm.add_argument("--b", required=True)
    pm.add_argument("--ring", default=None)
    pm.set_defaults(fn=_cmd_clifford_mul)

    p = sub.add_parser("derive-j", help="search for the signed-permutation conjugator")
    p.add_argument("--n", type=int, required=True, help="1, 2 or 3")
    p.set_defaults(fn=_cmd_derive_j)

    p = sub.add_parser("iso", help="certify the hyperbolic matrix realisation")
    p.add_argument("--n", type=int, required=True, choices=(2, 3))
    p.add_argument("--ring", default="q")
    p.set_defaults(fn=_cmd_iso)

    p = sub.add_parser("catalog", help="emit a generator family")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--n", type=int, required=True, choices=(1, 2))
    p.add_argument("--ring", default=None)
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("verify", help="run the seeded property suites")
    p.add_argument("--suite", required=True, choices=SUITES + ("all",))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--ring", default=None)
    p.add_argument("--emit", default=None, help="also write the report to a file")
    p.set_defaults(fn=_cmd_verify)

    return parser


def run(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (RingError, ShapeError, ValueError, KeyError) as err:
        sys.stderr.write(f"error: {err}\n")
        return 2


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
