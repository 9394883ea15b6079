"""Command-line front door.

Reports are single structured text documents with a stable key order, so
byte-identical inputs produce byte-identical reports.  Exit codes: 0 when
every check passes, 1 on a check failure, 2 on an input error.
"""

from __future__ import annotations

import argparse
import hashlib
import sys
import time
from fractions import Fraction

from . import acceptance, chain
from .chain import DetLineCoord, alpha_beta, compute_homology, parse_complex, \
    sign_N, torsion_phi
from .cw import FlatBundle, HomOrientation, absolute_torsion
from .diagrams import parse_pd
from .errors import NonAcyclicBundle, TorsionLabError
from .knots import (absolute_torsion_at, alexander_poly, build_surgery_complex,
                    conway_from_torsion)
from .skein import conway_skein

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class Report:
    """Ordered key/value document with named check lines."""

    def __init__(self, command: str):
        self.lines: list[tuple[str, str]] = [("command", command)]
        self.failed = False
        self._start = time.perf_counter()

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def check(self, name: str, passed: bool, witness: str = "") -> None:
        self.lines.append((f"check {name}", "PASS" if passed else "FAIL"))
        if not passed:
            self.failed = True
            if witness:
                self.lines.append((f"witness {name}", witness))

    def render(self, quiet_key: str | None = None) -> str:
        if quiet_key is not None:
            for key, value in self.lines:
                if key == quiet_key:
                    return value + "\n"
            return ""
        self.lines.append(
            ("elapsed_ms", f"{1000 * (time.perf_counter() - self._start):.0f}"))
        self.lines.append(("status", "FAIL" if self.failed else "PASS"))
        return "".join(f"{k}: {v}\n" for k, v in self.lines)


def _digest(data: str) -> str:
    return "sha256:" + hashlib.sha256(data.encode()).hexdigest()[:16]


def _read(path: str) -> str:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise TorsionLabError(f"cannot read {path}: {exc}") from exc


def _parse_value(text: str):
    try:
        return Fraction(text)
    except ValueError:
        return complex(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_chain_torsion(args) -> int:
    text = _read(args.file)
    rep = Report("chain-torsion")
    rep.add("input", args.file)
    rep.add("digest", _digest(text))
    C = parse_complex(text)
    H = compute_homology(C)
    coord = C.domain.from_int(1)
    if args.coord is not None:
        coord = _parse_value(args.coord)
        if C.domain.name == "rational":
            coord = Fraction(coord)
    out = torsion_phi(C, DetLineCoord(coord, "cells"), H)
    alphas, betas = alpha_beta(C, H)
    rep.add("torsion", out.value)
    rep.add("sign_N", sign_N(C, H))
    rep.add("alpha", " ".join(str(a) for a in alphas))
    rep.add("beta", " ".join(str(b) for b in betas))
    rep.add("homology_ranks", " ".join(str(r) for r in H.ranks))
    sys.stdout.write(rep.render("torsion" if args.quiet else None))
    return EXIT_OK


def cmd_knot(args) -> int:
    text = _read(args.file)
    d = parse_pd(text)
    rep = Report(f"knot {args.action}")
    rep.add("input", args.file)
    rep.add("digest", _digest(text))
    quiet_key = None

    if args.action == "conway":
        rep.add("conway", conway_from_torsion(d))
        quiet_key = "conway"
    elif args.action == "conway-skein":
        nabla, st = conway_skein(d)
        rep.add("conway", nabla)
        rep.add("skein_assertions", st.assertions)
        rep.add("skein_failures", st.failures)
        quiet_key = "conway"
    elif args.action == "alexander":
        p = alexander_poly(d)
        rep.add("alexander", p)
        rep.add("value_at_1", p.evaluate(Fraction(1)))
        quiet_key = "alexander"
    elif args.action == "abs-torsion":
        if args.at is None:
            raise TorsionLabError("abs-torsion needs --at VALUE")
        a = _parse_value(args.at)
        try:
            value = absolute_torsion_at(d, a)
        except NonAcyclicBundle as exc:
            rep.add("error", f"NonAcyclicBundle: {exc}")
            rep.add("condition",
                    "monodromy must avoid 1 and the Alexander roots")
            rep.check("acyclic", False, str(exc))
            sys.stdout.write(rep.render())
            return EXIT_INPUT_ERROR
        rep.add("at", a)
        rep.add("absolute_torsion", value)
        quiet_key = "absolute_torsion"
    elif args.action == "verify":
        via_torsion = conway_from_torsion(d)
        nabla, st = conway_skein(d)
        rep.add("conway_from_torsion", via_torsion)
        rep.add("conway_skein", nabla)
        rep.check("pipelines_equal", via_torsion == nabla,
                  f"{via_torsion} vs {nabla}")
        rep.check("even_powers", nabla.odd_part_vanishes(), str(nabla))
        rep.check("skein_inline",
                  st.assertions >= 0 and st.failures == 0,
                  f"failures={st.failures}")
        if d.crossings:
            X = build_surgery_complex(d)
            at = absolute_torsion(X, FlatBundle.symbolic_line(),
                                  HomOrientation(1))
            sym = at.value.value
            rep.add("absolute_torsion_symbolic", sym)
            rep.check("bar_symmetric", sym.bar() == sym, str(sym))
        quiet_key = "conway_from_torsion"
    else:
        raise TorsionLabError(f"unknown knot action {args.action}")

    sys.stdout.write(rep.render(quiet_key if args.quiet else None))
    return EXIT_CHECK_FAILED if rep.failed else EXIT_OK


def cmd_selftest(args) -> int:
    rep = Report("selftest")
    if args.corrupt_sign_table:
        chain.set_sign_corruption(1)
    try:
        if args.jobs and args.jobs > 1:
            import concurrent.futures
            with concurrent.futures.ThreadPoolExecutor(args.jobs) as pool:
                results = list(pool.map(lambda f: f(),
                                        acceptance.ALL_CRITERIA))
        else:
            results = acceptance.run_all()
    finally:
        chain.set_sign_corruption(0)
    for r in results:
        rep.check(r.name, r.passed, r.witness)
        if r.passed and r.detail:
            rep.add(f"detail {r.name}", r.detail)
    rep.add("criteria", len(results))
    rep.add("failures", sum(not r.passed for r in results))
    sys.stdout.write(rep.render(None if not args.quiet else "status"))
    return EXIT_OK if not rep.failed else EXIT_CHECK_FAILED


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="torsionlab",
        description="Exact torsion of chain complexes, zero-surgery "
                    "manifolds, and Conway polynomials of knots.")
    p.add_argument("--quiet", action="store_true",
                   help="print only the headline value")
    sub = p.add_subparsers(dest="command", required=True)

    pc = sub.add_parser("chain-torsion",
                        help="torsion of a chain complex file")
    pc.add_argument("file")
    pc.add_argument("--coord", default=None,
                    help="coordinate of the input line element (default 1)")
    pc.add_argument("--field", default=None,
                    help="override declared coefficient field (informational)")
    pc.set_defaults(fn=cmd_chain_torsion)

    pk = sub.add_parser("knot", help="knot pipelines on a planar-diagram file")
    pk.add_argument("action", choices=["conway", "conway-skein", "alexander",
                                       "abs-torsion", "verify"])
    pk.add_argument("file")
    pk.add_argument("--at", default=None,
                    help="monodromy value for abs-torsion (Fraction or complex)")
    pk.set_defaults(fn=cmd_knot)

    ps = sub.add_parser("selftest", help="run the acceptance suite")
    ps.add_argument("--jobs", type=int, default=1)
    ps.add_argument("--corrupt-sign-table", action="store_true",
                    help=argparse.SUPPRESS)  # negative-control test hook
    ps.set_defaults(fn=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except TorsionLabError as exc:
        sys.stderr.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
