"""``sobriety`` command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes:

====  =====================================
0     success / true
1     false / refuted
2     search budget or open-set cap exhausted
64    usage error
65    malformed input data
70    internal invariant breach
====  =====================================
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import formats
from .countable import b_leq
from .errors import (
    CycleError,
    FormatError,
    NotT0,
    PreconditionError,
    SobrietyError,
    TooManyOpens,
)
from .pair import (
    a_escape,
    a_witness,
    interleave_chain,
    p1_leq,
    p2_leq,
    p12_leq,
)
from .pair import ProductPoint

EX_OK, EX_FALSE, EX_EXHAUSTED = 0, 1, 2
EX_USAGE, EX_DATAERR, EX_SOFTWARE = 64, 65, 70

_LEQ = {"B": b_leq, "P1": p1_leq, "P2": p2_leq, "P12": p12_leq}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: {message}")


def _out(line: str = "") -> None:
    sys.stdout.write(line + "\n")


def _err(line: str) -> None:
    sys.stderr.write(line + "\n")


def _verdict(flag: bool) -> int:
    _out("true" if flag else "false")
    return EX_OK if flag else EX_FALSE


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    return formats.parse_poset(_read(path))


def _maybe_hasse(args, p, title: str) -> None:
    if getattr(args, "figure", None):
        from .plotting import save_hasse

        _err(f"figure: {save_hasse(p, args.figure, title)}")


# --- poset verbs -----------------------------------------------------------


def cmd_poset_check(args) -> int:
    try:
        p = _load(args.file)
    except CycleError as exc:
        _out(f"invalid: antisymmetry fails ({exc})")
        return EX_FALSE
    _out(f"valid: {len(p.labels)} elements, {len(p.hasse_covers())} covers")
    _maybe_hasse(args, p, Path(args.file).name)
    return EX_OK


def cmd_poset_sober(args) -> int:
    from .topology import alexandrov_space, is_sober

    p = _load(args.file)
    report = is_sober(alexandrov_space(p))
    _out(formats.report_json(report))
    _maybe_hasse(args, p, Path(args.file).name)
    return EX_OK if report.sober else EX_FALSE


def cmd_poset_irreducibles(args) -> int:
    from .topology import alexandrov_space, is_sober

    report = is_sober(alexandrov_space(_load(args.file)))
    _out("closed\tgeneric")
    for closed, generic in report.irreducibles:
        _out("{" + ",".join(closed) + "}\t" + (generic if generic is not None else "-"))
    return EX_OK


def cmd_poset_sigma(args) -> int:
    from .topology import open_set_lattice

    lat = open_set_lattice(_load(args.file))
    sys.stdout.write(formats.dump_poset(lat))
    _maybe_hasse(args, lat, "sigma(" + Path(args.file).name + ")")
    return EX_OK


def cmd_poset_compare(args) -> int:
    from .suite import COMPARATOR_CAP
    from .topology import (
        alexandrov_space,
        open_set_lattice,
        product_space,
        spaces_equal,
        sup_map_jointly_continuous,
    )

    sl, sp = open_set_lattice(_load(args.left)), open_set_lattice(_load(args.right))
    lhs = product_space(alexandrov_space(sl), alexandrov_space(sp), cap=COMPARATOR_CAP)
    rhs = alexandrov_space(sl.product(sp), cap=COMPARATOR_CAP)
    equal = spaces_equal(lhs, rhs)
    _out(f"points\t{len(lhs.carrier)}")
    _out(f"product_opens\t{len(lhs)}")
    _out(f"upset_opens\t{len(rhs)}")
    _out(f"sup_continuous_left\t{str(sup_map_jointly_continuous(sl)).lower()}")
    _out(f"sup_continuous_right\t{str(sup_map_jointly_continuous(sp)).lower()}")
    _out(f"verdict\t{'equal' if equal else 'different'}")
    return EX_OK if equal else EX_FALSE


def cmd_poset_dot(args) -> int:
    p = _load(args.file)
    sys.stdout.write(formats.to_dot(p))
    _maybe_hasse(args, p, Path(args.file).name)
    return EX_OK


# --- gallery verbs ---------------------------------------------------------


def cmd_gallery_leq(args) -> int:
    ka, a = formats.parse_element(args.a)
    kb, b = formats.parse_element(args.b)
    if ka != kb:
        raise FormatError(f"cannot compare a {ka} element with a {kb} element")
    return _verdict(_LEQ[ka](a, b))


def cmd_gallery_a_member(args) -> int:
    x = formats.parse_p1(args.p1.strip())
    y = formats.parse_p2(args.p2.strip())
    t = a_witness(ProductPoint(x, y))
    if t is None:
        _out("false")
        return EX_FALSE
    _out(f"true\t{formats.format_b(t)}")
    return EX_OK


def _letters(text: str) -> List[int]:
    try:
        out = [int(s) for s in text.replace(",", " ").split()]
    except ValueError:
        raise UsageError(f"--letters expects naturals, got {text!r}") from None
    if not out or min(out) < 0:
        raise UsageError("--letters needs at least one natural")
    return out


def cmd_gallery_chain(args) -> int:
    try:
        links = interleave_chain(args.m1, args.m2, args.n, _letters(args.letters))
    except PreconditionError as exc:
        raise UsageError(str(exc)) from None
    _out("rule\tlower\tupper\tverdict")
    for lk in links:
        _out(f"{lk.rule}\t{formats.format_b(lk.lower)}\t{formats.format_b(lk.upper)}\t{'ok' if lk.holds else 'FAIL'}")
    _out(f"final\t{formats.format_b(links[-1].upper)}")
    if not all(lk.holds for lk in links):
        _err("a chain link failed its order check")
        return EX_SOFTWARE
    return EX_OK


def cmd_gallery_escape(args) -> int:
    f1 = formats.parse_points(_read(args.f1))
    f2 = formats.parse_points(_read(args.f2))
    d = a_escape(f1, f2, args.budget)
    if not d:
        _out(f"exhausted\t{args.budget}")
        return EX_EXHAUSTED
    _out(formats.format_point(d))
    return EX_OK


def cmd_gallery_suite(args) -> int:
    from .suite import run_suite

    results = run_suite(bound=args.bound, samples=args.samples, seed=args.seed)
    _out("suite\tverdict\tchecked\tdetail")
    for r in results:
        _out(f"{r.name}\t{'pass' if r.passed else 'FAIL'}\t{r.checked}\t{r.detail}")
    if args.figure:
        from .plotting import save_suite

        path = save_suite([r.name for r in results], [r.checked for r in results], [r.passed for r in results], args.figure)
        _err(f"figure: {path}")
    return EX_OK if all(r.passed for r in results) else EX_FALSE


# --- parser ----------------------------------------------------------------


def _natural(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a natural number, got {text!r}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sobriety", description="Finite sobriety checks and the countable counterexample gallery.")
    top = parser.add_subparsers(dest="group", required=True, parser_class=_Parser)

    poset = top.add_parser("poset", help="finite posets and their Scott topology")
    pv = poset.add_subparsers(dest="verb", required=True, parser_class=_Parser)

    def with_figure(sp):
        sp.add_argument("--figure", metavar="PNG", help="also render a Hasse diagram to this file")
        return sp

    sp = with_figure(pv.add_parser("check", help="validate the order axioms"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_poset_check)
    sp = with_figure(pv.add_parser("sober", help="sobriety report as JSON"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_poset_sober)
    sp = pv.add_parser("irreducibles", help="irreducible closed sets and generic points")
    sp.add_argument("file")
    sp.set_defaults(func=cmd_poset_irreducibles)
    sp = with_figure(pv.add_parser("sigma", help="open-set lattice as a poset file"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_poset_sigma)
    sp = pv.add_parser("compare-product", help="product topology vs. up-set topology of the product")
    sp.add_argument("left")
    sp.add_argument("right")
    sp.set_defaults(func=cmd_poset_compare)
    sp = with_figure(pv.add_parser("dot", help="Hasse diagram in DOT"))
    sp.add_argument("file")
    sp.set_defaults(func=cmd_poset_dot)

    gallery = top.add_parser("gallery", help="queries on B, P1, P2 and A")
    gv = gallery.add_subparsers(dest="verb", required=True, parser_class=_Parser)
    sp = gv.add_parser("leq", help="order query in B, P1, P2 or P1 x P2")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.set_defaults(func=cmd_gallery_leq)
    sp = gv.add_parser("a-member", help="is (p1, p2) in A?")
    sp.add_argument("p1")
    sp.add_argument("p2")
    sp.set_defaults(func=cmd_gallery_a_member)
    sp = gv.add_parser("chain", help="interleaving chain between two diagonal points")
    sp.add_argument("--m1", type=_natural, required=True)
    sp.add_argument("--m2", type=_natural, required=True)
    sp.add_argument("--n", type=_natural, required=True)
    sp.add_argument("--letters", required=True, help="comma-separated naturals")
    sp.set_defaults(func=cmd_gallery_chain)
    sp = gv.add_parser("escape", help="diagonal point of A avoiding two generated down-sets")
    sp.add_argument("--f1", required=True, help="file of product points")
    sp.add_argument("--f2", required=True, help="file of product points")
    sp.add_argument("--budget", type=_natural, default=10_000)
    sp.set_defaults(func=cmd_gallery_escape)
    sp = gv.add_parser("suite", help="run the property suites")
    sp.add_argument("--bound", type=_natural, default=4)
    sp.add_argument("--samples", type=_natural, default=10_000)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--figure", metavar="PNG", help="also render a summary chart")
    sp.set_defaults(func=cmd_gallery_suite)
    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        _err(str(exc))
        return EX_USAGE
    except SystemExit as exc:  # --help
        return EX_OK if exc.code in (0, None) else EX_USAGE
    except (FormatError, CycleError) as exc:
        _err(f"error: {exc}")
        return EX_DATAERR
    except TooManyOpens as exc:
        _err(f"exhausted: {exc}")
        return EX_EXHAUSTED
    except (NotT0, SobrietyError, AssertionError) as exc:
        _err(f"internal error: {type(exc).__name__}: {exc}")
        return EX_SOFTWARE


def main() -> None:
    sys.exit(run())
