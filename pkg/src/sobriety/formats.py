"""Text formats: poset files, DOT, JSON reports and the element grammar.

Poset files are line oriented::

    # a diamond
    elem bot
    elem x
    elem y
    elem top
    le bot x
    le bot y
    le x top
    le y top

Element grammar for the countable constructions::

    B(m,n,T)                  top-typed element of B
    B(m,n,N k@(a,b))          natural k in slice (a,b)
    B(m,n,W [l1 l2 ...]@(a,b))  word in slice (a,b)
    P1.FN{3:9,*:7}@2          (f, 2) with f(3)=9 and f(k)=7 elsewhere
    P1.B(...)   TOP1
    P2.X{5:<code>}@n,k        (f, n, k) with f(5)=<code>, default d elsewhere
    P2.B(...)   TOP2
    (<p1>|<p2>)               a point of P1 x P2

A bare ``B(...)`` is an element of B itself.  Slices are enumerated by
``phi``: (0,1), (0,2), (1,2), (0,3), ... (increasing b, then a); the default
choice function is ``d(n) = f(phi(n); [0])``.
"""

from __future__ import annotations

import json
import re
from typing import List, Tuple

from .countable import TOP, BElem, Nat, Slice, Wrd
from .errors import DuplicateLabel, FormatError, UnknownLabel
from .pair import TOP1, TOP2, Fn, FnRep, InB, ProductPoint, XRep, Xf
from .poset import FinitePoset, from_relations
from .topology import SobrietyReport

__all__ = [
    "parse_poset",
    "load_poset",
    "dump_poset",
    "to_dot",
    "report_json",
    "format_b",
    "format_p1",
    "format_p2",
    "format_point",
    "parse_b",
    "parse_p1",
    "parse_p2",
    "parse_element",
    "parse_points",
]

_LABEL = re.compile(r"^[^\s#]+$")


def parse_poset(text: str) -> FinitePoset:
    labels: List[str] = []
    pairs: List[Tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "elem" and len(parts) == 2:
            labels.append(parts[1])
        elif parts[0] == "le" and len(parts) == 3:
            pairs.append((parts[1], parts[2]))
        else:
            raise FormatError(f"line {lineno}: expected 'elem <label>' or 'le <a> <b>': {raw!r}")
    try:
        return from_relations(labels, pairs)
    except (DuplicateLabel, UnknownLabel) as exc:
        raise FormatError(str(exc)) from None


def load_poset(path) -> FinitePoset:
    with open(path, encoding="utf-8") as fh:
        return parse_poset(fh.read())


def dump_poset(p: FinitePoset) -> str:
    for lab in p.labels:
        if not _LABEL.match(lab):
            raise FormatError(f"label {lab!r} cannot be written to a poset file")
    lines = [f"elem {lab}" for lab in p.labels]
    lines += [f"le {a} {b}" for a, b in p.hasse_covers()]
    return "\n".join(lines) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(p: FinitePoset, name: str = "hasse") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;"]
    lines += [f"  {_dot_id(lab)};" for lab in p.labels]
    lines += [f"  {_dot_id(a)} -> {_dot_id(b)};" for a, b in p.hasse_covers()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def report_json(report: SobrietyReport) -> str:
    return json.dumps(report.as_dict(), indent=2)


# --- element grammar -------------------------------------------------------


def format_b(e: BElem) -> str:
    if e.l is TOP:
        third = "T"
    else:
        x, (a, b) = e.l.x, e.l.s
        if isinstance(x, Nat):
            third = f"N {x.k}@({a},{b})"
        else:
            third = "W [" + " ".join(map(str, x.w)) + f"]@({a},{b})"
    return f"B({e.m},{e.n},{third})"


def _table(overrides) -> str:
    return ",".join(f"{k}:{v}" for k, v in overrides)


def format_p1(u) -> str:
    if u is TOP1:
        return "TOP1"
    if isinstance(u, InB):
        return "P1." + format_b(u.e)
    inner = _table(u.f.overrides + (("*", u.f.tail),))
    return f"P1.FN{{{inner}}}@{u.n}"


def format_p2(u) -> str:
    if u is TOP2:
        return "TOP2"
    if isinstance(u, InB):
        return "P2." + format_b(u.e)
    return f"P2.X{{{_table(u.f.overrides)}}}@{u.n},{u.k}"


def format_point(p: ProductPoint) -> str:
    return f"({format_p1(p.x)}|{format_p2(p.y)})"


_NUM = r"\s*(\d+)\s*"
_B_RE = re.compile(
    r"^B\(" + _NUM + "," + _NUM + r",\s*(?:"
    r"(?P<top>T)"
    r"|N\s+(?P<nat>\d+)\s*@\s*\(" + _NUM + "," + _NUM + r"\)"
    r"|W\s*\[(?P<word>[\d\s]*)\]\s*@\s*\(" + _NUM + "," + _NUM + r"\)"
    r")\s*\)$"
)
_FN_RE = re.compile(r"^P1\.FN\{(?P<table>[^}]*)\}@" + _NUM + "$")
_X_RE = re.compile(r"^P2\.X\{(?P<table>[^}]*)\}@" + _NUM + "," + _NUM + "$")


def parse_b(text: str) -> BElem:
    m = _B_RE.match(text.strip())
    if not m:
        raise FormatError(f"not an element of B: {text!r}")
    g = m.groups()
    bm, bn = int(g[0]), int(g[1])
    try:
        if m.group("top"):
            return BElem(bm, bn, TOP)
        if m.group("nat") is not None:
            return BElem(bm, bn, Slice((int(g[4]), int(g[5])), Nat(int(m.group("nat")))))
        letters = tuple(int(x) for x in m.group("word").split())
        return BElem(bm, bn, Slice((int(g[7]), int(g[8])), Wrd(letters)))
    except ValueError as exc:
        raise FormatError(f"{text!r}: {exc}") from None


def _parse_table(text: str, allow_star: bool):
    table, tail = {}, None
    for item in filter(None, (s.strip() for s in text.split(","))):
        k, sep, v = item.partition(":")
        if not sep or not v.strip().isdigit():
            raise FormatError(f"bad table entry {item!r}")
        k = k.strip()
        if k == "*" and allow_star:
            tail = int(v)
        elif k.isdigit():
            table[int(k)] = int(v)
        else:
            raise FormatError(f"bad table key {k!r}")
    return table, tail


def parse_p1(text: str):
    text = text.strip()
    if text.startswith("B("):
        return InB(parse_b(text))
    if text == "TOP1":
        return TOP1
    if text.startswith("P1.B("):
        return InB(parse_b(text[3:]))
    m = _FN_RE.match(text)
    if not m:
        raise FormatError(f"not a point of P1: {text!r}")
    table, tail = _parse_table(m.group("table"), allow_star=True)
    if tail is None:
        raise FormatError(f"function needs a '*:<tail>' entry: {text!r}")
    return Fn(FnRep.make(table, tail), int(m.group(2)))


def parse_p2(text: str):
    text = text.strip()
    if text.startswith("B("):
        return InB(parse_b(text))
    if text == "TOP2":
        return TOP2
    if text.startswith("P2.B("):
        return InB(parse_b(text[3:]))
    m = _X_RE.match(text)
    if not m:
        raise FormatError(f"not a point of P2: {text!r}")
    table, _ = _parse_table(m.group("table"), allow_star=False)
    try:
        f = XRep.make(table)
    except ValueError as exc:
        raise FormatError(str(exc)) from None
    return Xf(f, int(m.group(2)), int(m.group(3)))


def parse_element(text: str) -> Tuple[str, object]:
    """Parse any element; returns ``(kind, value)`` with kind B, P1, P2 or P12."""
    s = text.strip()
    if s.startswith("(") and s.endswith(")") and "|" in s:
        left, _, right = s[1:-1].partition("|")
        return "P12", ProductPoint(parse_p1(left.strip()), parse_p2(right.strip()))
    if s.startswith("B("):
        return "B", parse_b(s)
    if s == "TOP1" or s.startswith("P1."):
        return "P1", parse_p1(s)
    if s == "TOP2" or s.startswith("P2."):
        return "P2", parse_p2(s)
    raise FormatError(f"unrecognised element {text!r}")


def parse_points(text: str) -> List[ProductPoint]:
    """One product point per line; ``#`` comments and blank lines ignored."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        kind, value = parse_element(line)
        if kind != "P12":
            raise FormatError(f"line {lineno}: expected a product point, got {line!r}")
        out.append(value)
    return out
