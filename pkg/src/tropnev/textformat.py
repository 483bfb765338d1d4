"""Reader and writer for ``.trop`` declaration files.

A document is a sequence of blocks ``<kind> <name> { key=value ... }``::

    entire g { monomials=(0,0)(1,-1) }
    pl f { left_slope=-1 points=(0,1)(2,3) right_slope=2 window=-5,5 }
    mat A { rows=[1,-inf;-inf,1] }
    curve c { n=1 components=g,f }
    poly P { nvars=2 degree=1 terms=([1,0],0)([0,1],0) }
    instance I { curve=c polys=P c=1 grid=1:200:1 tol=1/20 }
    settings { grid=1:50:1 tol=1/20 }

Values may contain spaces only inside brackets.  ``#`` starts a comment.
"""

from __future__ import annotations

import bisect
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .errors import ParseError, TropError
from .hypersurface import TropPolynomial
from .plfun import PLFunction, is_entire
from .projective import TropCurve
from .semiring import BOTTOM, format_value, to_rational, to_value
from .troplinalg import TropMatrix

__all__ = ["InputDocument", "parse", "emit", "parse_grid", "parse_value", "parse_rational", "format_grid"]

KINDS = ("pl", "entire", "mat", "curve", "poly", "instance", "settings")

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*")


@dataclass
class InputDocument:
    functions: Dict[str, PLFunction] = field(default_factory=dict)
    matrices: Dict[str, TropMatrix] = field(default_factory=dict)
    curves: Dict[str, TropCurve] = field(default_factory=dict)
    polys: Dict[str, TropPolynomial] = field(default_factory=dict)
    instances: Dict[str, Dict[str, str]] = field(default_factory=dict)
    settings: Dict[str, str] = field(default_factory=dict)
    kinds: Dict[str, str] = field(default_factory=dict)
    curve_refs: Dict[str, Tuple[str, ...]] = field(default_factory=dict)
    order: List[str] = field(default_factory=list)

    def function(self, name: str) -> PLFunction:
        return self._get(self.functions, name, "function")

    def curve(self, name: str) -> TropCurve:
        return self._get(self.curves, name, "curve")

    def poly(self, name: str) -> TropPolynomial:
        return self._get(self.polys, name, "poly")

    def matrix(self, name: str) -> TropMatrix:
        return self._get(self.matrices, name, "mat")

    def instance(self, name: Optional[str] = None) -> Dict[str, str]:
        if name is None:
            if len(self.instances) != 1:
                raise ParseError(f"document has {len(self.instances)} instances; name one")
            return next(iter(self.instances.values()))
        return self._get(self.instances, name, "instance")

    @staticmethod
    def _get(table, name, kind):
        if name not in table:
            raise ParseError(f"no {kind} named {name!r}")
        return table[name]

    def __eq__(self, other):
        if not isinstance(other, InputDocument):
            return NotImplemented
        return (
            self.functions == other.functions
            and self.matrices == other.matrices
            and self.curves == other.curves
            and self.polys == other.polys
            and self.instances == other.instances
            and self.settings == other.settings
        )


# -- scalar syntax ------------------------------------------------------------


def parse_rational(s: str) -> Fraction:
    s = s.strip()
    if not re.fullmatch(r"[+-]?\d+(/\d+)?|[+-]?\d*\.\d+", s):
        raise ParseError(f"bad rational literal {s!r}")
    return to_rational(s)


def parse_value(s: str):
    """Rational literal or ``-inf``; ``+inf`` is accepted for TP^1 values."""
    t = s.strip()
    if t == "-inf":
        return BOTTOM
    if t in ("+inf", "inf"):
        return math.inf
    return parse_rational(t)


def parse_grid(spec: str) -> List[Fraction]:
    """``start:stop:step`` with rational entries, stop included when hit."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise ParseError(f"grid must be start:stop:step, got {spec!r}")
    a, b, s = (parse_rational(p) for p in parts)
    if s <= 0:
        raise ParseError("grid step must be positive")
    if b < a:
        raise ParseError("grid stop is below start")
    count = int((b - a) // s)
    return [a + k * s for k in range(count + 1)]


def format_grid(grid) -> str:
    return ":".join(format_value(to_rational(x)) for x in grid)


# -- tokenizing ---------------------------------------------------------------


class _Src:
    def __init__(self, text: str):
        self.text = text
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def loc(self, pos):
        line = bisect.bisect_right(self.starts, pos)
        return line, pos - self.starts[line - 1] + 1

    def error(self, msg, pos):
        line, col = self.loc(pos)
        return ParseError(msg, line, col)


def _strip_comments(text: str) -> str:
    # keep offsets stable by blanking comment characters
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


def _blocks(src: _Src):
    text = _strip_comments(src.text)
    pos, n = 0, len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            return
        m = re.compile(r"[A-Za-z_]+").match(text, pos)
        if not m:
            raise src.error("expected a block keyword", pos)
        kind, kpos = m.group(), pos
        if kind not in KINDS:
            raise src.error(f"unknown block kind {kind!r}", pos)
        pos = m.end()
        while pos < n and text[pos].isspace():
            pos += 1
        name = None
        m = _NAME.match(text, pos)
        if m and kind != "settings":
            name = m.group()
            pos = m.end()
            while pos < n and text[pos].isspace():
                pos += 1
        elif kind != "settings":
            raise src.error(f"{kind} block needs a name", pos)
        if pos >= n or text[pos] != "{":
            raise src.error("expected '{'", pos)
        close = text.find("}", pos)
        if close < 0:
            raise src.error("unterminated block", pos)
        fields = _fields(src, text, pos + 1, close)
        yield kind, name, fields, kpos
        pos = close + 1


def _fields(src, text, start, end):
    out = {}
    pos = start
    while True:
        while pos < end and text[pos].isspace():
            pos += 1
        if pos >= end:
            return out
        m = re.compile(r"[A-Za-z_][A-Za-z0-9_]*").match(text, pos)
        if not m or m.end() >= end or text[m.end()] != "=":
            raise src.error("expected key=value", pos)
        key, kpos = m.group(), pos
        pos = m.end() + 1
        vstart, depth = pos, 0
        while pos < end and (depth > 0 or not text[pos].isspace()):
            ch = text[pos]
            if ch in "([":
                depth += 1
            elif ch in ")]":
                depth -= 1
                if depth < 0:
                    raise src.error("unbalanced bracket", pos)
            pos += 1
        if depth:
            raise src.error("unbalanced bracket", vstart)
        if key in out:
            raise src.error(f"duplicate key {key!r}", kpos)
        out[key] = (re.sub(r"\s+", "", text[vstart:pos]), kpos)


def _tuples(s: str, src, pos) -> List[List[str]]:
    """``(a,b)(c,d)...`` into lists of raw fields; brackets inside are kept."""
    items, i = [], 0
    while i < len(s):
        if s[i] != "(":
            raise src.error(f"expected '(' in {s!r}", pos)
        depth, j = 0, i
        while j < len(s):
            if s[j] in "([":
                depth += 1
            elif s[j] in ")]":
                depth -= 1
                if depth == 0:
                    break
            j += 1
        if j >= len(s):
            raise src.error(f"unbalanced tuple in {s!r}", pos)
        inner = s[i + 1 : j]
        parts, d, cur = [], 0, ""
        for ch in inner:
            if ch == "," and d == 0:
                parts.append(cur)
                cur = ""
                continue
            if ch in "([":
                d += 1
            elif ch in ")]":
                d -= 1
            cur += ch
        parts.append(cur)
        items.append(parts)
        i = j + 1
    return items


# -- parsing ------------------------------------------------------------------


def _need(fields, key, kind, name, src, pos):
    if key not in fields:
        raise src.error(f"{kind} {name!r} is missing {key}=", pos)
    return fields[key]


def _window(s, src, pos):
    parts = s.split(",")
    if len(parts) != 2:
        raise src.error("window must be lo,hi", pos)
    return (parse_rational(parts[0]), parse_rational(parts[1]))


def parse(text: str) -> InputDocument:
    src = _Src(text)
    doc = InputDocument()
    for kind, name, fields, bpos in _blocks(src):
        raw = {k: v for k, (v, _) in fields.items()}
        try:
            if kind == "settings":
                doc.settings.update(raw)
                continue
            if name in doc.kinds:
                raise src.error(f"duplicate name {name!r}", bpos)
            _parse_block(doc, kind, name, fields, raw, src, bpos)
        except ParseError as exc:
            if exc.line is not None:
                raise
            raise src.error(f"{kind} {name!r}: {exc}", bpos) from exc
        except (TropError, ValueError, TypeError, ZeroDivisionError) as exc:
            raise src.error(f"{kind} {name!r}: {exc}", bpos) from exc
        doc.kinds[name] = kind
        doc.order.append(name)
    return doc


def _parse_block(doc, kind, name, fields, raw, src, bpos):
    if kind == "pl":
        pts_s, ppos = _need(fields, "points", kind, name, src, bpos)
        pts = []
        for item in _tuples(pts_s, src, ppos):
            if len(item) != 2:
                raise src.error("points must be (x,y) pairs", ppos)
            pts.append((parse_rational(item[0]), parse_rational(item[1])))
        sl = parse_rational(_need(fields, "left_slope", kind, name, src, bpos)[0])
        sr = parse_rational(_need(fields, "right_slope", kind, name, src, bpos)[0])
        w = _window(fields["window"][0], src, fields["window"][1]) if "window" in fields else None
        doc.functions[name] = PLFunction.from_points(pts, sl, sr, w)
    elif kind == "entire":
        mon_s, mpos = _need(fields, "monomials", kind, name, src, bpos)
        mons = []
        for item in _tuples(mon_s, src, mpos):
            if len(item) != 2:
                raise src.error("monomials must be (slope,coefficient) pairs", mpos)
            mons.append((parse_rational(item[0]), parse_rational(item[1])))
        w = _window(fields["window"][0], src, fields["window"][1]) if "window" in fields else None
        doc.functions[name] = PLFunction.from_monomials(mons, w)
    elif kind == "mat":
        rows_s, rpos = _need(fields, "rows", kind, name, src, bpos)
        if not (rows_s.startswith("[") and rows_s.endswith("]")):
            raise src.error("rows must be [a,b;c,d]", rpos)
        rows = [[parse_value(x) for x in r.split(",")] for r in rows_s[1:-1].split(";")]
        doc.matrices[name] = TropMatrix(rows)
    elif kind == "curve":
        comps_s, cpos = _need(fields, "components", kind, name, src, bpos)
        refs = tuple(comps_s.split(","))
        comps = []
        for ref in refs:
            if ref not in doc.functions:
                raise src.error(f"curve {name!r} references unknown function {ref!r}", cpos)
            comps.append(doc.functions[ref])
        if "n" in fields:
            nn = int(fields["n"][0])
            if nn != len(comps) - 1:
                raise src.error(f"curve {name!r} declares n={nn} but has {len(comps)} components", bpos)
        for ref, f in zip(refs, comps):
            if not is_entire(f):
                raise src.error(f"curve component {ref!r} is not entire", cpos)
        doc.curves[name] = TropCurve(comps)
        doc.curve_refs[name] = refs
    elif kind == "poly":
        nv = int(_need(fields, "nvars", kind, name, src, bpos)[0])
        deg = int(_need(fields, "degree", kind, name, src, bpos)[0])
        terms_s, tpos = _need(fields, "terms", kind, name, src, bpos)
        terms = {}
        for item in _tuples(terms_s, src, tpos):
            if len(item) != 2 or not (item[0].startswith("[") and item[0].endswith("]")):
                raise src.error("terms must be ([i0,i1,...],c)", tpos)
            idx = tuple(int(x) for x in item[0][1:-1].split(","))
            if idx in terms:
                raise src.error(f"repeated multi-index {list(idx)}", tpos)
            terms[idx] = to_value(parse_value(item[1]))
        doc.polys[name] = TropPolynomial(nv, deg, terms)
    elif kind == "instance":
        for key, table in (("curve", doc.curves), ("function", doc.functions), ("matrix", doc.matrices)):
            if key in fields and fields[key][0] not in table:
                raise src.error(f"instance {name!r} references unknown {key} {fields[key][0]!r}", fields[key][1])
        for key, table in (("polys", doc.polys), ("functions", doc.functions)):
            if key in fields:
                for ref in fields[key][0].split(","):
                    if ref not in table:
                        raise src.error(f"instance {name!r} references unknown name {ref!r}", fields[key][1])
        doc.instances[name] = raw


# -- emitting -----------------------------------------------------------------


def _fmt(q) -> str:
    return format_value(q)


def _emit_function(name, f: PLFunction, kind: str) -> str:
    w = f" window={_fmt(f.window[0])},{_fmt(f.window[1])}" if f.window is not None else ""
    if kind == "entire" and is_entire(f):
        mons = "".join(f"({_fmt(s)},{_fmt(c)})" for s, c in f.pieces())
        return f"entire {name} {{ monomials={mons}{w} }}"
    if f.breakpoints:
        pts = "".join(f"({_fmt(x)},{_fmt(y)})" for x, y in zip(f.breakpoints, f.values))
    else:
        pts = f"(0,{_fmt(f.value_ext(0))})"
    return f"pl {name} {{ left_slope={_fmt(f.left_slope)} points={pts} right_slope={_fmt(f.right_slope)}{w} }}"


def emit(doc: InputDocument) -> str:
    lines = []
    if doc.settings:
        body = " ".join(f"{k}={v}" for k, v in doc.settings.items())
        lines.append(f"settings {{ {body} }}")
    for name in doc.order:
        kind = doc.kinds[name]
        if kind in ("pl", "entire"):
            lines.append(_emit_function(name, doc.functions[name], kind))
        elif kind == "mat":
            m = doc.matrices[name]
            rows = ";".join(",".join(_fmt(a) for a in row) for row in m.rows)
            lines.append(f"mat {name} {{ rows=[{rows}] }}")
        elif kind == "curve":
            refs = doc.curve_refs[name]
            lines.append(f"curve {name} {{ n={len(refs) - 1} components={','.join(refs)} }}")
        elif kind == "poly":
            p = doc.polys[name]
            terms = "".join(f"([{','.join(str(i) for i in idx)}],{_fmt(c)})" for idx, c in p.terms.items())
            lines.append(f"poly {name} {{ nvars={p.nvars} degree={p.degree} terms={terms} }}")
        elif kind == "instance":
            body = " ".join(f"{k}={v}" for k, v in doc.instances[name].items())
            lines.append(f"instance {name} {{ {body} }}")
    return "\n".join(lines) + "\n"
