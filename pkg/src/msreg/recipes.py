"""Declarative variety recipes.

A recipe is a short program, one step per line (or ``|``-separated inline),
read top down; later steps act on the variety built so far::

    scroll 1 1 1
    divisor H+3F section g0=s^4+t^4,g1=s^3*t,g2=s*t^3

Steps::

    scroll A1 A2 ...                   rational normal scroll S(A1, ..., Ak)
    divisor H+KF [section g0=..,g1=..] divisor on the preceding scroll (random section if omitted)
    divisor A1 ... Am k=K [section=G1;G2;...]   one-line form of the same
    param F1, F2, ...                  closure of the image of a map over P^1; base variables s, t
    param S T U ... : F1, F2, ...      same, naming the base (first two) and fiber variables
    xf A B F                           the surface X_f from (u s^A, ..., u t^A, v s^B, v F, v t^B)
    project center L1, L2, ...         project the preceding variety; center = V(L1, L2, ...)
    project A B                        S(A, B) from a general P^(A-3) in the span of S(A)
    regime CASE A B D                  divisor in |H+(D-r+2)F| on S(1, A, B), CASE in B, C, D, E
    example-7.3, example-7.4-f1 .. f3, example-7.5-f1, f2   preset xf steps
"""

import os
import random
import re
from dataclasses import dataclass, field

from .arith import DEFAULT_PRIME
from .geometry import (GeometryError, LinearSubspace, construction_71, divisor_on_scroll_ideal,
                       parametrized_image_ideal, project, random_subspace, scroll_ideal, xf_ideal)
from .hilbert import hilbert_series
from .poly import ParseError, PolynomialRing

F_73 = "s^4*t+s^3*t^2+s^2*t^3+s*t^4"
F_74 = ("s^7*t+s^6*t^2+s^5*t^3+s^4*t^4+s^3*t^5+s^2*t^6+s*t^7",
        "s^7*t+s^6*t^2+s^5*t^3+s^4*t^4+s^3*t^5+s^2*t^6",
        "s^7*t+s^6*t^2+s^5*t^3+s^4*t^4")
F_75 = ("s^8*t+s^7*t^2+s^6*t^3+s^5*t^4+s^4*t^5+s^3*t^6+s^2*t^7+s*t^8",
        "s^8*t+s^7*t^2+s^6*t^3+s^5*t^4+s^4*t^5+s^3*t^6+s^2*t^7")

PRESETS = {
    "example-7.3": (3, 5, F_73),
    "example-7.4-f1": (3, 8, F_74[0]),
    "example-7.4-f2": (3, 8, F_74[1]),
    "example-7.4-f3": (3, 8, F_74[2]),
    "example-7.5-f1": (3, 9, F_75[0]),
    "example-7.5-f2": (3, 9, F_75[1]),
}

_CLASS = re.compile(r"^H(?:\+(\d*)F)?$")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class RecipeError(ValueError):
    """Malformed recipe; carries the line and column of the offending token."""

    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class VarietyRecipe:
    """One parsed step."""

    kind: str
    args: dict
    text: str
    line: int = 1


@dataclass
class Program:
    steps: list = field(default_factory=list)

    @property
    def text(self):
        return " | ".join(s.text for s in self.steps)


def _tokenize(text):
    return [(m.group(0), m.start() + 1) for m in re.finditer(r"\S+", text)]


def _ints(tokens, line, end, what):
    out = []
    for tok, col in tokens:
        try:
            out.append(int(tok))
        except ValueError:
            raise RecipeError(f"expected an integer for {what}, got {tok!r}", line, col) from None
    if not out:
        raise RecipeError(f"missing {what}", line, end)
    return out


def _split_forms(text, line, offset):
    forms = []
    pos = 0
    for piece in text.split(","):
        if piece.strip():
            forms.append((piece.strip(), offset + pos + len(piece) - len(piece.lstrip())))
        pos += len(piece) + 1
    return forms


def parse_step(text, line=1):
    """Parse one recipe line."""
    stripped = text.split("#", 1)[0].rstrip()
    toks = _tokenize(stripped)
    if not toks:
        raise RecipeError("empty recipe", line, 1)
    head, col = toks[0]
    rest = toks[1:]
    end = len(stripped) + 1
    body = stripped.strip()
    if head in PRESETS:
        if rest:
            raise RecipeError("presets take no arguments", line, rest[0][1])
        a, b, f = PRESETS[head]
        return VarietyRecipe("xf", {"a": a, "b": b, "f": f, "preset": head}, body, line)
    if head == "scroll":
        exps = _ints(rest, line, end, "scroll exponents")
        if any(e < 0 for e in exps):
            raise RecipeError("scroll exponents must be >= 0", line, rest[0][1])
        if not any(exps):
            raise RecipeError("degenerate scroll: all exponents are zero", line, rest[0][1])
        return VarietyRecipe("scroll", {"exponents": exps}, body, line)
    if head == "divisor":
        return _parse_divisor(rest, line, end, body)
    if head == "xf":
        if len(rest) < 3:
            raise RecipeError("xf needs A B F", line, end)
        a, b = _ints(rest[:2], line, end, "A B")
        if not 3 <= a <= b:
            raise RecipeError("xf needs 3 <= A <= B", line, rest[0][1])
        return VarietyRecipe("xf", {"a": a, "b": b, "f": "".join(t for t, _ in rest[2:])}, body, line)
    if head == "param":
        start = stripped.index("param") + len("param")
        tail = stripped[start:]
        if ":" in tail:
            lhs, rhs = tail.split(":", 1)
            names = lhs.split()
            forms = _split_forms(rhs, line, start + len(lhs) + 2)
            if len(names) < 3:
                raise RecipeError("param needs two base variables and a fiber variable", line, start + 1)
        else:
            names = None
            forms = _split_forms(tail, line, start + 1)
        if len(forms) < 3:
            raise RecipeError("param needs at least three forms", line, end)
        return VarietyRecipe("param", {"names": names, "forms": forms}, body, line)
    if head == "project":
        if rest and rest[0][0] == "center":
            start = stripped.index("center") + len("center")
            forms = _split_forms(stripped[start:], line, start + 1)
            if not forms:
                raise RecipeError("project center needs linear forms", line, end)
            return VarietyRecipe("project-center", {"forms": forms}, body, line)
        if len(rest) != 2:
            raise RecipeError("project needs 'center L1, L2, ...' or A B", line, end)
        a, b = _ints(rest, line, end, "A B")
        if not 3 <= a <= b:
            raise RecipeError("project needs 3 <= A <= B", line, rest[0][1])
        return VarietyRecipe("project", {"a": a, "b": b}, body, line)
    if head in ("regime", "constr-7.1"):
        if len(rest) != 4:
            raise RecipeError("regime needs CASE A B D", line, end)
        case = rest[0][0].upper()
        if case not in ("B", "C", "D", "E"):
            raise RecipeError(f"unknown case {rest[0][0]!r}", line, rest[0][1])
        a, b, d = _ints(rest[1:], line, end, "A B D")
        return VarietyRecipe("regime", {"case": case, "a": a, "b": b, "d": d}, body, line)
    raise RecipeError(f"unknown recipe {head!r}", line, col)


def _parse_divisor(rest, line, end, body):
    if rest and _CLASS.match(rest[0][0]):
        m = _CLASS.match(rest[0][0])
        k = 0 if m.group(1) is None else int(m.group(1) or 1)
        section = None
        if len(rest) > 1:
            if rest[1][0] != "section" or len(rest) != 3:
                raise RecipeError("expected 'section g0=...,g1=...'", line, rest[1][1])
            section = {}
            for piece, col in _split_forms(rest[2][0], line, rest[2][1]):
                if "=" not in piece:
                    raise RecipeError(f"section entry {piece!r} needs the form gI=...", line, col)
                key, val = piece.split("=", 1)
                if not re.fullmatch(r"g\d+", key):
                    raise RecipeError(f"bad section key {key!r}", line, col)
                section[int(key[1:])] = val
        return VarietyRecipe("divisor", {"exponents": None, "k": k, "section": section}, body, line)
    plain = [(t, c) for t, c in rest if "=" not in t]
    kv = {t.split("=", 1)[0]: (t.split("=", 1)[1], c) for t, c in rest if "=" in t}
    unknown = sorted(set(kv) - {"k", "section"})
    if unknown:
        raise RecipeError(f"unknown option {unknown[0]!r}", line, kv[unknown[0]][1])
    if "k" not in kv:
        raise RecipeError("divisor needs a class H+KF or k=K", line, end)
    exps = _ints(plain, line, end, "scroll exponents")
    k = _ints([kv["k"]], line, end, "k")[0]
    section = None
    if "section" in kv:
        parts = kv["section"][0].split(";")
        if len(parts) != len(exps):
            raise RecipeError("section needs one form per scroll block", line, kv["section"][1])
        section = dict(enumerate(parts))
    return VarietyRecipe("divisor", {"exponents": exps, "k": k, "section": section}, body, line)


def parse_program(text):
    """Parse a multi-line (or ``|``-separated) recipe."""
    steps = []
    for no, raw in enumerate(text.splitlines(), start=1):
        for piece in raw.split("#", 1)[0].split("|"):
            if piece.strip():
                steps.append(parse_step(piece, no))
    if not steps:
        raise RecipeError("no recipe found", 1, 1)
    return Program(steps)


def read_program(source):
    """Program from a file path or from inline command-line tokens."""
    if len(source) == 1 and os.path.isfile(source[0]):
        with open(source[0]) as fh:
            return parse_program(fh.read())
    return parse_program(" ".join(source))


def projection_center(a, b, ring, seed=0):
    """General P^(a-3) inside the span of the S(a) block, avoiding S(a, b)."""
    Z = scroll_ideal([a, b], ring.p, ring)
    for attempt in range(20):
        rng = random.Random(seed + attempt)
        L = random_subspace(ring, a - 3, rng, support=range(a + 1))
        if hilbert_series(Z + L.ideal()).dimension <= 0:
            return L, seed + attempt
    raise GeometryError("no admissible projection center found")


def _param_ring(names, forms, p, line):
    if names is None:
        seen = []
        for text, _ in forms:
            for m in _IDENT.finditer(text):
                if m.group(0) not in seen:
                    seen.append(m.group(0))
        if "s" not in seen or "t" not in seen:
            raise RecipeError("param forms must use base variables s and t", line, 1)
        names = ["s", "t"] + [v for v in seen if v not in ("s", "t")]
    return PolynomialRing(names, p)


def _parse_in(ring, text, line, col):
    try:
        return ring.parse(text)
    except ParseError as exc:
        c = col if exc.column is None else col + exc.column - 1
        raise RecipeError(f"cannot parse {text!r}: {str(exc).split(' at column')[0]}", line, c) from None


def compile_program(program, p=DEFAULT_PRIME, seed=0, info=None):
    """Ideal of the variety described by ``program`` over GF(p)."""
    info = {} if info is None else info
    I = None
    exps = None
    for step in program.steps:
        args = step.args
        kind = step.kind
        if kind == "scroll":
            exps = args["exponents"]
            I = scroll_ideal(exps, p)
        elif kind == "divisor":
            blocks = args["exponents"] or exps
            if blocks is None:
                raise RecipeError("divisor needs a preceding scroll step", step.line, 1)
            section = None
            if args["section"] is not None:
                if sorted(args["section"]) != list(range(len(blocks))):
                    raise RecipeError(f"section needs g0..g{len(blocks) - 1}", step.line, 1)
                section = [args["section"][i] for i in range(len(blocks))]
            local = {}
            I = divisor_on_scroll_ideal(blocks, args["k"], section=section, seed=seed, p=p, info=local)
            info.setdefault("seeds", []).extend(local.get("seeds", []))
            info["section"] = local.get("section")
            exps = None
        elif kind == "xf":
            I = xf_ideal(args["a"], args["b"], args["f"], p)
        elif kind == "param":
            P = _param_ring(args["names"], args["forms"], p, step.line)
            forms = [_parse_in(P, text, step.line, col) for text, col in args["forms"]]
            I = parametrized_image_ideal(forms, base=tuple(P.names[:2]))
        elif kind == "project-center":
            if I is None:
                raise RecipeError("project center needs a preceding step", step.line, 1)
            forms = [_parse_in(I.ring, text, step.line, col) for text, col in args["forms"]]
            try:
                L = LinearSubspace(I.ring, forms)
            except GeometryError as exc:
                raise RecipeError(str(exc), step.line, args["forms"][0][1]) from None
            I = project(I, L)
        elif kind == "project":
            Z = scroll_ideal([args["a"], args["b"]], p)
            L, used = projection_center(args["a"], args["b"], Z.ring, seed)
            info["center"] = [str(f) for f in L.forms]
            info.setdefault("seeds", []).append(used)
            I = project(Z, L)
        elif kind == "regime":
            local = {}
            I = construction_71(args["a"], args["b"], args["d"], args["case"], seed=seed, p=p, info=local)
            info.setdefault("seeds", []).extend(local.get("seeds", []))
        else:
            raise RecipeError(f"unknown step {kind}", step.line, 1)
    return I
