"""Plain-text manifold descriptors.

A descriptor is line-oriented: top-level ``key: value`` pairs and
``[section]`` blocks.  Sections: ``[cohomology]`` (required),
``[pi1]`` (required), ``[betti]`` (optional, 4-manifold data),
``[notes]`` (free text).  ``#`` starts a comment; blank lines are
ignored.

Polynomials use rational literals ``p/q`` and exponent monomials::

    relation: 2 w^2 - 3/2 x y
    fundamental_class: x1 x2 x3 x4

Anticommutation of odd-degree generators and their vanishing squares
are built in; descriptors must not restate them (an odd generator with
exponent > 1 is a parse error).  Structure constants for a nilpotent
fundamental group are given as bracket lines::

    [pi1]
    type: nilpotent
    dim: 3
    bracket: [1,2] = e3
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraPresentation, GradedPolynomial
from .nilcoh import NilLieAlgebra


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int = 1):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class Pi1Data:
    kind: str  # "finite" | "free-abelian" | "nilpotent" | "other"
    rank: int | None = None
    algebra: NilLieAlgebra | None = None

    def label(self) -> str:
        if self.kind == "free-abelian":
            return f"Z^{self.rank}"
        if self.kind == "nilpotent":
            return f"nilpotent(dim={self.algebra.dim})"
        return self.kind


@dataclass(frozen=True)
class ManifoldDescriptor:
    name: str
    n: int
    cohomology: AlgebraPresentation
    pi1: Pi1Data
    betti: tuple[int, int] | None = None  # (b2+, b2-) for 4-manifold mode
    notes: str = ""


_TOKEN = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*|\d+/\d+|\d+|\^|\+|-|\*|,)")


def _tokenize(text: str, line_no: int, offset: int):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ParseError(
                    f"unexpected character {text[pos:].strip()[0]!r}", line_no, offset + pos + 1
                )
            break
        out.append((m.group(1), offset + m.start(1) + 1))
        pos = m.end()
    return out


def _parse_rational(tok: str, line_no: int, col: int) -> Fraction:
    try:
        if "/" in tok:
            num, den = tok.split("/")
            if den == "0" or not num or not den:
                raise ValueError
            return Fraction(int(num), int(den))
        return Fraction(int(tok))
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"malformed rational literal {tok!r}", line_no, col) from None


def parse_polynomial(
    text: str,
    generators,
    line_no: int,
    offset: int = 0,
    max_degree: int | None = None,
) -> GradedPolynomial:
    """Parse ``[+-] [coeff] gen[^e] gen[^e] ...`` terms joined by + or -."""
    names = {nm: i for i, (nm, _) in enumerate(generators)}
    degrees = [d for _, d in generators]
    tokens = _tokenize(text, line_no, offset)
    if not tokens:
        raise ParseError("empty polynomial", line_no, offset + 1)
    monomials = []
    i = 0
    first = True
    while i < len(tokens):
        sign = Fraction(1)
        tok, col = tokens[i]
        if tok in "+-":
            sign = Fraction(-1) if tok == "-" else Fraction(1)
            i += 1
        elif not first:
            raise ParseError(f"expected + or - before {tok!r}", line_no, col)
        first = False
        if i >= len(tokens):
            raise ParseError("dangling sign", line_no, col)
        coeff = sign
        exps = [0] * len(generators)
        seen_factor = False
        tok, col = tokens[i]
        if re.fullmatch(r"\d+(/\d+)?", tok):
            coeff *= _parse_rational(tok, line_no, col)
            i += 1
            seen_coeff = True
        else:
            seen_coeff = False
        while i < len(tokens):
            tok, col = tokens[i]
            if tok in "+-":
                break
            if tok == "*" or tok == ",":
                i += 1
                continue
            if not re.fullmatch(r"[A-Za-z_][A-Za-z_0-9]*", tok):
                raise ParseError(f"unexpected token {tok!r} in monomial", line_no, col)
            if tok not in names:
                raise ParseError(f"unknown generator {tok!r}", line_no, col)
            idx = names[tok]
            e = 1
            if i + 1 < len(tokens) and tokens[i + 1][0] == "^":
                if i + 2 >= len(tokens) or not tokens[i + 2][0].isdigit():
                    raise ParseError("expected integer exponent after ^", line_no, col)
                e = int(tokens[i + 2][0])
                i += 2
            if degrees[idx] % 2 == 1 and exps[idx] + e > 1:
                raise ParseError(
                    f"odd-degree generator {tok!r} with exponent > 1", line_no, col
                )
            exps[idx] += e
            seen_factor = True
            i += 1
        if not (seen_factor or seen_coeff):
            raise ParseError("empty term", line_no, col)
        term_degree = sum(d * e for d, e in zip(degrees, exps))
        if max_degree is not None and term_degree > max_degree:
            raise ParseError(
                f"term degree {term_degree} overflows the allowed maximum {max_degree}",
                line_no,
                col,
            )
        monomials.append((coeff, tuple(exps)))
    try:
        return GradedPolynomial(tuple(generators), tuple(monomials))
    except ValueError as exc:
        raise ParseError(str(exc), line_no, offset + 1) from None


_BRACKET = re.compile(r"\[\s*(\d+)\s*,\s*(\d+)\s*\]\s*=\s*(.*)")


def _parse_bracket_rhs(text: str, dim: int, line_no: int):
    """Linear combination ``2 e3 + 1/2 e4`` of basis vectors."""
    tokens = _tokenize(text, line_no, 0)
    out: dict[int, Fraction] = {}
    i = 0
    first = True
    while i < len(tokens):
        sign = Fraction(1)
        tok, col = tokens[i]
        if tok in "+-":
            sign = Fraction(-1) if tok == "-" else Fraction(1)
            i += 1
        elif not first:
            raise ParseError(f"expected + or - before {tok!r}", line_no, col)
        first = False
        coeff = sign
        if i < len(tokens) and re.fullmatch(r"\d+(/\d+)?", tokens[i][0]):
            coeff *= _parse_rational(tokens[i][0], line_no, tokens[i][1])
            i += 1
        if i >= len(tokens) or not re.fullmatch(r"e\d+", tokens[i][0]):
            raise ParseError("expected basis vector e<k>", line_no, tokens[i - 1][1])
        k = int(tokens[i][0][1:])
        if not 1 <= k <= dim:
            raise ParseError(f"basis index {k} out of range 1..{dim}", line_no, tokens[i][1])
        out[k] = out.get(k, Fraction(0)) + coeff
        i += 1
    return {k: c for k, c in out.items() if c != 0}


_SECTION = re.compile(r"\[([a-z0-9_]+)\]\s*$")
_KEYVAL = re.compile(r"([A-Za-z_][A-Za-z_0-9]*)\s*:\s*(.*)$")

_TOP_KEYS = {"name", "n"}
_COH_KEYS = {"generators", "relation", "fundamental_class", "truncate_above_n"}
_PI1_KEYS = {"type", "dim", "bracket"}
_BETTI_KEYS = {"b_plus", "b_minus"}


def parse_descriptor(text: str) -> ManifoldDescriptor:
    top: dict[str, str] = {}
    sections: dict[str, list[tuple[int, str, str]]] = {}
    notes_lines: list[str] = []
    current = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        msec = _SECTION.match(line.strip())
        if msec:
            current = msec.group(1)
            if current not in ("cohomology", "pi1", "betti", "notes"):
                raise ParseError(f"unknown section [{current}]", line_no)
            if current != "notes" and current in sections:
                raise ParseError(f"duplicate section [{current}]", line_no)
            sections.setdefault(current, [])
            continue
        if current == "notes":
            notes_lines.append(raw.strip())
            continue
        mkv = _KEYVAL.match(line.strip())
        if not mkv:
            raise ParseError("expected key: value", line_no)
        key, value = mkv.group(1), mkv.group(2).strip()
        if current is None:
            if key not in _TOP_KEYS:
                raise ParseError(f"unknown key {key!r}", line_no)
            if key in top:
                raise ParseError(f"duplicate key {key!r}", line_no)
            top[key] = value
        else:
            allowed = {"cohomology": _COH_KEYS, "pi1": _PI1_KEYS, "betti": _BETTI_KEYS}[current]
            if key not in allowed:
                raise ParseError(f"unknown key {key!r} in [{current}]", line_no)
            sections[current].append((line_no, key, value))

    if "name" not in top:
        raise ParseError("missing name", 1)
    if "n" not in top:
        raise ParseError("missing n", 1)
    try:
        n = int(top["n"])
    except ValueError:
        raise ParseError(f"n must be an integer, got {top['n']!r}", 1) from None
    if n < 1:
        raise ParseError("n must be >= 1", 1)

    if "cohomology" not in sections:
        raise ParseError("missing [cohomology] section", 1)
    if "pi1" not in sections:
        raise ParseError("missing [pi1] section", 1)

    # -- cohomology ---------------------------------------------------------
    generators = None
    relations = []
    fundamental = None
    truncate = True
    gen_line = None
    for line_no, key, value in sections["cohomology"]:
        if key == "generators":
            if generators is not None:
                raise ParseError("duplicate generators line", line_no)
            generators = []
            for part in value.replace(",", " ").split():
                if ":" not in part:
                    raise ParseError(
                        f"generator {part!r} must be name:degree", line_no
                    )
                nm, deg = part.split(":", 1)
                if not deg.lstrip("-").isdigit():
                    raise ParseError(f"bad degree {deg!r}", line_no)
                deg = int(deg)
                if deg < 1:
                    raise ParseError(f"generator degree must be >= 1, got {deg}", line_no)
                if deg > n:
                    raise ParseError(
                        f"generator degree {deg} overflows the formal dimension {n}", line_no
                    )
                generators.append((nm, deg))
            generators = tuple(generators)
            gen_line = line_no
        elif key == "truncate_above_n":
            if value not in ("true", "false"):
                raise ParseError("truncate_above_n must be true or false", line_no)
            truncate = value == "true"
        else:
            if generators is None:
                raise ParseError("generators must come before polynomials", line_no)
            poly = parse_polynomial(value, generators, line_no, max_degree=2 * n)
            if key == "relation":
                if poly.is_zero:
                    raise ParseError("zero relation", line_no)
                relations.append(poly)
            else:
                if fundamental is not None:
                    raise ParseError("duplicate fundamental_class", line_no)
                fundamental = poly
                if poly.degree() != n:
                    raise ParseError(
                        f"fundamental class has degree {poly.degree()}, expected {n}", line_no
                    )
    if generators is None:
        raise ParseError("missing generators line", gen_line or 1)
    if fundamental is None:
        raise ParseError("missing fundamental_class", gen_line or 1)
    try:
        presentation = AlgebraPresentation(
            generators, tuple(relations), n, fundamental, truncate
        )
    except ValueError as exc:
        raise ParseError(str(exc), gen_line or 1) from None

    # -- pi1 ----------------------------------------------------------------
    kind = None
    dim = None
    brackets: dict[tuple[int, int], dict[int, Fraction]] = {}
    for line_no, key, value in sections["pi1"]:
        if key == "type":
            if kind is not None:
                raise ParseError("duplicate pi1 type", line_no)
            kind = value
        elif key == "dim":
            if not value.isdigit():
                raise ParseError("pi1 dim must be a positive integer", line_no)
            dim = int(value)
        elif key == "bracket":
            m = _BRACKET.match(value)
            if not m:
                raise ParseError("bracket must look like [i,j] = expr", line_no)
            if dim is None:
                raise ParseError("dim must come before bracket lines", line_no)
            i, j = int(m.group(1)), int(m.group(2))
            if not 1 <= i < j <= dim:
                raise ParseError(
                    f"bracket indices must satisfy 1 <= i < j <= {dim}", line_no
                )
            brackets[(i, j)] = _parse_bracket_rhs(m.group(3), dim, line_no)
    if kind is None:
        raise ParseError("missing pi1 type", 1)
    mz = re.fullmatch(r"Z\^(\d+)", kind)
    if kind == "Z":
        pi1 = Pi1Data("free-abelian", rank=1)
    elif mz:
        pi1 = Pi1Data("free-abelian", rank=int(mz.group(1)))
    elif kind == "finite":
        pi1 = Pi1Data("finite")
    elif kind == "other":
        pi1 = Pi1Data("other")
    elif kind == "nilpotent":
        if dim is None:
            raise ParseError("nilpotent pi1 needs a dim line", 1)
        pi1 = Pi1Data("nilpotent", algebra=NilLieAlgebra(dim, brackets))
    else:
        raise ParseError(f"unknown pi1 type {kind!r}", 1)

    # -- betti ---------------------------------------------------------------
    betti = None
    if "betti" in sections:
        vals = {}
        for line_no, key, value in sections["betti"]:
            if not value.lstrip("-").isdigit():
                raise ParseError(f"{key} must be an integer", line_no)
            vals[key] = int(value)
        if set(vals) != _BETTI_KEYS:
            raise ParseError("betti section needs b_plus and b_minus", 1)
        betti = (vals["b_plus"], vals["b_minus"])

    return ManifoldDescriptor(
        name=top["name"],
        n=n,
        cohomology=presentation,
        pi1=pi1,
        betti=betti,
        notes="\n".join(notes_lines),
    )


def parse_descriptor_file(path) -> ManifoldDescriptor:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_descriptor(fh.read())
