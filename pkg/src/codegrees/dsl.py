"""Text format for group constructions.

Grammar (LL(1), whitespace-insensitive, ``#`` starts a comment)::

    spec    := IDENT '(' [arg (',' arg)*] ')'
    arg     := INT | STRING | list ['mod' INT] | IDENT ( '(' ... ')' | '=' value )
    list    := '[' [item (',' item)*] ']'

Heads: ``elemab(p,n)``, ``cyclic(n)``, ``dirprod(S,S)``,
``sdp(q, dim, [M1, ...], complement="name")``, ``sl2(f)``,
``frobsinger(pk, q, t)``, ``named("tag", params...)``, plus
``metacyclic(n, m, a)``, ``symmetric(n)``, ``dihedral(n)``,
``matgroup(q, dim, [M1, ...])`` and ``perms("(0 1)", ...)``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from .errors import InputError


class ParseError(InputError):
    def __init__(self, message: str, line: int, col: int, expected: tuple[str, ...] = ()):
        self.line, self.col, self.expected = line, col, tuple(sorted(set(expected)))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"line {line}, column {col}: {message}{detail}")


# ---------------------------------------------------------------- AST

@dataclass(frozen=True)
class ElemAb:
    p: int
    n: int


@dataclass(frozen=True)
class Cyclic:
    n: int


@dataclass(frozen=True)
class DirProd:
    left: "GroupSpec"
    right: "GroupSpec"


@dataclass(frozen=True)
class SdpMatrix:
    q: int
    dim: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]
    complement: str | None = None


@dataclass(frozen=True)
class Sl2:
    f: int


@dataclass(frozen=True)
class FrobSinger:
    pk: int
    q: int
    copies: int


@dataclass(frozen=True)
class Named:
    tag: str
    args: tuple[int, ...] = ()
    kwargs: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class Metacyclic:
    n: int
    m: int
    a: int


@dataclass(frozen=True)
class Symmetric:
    n: int


@dataclass(frozen=True)
class Dihedral:
    order: int


@dataclass(frozen=True)
class MatGroup:
    q: int
    dim: int
    matrices: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class Perms:
    generators: tuple[str, ...]


GroupSpec = Union[ElemAb, Cyclic, DirProd, SdpMatrix, Sl2, FrobSinger, Named,
                  Metacyclic, Symmetric, Dihedral, MatGroup, Perms]

NAMED_TAGS = ("Q8onCq2", "D8onC3sq", "Pauli16onC5sq", "ESminus32onC3p4",
              "TwoStepFrobenius", "Q8rtimesC3")


# ---------------------------------------------------------------- lexer

_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\n]+|\#[^\n]*)
  | (?P<int>-?\d+)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<string>"[^"\n]*")
  | (?P<punct>[(),\[\]{}=])
""", re.VERBOSE)


@dataclass
class Token:
    kind: str      # 'int' | 'ident' | 'string' | one punctuation char | 'eof'
    text: str
    line: int
    col: int

    @property
    def value(self):
        if self.kind == "int":
            return int(self.text)
        if self.kind == "string":
            return self.text[1:-1]
        return self.text


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(m.group() if kind == "punct" else kind, m.group(), line, pos - line_start + 1))
        for k, ch in enumerate(m.group()):
            if ch == "\n":
                line += 1
                line_start = pos + k + 1
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


# ---------------------------------------------------------------- parser

class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def fail(self, message: str, expected=()):
        raise ParseError(message, self.tok.line, self.tok.col, tuple(expected))

    def expect(self, kind: str) -> Token:
        if self.tok.kind != kind:
            shown = self.tok.text or "end of input"
            self.fail(f"unexpected {shown!r}", (kind,))
        t = self.tok
        self.i += 1
        return t

    def parse_value(self):
        t = self.tok
        if t.kind in ("int", "string"):
            self.i += 1
            return t.value
        if t.kind == "[":
            value = self.parse_list()
            if self.tok.kind == "ident" and self.tok.text == "mod":
                self.i += 1
                return _Mod(value, self.expect("int").value)
            return value
        if t.kind == "ident":
            self.i += 1
            if self.tok.kind == "(":
                return self.parse_call(t)
            if self.tok.kind == "=":
                self.i += 1
                return _Kw(t.text, self.parse_value(), t)
            self.fail(f"unexpected {self.tok.text or 'end of input'!r} after {t.text!r}", ("(", "="))
        self.fail(f"unexpected {t.text or 'end of input'!r}", ("int", "string", "[", "ident"))

    def parse_list(self) -> list:
        self.expect("[")
        items = []
        if self.tok.kind != "]":
            items.append(self.parse_value())
            while self.tok.kind == ",":
                self.i += 1
                items.append(self.parse_value())
        self.expect("]")
        return items

    def parse_call(self, head: Token) -> "GroupSpec":
        self.expect("(")
        args = []
        if self.tok.kind != ")":
            args.append(self.parse_value())
            while self.tok.kind == ",":
                self.i += 1
                args.append(self.parse_value())
        if self.tok.kind != ")":
            self.fail(f"unexpected {self.tok.text or 'end of input'!r}", (",", ")"))
        self.i += 1
        return _make(head, args)

    def parse_spec(self) -> "GroupSpec":
        head = self.expect("ident")
        if self.tok.kind != "(":
            self.fail(f"unexpected {self.tok.text or 'end of input'!r}", ("(",))
        return self.parse_call(head)


@dataclass
class _Kw:
    name: str
    value: object
    token: Token


@dataclass
class _Mod:
    value: list
    q: int


def _err(head: Token, message: str):
    raise ParseError(f"{head.text}: {message}", head.line, head.col)


def _split_args(head: Token, args):
    pos, kw = [], {}
    for a in args:
        if isinstance(a, _Kw):
            if a.name in kw:
                _err(head, f"duplicate keyword {a.name!r}")
            kw[a.name] = a.value
        elif kw:
            _err(head, "positional argument after keyword argument")
        else:
            pos.append(a)
    return pos, kw


def _ints(head: Token, values, count: int) -> list[int]:
    if len(values) != count or not all(isinstance(v, int) for v in values):
        _err(head, f"expects {count} integer argument(s)")
    return list(values)


def _matrix_list(head: Token, value, q: int, dim: int):
    if not isinstance(value, list):
        _err(head, "expects a list of matrices")
    mats = []
    for m in value:
        if isinstance(m, _Mod):
            if m.q != q:
                _err(head, f"matrix literal is mod {m.q}, expected mod {q}")
            m = m.value
        if (not isinstance(m, list) or len(m) != dim
                or any(not isinstance(r, list) or len(r) != dim or not all(isinstance(x, int) for x in r) for r in m)):
            _err(head, f"matrix must be {dim}x{dim} integer literal")
        mats.append(tuple(tuple(x % q for x in r) for r in m))
    return tuple(mats)


def _make(head: Token, args) -> "GroupSpec":
    spec = _make_raw(head, args)
    _semantic(head, spec)
    return spec


def _make_raw(head: Token, args) -> "GroupSpec":
    name = head.text
    pos, kw = _split_args(head, args)
    if name == "elemab":
        return ElemAb(*_ints(head, pos, 2))
    if name == "cyclic":
        return Cyclic(*_ints(head, pos, 1))
    if name == "symmetric":
        return Symmetric(*_ints(head, pos, 1))
    if name == "dihedral":
        return Dihedral(*_ints(head, pos, 1))
    if name == "sl2":
        return Sl2(*_ints(head, pos, 1))
    if name == "frobsinger":
        return FrobSinger(*_ints(head, pos, 3))
    if name == "metacyclic":
        return Metacyclic(*_ints(head, pos, 3))
    if name == "dirprod":
        if len(pos) != 2 or kw or not all(_is_spec(a) for a in pos):
            _err(head, "expects two group specs")
        return DirProd(pos[0], pos[1])
    if name in ("sdp", "matgroup"):
        if len(pos) != 3 or not isinstance(pos[0], int) or not isinstance(pos[1], int):
            _err(head, "expects (q, dim, [matrices])")
        q, dim = pos[0], pos[1]
        mats = _matrix_list(head, pos[2], q if q > 1 else 2, dim) if dim > 0 else ()
        if name == "matgroup":
            if kw:
                _err(head, "takes no keyword arguments")
            return MatGroup(q, dim, mats)
        extra = set(kw) - {"complement"}
        if extra:
            _err(head, f"unknown keyword {sorted(extra)[0]!r}")
        comp = kw.get("complement")
        if comp is not None and not isinstance(comp, str):
            _err(head, "complement must be a string")
        return SdpMatrix(q, dim, mats, comp)
    if name == "named":
        if not pos or not isinstance(pos[0], str):
            _err(head, "expects a tag string first")
        if not all(isinstance(a, int) for a in pos[1:]) or not all(isinstance(v, int) for v in kw.values()):
            _err(head, "parameters must be integers")
        return Named(pos[0], tuple(pos[1:]), tuple(kw.items()))
    if name == "perms":
        if kw or not pos or not all(isinstance(a, str) for a in pos):
            _err(head, "expects permutation strings")
        return Perms(tuple(pos))
    raise ParseError(f"unknown construction {name!r}", head.line, head.col,
                     ("cyclic", "dihedral", "dirprod", "elemab", "frobsinger", "matgroup",
                      "metacyclic", "named", "perms", "sdp", "sl2", "symmetric"))


def _semantic(head: Token, spec) -> None:
    """Cheap semantic checks that deserve a source position."""
    from .fq import is_prime, prime_power
    from . import linalg

    def need(cond, message):
        if not cond:
            _err(head, message)

    if isinstance(spec, ElemAb):
        need(is_prime(spec.p), f"{spec.p} is not prime")
        need(spec.n >= 1, "rank must be at least 1")
    elif isinstance(spec, (Cyclic, Symmetric)):
        need(spec.n >= 1, "argument must be at least 1")
    elif isinstance(spec, Dihedral):
        need(spec.order >= 6 and spec.order % 2 == 0, "dihedral order must be even and at least 6")
    elif isinstance(spec, Sl2):
        need(spec.f >= 1, "f must be at least 1")
    elif isinstance(spec, FrobSinger):
        pp = prime_power(spec.pk) if spec.pk > 1 else None
        need(pp is not None, f"{spec.pk} is not a prime power")
        need(is_prime(spec.q), f"{spec.q} is not prime")
        need(spec.pk % spec.q != 0, "gcd(pk, q) must be 1")
        need(spec.copies >= 1, "copies must be at least 1")
    elif isinstance(spec, Metacyclic):
        need(spec.n >= 2 and spec.m >= 1, "need n >= 2 and m >= 1")
    elif isinstance(spec, (SdpMatrix, MatGroup)):
        need(is_prime(spec.q), f"{spec.q} is not prime")
        need(spec.dim >= 1, "dim must be at least 1")
        for k, m in enumerate(spec.matrices):
            need(linalg.det(m, spec.q) != 0, f"matrix {k + 1} is singular mod {spec.q}")
    elif isinstance(spec, Named):
        need(spec.tag in NAMED_TAGS, f"unknown tag {spec.tag!r}; known: {', '.join(NAMED_TAGS)}")


def _is_spec(x) -> bool:
    return isinstance(x, (ElemAb, Cyclic, DirProd, SdpMatrix, Sl2, FrobSinger, Named,
                          Metacyclic, Symmetric, Dihedral, MatGroup, Perms))


def parse_spec(text: str) -> GroupSpec:
    """Parse one construction; trailing input is an error."""
    p = _Parser(text)
    spec = p.parse_spec()
    if p.tok.kind != "eof":
        p.fail(f"unexpected {p.tok.text!r} after construction", ("end of input",))
    return spec


# ---------------------------------------------------------------- printer

def _mat_text(m) -> str:
    return "[" + ",".join("[" + ",".join(map(str, r)) + "]" for r in m) + "]"


def to_text(spec: GroupSpec) -> str:
    if isinstance(spec, ElemAb):
        return f"elemab({spec.p},{spec.n})"
    if isinstance(spec, Cyclic):
        return f"cyclic({spec.n})"
    if isinstance(spec, Symmetric):
        return f"symmetric({spec.n})"
    if isinstance(spec, Dihedral):
        return f"dihedral({spec.order})"
    if isinstance(spec, Sl2):
        return f"sl2({spec.f})"
    if isinstance(spec, FrobSinger):
        return f"frobsinger({spec.pk},{spec.q},{spec.copies})"
    if isinstance(spec, Metacyclic):
        return f"metacyclic({spec.n},{spec.m},{spec.a})"
    if isinstance(spec, DirProd):
        return f"dirprod({to_text(spec.left)},{to_text(spec.right)})"
    if isinstance(spec, SdpMatrix):
        mats = ",".join(_mat_text(m) for m in spec.matrices)
        comp = f',complement="{spec.complement}"' if spec.complement is not None else ""
        return f"sdp({spec.q},{spec.dim},[{mats}]{comp})"
    if isinstance(spec, MatGroup):
        mats = ",".join(_mat_text(m) for m in spec.matrices)
        return f"matgroup({spec.q},{spec.dim},[{mats}])"
    if isinstance(spec, Named):
        parts = [f'"{spec.tag}"'] + [str(a) for a in spec.args] + [f"{k}={v}" for k, v in spec.kwargs]
        return f"named({','.join(parts)})"
    if isinstance(spec, Perms):
        return "perms(" + ",".join(f'"{g}"' for g in spec.generators) + ")"
    raise TypeError(f"not a group spec: {spec!r}")


# ---------------------------------------------------------------- catalog

@dataclass
class CatalogEntry:
    spec: GroupSpec
    text: str
    line: int
    expect_cod: list[int] | None = None
    expect_case: str | None = None


def parse_catalog(text: str) -> list[CatalogEntry]:
    """One construction per line, optionally followed by
    ``expect_cod = {a,b,...}`` and ``expect_case = "2a"`` annotations."""
    entries = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = _strip_comment(raw)
        if not body:
            continue
        p = _Parser(body)
        for t in p.tokens:
            t.line = lineno
        spec = p.parse_spec()
        entry = CatalogEntry(spec, to_text(spec), lineno)
        while p.tok.kind != "eof":
            key = p.expect("ident")
            p.expect("=")
            if key.text == "expect_cod":
                p.expect("{")
                vals = [p.expect("int").value]
                while p.tok.kind == ",":
                    p.i += 1
                    vals.append(p.expect("int").value)
                p.expect("}")
                entry.expect_cod = sorted(set(vals))
            elif key.text == "expect_case":
                entry.expect_case = p.expect("string").value
            else:
                raise ParseError(f"unknown annotation {key.text!r}", lineno, key.col,
                                 ("expect_case", "expect_cod"))
        entries.append(entry)
    return entries


def _strip_comment(line: str) -> str:
    in_str = False
    for k, ch in enumerate(line):
        if ch == '"':
            in_str = not in_str
        elif ch == "#" and not in_str:
            return line[:k].strip()
    return line.strip()
