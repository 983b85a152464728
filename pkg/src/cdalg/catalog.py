"""Algebra and certificate text formats, and the built-in catalog.

Algebra file::

    algebra N2
    dim 4
    params alpha
    e1*e1 = e3
    e2*e1 = -alpha*e3

Unlisted products are zero.  A certificate file names a source and target
(from the catalog or from ``algebra ... end`` blocks in the same file), an
optional parametric index and the rows ``Ei = ...`` of the parametric basis.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Iterable, Mapping, Optional

from . import expr as ex
from .algebra import Algebra, format_vector, substitute_algebra_params
from .degeneration import Certificate
from .errors import InputError, ParseError
from .scalars import T, ZERO

__all__ = [
    "parse_algebra_file",
    "parse_algebras",
    "serialize_algebra",
    "parse_certificate_file",
    "builtin_catalog",
    "builtin",
    "load_catalog_dir",
    "load_certificates_dir",
    "ALGEBRA_SUFFIXES",
    "CERTIFICATE_SUFFIXES",
]

ALGEBRA_SUFFIXES = (".alg", ".algebra")
CERTIFICATE_SUFFIXES = (".cert", ".deg")

_PRODUCT = re.compile(r"^\s*e(\d+)\s*\*\s*e(\d+)\s*=(.*)$")
_ROW = re.compile(r"^\s*E(\d+)\s*=(.*)$")
_NAME = re.compile(r"^[A-Za-z0-9_][A-Za-z0-9_.\-]*$")
_IDENT = re.compile(r"^[A-Za-z][A-Za-z0-9_]*$")


def _lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if line.strip():
            yield lineno, line


def _keyword(line: str):
    stripped = line.lstrip()
    word, _, rest = stripped.partition(" ")
    col = len(line) - len(stripped) + 1
    return word, rest.strip(), col


def _parse_names(rest: str, lineno: int, col: int) -> tuple:
    names = [n for n in re.split(r"[,\s]+", rest) if n]
    for n in names:
        if not _IDENT.match(n):
            raise ParseError(f"invalid parameter name {n!r}", lineno, col)
        if n == T:
            raise ParseError("t is reserved", lineno, col)
    if len(set(names)) != len(names):
        raise ParseError("duplicate parameter name", lineno, col)
    return tuple(names)


def _split_assignments(rest: str, lineno: int, col: int):
    """``a = expr, b = expr`` -> [(name, expr_text, column)]."""
    out = []
    offset = 0
    for piece in rest.split(","):
        if not piece.strip():
            offset += len(piece) + 1
            continue
        name, eq, value = piece.partition("=")
        if not eq or not _IDENT.match(name.strip()):
            raise ParseError("expected 'name = expression'", lineno, col + offset)
        value_col = col + offset + len(name) + 1
        out.append((name.strip(), value, value_col))
        offset += len(piece) + 1
    return out


class _AlgebraBuilder:
    def __init__(self, name, lineno):
        self.name = name
        self.lineno = lineno
        self.dim = None
        self.params = ()
        self.products = {}

    def feed(self, lineno, line):
        m = _PRODUCT.match(line)
        if m:
            self.product(lineno, line, m)
            return
        word, rest, col = _keyword(line)
        if word == "dim":
            if self.dim is not None:
                raise ParseError("duplicate dim line", lineno, col)
            if not rest.isdigit() or int(rest) < 1:
                raise ParseError("dim must be a positive integer", lineno, col + 4)
            self.dim = int(rest)
        elif word == "params":
            if self.products:
                raise ParseError("params must be declared before products", lineno, col)
            self.params = _parse_names(rest, lineno, col + 7)
        else:
            raise ParseError(f"unexpected line {line.strip()!r}", lineno, col)

    def product(self, lineno, line, m):
        if self.dim is None:
            raise ParseError("dim must be declared before products", lineno, 1)
        i, j = int(m.group(1)), int(m.group(2))
        for idx, grp in ((i, 1), (j, 2)):
            if not 1 <= idx <= self.dim:
                raise ParseError(f"index out of range: e{idx} in dim {self.dim}", lineno, m.start(grp) + 1)
        if (i, j) in self.products:
            raise ParseError(f"duplicate product line e{i}*e{j}", lineno, 1)
        basis = {f"e{k}": k for k in range(1, self.dim + 1)}
        rhs = m.group(3)
        rhs_col = m.start(3) + 1
        if not rhs.strip():
            raise ParseError("missing right-hand side", lineno, rhs_col)
        allowed = set(self.params) | set(basis)
        for name in re.findall(r"\be(\d+)\b", rhs):
            if not 1 <= int(name) <= self.dim:
                raise ParseError(f"index out of range: e{name} in dim {self.dim}", lineno, rhs_col)
        node = ex.parse(rhs, allowed, line=lineno, column=rhs_col)
        try:
            coeffs = ex.linear_form(node, basis)
        except InputError as exc:
            raise ParseError(str(exc), lineno, rhs_col) from None
        if any(ex.has_sqrt(v) for v in coeffs.values()):
            raise ParseError("sqrt is not allowed in structure constants", lineno, rhs_col)
        self.products[(i, j)] = {k: ex.evaluate(v) for k, v in coeffs.items()}

    def build(self):
        if self.dim is None:
            raise ParseError(f"algebra {self.name} has no dim line", self.lineno, 1)
        return Algebra.from_products(self.name, self.dim, self.products, self.params)


def parse_algebras(text: str) -> list:
    """All algebras in ``text``; blocks start with ``algebra NAME``."""
    out = []
    current = None
    for lineno, line in _lines(text):
        word, rest, col = _keyword(line)
        if word == "algebra":
            if current is not None:
                out.append(current.build())
            if not _NAME.match(rest):
                raise ParseError("expected 'algebra NAME'", lineno, col)
            current = _AlgebraBuilder(rest, lineno)
        elif word == "end" and not rest:
            if current is None:
                raise ParseError("'end' outside an algebra block", lineno, col)
            out.append(current.build())
            current = None
        elif current is None:
            raise ParseError("expected 'algebra NAME'", lineno, col)
        else:
            current.feed(lineno, line)
    if current is not None:
        out.append(current.build())
    return out


def parse_algebra_file(text: str) -> Algebra:
    algebras = parse_algebras(text)
    if len(algebras) != 1:
        raise InputError(f"expected exactly one algebra, found {len(algebras)}")
    return algebras[0]


def serialize_algebra(A: Algebra) -> str:
    lines = [f"algebra {A.name}", f"dim {A.dim}"]
    if A.params:
        lines.append("params " + ", ".join(A.params))
    for i, j, vec in A.products():
        lines.append(f"e{i + 1}*e{j + 1} = {format_vector(vec)}")
    return "\n".join(lines) + "\n"


# -- certificates -----------------------------------------------------------


def _catalog_map(catalog) -> dict:
    if catalog is None:
        return {}
    if isinstance(catalog, Mapping):
        return dict(catalog)
    return {A.name: A for A in catalog}


def parse_certificate_file(text: str, catalog=None) -> Certificate:
    """Parse a certificate; names resolve against inline blocks, then
    ``catalog`` (mapping or list of algebras), then the built-ins."""
    known = {A.name: A for A in builtin_catalog()}
    known.update(_catalog_map(catalog))
    name = None
    source = target = None
    index_text = None
    params: tuple = ()
    rows: dict = {}
    inline_lines = []
    in_block = False
    for lineno, line in _lines(text):
        word, rest, col = _keyword(line)
        if in_block:
            inline_lines.append(line)
            if word == "end" and not rest:
                in_block = False
            continue
        if word == "algebra":
            in_block = True
            inline_lines.append(line)
            continue
        m = _ROW.match(line)
        if m:
            rows.setdefault(int(m.group(1)), (lineno, m.group(2), m.start(2) + 1))
            if rows[int(m.group(1))][0] != lineno:
                raise ParseError(f"duplicate basis row E{m.group(1)}", lineno, col)
            continue
        if word == "degeneration":
            if not _NAME.match(rest):
                raise ParseError("expected 'degeneration NAME'", lineno, col)
            name = rest
        elif word == "source":
            source = (lineno, col, rest)
        elif word == "target":
            target = (lineno, col, rest)
        elif word == "index":
            index_text = (lineno, col + 6, rest)
        elif word == "params":
            params = _parse_names(rest, lineno, col + 7)
        else:
            raise ParseError(f"unexpected line {line.strip()!r}", lineno, col)
    if in_block:
        raise ParseError("inline algebra block not closed with 'end'", lineno, 1)
    if inline_lines:
        for A in parse_algebras("\n".join(inline_lines)):
            known[A.name] = A
    if name is None:
        raise ParseError("missing 'degeneration NAME' line", 1, 1)
    if source is None:
        raise ParseError("missing 'source' line", 1, 1)
    if target is None:
        raise ParseError("missing 'target' line", 1, 1)
    src = _resolve(known, source, params)
    tgt = _resolve(known, target, params)
    n = src.dim
    if tgt.dim != n:
        raise InputError(f"source dim {n} differs from target dim {tgt.dim}")
    free = set(tgt.params) | set(params) | {T}
    index = {}
    if index_text is not None:
        lineno, col, rest = index_text
        for pname, value, vcol in _split_assignments(rest, lineno, col):
            if pname not in src.params:
                raise ParseError(f"index assigns {pname!r}, not a parameter of {src.name}", lineno, vcol)
            if pname in index:
                raise ParseError(f"duplicate index entry {pname!r}", lineno, vcol)
            index[pname] = ex.parse(value, free, macros=True, line=lineno, column=vcol)
    for p in src.params:
        if p not in index and p not in set(tgt.params) | set(params):
            raise InputError(f"source parameter {p!r} is unassigned and not a target parameter")
    basis_names = {f"e{k}": k for k in range(1, n + 1)}
    basis = []
    for i in range(1, n + 1):
        if i not in rows:
            raise InputError(f"basis row missing: E{i}")
        lineno, value, vcol = rows[i]
        node = ex.parse(value, free | set(basis_names), macros=True, line=lineno, column=vcol)
        try:
            coeffs = ex.linear_form(node, basis_names)
        except InputError as exc:
            raise ParseError(str(exc), lineno, vcol) from None
        basis.append([coeffs.get(k, ex.Num(0)) for k in range(1, n + 1)])
    extra = [i for i in rows if not 1 <= i <= n]
    if extra:
        raise InputError(f"basis row E{extra[0]} out of range for dim {n}")
    return Certificate(name, src, tgt, index, basis, params)


def _resolve(known, spec, params) -> Algebra:
    lineno, col, rest = spec
    head, sep, tail = rest.partition(" with ")
    head = head.strip()
    if head not in known:
        raise InputError(f"unknown algebra {head!r} (line {lineno})")
    A = known[head]
    if not sep:
        return A
    assignment = {}
    for pname, value, vcol in _split_assignments(tail, lineno, col + len(head) + 6):
        if pname not in A.params:
            raise ParseError(f"{pname!r} is not a parameter of {A.name}", lineno, vcol)
        node = ex.parse(value, set(params), line=lineno, column=vcol)
        if ex.has_sqrt(node):
            raise ParseError("sqrt is not allowed in algebra specializations", lineno, vcol)
        assignment[pname] = ex.evaluate(node)
    return substitute_algebra_params(A, assignment)


# -- built-ins ----------------------------------------------------------------

_BUILTIN_TEXT = """
algebra D401
dim 4
params lambda, alpha, beta
e1*e1 = lambda*e3 + e4
e1*e3 = alpha*e4
e2*e1 = e3
e2*e2 = e3
e2*e3 = beta*e4
e3*e1 = e4

algebra N2
dim 4
params alpha
e1*e1 = e3
e1*e2 = e4
e2*e1 = -alpha*e3
e2*e2 = -e4

algebra N3
dim 4
params alpha
e1*e1 = e4
e1*e2 = alpha*e4
e2*e1 = -alpha*e4
e2*e2 = e4
e3*e3 = e4
"""

_BUILTINS: Optional[tuple] = None


def builtin_catalog() -> list:
    """D401(lambda, alpha, beta), N2(alpha), N3(alpha) and zero1 .. zero4."""
    global _BUILTINS
    if _BUILTINS is None:
        algebras = parse_algebras(_BUILTIN_TEXT)
        algebras += [Algebra.zero(n) for n in range(1, 5)]
        _BUILTINS = tuple(algebras)
    return list(_BUILTINS)


def builtin(name: str) -> Algebra:
    for A in builtin_catalog():
        if A.name == name:
            return A
    raise KeyError(name)


# -- directories ----------------------------------------------------------------


def load_catalog_dir(path) -> list:
    out = []
    seen = set()
    for f in sorted(Path(path).iterdir()):
        if f.suffix not in ALGEBRA_SUFFIXES:
            continue
        for A in parse_algebras(f.read_text(encoding="utf-8")):
            if A.name in seen:
                raise InputError(f"duplicate algebra name {A.name!r} in {f}")
            seen.add(A.name)
            out.append(A)
    return out


def load_certificates_dir(path, catalog: Iterable[Algebra]) -> list:
    catalog = list(catalog)
    out = []
    for f in sorted(Path(path).iterdir()):
        if f.suffix in CERTIFICATE_SUFFIXES:
            out.append(parse_certificate_file(f.read_text(encoding="utf-8"), catalog))
    return out
