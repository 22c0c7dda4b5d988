"""Expression languages for the catalog.

Two small languages live here:

* prefix series expressions, e.g. ``(scale 1/1728 (sub (pow E4 3) (pow E6 2)))``
  with operators add/sub/mul/pow/scale/v/low/conj and atoms that are catalog
  form names or constructor calls (``E4``, ``C2``, ``f[1;rho3]``,
  ``g[1;rho5,chi5]``, ``theta``, ``bqf[1,1,6]``);

* infix polynomials with cyclotomic scalar coefficients, e.g.
  ``(2+4*z10^4+z10)*(x*y - z^2)``, used for ring relations and for scalar
  literals (a scalar is a polynomial in no variables).
"""

from __future__ import annotations

import re
from math import gcd

from .characters import DirichletCharacter, named_character
from .constructors import (
    eis_f,
    eis_g,
    eis_g2,
    eisenstein_c,
    eisenstein_e,
    theta_bqf,
    theta_series,
)
from .cyclo import CycloNum, FieldCtx, root_of_unity
from .errors import CatalogError, UnknownForm
from .qseries import QSeries

# ---------------------------------------------------------------------------
# prefix series expressions

# atoms may carry bracketed segments with parentheses inside, e.g. f[1;pow(chi11,3)]
_SEXPR_TOKEN = re.compile(r"\(|\)|(?:[^\s()\[\]]+|\[[^\]]*\])+")

_ARITY = {"sub": 2, "conj": 1}


def parse_expr(text: str):
    """Parse a prefix expression into a nested-tuple AST."""
    tokens = _SEXPR_TOKEN.findall(text)
    pos = 0

    def walk():
        nonlocal pos
        if pos >= len(tokens):
            raise CatalogError(f"unexpected end of expression: {text!r}")
        tok = tokens[pos]
        pos += 1
        if tok == ")":
            raise CatalogError(f"unbalanced ')' in {text!r}")
        if tok != "(":
            return ("atom", tok)
        op = tokens[pos]
        pos += 1
        args: list = []
        if op in ("add", "mul"):
            while tokens[pos] != ")":
                args.append(walk())
            if len(args) < 2:
                raise CatalogError(f"{op} needs at least two operands in {text!r}")
            node = (op, tuple(args))
        elif op == "sub":
            node = ("sub", walk(), walk())
        elif op == "conj":
            node = ("conj", walk())
        elif op == "pow":
            base = walk()
            node = ("pow", base, int(tokens[pos]))
            pos += 1
        elif op in ("v", "low"):
            h = int(tokens[pos])
            pos += 1
            node = (op, h, walk())
        elif op == "scale":
            scalar = tokens[pos]
            pos += 1
            node = ("scale", scalar, walk())
        else:
            raise CatalogError(f"unknown operator {op!r} in {text!r}")
        if tokens[pos] != ")":
            raise CatalogError(f"missing ')' after {op} in {text!r}")
        pos += 1
        return node

    ast = walk()
    if pos != len(tokens):
        raise CatalogError(f"trailing tokens in {text!r}")
    return ast


# ---------------------------------------------------------------------------
# infix polynomials / scalars

_POLY_TOKEN = re.compile(r"\d+|[A-Za-z_][A-Za-z0-9_]*|\^|\*|/|\+|-|\(|\)")


class _Poly:
    """Polynomial in a fixed variable list with CycloNum coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: dict):
        self.nvars = nvars
        self.terms = {e: c for e, c in terms.items() if not c.is_zero()}

    @classmethod
    def const(cls, nvars: int, c: CycloNum) -> "_Poly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def var(cls, nvars: int, i: int, ctx: FieldCtx) -> "_Poly":
        e = [0] * nvars
        e[i] = 1
        return cls(nvars, {tuple(e): ctx.one})

    def __add__(self, o):
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] + c if e in out else c
        return _Poly(self.nvars, out)

    def __sub__(self, o):
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out[e] - c if e in out else -c
        return _Poly(self.nvars, out)

    def __neg__(self):
        return _Poly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __mul__(self, o):
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                out[e] = out[e] + c if e in out else c
        return _Poly(self.nvars, out)

    def __pow__(self, k: int):
        if k < 0:
            raise CatalogError("negative powers are not polynomial")
        out = _Poly.const(self.nvars, next(iter(self.terms.values())).ctx.one) if self.terms else None
        if out is None:
            raise CatalogError("cannot raise the zero polynomial context-free")
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def constant_value(self) -> CycloNum | None:
        zero_exp = (0,) * self.nvars
        if all(e == zero_exp for e in self.terms):
            return self.terms.get(zero_exp)
        return None


def parse_poly(text: str, var_names, ctx: FieldCtx) -> dict:
    """Parse an infix polynomial; returns {exponent-vector: CycloNum}."""
    names = list(var_names)
    nvars = len(names)
    tokens = _POLY_TOKEN.findall(text)
    if "".join(tokens).replace(" ", "") != text.replace(" ", ""):
        raise CatalogError(f"unrecognized characters in {text!r}")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take():
        nonlocal pos
        tok = tokens[pos]
        pos += 1
        return tok

    def parse_sum():
        if peek() == "-":
            take()
            acc = -parse_term()
        else:
            if peek() == "+":
                take()
            acc = parse_term()
        while peek() in ("+", "-"):
            op = take()
            t = parse_term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def parse_term():
        acc = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            f = parse_factor()
            if op == "*":
                acc = acc * f
            else:
                c = f.constant_value()
                if c is None or c.is_zero():
                    raise CatalogError(f"division only by nonzero scalars in {text!r}")
                acc = acc * _Poly.const(nvars, c.invert())
        return acc

    def parse_factor():
        base = parse_atom()
        if peek() == "^":
            take()
            neg = False
            if peek() == "-":
                take()
                neg = True
            k = int(take())
            if neg:
                c = base.constant_value()
                if c is None or c.is_zero():
                    raise CatalogError(f"negative power of non-scalar in {text!r}")
                return _Poly.const(nvars, (c.invert()) ** k)
            return base**k
        return base

    def parse_atom():
        tok = peek()
        if tok is None:
            raise CatalogError(f"unexpected end of {text!r}")
        if tok == "(":
            take()
            inner = parse_sum()
            if take() != ")":
                raise CatalogError(f"missing ')' in {text!r}")
            return inner
        take()
        if tok.isdigit():
            return _Poly.const(nvars, ctx.from_rational(int(tok)))
        if tok in names:
            return _Poly.var(nvars, names.index(tok), ctx)
        m = re.fullmatch(r"z(\d+)", tok)
        if m:
            return _Poly.const(nvars, root_of_unity(ctx, 1, int(m.group(1))))
        raise CatalogError(f"unknown symbol {tok!r} in {text!r}")

    result = parse_sum()
    if pos != len(tokens):
        raise CatalogError(f"trailing tokens in {text!r}")
    return result.terms


def parse_scalar(text: str, ctx: FieldCtx) -> CycloNum:
    """Evaluate a scalar literal such as '1/1728', 'z4/2' or '-4*z10^4+5*z10^3+z10'."""
    terms = parse_poly(text, [], ctx)
    return terms.get((), ctx.zero)


# ---------------------------------------------------------------------------
# character expressions inside constructor atoms

def parse_character(text: str) -> DirichletCharacter:
    """name | conj(c) | pow(c,k) | mul(c,c), composed freely."""
    text = text.strip()
    m = re.fullmatch(r"(conj|pow|mul)\((.*)\)", text)
    if not m:
        return named_character(text)
    op, body = m.group(1), m.group(2)
    args, depth, start = [], 0, 0
    for i, ch in enumerate(body):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            args.append(body[start:i])
            start = i + 1
    args.append(body[start:])
    if op == "conj":
        (a,) = args
        return parse_character(a).conj()
    if op == "pow":
        a, k = args
        return parse_character(a) ** int(k)
    a, b = (parse_character(x) for x in args)
    if a.modulus == b.modulus:
        return a * b
    lcm = a.modulus * b.modulus // gcd(a.modulus, b.modulus)
    return a.lift(lcm) * b.lift(lcm)


# ---------------------------------------------------------------------------
# evaluation

_CONSTRUCTOR = re.compile(
    r"E(?P<ek>\d+)$|C(?P<cn>\d+)$|f\[(?P<fk>\d+);(?P<fchar>.+)\]$"
    r"|g\[(?P<gk>\d+);(?P<gchars>.+)\]$|theta$|bqf\[(?P<bqf>-?\d+,-?\d+,-?\d+)\]$"
)


def _split_top_level(text: str) -> list[str]:
    args, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == "," and depth == 0:
            args.append(text[start:i])
            start = i + 1
    args.append(text[start:])
    return args


class Evaluator:
    """Evaluates series expressions at a requested precision with caching.

    ``resolve_atom`` consults, in order: local definitions (presentation or
    case generators), the catalog form table, then constructor syntax.
    """

    def __init__(self, ctx: FieldCtx, form_table: dict | None = None, locals_: dict | None = None):
        self.ctx = ctx
        self.forms = form_table or {}
        self.locals = locals_ or {}
        self._cache: dict = {}

    def series(self, expr, prec: int) -> QSeries:
        """Evaluate a parsed AST or source string to exactly `prec` coefficients."""
        if isinstance(expr, str):
            expr = parse_expr(expr) if expr.lstrip().startswith("(") else ("atom", expr.strip())
        got = self._eval(expr, prec)
        return got.truncate(prec) if got.prec > prec else got

    def _cached(self, key, prec: int, build):
        hit = self._cache.get(key)
        if hit is not None and hit.prec >= prec:
            return hit.truncate(prec) if hit.prec > prec else hit
        val = build(prec)
        self._cache[key] = val
        return val

    def _eval(self, ast, prec: int) -> QSeries:
        op = ast[0]
        if op == "atom":
            return self._cached(ast[1], prec, lambda p: self._atom(ast[1], p))
        if op == "add":
            out = self._eval(ast[1][0], prec)
            for sub in ast[1][1:]:
                out = out + self._eval(sub, prec)
            return out
        if op == "mul":
            out = self._eval(ast[1][0], prec)
            for sub in ast[1][1:]:
                out = out * self._eval(sub, prec)
            return out
        if op == "sub":
            return self._eval(ast[1], prec) - self._eval(ast[2], prec)
        if op == "pow":
            return self._eval(ast[1], prec) ** ast[2]
        if op == "conj":
            return self._eval(ast[1], prec).conj()
        if op == "scale":
            return self._eval(ast[2], prec).scale(parse_scalar(ast[1], self.ctx))
        if op == "v":
            h = ast[1]
            child_prec = (prec - 2) // h + 2 if h > 1 else prec
            return self._eval(ast[2], child_prec).v_operator(h).truncate(prec)
        if op == "low":
            return self._eval(ast[2], prec).lowered(ast[1])
        raise CatalogError(f"unknown AST node {op!r}")

    def _atom(self, name: str, prec: int) -> QSeries:
        local = self.locals.get(name)
        if local is not None and local.strip() != name:
            return self.series(local, prec)
        form = self.forms.get(name)
        if form is not None and form.strip() != name:
            return self.series(form, prec)
        m = _CONSTRUCTOR.fullmatch(name)
        if not m:
            raise UnknownForm(f"cannot resolve {name!r}")
        if m.group("ek") is not None:
            return eisenstein_e(int(m.group("ek")), prec, self.ctx)
        if m.group("cn") is not None:
            return eisenstein_c(int(m.group("cn")), prec, self.ctx)
        if m.group("fk") is not None:
            chi = parse_character(m.group("fchar"))
            return eis_f(int(m.group("fk")), chi, prec, self.ctx)
        if m.group("gk") is not None:
            chars = _split_top_level(m.group("gchars"))
            k = int(m.group("gk"))
            if len(chars) == 1:
                return eis_g(k, parse_character(chars[0]), prec, self.ctx)
            if len(chars) == 2:
                return eis_g2(k, parse_character(chars[0]), parse_character(chars[1]), prec, self.ctx)
            raise CatalogError(f"too many characters in {name!r}")
        if m.group("bqf") is not None:
            a, b, c = (int(x) for x in m.group("bqf").split(","))
            return theta_bqf(a, b, c, prec, self.ctx)
        return theta_series(prec, self.ctx)
