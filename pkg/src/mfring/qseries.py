"""Truncated q-expansions over a cyclotomic field.

A QSeries stores exactly `prec` coefficients: the series is known
modulo q^prec.  Binary operations truncate to the shorter precision;
the substitution q -> q^h expands precision to h*(prec-1)+1.
"""

from __future__ import annotations

from fractions import Fraction

from .cyclo import CycloNum, FieldCtx, render_cyclo, render_fraction
from .errors import BadLeadingShape, ContextMismatch


class HalfWeight:
    """Weight in (1/2)Z, stored doubled so all arithmetic is integral."""

    __slots__ = ("doubled",)

    def __init__(self, doubled: int):
        if doubled < 0:
            raise ValueError("weights are nonnegative")
        self.doubled = doubled

    @classmethod
    def of(cls, k: int) -> "HalfWeight":
        return cls(2 * k)

    def is_integral(self) -> bool:
        return self.doubled % 2 == 0

    def __add__(self, other: "HalfWeight") -> "HalfWeight":
        return HalfWeight(self.doubled + other.doubled)

    def __eq__(self, other):
        return isinstance(other, HalfWeight) and other.doubled == self.doubled

    def __hash__(self):
        return hash(("HalfWeight", self.doubled))

    def __str__(self):
        if self.doubled % 2 == 0:
            return str(self.doubled // 2)
        return f"{self.doubled}/2"

    def __repr__(self):
        return f"HalfWeight({self.doubled})"


class QSeries:
    """Immutable truncated power series in q with CycloNum coefficients."""

    __slots__ = ("ctx", "prec", "coeffs")

    def __init__(self, ctx: FieldCtx, coeffs, prec: int | None = None):
        coeffs = tuple(coeffs)
        if prec is None:
            prec = len(coeffs)
        if prec < 1:
            raise ValueError("precision must be positive")
        if len(coeffs) != prec:
            raise ValueError("coefficient count must equal precision")
        self.ctx = ctx
        self.prec = prec
        self.coeffs = coeffs

    @classmethod
    def from_rational_list(cls, ctx: FieldCtx, values, prec: int | None = None) -> "QSeries":
        return cls(ctx, [ctx.from_rational(v) for v in values], prec)

    @classmethod
    def one(cls, ctx: FieldCtx, prec: int) -> "QSeries":
        return cls(ctx, [ctx.one] + [ctx.zero] * (prec - 1))

    @classmethod
    def zero(cls, ctx: FieldCtx, prec: int) -> "QSeries":
        return cls(ctx, [ctx.zero] * prec)

    def coefficient(self, n: int) -> CycloNum:
        if not 0 <= n < self.prec:
            raise IndexError(f"coefficient {n} beyond precision {self.prec}")
        return self.coeffs[n]

    def _check(self, other: "QSeries"):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"L={self.ctx.L} vs L={other.ctx.L}")

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise ValueError("cannot extend precision by truncation")
        return QSeries(self.ctx, self.coeffs[:prec])

    def __add__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        p = min(self.prec, other.prec)
        return QSeries(self.ctx, [a + b for a, b in zip(self.coeffs[:p], other.coeffs[:p])])

    def __sub__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        p = min(self.prec, other.prec)
        return QSeries(self.ctx, [a - b for a, b in zip(self.coeffs[:p], other.coeffs[:p])])

    def __neg__(self):
        return QSeries(self.ctx, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, CycloNum)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        self._check(other)
        p = min(self.prec, other.prec)
        zero = self.ctx.zero
        out = [zero] * p
        for i in range(p):
            a = self.coeffs[i]
            if a.is_zero():
                continue
            for j in range(p - i):
                b = other.coeffs[j]
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return QSeries(self.ctx, out)

    __rmul__ = __mul__

    def scale(self, c) -> "QSeries":
        if not isinstance(c, CycloNum):
            c = self.ctx.from_rational(c)
        return QSeries(self.ctx, [c * a for a in self.coeffs])

    def __pow__(self, n: int) -> "QSeries":
        if n < 0:
            raise ValueError("negative series powers unsupported")
        result = QSeries.one(self.ctx, self.prec)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def v_operator(self, h: int) -> "QSeries":
        """Substitute q -> q^h; precision becomes h*(prec-1)+1."""
        if h < 1:
            raise ValueError("h must be positive")
        if h == 1:
            return self
        new_prec = h * (self.prec - 1) + 1
        zero = self.ctx.zero
        out = [zero] * new_prec
        for i, c in enumerate(self.coeffs):
            out[h * i] = c
        return QSeries(self.ctx, out)

    def lowered(self, h: int) -> "QSeries":
        """(1/a)(f - f(q^h)) for f = 1 + a*q + ...; starts q + O(q^2)."""
        if self.prec < 2:
            raise BadLeadingShape("need at least two coefficients")
        if self.coeffs[0] != self.ctx.one:
            raise BadLeadingShape("constant term must be 1")
        a = self.coeffs[1]
        if a.is_zero():
            raise BadLeadingShape("q coefficient must be nonzero")
        return (self - self.v_operator(h)).scale(a.invert())

    def conj(self) -> "QSeries":
        return QSeries(self.ctx, [c.conj() for c in self.coeffs])

    def vanishing_order(self) -> int | None:
        """Index of the first nonzero coefficient, or None if zero to precision."""
        for i, c in enumerate(self.coeffs):
            if not c.is_zero():
                return i
        return None

    def is_zero(self) -> bool:
        return self.vanishing_order() is None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self.ctx == other.ctx and self.prec == other.prec and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx.L, self.coeffs))

    def __repr__(self):
        return f"QSeries({render_qseries(self)!r})"

    def __str__(self):
        return render_qseries(self)


def _coeff_term(c: CycloNum, n: int) -> tuple[str, str]:
    """(sign, magnitude-text) for coefficient c of q^n."""
    qpart = "q" if n == 1 else f"q^{n}"
    nonzero = [i for i in range(len(c.coords)) if c.coords[i]]
    if len(nonzero) != 1:
        # general cyclotomic coefficient: parenthesize
        body = f"({render_cyclo(c)})"
        return "+", body if n == 0 else f"{body}*{qpart}"
    i = nonzero[0]
    val = c.coords[i]
    sign = "-" if val < 0 else "+"
    mag = abs(val)
    sym = "" if i == 0 else (f"z{c.ctx.L}" if i == 1 else f"z{c.ctx.L}^{i}")
    if sym:
        coeff_txt = sym if mag == 1 else f"{render_fraction(mag)}*{sym}"
    else:
        coeff_txt = render_fraction(mag)
    if n == 0:
        return sign, coeff_txt
    if coeff_txt == "1":
        return sign, qpart
    return sign, f"{coeff_txt}*{qpart}"


def render_qseries(f: QSeries) -> str:
    """Canonical rendering 'c0 + c1*q + ... + O(q^P)', omitting zero terms."""
    parts: list[str] = []
    for n, c in enumerate(f.coeffs):
        if c.is_zero():
            continue
        sign, text = _coeff_term(c, n)
        if not parts:
            parts.append(text if sign == "+" else f"-{text}")
        else:
            parts.append(f"{'+' if sign == '+' else '-'} {text}")
    if not parts:
        parts = ["0"]
    return " ".join(parts) + f" + O(q^{f.prec})"
