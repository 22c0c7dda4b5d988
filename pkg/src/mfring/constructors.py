"""Base q-expansions: Eisenstein series, character Eisenstein series, theta series.

All constructors take an explicit precision and field context and
return exact QSeries values.  The weight-2 level-1 series is only
quasi-modular; it is exposed for building the level-N weight-2
series but is never registered as a modular form by the catalog.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, isqrt

from .characters import (
    DirichletCharacter,
    require_parity,
    require_primitive,
    sigma_two_char,
    sigma_twisted,
    sigma_upper_twisted,
    trivial_character,
)
from .cyclo import CycloNum, FieldCtx
from .errors import BadWeight, NotPositiveDefinite
from .qseries import QSeries

_bernoulli_cache: list[Fraction] = [Fraction(1)]


def bernoulli(k: int) -> Fraction:
    """k-th Bernoulli number (B1 = -1/2 convention)."""
    if k < 0:
        raise ValueError("index must be nonnegative")
    while len(_bernoulli_cache) <= k:
        m = len(_bernoulli_cache)
        acc = Fraction(0)
        for j in range(m):
            acc += comb(m + 1, j) * _bernoulli_cache[j]
        _bernoulli_cache.append(-acc / (m + 1))
    return _bernoulli_cache[k]


def bernoulli_poly(k: int, x: Fraction) -> Fraction:
    """Bernoulli polynomial B_k evaluated at a rational point."""
    return sum((comb(k, j) * bernoulli(j)) * x ** (k - j) for j in range(k + 1))


def gen_bernoulli(k: int, chi: DirichletCharacter, ctx: FieldCtx) -> CycloNum:
    """Generalized Bernoulli number N^(k-1) * sum chi(a) B_k(a/N)."""
    N = chi.modulus
    out = ctx.zero
    for a in range(1, N + 1):
        v = chi.eval(a, ctx)
        if not v.is_zero():
            out = out + v * ctx.from_rational(bernoulli_poly(k, Fraction(a, N)))
    return out * (N ** (k - 1))


def eisenstein_e(k: int, prec: int, ctx: FieldCtx) -> QSeries:
    """Level-1 weight-k series 1 - (2k/B_k) sum sigma_(k-1)(n) q^n, k even >= 2."""
    if k <= 0 or k % 2 != 0:
        raise BadWeight(f"weight {k} outside the even positive domain")
    lead = ctx.from_rational(Fraction(-2 * k) / bernoulli(k))
    triv = trivial_character(1)
    coeffs = [ctx.one]
    for n in range(1, prec):
        coeffs.append(lead * sigma_twisted(k - 1, triv, n, ctx))
    return QSeries(ctx, coeffs)


def eisenstein_c(N: int, prec: int, ctx: FieldCtx) -> QSeries:
    """Weight-2 level-N series (N E2(q^N) - E2(q)) / (N-1); constant term 1."""
    if N < 2:
        raise BadWeight("level must be at least 2")
    e2 = eisenstein_e(2, prec, ctx)
    scale = Fraction(1, N - 1)
    coeffs = []
    for n in range(prec):
        val = -e2.coeffs[n]
        if n % N == 0:
            val = val + e2.coeffs[n // N] * N
        coeffs.append(val * ctx.from_rational(scale))
    return QSeries(ctx, coeffs)


def eis_f(k: int, chi: DirichletCharacter, prec: int, ctx: FieldCtx) -> QSeries:
    """1 - (2k/B_(k,chi)) sum (sigma_(k-1)*chi)(n) q^n for primitive chi of matching parity."""
    require_primitive(chi)
    require_parity(chi.parity(), k)
    b = gen_bernoulli(k, chi, ctx)
    lead = ctx.from_rational(-2 * k) * b.invert()
    coeffs = [ctx.one]
    for n in range(1, prec):
        coeffs.append(lead * sigma_twisted(k - 1, chi, n, ctx))
    return QSeries(ctx, coeffs)


def eis_g(k: int, chi: DirichletCharacter, prec: int, ctx: FieldCtx) -> QSeries:
    """sum_n (sum_{d|n} chi(n/d) d^(k-1)) q^n, k >= 2; zero constant term."""
    if k < 2:
        raise BadWeight("this family needs weight at least 2")
    require_primitive(chi)
    require_parity(chi.parity(), k)
    coeffs = [ctx.zero]
    for n in range(1, prec):
        coeffs.append(sigma_upper_twisted(k, chi, n, ctx))
    return QSeries(ctx, coeffs)


def eis_g2(
    k: int,
    chi: DirichletCharacter,
    psi: DirichletCharacter,
    prec: int,
    ctx: FieldCtx,
) -> QSeries:
    """sum_n (sum_{d|n} chi(d) psi(n/d) d^(k-1)) q^n; k = 1 allowed."""
    if k < 1:
        raise BadWeight("weight must be positive")
    require_primitive(chi)
    require_primitive(psi)
    require_parity(chi.parity() * psi.parity(), k)
    coeffs = [ctx.zero]
    for n in range(1, prec):
        coeffs.append(sigma_two_char(k, chi, psi, n, ctx))
    return QSeries(ctx, coeffs)


def theta_series(prec: int, ctx: FieldCtx) -> QSeries:
    """sum over n in Z of q^(n^2)."""
    counts = [0] * prec
    counts[0] = 1
    n = 1
    while n * n < prec:
        counts[n * n] = 2
        n += 1
    return QSeries(ctx, [ctx.from_rational(c) for c in counts])


def theta_bqf(a: int, b: int, c: int, prec: int, ctx: FieldCtx) -> QSeries:
    """Lattice count series sum over (m,n) in Z^2 of q^(a m^2 + b m n + c n^2)."""
    disc = 4 * a * c - b * b
    if a <= 0 or disc <= 0:
        raise NotPositiveDefinite(f"form ({a},{b},{c}) is not positive definite")
    # rational lower bound for the least eigenvalue: det / trace
    lam_num, lam_den = disc, 4 * (a + c)
    # Q(m,n) < prec forces m^2, n^2 <= prec/lambda_min
    bound = 1 + isqrt(prec * lam_den // lam_num) + 1
    counts = [0] * prec
    for m in range(-bound, bound + 1):
        for n in range(-bound, bound + 1):
            val = a * m * m + b * m * n + c * n * n
            if val < prec:
                counts[val] += 1
    return QSeries(ctx, [ctx.from_rational(v) for v in counts])
