"""Truncated power series over exact rationals or doubles.

A :class:`TruncSeries` of order ``m`` holds the coefficients of
``x^0 .. x^m``.  Every generating-function object in the package (partition
functions, ratios, logarithms) is carried as one of these.
"""

from __future__ import annotations

import json
import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Sequence

EXACT = "exact"
FLOAT = "float"
KINDS = (EXACT, FLOAT)


class SeriesError(ValueError):
    """Raised on malformed series or violated operation preconditions."""


class KindMismatch(SeriesError, TypeError):
    """Raised when exact and float scalars are combined."""


def scalar_kind(c) -> str:
    if isinstance(c, bool):
        raise SeriesError("booleans are not scalars")
    if isinstance(c, Rational):
        return EXACT
    if isinstance(c, float):
        return FLOAT
    raise SeriesError(f"unsupported scalar type {type(c).__name__}")


def to_scalar(c, kind: str):
    """Coerce ``c`` into ``kind``; exact accepts ints/Fractions only."""
    if kind == EXACT:
        if scalar_kind(c) != EXACT:
            raise KindMismatch(f"float {c!r} in exact series")
        return c if type(c) is Fraction else Fraction(c)
    if kind == FLOAT:
        return float(c)
    raise SeriesError(f"unknown scalar kind {kind!r}")


def format_scalar(c) -> str:
    if isinstance(c, Fraction):
        return f"{c.numerator}/{c.denominator}"
    return repr(float(c))


def parse_scalar(text: str, kind: str = EXACT):
    text = text.strip()
    if kind == EXACT:
        return Fraction(text)
    return float(text)


class TruncSeries:
    """Immutable degree-``order`` truncated power series.

    All coefficients share one scalar kind, ``"exact"`` (Fraction) or
    ``"float"``.  Binary operations refuse to mix kinds.
    """

    __slots__ = ("coeffs", "kind")

    def __init__(self, coeffs: Iterable, kind: str | None = None):
        coeffs = list(coeffs)
        if not coeffs:
            raise SeriesError("a series needs at least the constant coefficient")
        if kind is None:
            kinds = {scalar_kind(c) for c in coeffs}
            if len(kinds) > 1:
                raise KindMismatch("coefficients mix exact and float scalars")
            kind = kinds.pop()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "coeffs", tuple(to_scalar(c, kind) for c in coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("TruncSeries is immutable")

    def __reduce__(self):
        return (_rebuild, (self.coeffs, self.kind))

    # construction helpers

    @classmethod
    def zero(cls, m: int, kind: str = EXACT) -> TruncSeries:
        return cls._raw((_zero(kind),) * (m + 1), kind)

    @classmethod
    def one(cls, m: int, kind: str = EXACT) -> TruncSeries:
        return cls.monomial(0, 1, m, kind)

    @classmethod
    def monomial(cls, k: int, c, m: int, kind: str = EXACT) -> TruncSeries:
        """``c * x**k`` truncated at order ``m`` (zero when ``k > m``)."""
        coeffs = [_zero(kind)] * (m + 1)
        if k <= m:
            coeffs[k] = to_scalar(c, kind)
        return cls._raw(tuple(coeffs), kind)

    @classmethod
    def _raw(cls, coeffs: tuple, kind: str) -> TruncSeries:
        # trusted fast path: coeffs already converted to ``kind``
        s = object.__new__(cls)
        object.__setattr__(s, "coeffs", coeffs)
        object.__setattr__(s, "kind", kind)
        return s

    # basic protocol

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, k: int):
        if 0 <= k < len(self.coeffs):
            return self.coeffs[k]
        if k >= len(self.coeffs):
            return _zero(self.kind)
        raise IndexError(k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncSeries):
            return NotImplemented
        return self.kind == other.kind and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.kind, self.coeffs))

    def __repr__(self) -> str:
        return f"TruncSeries({self.to_text()!r}, order={self.order}, kind={self.kind!r})"

    def truncate(self, m: int) -> TruncSeries:
        """Cut to order ``m``, padding with zeros if ``m`` exceeds the order."""
        if m < 0:
            raise SeriesError("order must be non-negative")
        n = len(self.coeffs)
        if m + 1 <= n:
            return TruncSeries._raw(self.coeffs[: m + 1], self.kind)
        return TruncSeries._raw(self.coeffs + (_zero(self.kind),) * (m + 1 - n), self.kind)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def valuation(self) -> int | None:
        """Index of the lowest nonzero coefficient, or None for the zero series."""
        for k, c in enumerate(self.coeffs):
            if c:
                return k
        return None

    # arithmetic; mismatched orders are padded to the larger one

    def __add__(self, other: TruncSeries) -> TruncSeries:
        _check_kinds(self, other)
        m = max(self.order, other.order)
        a, b = self.truncate(m).coeffs, other.truncate(m).coeffs
        return TruncSeries._raw(tuple(x + y for x, y in zip(a, b)), self.kind)

    def __sub__(self, other: TruncSeries) -> TruncSeries:
        return self + (-other)

    def __neg__(self) -> TruncSeries:
        return TruncSeries._raw(tuple(-c for c in self.coeffs), self.kind)

    def scale(self, c) -> TruncSeries:
        c = to_scalar(c, self.kind)
        return TruncSeries._raw(tuple(c * a for a in self.coeffs), self.kind)

    def shift(self, d: int, m: int | None = None) -> TruncSeries:
        """Multiply by ``x**d`` and truncate at ``m`` (default: keep the order)."""
        if m is None:
            m = self.order
        z = _zero(self.kind)
        coeffs = ((z,) * d + self.coeffs)[: m + 1]
        if len(coeffs) < m + 1:
            coeffs = coeffs + (z,) * (m + 1 - len(coeffs))
        return TruncSeries._raw(coeffs, self.kind)

    def x_ddx(self) -> TruncSeries:
        """Apply ``x d/dx``: the k-th coefficient is multiplied by k."""
        return TruncSeries._raw(tuple(k * c for k, c in enumerate(self.coeffs)), self.kind)

    # rendering

    def to_text(self, var: str = "x") -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            s = format_scalar(c)
            if k == 0:
                terms.append(s)
            elif k == 1:
                terms.append(f"{s}*{var}")
            else:
                terms.append(f"{s}*{var}^{k}")
        return " + ".join(terms)

    def to_json(self) -> str:
        return json.dumps(self.coeff_strings())

    def coeff_strings(self) -> list[str]:
        return [format_scalar(c) for c in self.coeffs]

    @classmethod
    def from_strings(cls, items: Sequence[str], kind: str = EXACT) -> TruncSeries:
        return cls([parse_scalar(s, kind) for s in items], kind)

    @classmethod
    def from_json(cls, text: str, kind: str = EXACT) -> TruncSeries:
        return cls.from_strings(json.loads(text), kind)


def _rebuild(coeffs: tuple, kind: str) -> TruncSeries:
    return TruncSeries._raw(coeffs, kind)


def _zero(kind: str):
    return Fraction(0) if kind == EXACT else 0.0


def _one(kind: str):
    return Fraction(1) if kind == EXACT else 1.0


def _check_kinds(a: TruncSeries, b: TruncSeries) -> None:
    if a.kind != b.kind:
        raise KindMismatch(f"cannot combine {a.kind} and {b.kind} series")


def _common(coeffs) -> tuple[list[int], int]:
    # exact coefficients as integer numerators over one shared denominator
    den = math.lcm(*[c.denominator for c in coeffs])
    if den == 1:
        return [c.numerator for c in coeffs], 1
    return [c.numerator * (den // c.denominator) for c in coeffs], den


def _from_common(nums, den: int) -> tuple:
    if den == 1:
        return tuple(Fraction(x) for x in nums)
    return tuple(Fraction(x, den) for x in nums)


def _conv(ac, bc, m: int, zero) -> list:
    out = [zero] * (m + 1)
    for i, x in enumerate(ac):
        if not x:
            continue
        for j, y in enumerate(bc[: m + 1 - i]):
            if y:
                out[i + j] += x * y
    return out


def mul_trunc(a: TruncSeries, b: TruncSeries, m: int) -> TruncSeries:
    """Return ``(a*b)`` truncated at order ``m``.

    Only coefficients ``0..m`` of the inputs are read; shorter inputs are
    treated as zero-padded.
    """
    _check_kinds(a, b)
    if m < 0:
        raise SeriesError("order must be non-negative")
    ac, bc = a.coeffs[: m + 1], b.coeffs[: m + 1]
    if a.kind == FLOAT:
        return TruncSeries._raw(tuple(_conv(ac, bc, m, 0.0)), FLOAT)
    an, ad = _common(ac)
    bn, bd = _common(bc)
    return TruncSeries._raw(_from_common(_conv(an, bn, m, 0), ad * bd), EXACT)


def recip_one_plus(f: TruncSeries, m: int) -> TruncSeries:
    """Return ``1/(1+f)`` truncated at order ``m``; ``f`` must vanish at 0.

    Uses the convolution recurrence ``g_0 = 1``,
    ``g_k = -sum_{j=1..k} f_j g_{k-j}``.
    """
    if f.coeffs[0]:
        raise SeriesError("recip_one_plus needs a series with zero constant term")
    if m < 0:
        raise SeriesError("order must be non-negative")
    fc = f.truncate(m).coeffs
    exact = f.kind == EXACT
    den = 1
    if exact:
        # f = F/D gives g_k = G_k / D^k with G_k = -sum_j F_j D^(j-1) G_{k-j}
        fc, den = _common(fc)
    # skip the leading zeros of f once instead of testing inside the loop
    nz = [(j, c * den ** (j - 1)) for j, c in enumerate(fc) if j and c]
    g = [0] * (m + 1) if exact else [0.0] * (m + 1)
    g[0] = 1 if exact else 1.0
    for k in range(1, m + 1):
        acc = 0
        for j, c in nz:
            if j > k:
                break
            acc += c * g[k - j]
        g[k] = -acc
    if exact:
        if den == 1:
            return TruncSeries._raw(tuple(Fraction(c) for c in g), EXACT)
        return TruncSeries._raw(tuple(Fraction(c, den**k) for k, c in enumerate(g)), EXACT)
    return TruncSeries._raw(tuple(g), FLOAT)


def recip_one_plus_horner(f: TruncSeries, m: int) -> TruncSeries:
    """Nested-Horner reciprocal ``(...((-f)+1)*(-f)+1 ...)`` with ``m`` rounds.

    Cubic-time alternative to :func:`recip_one_plus`, kept as a cross-check.
    """
    if f.coeffs[0]:
        raise SeriesError("recip_one_plus needs a series with zero constant term")
    h = -f.truncate(m)
    one = TruncSeries.one(m, f.kind)
    acc = one
    for _ in range(m):
        acc = mul_trunc(acc, h, m) + one
    return acc


def integrate_logderiv(s: TruncSeries) -> TruncSeries:
    """Invert ``x d/dx``: divide coefficient k by k (constant term must be 0)."""
    if s.coeffs[0]:
        raise SeriesError("x*d/dx log Q has zero constant term; got a nonzero one")
    out = (_zero(s.kind),) + tuple(c / k for k, c in enumerate(s.coeffs) if k)
    return TruncSeries._raw(out, s.kind)


def eval_at(s: TruncSeries, t):
    """Horner evaluation of the truncated polynomial at ``t``."""
    if scalar_kind(t) != s.kind:
        raise KindMismatch(f"cannot evaluate a {s.kind} series at a {scalar_kind(t)} point")
    t = to_scalar(t, s.kind)
    acc = _zero(s.kind)
    for c in reversed(s.coeffs):
        acc = acc * t + c
    return acc


def sum_series(items: Iterable[TruncSeries], m: int, kind: str = EXACT) -> TruncSeries:
    """Ordered sum of series, all brought to order ``m``."""
    items = list(items)
    for s in items:
        if s.kind != kind:
            raise KindMismatch(f"cannot combine {kind} and {s.kind} series")
    if kind == FLOAT:
        total = [0.0] * (m + 1)
        for s in items:
            for k, c in enumerate(s.coeffs[: m + 1]):
                total[k] += c
        return TruncSeries._raw(tuple(total), FLOAT)
    # sum numerators over a shared denominator, normalise once at the end
    den = math.lcm(1, *[c.denominator for s in items for c in s.coeffs[: m + 1]])
    total = [0] * (m + 1)
    for s in items:
        for k, c in enumerate(s.coeffs[: m + 1]):
            if c:
                total[k] += c.numerator * (den // c.denominator)
    return TruncSeries._raw(_from_common(total, den), EXACT)
