"""Exact scalars: elements of a real quadratic field and certified linear
combinations of named irrational constants.

``QuadExt`` stores ``(p + q*sqrt(d)) / s`` with integer coordinates.  Every
comparison and floor is decided with integer arithmetic only, so there is no
rounding anywhere.  Rationals are ``QuadExt`` values with ``q == 0``; they
combine with elements of any field.

``LinComb`` handles values such as ``5*(sqrt(2)-1) + 3*(sqrt(3)-1)`` that do
not fit in a single quadratic field.  Floors are certified by refining
interval enclosures of the basis constants.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from math import gcd, isqrt
from typing import Callable, Iterable, Sequence, Union

from .errors import (
    DivisionByZero,
    DomainError,
    FieldMismatch,
    PrecisionExhausted,
    RationalInput,
)

__all__ = [
    "QuadExt",
    "ContinuedFraction",
    "Constant",
    "LinComb",
    "quad_arith",
    "quad_floor",
    "quad_compare",
    "continued_fraction",
    "convergents",
    "lincomb_floor",
    "parse_scalar",
    "squarefree_decompose",
    "default_max_bits",
    "START_BITS",
]

Number = Union[int, Fraction, "QuadExt"]

START_BITS = 128
_DEFAULT_MAX_BITS = 16384
MAX_BITS_ENV = "REEBSPEC_MAX_BITS"


def default_max_bits() -> int:
    """Precision cap for certified floors; overridable through ``REEBSPEC_MAX_BITS``."""
    raw = os.environ.get(MAX_BITS_ENV)
    if raw is None:
        return _DEFAULT_MAX_BITS
    try:
        bits = int(raw)
    except ValueError as exc:
        raise DomainError(f"{MAX_BITS_ENV}={raw!r} is not an integer") from exc
    if bits < START_BITS:
        raise DomainError(f"{MAX_BITS_ENV}={bits} is below the starting precision {START_BITS}")
    return bits


def squarefree_decompose(n: int) -> tuple[int, int]:
    """Return ``(f, c)`` with ``n == f*f*c`` and ``c`` squarefree."""
    if n <= 0:
        raise DomainError(f"squarefree_decompose needs a positive integer, got {n}")
    f, c = 1, 1
    m = n
    p = 2
    while p * p <= m:
        e = 0
        while m % p == 0:
            m //= p
            e += 1
        f *= p ** (e // 2)
        if e % 2:
            c *= p
        p += 1 if p == 2 else 2
    return f, c * m


def _is_squarefree(d: int) -> bool:
    return d > 1 and squarefree_decompose(d)[0] == 1


# ---------------------------------------------------------------------------
# QuadExt
# ---------------------------------------------------------------------------


@total_ordering
class QuadExt:
    """Exact element ``(p + q*sqrt(d)) / s`` of the real quadratic field Q(sqrt d).

    Values are normalized on construction (``s > 0`` and
    ``gcd(p, q, s) == 1``) so equality is a coordinate check.  A rational
    value has ``q == 0`` and may carry ``d=None``.
    """

    __slots__ = ("p", "q", "s", "d")

    def __init__(self, p: int, q: int = 0, s: int = 1, d: int | None = None) -> None:
        if not all(isinstance(v, int) for v in (p, q, s)):
            raise TypeError("QuadExt coordinates must be integers")
        if s == 0:
            raise DivisionByZero(f"zero denominator in ({p}+{q}*sqrt({d}))/0")
        if d is not None and not _is_squarefree(d):
            raise DomainError(f"field tag d={d} must be a squarefree integer > 1")
        if q != 0 and d is None:
            raise DomainError("irrational part given without a field tag d")
        if s < 0:
            p, q, s = -p, -q, -s
        g = gcd(gcd(p, q), s)
        if g > 1:
            p, q, s = p // g, q // g, s // g
        self.p = p
        self.q = q
        self.s = s
        self.d = d

    # -- constructors -----------------------------------------------------

    @classmethod
    def coerce(cls, x: Number) -> "QuadExt":
        if isinstance(x, QuadExt):
            return x
        if isinstance(x, bool):
            raise TypeError("bool is not a scalar")
        if isinstance(x, int):
            return cls(x)
        if isinstance(x, Fraction):
            return cls(x.numerator, 0, x.denominator)
        raise TypeError(f"cannot convert {type(x).__name__} to QuadExt")

    @classmethod
    def sqrt(cls, n: int | Fraction) -> "QuadExt":
        """Exact square root of a non-negative rational."""
        n = Fraction(n)
        if n < 0:
            raise DomainError(f"sqrt of negative value {n}")
        if n == 0:
            return cls(0)
        # sqrt(a/b) = sqrt(a*b)/b
        a, b = n.numerator, n.denominator
        f, c = squarefree_decompose(a * b)
        if c == 1:
            return cls(f, 0, b)
        return cls(0, f, b, c)

    @classmethod
    def parse(cls, text: str) -> "QuadExt":
        return parse_scalar(text)

    # -- inspection -------------------------------------------------------

    @property
    def is_rational(self) -> bool:
        return self.q == 0

    def as_fraction(self) -> Fraction:
        if self.q != 0:
            raise DomainError(f"{self} is irrational")
        return Fraction(self.p, self.s)

    def coords(self) -> tuple[Fraction, Fraction]:
        """Rational coordinates ``(a, b)`` with value ``a + b*sqrt(d)``."""
        return Fraction(self.p, self.s), Fraction(self.q, self.s)

    @classmethod
    def from_coords(cls, a: Fraction, b: Fraction, d: int | None) -> "QuadExt":
        a, b = Fraction(a), Fraction(b)
        if b == 0:
            return cls(a.numerator, 0, a.denominator, d)
        den = a.denominator * b.denominator // gcd(a.denominator, b.denominator)
        return cls(a.numerator * (den // a.denominator), b.numerator * (den // b.denominator), den, d)

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.p, -self.q, self.s, self.d)

    def norm(self) -> Fraction:
        return Fraction(self.p * self.p - self.q * self.q * (self.d or 0), self.s * self.s)

    def sign(self) -> int:
        """Sign of the value, decided by comparing squares."""
        p, q = self.p, self.q
        if q == 0:
            return (p > 0) - (p < 0)
        if p >= 0 and q > 0:
            return 1
        if p <= 0 and q < 0:
            return -1
        # opposite signs: |p| vs |q|*sqrt(d); never equal since d is not a square
        if p * p > q * q * self.d:
            return 1 if p > 0 else -1
        return 1 if q > 0 else -1

    def floor(self) -> int:
        return quad_floor(self)

    def ceil(self) -> int:
        return -quad_floor(-self)

    def frac(self) -> "QuadExt":
        """Fractional part, in [0, 1)."""
        return self - quad_floor(self)

    def floor_mul(self, k: int) -> int:
        """``floor(k * self)`` without building the intermediate value."""
        p, q, s = self.p, self.q, self.s
        if q == 0:
            return (k * p) // s
        t = k * q
        if t == 0:
            return (k * p) // s
        r = isqrt(t * t * self.d)
        m = r if t > 0 else -r - 1
        return (k * p + m) // s

    def scaled_floor(self, bits: int) -> int:
        """``floor(self * 2**bits)``."""
        return quad_floor(self * (1 << bits))

    def enclose(self, bits: int) -> tuple[Fraction, Fraction]:
        """Dyadic enclosure ``lo <= self <= hi`` of width at most ``2**-bits``."""
        f = self.scaled_floor(bits)
        lo = Fraction(f, 1 << bits)
        if self.q == 0 and lo == self.as_fraction():
            return lo, lo
        return lo, Fraction(f + 1, 1 << bits)

    def decimal(self, digits: int = 12) -> str:
        """Decimal string truncated toward zero. Display only."""
        sign = "-" if self.sign() < 0 else ""
        whole, rest = divmod(quad_floor(abs(self) * 10**digits), 10**digits)
        if digits == 0:
            return f"{sign}{whole}"
        return f"{sign}{whole}.{rest:0{digits}d}"

    def __float__(self) -> float:
        return float(Fraction(self.scaled_floor(64), 1 << 64))

    # -- arithmetic -------------------------------------------------------

    def _field_with(self, other: "QuadExt") -> int | None:
        if self.q != 0 and other.q != 0:
            if self.d != other.d:
                raise FieldMismatch(f"{self} and {other} lie in different quadratic fields")
            return self.d
        if self.q != 0:
            return self.d
        if other.q != 0:
            return other.d
        return self.d if self.d is not None else other.d

    def __add__(self, other: Number) -> "QuadExt":
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field_with(o)
        return QuadExt(self.p * o.s + o.p * self.s, self.q * o.s + o.q * self.s, self.s * o.s, d)

    __radd__ = __add__

    def __neg__(self) -> "QuadExt":
        return QuadExt(-self.p, -self.q, self.s, self.d)

    def __pos__(self) -> "QuadExt":
        return self

    def __abs__(self) -> "QuadExt":
        return -self if self.sign() < 0 else self

    def __sub__(self, other: Number) -> "QuadExt":
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other: Number) -> "QuadExt":
        return QuadExt.coerce(other) - self

    def __mul__(self, other: Number) -> "QuadExt":
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        d = self._field_with(o)
        dd = d or 0
        return QuadExt(
            self.p * o.p + self.q * o.q * dd,
            self.p * o.q + self.q * o.p,
            self.s * o.s,
            d,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Number) -> "QuadExt":
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        if o.p == 0 and o.q == 0:
            raise DivisionByZero(f"division of {self} by zero")
        d = self._field_with(o)
        dd = d or 0
        den = o.p * o.p - o.q * o.q * dd
        return QuadExt(
            (self.p * o.p - self.q * o.q * dd) * o.s,
            (self.q * o.p - self.p * o.q) * o.s,
            self.s * den,
            d,
        )

    def __rtruediv__(self, other: Number) -> "QuadExt":
        return QuadExt.coerce(other) / self

    def __pow__(self, n: int) -> "QuadExt":
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return QuadExt(1) / (self ** (-n))
        result = QuadExt(1, 0, 1, self.d)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparison -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            other = QuadExt.coerce(other)
        if not isinstance(other, QuadExt):
            return NotImplemented
        if self.q == 0 and other.q == 0:
            return self.p == other.p and self.s == other.s
        return (self.p, self.q, self.s, self.d) == (other.p, other.q, other.s, other.d)

    def __lt__(self, other: Number) -> bool:
        try:
            o = QuadExt.coerce(other)
        except TypeError:
            return NotImplemented
        return (self - o).sign() < 0

    def __hash__(self) -> int:
        if self.q == 0:
            return hash(Fraction(self.p, self.s))
        return hash((self.p, self.q, self.s, self.d))

    def __bool__(self) -> bool:
        return self.p != 0 or self.q != 0

    # -- text -------------------------------------------------------------

    def __str__(self) -> str:
        if self.q == 0:
            return f"{self.p}" if self.s == 1 else f"{self.p}/{self.s}"
        op = "+" if self.q >= 0 else "-"
        return f"({self.p}{op}{abs(self.q)}*sqrt({self.d}))/{self.s}"

    def __repr__(self) -> str:
        return f"QuadExt({self.p}, {self.q}, {self.s}, d={self.d})"


def quad_arith(a: Number, b: Number, op: str) -> QuadExt:
    """Apply ``op`` in {add, sub, mul, div} to two field elements."""
    a, b = QuadExt.coerce(a), QuadExt.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise DomainError(f"unknown operation {op!r}")


def quad_floor(a: Number) -> int:
    """Largest integer ``f`` with ``f <= a``.

    For ``q != 0`` the irrational part ``q*sqrt(d)`` lies strictly between
    consecutive integers ``m`` and ``m+1`` where ``m`` comes from ``isqrt``;
    no multiple of ``s`` lies in ``(p+m, p+m+1]`` beyond ``p+m`` itself, so
    the answer is ``(p+m) // s``.
    """
    a = QuadExt.coerce(a)
    if a.q == 0:
        return a.p // a.s
    r = isqrt(a.q * a.q * a.d)
    m = r if a.q > 0 else -r - 1
    return (a.p + m) // a.s


def quad_compare(a: Number, b: Number) -> int:
    """Exact three-way comparison: -1, 0 or 1."""
    a, b = QuadExt.coerce(a), QuadExt.coerce(b)
    return (a - b).sign()


# ---------------------------------------------------------------------------
# continued fractions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ContinuedFraction:
    terms: tuple[int, ...]
    preperiod: tuple[int, ...]
    period: tuple[int, ...]

    def term(self, i: int) -> int:
        pre = len(self.preperiod)
        if i < pre:
            return self.preperiod[i]
        return self.period[(i - pre) % len(self.period)]


def continued_fraction(a: Number, n_terms: int) -> ContinuedFraction:
    """Partial quotients of a quadratic irrational with its detected period.

    Iterates ``x -> 1/(x - floor(x))`` in exact arithmetic.  Complete
    quotients of a quadratic irrational repeat (Lagrange), so the loop stops
    as soon as a normalized state recurs.
    """
    a = QuadExt.coerce(a)
    if a.q == 0:
        raise RationalInput(f"continued fraction of rational {a} is finite; irrational input required")
    if n_terms < 0:
        raise DomainError("n_terms must be non-negative")
    seen: dict[tuple[int, int, int], int] = {}
    quotients: list[int] = []
    x = a
    while True:
        state = (x.p, x.q, x.s)
        if state in seen:
            start = seen[state]
            pre = tuple(quotients[:start])
            per = tuple(quotients[start:])
            break
        seen[state] = len(quotients)
        f = quad_floor(x)
        quotients.append(f)
        x = 1 / (x - f)
    cf = ContinuedFraction((), pre, per)
    return ContinuedFraction(tuple(cf.term(i) for i in range(n_terms)), pre, per)


def convergents(terms: Iterable[int]) -> list[tuple[int, int]]:
    """Convergents ``(h_n, k_n)`` of a continued fraction."""
    out = []
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    for t in terms:
        h0, h1 = h1, t * h1 + h0
        k0, k1 = k1, t * k1 + k0
        out.append((h1, k1))
    return out


# ---------------------------------------------------------------------------
# LinComb
# ---------------------------------------------------------------------------

Oracle = Callable[[int], tuple[int, int]]


class Constant:
    """A named real constant with a certified enclosure oracle.

    ``oracle(bits)`` returns integers ``(lo, hi)`` with
    ``lo / 2**bits <= value <= hi / 2**bits``.  Results are intersected with
    every coarser enclosure seen so far, so refinements are nested.
    """

    def __init__(self, name: str, oracle: Oracle, exact: Fraction | None = None) -> None:
        self.name = name
        self._oracle = oracle
        self.exact = exact
        self._cache: dict[int, tuple[int, int]] = {}

    def enclosure(self, bits: int) -> tuple[int, int]:
        hit = self._cache.get(bits)
        if hit is not None:
            return hit
        lo, hi = self._oracle(bits)
        for b, (clo, chi) in self._cache.items():
            if b < bits:
                shift = bits - b
                lo = max(lo, clo << shift)
                hi = min(hi, chi << shift)
        if lo > hi:
            raise PrecisionExhausted(f"oracle for {self.name} returned a non-nested enclosure at {bits} bits")
        self._cache[bits] = (lo, hi)
        return lo, hi

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Constant) and other.name == self.name

    def __hash__(self) -> int:
        return hash(self.name)

    def __repr__(self) -> str:
        return f"Constant({self.name!r})"


def _sqrt_oracle(n: int) -> Oracle:
    def oracle(bits: int) -> tuple[int, int]:
        lo = isqrt(n << (2 * bits))
        return lo, lo if lo * lo == n << (2 * bits) else lo + 1

    return oracle


_ONE = Constant("1", lambda bits: (1 << bits, 1 << bits), exact=Fraction(1))
_REGISTRY: dict[str, Constant] = {"1": _ONE}
_SQRT_NAME = re.compile(r"^sqrt\((\d+)\)$")


def constant(name: str) -> Constant:
    """Look up (or build) a named constant. Knows ``1`` and ``sqrt(n)``."""
    key = name.replace(" ", "")
    c = _REGISTRY.get(key)
    if c is not None:
        return c
    m = _SQRT_NAME.match(key)
    if not m:
        raise DomainError(f"unknown constant {name!r}; register it with register_constant()")
    n = int(m.group(1))
    c = Constant(key, _sqrt_oracle(n))
    _REGISTRY[key] = c
    return c


def register_constant(c: Constant) -> Constant:
    _REGISTRY[c.name] = c
    return c


def _as_fraction(x: object) -> Fraction:
    if isinstance(x, QuadExt):
        return x.as_fraction()
    if isinstance(x, str):
        return Fraction(x.strip())
    return Fraction(x)  # type: ignore[arg-type]


class LinComb:
    """Rational combination ``sum c_i * basis_i`` with ``basis[0] == 1``.

    The basis is assumed linearly independent over Q; that is the caller's
    promise and is not checked.
    """

    __slots__ = ("basis", "coeffs")

    def __init__(self, basis: Sequence[Constant | str], coeffs: Sequence[object]) -> None:
        b = tuple(constant(x) if isinstance(x, str) else x for x in basis)
        if not b or b[0] is not _ONE:
            raise DomainError("LinComb basis must start with the constant 1")
        if len(set(b)) != len(b):
            raise DomainError("LinComb basis has repeated constants")
        c = tuple(_as_fraction(x) for x in coeffs)
        if len(c) != len(b):
            raise DomainError(f"{len(c)} coefficients for a basis of size {len(b)}")
        self.basis = b
        self.coeffs = c

    @classmethod
    def rational(cls, value: object, basis: Sequence[Constant | str]) -> "LinComb":
        b = tuple(constant(x) if isinstance(x, str) else x for x in basis)
        return cls(b, (_as_fraction(value),) + (Fraction(0),) * (len(b) - 1))

    @classmethod
    def from_quad(cls, x: Number, basis: Sequence[Constant | str] | None = None) -> "LinComb":
        """Embed a quadratic-field value over the basis ``{1, sqrt(d)}``."""
        x = QuadExt.coerce(x)
        a, b = x.coords()
        if basis is None:
            if x.d is None:
                return cls(("1",), (a,))
            basis = ("1", f"sqrt({x.d})")
        names = [c if isinstance(c, str) else c.name for c in basis]
        coeffs = [Fraction(0)] * len(names)
        coeffs[0] = a
        if b != 0:
            coeffs[names.index(f"sqrt({x.d})")] = b
        return cls(basis, coeffs)

    @classmethod
    def from_json(cls, obj: dict) -> "LinComb":
        try:
            return cls(list(obj["basis"]), list(obj["coeffs"]))
        except KeyError as exc:
            raise DomainError(f"LinComb JSON missing key {exc}") from exc

    def to_json(self) -> dict:
        return {"basis": [c.name for c in self.basis], "coeffs": [str(c) for c in self.coeffs]}

    @property
    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def _check(self, other: "LinComb") -> None:
        if other.basis != self.basis:
            raise FieldMismatch(f"LinComb bases differ: {self.basis} vs {other.basis}")

    def _lift(self, other: object) -> "LinComb":
        if isinstance(other, LinComb):
            self._check(other)
            return other
        return LinComb.rational(other, self.basis)

    def __add__(self, other: object) -> "LinComb":
        o = self._lift(other)
        return LinComb(self.basis, [a + b for a, b in zip(self.coeffs, o.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "LinComb":
        return LinComb(self.basis, [-a for a in self.coeffs])

    def __sub__(self, other: object) -> "LinComb":
        return self + (-self._lift(other))

    def __rsub__(self, other: object) -> "LinComb":
        return self._lift(other) - self

    def __mul__(self, k: object) -> "LinComb":
        if isinstance(k, LinComb):
            return NotImplemented
        f = _as_fraction(k)
        return LinComb(self.basis, [a * f for a in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LinComb):
            return NotImplemented
        return self.basis == other.basis and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.basis, self.coeffs))

    def enclose_scaled(self, bits: int) -> tuple[int, int]:
        """Integers ``(lo, hi)`` with ``lo/2**bits <= self <= hi/2**bits``."""
        lo_total = 0
        hi_total = 0
        for c, k in zip(self.coeffs, self.basis):
            if c == 0:
                continue
            lo, hi = k.enclosure(bits)
            a, b = c.numerator, c.denominator
            x, y = a * lo, a * hi
            if x > y:
                x, y = y, x
            lo_total += x // b
            hi_total += -((-y) // b)
        return lo_total, hi_total

    def enclose(self, bits: int) -> tuple[Fraction, Fraction]:
        lo, hi = self.enclose_scaled(bits)
        return Fraction(lo, 1 << bits), Fraction(hi, 1 << bits)

    def floor(self, max_bits: int | None = None) -> int:
        return lincomb_floor(self, max_bits)

    def frac(self, max_bits: int | None = None) -> "LinComb":
        """Representative in [0, 1)."""
        return self - lincomb_floor(self, max_bits)

    def __float__(self) -> float:
        lo, hi = self.enclose_scaled(64)
        return float(Fraction(lo + hi, 1 << 65))

    def __str__(self) -> str:
        parts = []
        for c, k in zip(self.coeffs, self.basis):
            if c == 0:
                continue
            parts.append(f"{c}" if k is _ONE else f"{c}*{k.name}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"LinComb({self.to_json()!r})"


def lincomb_floor(x: LinComb, max_bits: int | None = None) -> int:
    """Certified floor of ``x``.

    Rational inputs short-circuit.  Otherwise the enclosure is refined from
    128 bits, doubling, until it contains no integer other than possibly its
    lower end.
    """
    if x.is_rational:
        c = x.coeffs[0]
        return c.numerator // c.denominator
    cap = default_max_bits() if max_bits is None else max_bits
    bits = START_BITS
    while True:
        lo, hi = x.enclose_scaled(bits)
        fl = lo >> bits
        if hi < (fl + 1) << bits:
            return fl
        if bits >= cap:
            raise PrecisionExhausted(
                f"could not certify floor of {x} within {cap} bits; value is suspiciously close to an integer"
            )
        bits = min(2 * bits, cap)


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_INT = r"[+-]?\d+"
_SURD = r"({_INT})\s*([+-])\s*(?:(\d+)\s*\*\s*)?sqrt\(\s*(\d+)\s*\)".format(_INT=_INT)
# "(p+q*sqrt(d))/s"; without parentheses no denominator is allowed
_QUAD_RE = re.compile(rf"^\(\s*{_SURD}\s*\)\s*(?:/\s*(\d+))?$|^{_SURD}$")
_SQRT_RE = re.compile(rf"^(?:({_INT})\s*\*\s*|([+-]))?sqrt\(\s*(\d+)\s*\)\s*(?:/\s*(\d+))?$")
# "q*sqrt(d)+p" with the surd written first
_SURD_FIRST_RE = re.compile(rf"^(?:({_INT})\s*\*\s*|([+-]))?sqrt\(\s*(\d+)\s*\)\s*([+-])\s*(\d+)$")
_RAT_RE = re.compile(rf"^({_INT})\s*(?:/\s*(\d+))?$")


def parse_scalar(text: str) -> QuadExt:
    """Parse ``"(p+q*sqrt(d))/s"``, ``"p+q*sqrt(d)"``, ``"sqrt(d)-p"``, ``"q*sqrt(d)/s"``,
    ``"-sqrt(d)"`` or ``"p/s"``; a coefficient ``q`` of 1 may be omitted.

    A non-squarefree radicand is reduced, so ``sqrt(8)`` becomes ``2*sqrt(2)``.
    """
    t = text.strip()
    m = _QUAD_RE.match(t)
    if m:
        g = m.groups()
        p, op, q, d, s = g[:5] if g[0] is not None else (*g[5:], None)
        qv = int(q or 1) if op == "+" else -int(q or 1)
        return (int(p) + qv * QuadExt.sqrt(int(d))) / int(s or 1)
    m = _SQRT_RE.match(t)
    if m:
        q, sign, d, s = m.groups()
        qv = int(q) if q is not None else (-1 if sign == "-" else 1)
        return qv * QuadExt.sqrt(int(d)) / int(s or 1)
    m = _SURD_FIRST_RE.match(t)
    if m:
        q, sign, d, op, p = m.groups()
        qv = int(q) if q is not None else (-1 if sign == "-" else 1)
        return qv * QuadExt.sqrt(int(d)) + (int(p) if op == "+" else -int(p))
    m = _RAT_RE.match(t)
    if m:
        p, s = m.groups()
        if s is not None and int(s) == 0:
            raise DivisionByZero(f"zero denominator in {text!r}")
        return QuadExt(int(p), 0, int(s or 1))
    raise DomainError(f"cannot parse scalar {text!r}; expected \"(p+q*sqrt(d))/s\" or \"p/s\"")
