"""Jump sequences of irrationals in (0, 1).

The jump sequence of ``xi`` lists the positions ``j_n = [n / xi]`` at which
``[k xi]`` increases.  Subsequence relations between jump sequences force
affine rational relations between the underlying numbers; the helpers here
test those relations exactly at a finite horizon.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, FieldMismatch, KotschickAnomaly, SubsequenceViolation
from .exactreal import Number, QuadExt


def _check_xi(xi: Number, name: str = "xi") -> QuadExt:
    x = QuadExt.coerce(xi)
    if x.is_rational:
        raise DomainError(f"{name}={x} must be irrational")
    if not (0 < x < 1):
        raise DomainError(f"{name}={x} must lie in (0, 1)")
    return x


@dataclass(frozen=True)
class JumpSequence:
    xi: QuadExt
    terms: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def __getitem__(self, i: int) -> int:
        return self.terms[i]


def _jump_term(inv: QuadExt, n: int) -> int:
    return inv.floor_mul(n)


def jump_sequence(xi: Number, N: int) -> JumpSequence:
    """First ``N`` jumps ``j_n = [n / xi]``, ``n = 1..N``."""
    x = _check_xi(xi)
    if N < 1:
        raise DomainError(f"horizon N must be positive, got {N}")
    inv = 1 / x
    terms = tuple(_jump_term(inv, n) for n in range(1, N + 1))
    for n, j in enumerate(terms, start=1):
        # j*xi <= n < (j+1)*xi
        if not (x.floor_mul(j) < n <= x.floor_mul(j + 1)):
            raise AssertionError(f"jump sandwich failed at n={n}, j={j} for xi={x}")
    return JumpSequence(x, terms)


def _is_jump(x: QuadExt, k: int) -> bool:
    return x.floor_mul(k + 1) - x.floor_mul(k) == 1


def is_jump(xi: Number, k: int) -> bool:
    """True iff ``[(k+1) xi] = [k xi] + 1``, i.e. ``k`` is some ``j_n(xi)``."""
    x = _check_xi(xi)
    if k < 1:
        raise DomainError(f"k must be positive, got {k}")
    return _is_jump(x, k)


@dataclass(frozen=True)
class SubsequenceCheck:
    holds: bool
    horizon: int
    witness: int | None = None  # first jump of xi2 that is not a jump of xi1

    def __bool__(self) -> bool:
        return self.holds


def is_jump_subsequence(xi2: Number, xi1: Number, N: int) -> SubsequenceCheck:
    """Check that ``j_1(xi2), ..., j_N(xi2)`` are all jumps of ``xi1``.

    Each floor is decided exactly per value, so the two arguments may come
    from different quadratic fields.
    """
    x2 = _check_xi(xi2, "xi2")
    x1 = _check_xi(xi1, "xi1")
    if N < 1:
        raise DomainError(f"horizon N must be positive, got {N}")
    inv = 1 / x2
    for n in range(1, N + 1):
        k = _jump_term(inv, n)
        if not _is_jump(x1, k):
            return SubsequenceCheck(False, N, k)
    return SubsequenceCheck(True, N)


@dataclass(frozen=True)
class AffineRelation:
    """``xi2 = slope * xi1 + offset`` with rational slope and offset."""

    slope: Fraction
    offset: Fraction
    degenerate: bool = False

    @property
    def sign(self) -> int:
        return (self.slope > 0) - (self.slope < 0)


def find_affine_relation(xi1: Number, xi2: Number) -> AffineRelation | None:
    """Solve ``xi2 = p*xi1 + q`` over Q in the coordinates ``{1, sqrt d}``.

    Two irrationals of the same quadratic field are always related.  The
    result is flagged degenerate when ``p == 0``, which cannot
    happen for two irrationals.
    """
    a = QuadExt.coerce(xi1)
    b = QuadExt.coerce(xi2)
    if not a.is_rational and not b.is_rational and a.d != b.d:
        raise FieldMismatch(f"{a} and {b} lie in different quadratic fields")
    a0, a1 = a.coords()
    b0, b1 = b.coords()
    if a1 != 0:
        p = b1 / a1
        return AffineRelation(p, b0 - p * a0, degenerate=(p == 0))
    if b1 != 0:
        return None
    # both rational: take the constant relation
    return AffineRelation(Fraction(0), b0, degenerate=True)


def find_common_jump(xi2: Number, xi3: Number, bound: int) -> int | None:
    """Smallest ``k <= bound`` that is a jump of both ``xi2`` and ``xi3``."""
    x2 = _check_xi(xi2, "xi2")
    x3 = _check_xi(xi3, "xi3")
    inv = 1 / x2
    n = 1
    while True:
        k = _jump_term(inv, n)
        if k > bound:
            return None
        if _is_jump(x3, k):
            return k
        n += 1


@dataclass(frozen=True)
class KotschickCheck:
    factor: int | None
    subsequence: SubsequenceCheck


def kotschick_factor(xi1: Number, xi2: Number, N: int) -> KotschickCheck:
    """Test whether ``xi1 = k * xi2`` for a positive integer ``k``.

    For ``xi1 <= 1/2`` a jump subsequence forces such a ``k``.  A verified
    subsequence without an integer ratio is reported with a
    ``KotschickAnomaly`` warning.
    """
    x1 = _check_xi(xi1, "xi1")
    x2 = _check_xi(xi2, "xi2")
    if x1 > Fraction(1, 2):
        raise DomainError(f"xi1={x1} exceeds 1/2")
    sub = is_jump_subsequence(x2, x1, N)
    if x1.d != x2.d:
        ratio = None
    else:
        ratio = x1 / x2
    factor = None
    if ratio is not None and ratio.is_rational:
        f = ratio.as_fraction()
        if f.denominator == 1 and f > 0:
            factor = f.numerator
    if factor is None and sub.holds:
        warnings.warn(
            f"j({x2}) is a subsequence of j({x1}) to horizon {N} but {x1}/{x2} is not a positive integer",
            KotschickAnomaly,
            stacklevel=2,
        )
    return KotschickCheck(factor, sub)


def jump_index_map(xi1: Number, xi2: Number, N: int) -> list[int]:
    """``m(1..N)`` with ``j_n(xi2) = j_{m(n)}(xi1)``."""
    x1 = _check_xi(xi1, "xi1")
    x2 = _check_xi(xi2, "xi2")
    inv = 1 / x2
    out = []
    for n in range(1, N + 1):
        k = _jump_term(inv, n)
        if not _is_jump(x1, k):
            raise SubsequenceViolation(f"j_{n}({x2}) = {k} is not a jump of {x1}", k)
        # the jump at k is the m-th one, m = [(k+1) xi1]
        out.append(x1.floor_mul(k + 1))
    return out


@dataclass(frozen=True)
class DefectReport:
    defect: int
    bound: int  # [3 xi1]
    horizon: int


def quasimorphism_defect(xi1: Number, xi2: Number, N: int) -> DefectReport:
    """Largest ``|m(a+b) - m(a) - m(b)|`` over ``a + b <= N``."""
    if N < 2:
        raise DomainError(f"defect needs horizon N >= 2, got {N}")
    m = [0] + jump_index_map(xi1, xi2, N)
    worst = 0
    for a in range(1, N):
        ma = m[a]
        for b in range(a, N - a + 1):
            dev = abs(m[a + b] - ma - m[b])
            if dev > worst:
                worst = dev
    return DefectReport(worst, QuadExt.coerce(xi1).floor_mul(3), N)
