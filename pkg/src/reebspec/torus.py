"""Translations of the flat torus T^n = R^n / Z^n.

The orbit of 0 under translation by ``xi`` is dense in finitely many
translates of an ``l``-dimensional subtorus, where ``l + 1`` is the rank of
``{xi_1, ..., xi_n, 1}`` over Q.  Everything here is computed from the
rational coordinate vectors of the ``xi_i`` in a declared basis, so relations
are found exactly rather than guessed from decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from . import _linalg
from .errors import DomainError, FieldMismatch, NotFound
from .exactreal import LinComb, Number, QuadExt, convergents, continued_fraction, quad_floor


class TorusTranslation:
    """Translation of T^n by a vector of ``LinComb`` values over one basis.

    Coordinates are reduced into [0, 1) on construction.
    """

    def __init__(self, xi: Sequence[LinComb]) -> None:
        if not xi:
            raise DomainError("torus translation needs at least one coordinate")
        basis = xi[0].basis
        for x in xi[1:]:
            if x.basis != basis:
                raise FieldMismatch("torus coordinates must share one LinComb basis")
        self.basis = basis
        self.xi = tuple(x.frac() for x in xi)

    @classmethod
    def from_scalars(cls, values: Sequence[Number], basis: Sequence[str] | None = None) -> "TorusTranslation":
        """Build from rationals / quadratic values, embedding them in a common basis."""
        quads = [QuadExt.coerce(v) for v in values]
        if basis is None:
            ds = sorted({q.d for q in quads if not q.is_rational})
            basis = ["1"] + [f"sqrt({d})" for d in ds]
        return cls([LinComb.from_quad(q, basis) for q in quads])

    @property
    def n(self) -> int:
        return len(self.xi)

    def coordinate_rows(self) -> list[list[Fraction]]:
        """Coordinate vectors of ``xi_1, ..., xi_n, 1`` (one per row)."""
        one = [Fraction(1)] + [Fraction(0)] * (len(self.basis) - 1)
        return [list(x.coeffs) for x in self.xi] + [one]

    def to_json(self) -> dict:
        return {"xi": [x.to_json() for x in self.xi]}

    @classmethod
    def from_json(cls, obj: dict) -> "TorusTranslation":
        try:
            return cls([LinComb.from_json(x) for x in obj["xi"]])
        except (KeyError, TypeError) as exc:
            raise DomainError(f"torus JSON must look like {{\"xi\": [LinComb, ...]}}: {exc}") from exc


def rational_span_dim(t: TorusTranslation) -> int:
    """``dim_Q span(xi_1, ..., xi_n, 1)``."""
    return _linalg.rank_q(t.coordinate_rows())


def relation_lattice(t: TorusTranslation) -> list[list[int]]:
    """Hermite basis of ``{m in Z^(n+1) : m_1 xi_1 + ... + m_n xi_n + m_(n+1) = 0}``."""
    rows = t.coordinate_rows()
    nb = len(t.basis)
    # one equation per basis constant, columns indexed by (xi_1, ..., xi_n, 1)
    eqs = [_linalg.clear_denominators([r[b] for r in rows]) for b in range(nb)]
    eqs = [e for e in eqs if any(e)]
    return _linalg.integer_kernel(eqs, t.n + 1)


def orbit_points(t: TorusTranslation, M: int) -> list[tuple[LinComb, ...]]:
    """``tau^m(0)`` for ``m = 0..M``, reduced exactly into [0, 1)^n."""
    if M < 0:
        raise DomainError(f"M must be non-negative, got {M}")
    return [tuple((m * x).frac() for x in t.xi) for m in range(M + 1)]


@dataclass(frozen=True)
class ClosureDescription:
    relations: tuple[tuple[int, ...], ...]
    dimension: int  # l
    cosets: int  # d
    directions: tuple[tuple[int, ...], ...]  # integer spanning vectors of the subtorus
    representatives: tuple[tuple[LinComb, ...], ...]

    def to_json(self) -> dict:
        return {
            "relations": [list(r) for r in self.relations],
            "dimension": self.dimension,
            "cosets": self.cosets,
            "directions": [list(v) for v in self.directions],
            "representatives": [[x.to_json() for x in p] for p in self.representatives],
        }


def character_lattice(relations: Sequence[Sequence[int]]) -> list[list[int]]:
    """``{m in Z^n : m . xi in Z}``: relations with the constant term dropped."""
    return [list(r[:-1]) for r in relations]


def closure_description(t: TorusTranslation) -> ClosureDescription:
    """Describe the orbit closure as ``d`` translates of an ``l``-torus.

    The closure is the annihilator of the character lattice ``A``.  Its
    identity component is spanned by the integer kernel of ``A`` and the
    number of components is the index of ``A`` in its saturation, i.e. the
    gcd of the maximal minors of a basis of ``A``.
    """
    rel = relation_lattice(t)
    chars = character_lattice(rel)
    n = t.n
    l = n - len(chars)
    d = _linalg.gcd_maximal_minors(chars)
    directions = _linalg.integer_kernel(chars, n) if chars else [[int(i == j) for j in range(n)] for i in range(n)]
    reps = orbit_points(t, d - 1)
    return ClosureDescription(
        tuple(map(tuple, rel)),
        l,
        d,
        tuple(map(tuple, directions)),
        tuple(reps),
    )


def satisfies_relations(point: Sequence[LinComb], relations: Sequence[Sequence[int]]) -> bool:
    """Exact check that ``m . point`` is an integer for every relation ``m``."""
    for rel in relations:
        total = sum((c * x for c, x in zip(rel, point)), LinComb.rational(0, point[0].basis))
        if not total.is_rational or total.coeffs[0].denominator != 1:
            return False
    return True


@dataclass(frozen=True)
class DensityReport:
    dense: bool
    worst_gap: float
    eps: Fraction
    orbit_length: int
    net_size: int
    relations_exact: bool

    def __bool__(self) -> bool:
        return self.dense


_FLOAT_SLACK = 1e-12
_MAX_NET = 5_000_000


def _to_unit_floats(points: Sequence[Sequence[LinComb]]) -> np.ndarray:
    arr = np.array([[float(x) for x in p] for p in points], dtype=float)
    arr = np.mod(arr, 1.0)
    arr[arr >= 1.0] = 0.0
    return arr


def closure_net(desc: ClosureDescription, n: int, eps: Fraction) -> np.ndarray:
    """Sup-metric net of the described closure with spacing ``eps / 2``."""
    reps = _to_unit_floats(desc.representatives)
    l = desc.dimension
    if l == 0:
        return reps
    w = np.array(desc.directions, dtype=float)
    reach = sum(max(abs(c) for c in v) for v in desc.directions)
    steps = max(1, math.ceil(2 * reach / eps))
    size = len(reps) * steps**l
    if size > _MAX_NET:
        raise DomainError(f"eps={eps} needs a net of {size} points; raise eps")
    grid = np.array(list(product(range(steps), repeat=l)), dtype=float) / steps
    pts = grid @ w
    net = (reps[:, None, :] + pts[None, :, :]).reshape(-1, n)
    net = np.mod(net, 1.0)
    net[net >= 1.0] = 0.0
    return net


def density_check(t: TorusTranslation, eps: Number | float | str, M: int) -> DensityReport:
    """Finite certificate that the orbit fills its closure up to ``eps``.

    Every point of an ``eps/2``-net of the closure must be within ``eps``
    (sup metric on the torus) of one of ``tau^0(0), ..., tau^M(0)``.  Each
    orbit point is also checked exactly against every relation.  Orbit
    coordinates are certified to 2**-64 before the float neighbour search,
    far below the slack kept against ``eps``.
    """
    eps_q = Fraction(eps) if not isinstance(eps, QuadExt) else eps.as_fraction()
    if eps_q <= 0:
        raise DomainError(f"eps must be positive, got {eps}")
    if M < 1:
        raise DomainError(f"M must be at least 1, got {M}")
    desc = closure_description(t)
    orbit = orbit_points(t, M)
    exact = all(satisfies_relations(p, desc.relations) for p in orbit) if desc.relations else True
    data = _to_unit_floats(orbit)
    net = closure_net(desc, t.n, eps_q)
    tree = cKDTree(data, boxsize=1.0)
    dist, _ = tree.query(net, k=1, p=np.inf)
    worst = float(np.max(dist)) if len(dist) else 0.0
    dense = exact and worst + _FLOAT_SLACK < float(eps_q)
    return DensityReport(dense, worst, eps_q, M + 1, len(net), exact)


# ---------------------------------------------------------------------------
# rotations of a circle R / vZ
# ---------------------------------------------------------------------------


def circle_distance(x: QuadExt, target: QuadExt, v: int) -> QuadExt:
    """Exact distance between ``x`` and ``target`` on ``R / vZ``."""
    z = x - target
    w = z - v * quad_floor(z / v)
    other = v - w
    return w if w < other else other


def _first_in_range(a: int, m: int, lo: int, hi: int) -> int | None:
    """Smallest ``x >= 0`` with ``lo <= (a*x) mod m <= hi``; ``0 <= lo <= hi < m``."""
    a %= m
    if lo == 0:
        return 0
    if a == 0:
        return None
    x = -(-lo // a)
    if a * x <= hi:
        return x
    y = _first_in_range((a - m % a) % a, a, lo % a, hi % a)
    if y is None:
        return None
    return -(-(lo + m * y) // a)


def _first_hit_rational(a: int, m: int, lo: int, hi: int, start: int) -> int | None:
    """Smallest ``k >= start`` with ``(a*k) mod m`` in the cyclic window ``[lo, hi]``.

    ``lo``/``hi`` are arbitrary integers with ``hi - lo < m``; the window
    wraps modulo ``m``.
    """
    if hi - lo + 1 >= m:
        return start
    shift = (a * start) % m
    lo_r = (lo - shift) % m
    hi_r = lo_r + (hi - lo)
    windows = [(lo_r, hi_r)] if hi_r < m else [(lo_r, m - 1), (0, hi_r - m)]
    best = None
    for wl, wh in windows:
        j = _first_in_range(a, m, wl, wh)
        if j is not None and (best is None or j < best):
            best = j
    return None if best is None else start + best


@dataclass(frozen=True)
class RotationHit:
    k: int
    distance: QuadExt


_LINEAR_SCAN_MAX = 64


def rotation_hit(
    v: int,
    step: Number,
    target: Number,
    tol: Number | str,
    k_max: int,
) -> RotationHit:
    """Smallest ``k <= k_max`` with ``dist(k*step, target) < tol`` on ``R / vZ``.

    Replaces ``step / v`` by a convergent ``p/q`` so fine that
    ``k * |step/v - p/q|`` stays below a tiny slack ``eta`` for every
    ``k <= k_max``.  The rational problem is solved exactly by a Euclid-style
    recursion over a window widened by ``eta``; each candidate is then
    checked in exact arithmetic and the search resumes past rejected ones.
    """
    step_q = QuadExt.coerce(step)
    target_q = QuadExt.coerce(target)
    tol_q = Fraction(tol) if not isinstance(tol, QuadExt) else tol.as_fraction()
    if v < 1:
        raise DomainError(f"circle length v must be positive, got {v}")
    if step_q.is_rational:
        raise DomainError(f"rotation step {step_q} must be irrational")
    if tol_q <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    if k_max < 1:
        raise DomainError(f"k_max must be positive, got {k_max}")

    def check(k: int) -> QuadExt | None:
        dist = circle_distance(step_q * k, target_q, v)
        return dist if dist < tol_q else None

    if k_max <= _LINEAR_SCAN_MAX:
        for k in range(1, k_max + 1):
            dist = check(k)
            if dist is not None:
                return RotationHit(k, dist)
        raise NotFound(f"no k <= {k_max} brings {step_q}*k within {tol_q} of {target_q} mod {v}", k_max)

    alpha = (step_q / v).frac()
    y = (target_q / v).frac()
    delta = tol_q / v
    # denominators grow geometrically, so a handful of terms at a time suffices
    n_terms = 8
    while True:
        cf = continued_fraction(alpha, n_terms)
        good = [(p, q) for p, q in convergents(cf.terms) if q >= (k_max << 24)]
        if good:
            p, q = good[0]
            break
        n_terms *= 2
    eta = Fraction(k_max, q * q)
    # integer window of residues r with |r/q - y| < delta + eta (mod 1)
    lo = QuadExt.coerce(q * (y - delta - eta)).ceil()
    hi = QuadExt.coerce(q * (y + delta + eta)).floor()
    k = 1
    while k <= k_max:
        cand = _first_hit_rational(p, q, lo, hi, k)
        if cand is None or cand > k_max:
            break
        dist = check(cand)
        if dist is not None:
            return RotationHit(cand, dist)
        k = cand + 1
    raise NotFound(f"no k <= {k_max} brings {step_q}*k within {tol_q} of {target_q} mod {v}", k_max)
