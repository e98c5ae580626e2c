"""Reeb spectra of irrational ellipsoids and hypothetical orbit sets.

Actions are measured in units of pi: the ellipsoid E(a1, a2) has two simple
orbits with actions ``a1`` and ``a2``.  A spectrum is consistent with a
vanishing differential in linearized contact homology exactly when its good
iterates produce one generator in each even degree >= 2 and none in odd
degrees.  ``classify`` checks this at a finite degree horizon.
"""

from __future__ import annotations

import enum
import logging
from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import ActionTie, DomainError, KindError
from .exactreal import Number, QuadExt, quad_floor
from .orbit import (
    Elliptic,
    IteratedOrbit,
    SimpleOrbit,
    degree,
    is_dynamically_convex,
    mean_index,
)

log = logging.getLogger(__name__)

DEFAULT_DEGREE_CAP = 200


@dataclass(frozen=True)
class EllipsoidParams:
    a1: QuadExt
    a2: QuadExt

    def __post_init__(self) -> None:
        a1, a2 = QuadExt.coerce(self.a1), QuadExt.coerce(self.a2)
        object.__setattr__(self, "a1", a1)
        object.__setattr__(self, "a2", a2)
        if a1.sign() <= 0 or a2.sign() <= 0:
            raise DomainError(f"ellipsoid axes must be positive, got ({a1}, {a2})")
        if not a1 < a2:
            raise DomainError(f"ellipsoid needs a1 < a2, got ({a1}, {a2})")
        if (a1 / a2).is_rational:
            raise DomainError(f"ellipsoid ratio {a1}/{a2} is rational")

    def to_json(self) -> dict:
        return {"a1": str(self.a1), "a2": str(self.a2)}


class Spectrum:
    """A finite set of simple orbits with unique labels."""

    def __init__(self, orbits: Iterable[SimpleOrbit] = ()) -> None:
        self.orbits: tuple[SimpleOrbit, ...] = tuple(orbits)
        labels = [o.label for o in self.orbits]
        if len(set(labels)) != len(labels):
            raise DomainError(f"duplicate orbit labels in {labels}")

    def __len__(self) -> int:
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def to_json(self) -> list[dict]:
        return [o.to_json() for o in self.orbits]

    @classmethod
    def from_json(cls, obj: object) -> "Spectrum":
        """Accept a list of orbit descriptors or an object with a ``spectrum`` list."""
        if isinstance(obj, dict):
            for key in ("spectrum", "orbits"):
                if key in obj:
                    obj = obj[key]
                    break
            else:
                results = obj.get("results")
                if isinstance(results, dict) and "spectrum" in results:
                    obj = results["spectrum"]
                else:
                    raise DomainError("spectrum JSON needs a list of orbits or a 'spectrum' key")
        if not isinstance(obj, list):
            raise DomainError(f"spectrum must be a list of orbit descriptors, got {type(obj).__name__}")
        return cls(SimpleOrbit.from_json(o) for o in obj)


def ellipsoid_spectrum(e: EllipsoidParams) -> Spectrum:
    """The two simple orbits of E(a1, a2) with their rotation data."""
    ratio = e.a2 / e.a1
    f = quad_floor(ratio)
    g1 = SimpleOrbit("gamma1", e.a1, Elliptic(1, e.a1 / e.a2))
    g2 = SimpleOrbit("gamma2", e.a2, Elliptic(f + 1, ratio - f))
    return Spectrum([g1, g2])


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------


def _multiplicity_cap(o: SimpleOrbit, degree_cap: int, max_multiplicity: int | None) -> tuple[int, bool]:
    """Largest k worth enumerating for ``degree <= degree_cap``.

    With positive mean index the degree is nondecreasing and eventually
    exceeds the cap.  Otherwise infinitely many iterates stay below it and
    ``max_multiplicity`` truncates the list (second return value True).
    """
    if mean_index(o).sign() > 0:
        k = 1
        while degree(o, k) <= degree_cap:
            k += 1
        return k - 1, False
    guard = max_multiplicity if max_multiplicity is not None else max(degree_cap, 1)
    return guard, True


def _iterates_to_degree(
    s: Spectrum, degree_cap: int, max_multiplicity: int | None = None
) -> list[IteratedOrbit]:
    out = []
    for o in s:
        kmax, _ = _multiplicity_cap(o, degree_cap, max_multiplicity)
        out.extend(it for it in (o.iterate(k) for k in range(1, kmax + 1)) if it.degree <= degree_cap)
    return out


def _iterates_to_action(s: Spectrum, action_cap: Number) -> list[IteratedOrbit]:
    cap = QuadExt.coerce(action_cap)
    out = []
    for o in s:
        kmax = quad_floor(cap / o.action)
        out.extend(o.iterate(k) for k in range(1, kmax + 1))
    return out


def sort_by_action(iterates: Sequence[IteratedOrbit]) -> list[IteratedOrbit]:
    """Exact sort by action; raises ``ActionTie`` on equal actions."""
    # float keys give a near-sorted order quickly; exact comparisons then fix it up
    ordered = sorted(iterates, key=lambda it: float(it.action))
    for i in range(1, len(ordered)):
        j = i
        while j > 0:
            c = (ordered[j].action - ordered[j - 1].action).sign()
            if c == 0:
                a, b = ordered[j - 1], ordered[j]
                raise ActionTie(f"{a} and {b} both have action {a.action}", (a, b))
            if c > 0:
                break
            ordered[j - 1], ordered[j] = ordered[j], ordered[j - 1]
            j -= 1
    return ordered


def enumerate_iterates(
    s: Spectrum,
    *,
    action_cap: Number | None = None,
    degree_cap: int | None = None,
    max_multiplicity: int | None = None,
) -> list[IteratedOrbit]:
    """All iterates below the cap, sorted by action (bad iterates included)."""
    if (action_cap is None) == (degree_cap is None):
        raise DomainError("give exactly one of action_cap or degree_cap")
    if action_cap is not None:
        if QuadExt.coerce(action_cap).sign() <= 0:
            raise DomainError(f"action cap must be positive, got {action_cap}")
        its = _iterates_to_action(s, action_cap)
    else:
        its = _iterates_to_degree(s, degree_cap, max_multiplicity)
    return sort_by_action(its)


@dataclass(frozen=True)
class OrderCheck:
    holds: bool
    violation: tuple[IteratedOrbit, IteratedOrbit] | None = None

    def __bool__(self) -> bool:
        return self.holds


def _check_order(ordered: Sequence[IteratedOrbit]) -> OrderCheck:
    prev = None
    for it in ordered:
        if not it.good:
            continue
        if prev is not None and it.degree <= prev.degree:
            return OrderCheck(False, (prev, it))
        prev = it
    return OrderCheck(True)


def check_condition_O(s: Spectrum, action_cap: Number) -> OrderCheck:
    """Ordering by action and by degree agree on good iterates up to the cap."""
    return _check_order(enumerate_iterates(s, action_cap=action_cap))


def hc_ranks(s: Spectrum, degree_cap: int, max_multiplicity: int | None = None) -> dict[int, int]:
    """Number of good generators in each degree ``<= degree_cap``.

    Only nonzero ranks appear in the result.  With vanishing differential
    these are the homology ranks.
    """
    counts: dict[int, int] = defaultdict(int)
    for it in _iterates_to_degree(s, degree_cap, max_multiplicity):
        if it.good:
            counts[it.degree] += 1
    return dict(sorted(counts.items()))


def find_degree_collision(
    s: Spectrum, degree_cap: int = DEFAULT_DEGREE_CAP, max_multiplicity: int | None = None
) -> tuple[IteratedOrbit, IteratedOrbit] | None:
    """Smallest-degree pair of distinct good iterates sharing a degree."""
    if degree_cap < 2:
        raise DomainError(f"degree cap must be at least 2, got {degree_cap}")
    by_degree: dict[int, list[IteratedOrbit]] = defaultdict(list)
    for it in _iterates_to_degree(s, degree_cap, max_multiplicity):
        if it.good:
            by_degree[it.degree].append(it)
    for deg in sorted(by_degree):
        group = by_degree[deg]
        if len(group) > 1:
            a, b = sorted(group, key=lambda it: (it.label, it.k))[:2]
            return a, b
    return None


def degree_gap_structure(o: SimpleOrbit, K: int) -> list[int]:
    """``|g^(k+1)| - |g^k|`` for ``k = 1..K-1``; each value is ``2r`` or ``2r + 2``."""
    if not isinstance(o.kind, Elliptic):
        raise KindError(f"degree gaps are defined for elliptic orbits, {o.label!r} is {o.kind.tag}")
    if K < 2:
        raise DomainError(f"K must be at least 2, got {K}")
    degs = [degree(o, k) for k in range(1, K + 1)]
    return [b - a for a, b in zip(degs, degs[1:])]


# ---------------------------------------------------------------------------
# realization and classification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Realization:
    """Rotation data of two orbits whose action ratio is ``rho = A2 / A1``."""

    rho: QuadExt
    alpha1: QuadExt
    alpha2: QuadExt
    r1: int
    r2: int
    ellipsoid: EllipsoidParams

    def to_json(self) -> dict:
        return {
            "rho": str(self.rho),
            "alpha1": str(self.alpha1),
            "alpha2": str(self.alpha2),
            "r1": self.r1,
            "r2": self.r2,
            "ellipsoid": self.ellipsoid.to_json(),
        }


def realize_from_ratio(rho: Number, a1: Number = 1) -> Realization:
    """Rotation data forced by the action ratio, and the ellipsoid carrying it.

    ``alpha1 = 1/rho``, ``alpha2 = rho - [rho]``, ``r1 = 1``,
    ``r2 = [rho] + 1``.  Before returning, the three identities these come
    from are re-checked exactly:  ``alpha1 = A1/A2``,
    ``A2/A1 = (r2 + alpha2)/(1 + alpha1)`` and ``r2 = [1/alpha1] + 1``.
    """
    rho = QuadExt.coerce(rho)
    if rho.is_rational:
        raise DomainError(f"action ratio {rho} must be irrational")
    if not rho > 1:
        raise DomainError(f"action ratio {rho} must exceed 1")
    f = quad_floor(rho)
    alpha1 = 1 / rho
    alpha2 = rho - f
    r1, r2 = 1, f + 1
    a1 = QuadExt.coerce(a1)
    ell = EllipsoidParams(a1, a1 * rho)
    if alpha1 != ell.a1 / ell.a2:
        raise AssertionError(f"alpha1 = A1/A2 failed for rho={rho}")
    if ell.a2 / ell.a1 != (r2 + alpha2) / (1 + alpha1):
        raise AssertionError(f"A2/A1 = (r2+alpha2)/(1+alpha1) failed for rho={rho}")
    if r2 != quad_floor(1 / alpha1) + 1:
        raise AssertionError(f"r2 = [1/alpha1] + 1 failed for rho={rho}")
    return Realization(rho, alpha1, alpha2, r1, r2, ell)


class Verdict(str, enum.Enum):
    CONSISTENT_TWO_ORBIT = "ConsistentTwoOrbit"
    INCONSISTENT_COLLISION = "InconsistentCollision"
    INCONSISTENT_GAP = "InconsistentGap"
    NOT_DYNAMICALLY_CONVEX = "NotDynamicallyConvex"
    ODD_DEGREE_PRESENCE = "OddDegreePresence"
    ACTION_TIE = "ActionTie"
    ORDER_VIOLATION = "OrderViolation"
    UNDECIDED = "Undecided"


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    degree_cap: int
    witness: tuple[IteratedOrbit, ...] = ()
    degree: int | None = None
    realization: Realization | None = None
    note: str = ""
    diagnostics: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        return self.verdict is Verdict.CONSISTENT_TWO_ORBIT

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict.value, "degree_cap": self.degree_cap}
        if self.witness:
            out["witness"] = [w.to_json() for w in self.witness]
        if self.degree is not None:
            out["degree"] = self.degree
        if self.realization is not None:
            out["realization"] = self.realization.to_json()
        if self.note:
            out["note"] = self.note
        if self.diagnostics:
            out["diagnostics"] = self.diagnostics
        return out


def _run_checks(s: Spectrum, cap: int, check_convexity: bool) -> ClassificationResult | None:
    """One pass of the fixed pipeline; None when every check passes."""
    if check_convexity:
        conv = is_dynamically_convex(s.orbits, cap)
        if not conv:
            return ClassificationResult(Verdict.NOT_DYNAMICALLY_CONVEX, cap, (conv.witness,), conv.witness.cz)
    iterates = _iterates_to_degree(s, cap)
    good = [it for it in iterates if it.good]
    bad = [it for it in iterates if not it.good]
    diag = {"bad_iterates": len(bad)} if bad else {}
    odd = sorted((it for it in good if it.degree % 2), key=lambda it: (it.degree, it.label, it.k))
    if odd:
        return ClassificationResult(Verdict.ODD_DEGREE_PRESENCE, cap, (odd[0],), odd[0].degree, diagnostics=diag)
    by_degree: dict[int, list[IteratedOrbit]] = defaultdict(list)
    for it in good:
        by_degree[it.degree].append(it)
    for deg in sorted(by_degree):
        group = sorted(by_degree[deg], key=lambda it: (it.label, it.k))
        allowed = 1 if deg >= 2 else 0
        if len(group) > allowed:
            note = "" if allowed else f"generator in degree {deg}, where homology vanishes"
            return ClassificationResult(
                Verdict.INCONSISTENT_COLLISION, cap, tuple(group[:2]), deg, note=note, diagnostics=diag
            )
    for deg in range(2, cap + 1, 2):
        if deg not in by_degree:
            return ClassificationResult(Verdict.INCONSISTENT_GAP, cap, (), deg, diagnostics=diag)
    try:
        order = _check_order(sort_by_action(good))
    except ActionTie as tie:
        return ClassificationResult(Verdict.ACTION_TIE, cap, tuple(tie.witness), tie.witness[0].degree, diagnostics=diag)
    if not order:
        return ClassificationResult(Verdict.ORDER_VIOLATION, cap, order.violation, order.violation[1].degree, diagnostics=diag)
    return None


def _match_realization(s: Spectrum) -> Realization | None:
    g1, g2 = sorted(s.orbits, key=lambda o: float(o.action))
    if g2.action < g1.action:
        g1, g2 = g2, g1
    rho = g2.action / g1.action
    if rho.is_rational:
        return None
    real = realize_from_ratio(rho, g1.action)
    k1, k2 = g1.kind, g2.kind
    if not (isinstance(k1, Elliptic) and isinstance(k2, Elliptic)):
        return None
    if (k1.r, k1.alpha, k2.r, k2.alpha) != (real.r1, real.alpha1, real.r2, real.alpha2):
        return None
    return real


def classify(
    s: Spectrum,
    degree_cap: int = DEFAULT_DEGREE_CAP,
    *,
    check_convexity: bool = True,
    escalate_to: int | None = None,
) -> ClassificationResult:
    """Decide whether ``s`` is consistent with a vanishing differential.

    Checks run in a fixed order and the first failure is reported:
    dynamical convexity, no good iterate of odd degree, at most one good
    iterate per even degree, no missing even degree in ``[2, degree_cap]``,
    agreement of action order and degree order.  A spectrum passing all of
    them with exactly two simple orbits whose data matches the action ratio
    is realized by an ellipsoid.  Otherwise some inconsistency must appear
    at a larger degree, so the cap is doubled up to ``escalate_to``
    (default ``8 * degree_cap``) before giving up with ``Undecided``.
    """
    if degree_cap < 4:
        raise DomainError(f"degree cap must be at least 4, got {degree_cap}")
    limit = escalate_to if escalate_to is not None else 8 * degree_cap
    cap = degree_cap
    while True:
        failure = _run_checks(s, cap, check_convexity)
        if failure is not None:
            return failure
        if len(s) == 2:
            real = _match_realization(s)
            if real is not None:
                return ClassificationResult(Verdict.CONSISTENT_TWO_ORBIT, cap, realization=real)
            reason = "two orbits whose rotation data does not match their action ratio"
        else:
            reason = f"{len(s)} simple orbits pass every check"
        if 2 * cap > limit:
            return ClassificationResult(Verdict.UNDECIDED, cap, note=f"{reason} up to degree {cap}")
        log.info("%s up to degree %d; escalating", reason, cap)
        cap *= 2
