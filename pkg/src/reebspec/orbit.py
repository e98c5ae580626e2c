"""Simple closed Reeb orbits in dimension 3 and their Conley-Zehnder indices.

Iterates of a nondegenerate simple orbit have indices given in closed form
by the orbit's type and an integer rotation ``r``:

* elliptic, multiplier ``exp(2 pi i alpha)``: ``CZ(g^k) = 2kr + 2[k alpha] + 1``
* even hyperbolic, multiplier in (0, 1):      ``CZ(g^k) = 2kr``
* odd hyperbolic, multiplier in (-1, 0):      ``CZ(g^k) = (2r + 1)k``

The grading degree is ``CZ - 1``.  Even iterates of odd hyperbolic orbits
are bad and carry no generator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .errors import DomainError, RationalInput
from .exactreal import QuadExt, parse_scalar


@dataclass(frozen=True)
class Elliptic:
    r: int
    alpha: QuadExt

    def __post_init__(self) -> None:
        alpha = QuadExt.coerce(self.alpha)
        object.__setattr__(self, "alpha", alpha)
        if alpha.is_rational:
            raise RationalInput(f"elliptic rotation angle {alpha} is rational (degenerate orbit)")
        if not (0 < alpha < 1):
            raise DomainError(f"elliptic rotation angle {alpha} is not in (0, 1)")

    tag = "elliptic"


@dataclass(frozen=True)
class EvenHyperbolic:
    r: int
    tag = "even_hyperbolic"


@dataclass(frozen=True)
class OddHyperbolic:
    r: int
    tag = "odd_hyperbolic"


OrbitKind = Union[Elliptic, EvenHyperbolic, OddHyperbolic]


@dataclass(frozen=True)
class SimpleOrbit:
    label: str
    action: QuadExt
    kind: OrbitKind

    def __post_init__(self) -> None:
        action = QuadExt.coerce(self.action)
        object.__setattr__(self, "action", action)
        if action.sign() <= 0:
            raise DomainError(f"orbit {self.label!r} has non-positive action {action}")

    def iterate(self, k: int) -> "IteratedOrbit":
        cz = cz_index(self, k)
        return IteratedOrbit(self, k, cz, cz - 1, self.action * k, is_good(self, k))

    # -- JSON descriptor --------------------------------------------------

    def to_json(self) -> dict:
        kind = self.kind
        body: dict = {"r": kind.r}
        if isinstance(kind, Elliptic):
            body["alpha"] = str(kind.alpha)
        return {"label": self.label, "action": str(self.action), "kind": {kind.tag: body}}

    @classmethod
    def from_json(cls, obj: dict) -> "SimpleOrbit":
        try:
            label = str(obj["label"])
            action = parse_scalar(str(obj["action"]))
            kind_obj = obj["kind"]
        except KeyError as exc:
            raise DomainError(f"orbit descriptor missing key {exc}: {obj!r}") from exc
        if not isinstance(kind_obj, dict) or len(kind_obj) != 1:
            raise DomainError(f"orbit kind must be a single-key object, got {kind_obj!r}")
        ((tag, body),) = kind_obj.items()
        unknown = set(body) - {"r", "alpha"}
        if unknown:
            raise DomainError(f"unknown keys {sorted(unknown)} in orbit kind {tag!r}")
        r = body.get("r")
        if not isinstance(r, int) or isinstance(r, bool):
            raise DomainError(f"orbit {label!r}: r must be an integer, got {r!r}")
        if tag == "elliptic":
            if "alpha" not in body:
                raise DomainError(f"elliptic orbit {label!r} needs alpha")
            kind: OrbitKind = Elliptic(r, parse_scalar(str(body["alpha"])))
        elif tag == "even_hyperbolic":
            kind = EvenHyperbolic(r)
        elif tag == "odd_hyperbolic":
            kind = OddHyperbolic(r)
        else:
            raise DomainError(f"unknown orbit kind {tag!r}")
        return cls(label, action, kind)


@dataclass(frozen=True)
class IteratedOrbit:
    """The k-fold cover of a simple orbit with its grading data."""

    parent: SimpleOrbit
    k: int
    cz: int
    degree: int
    action: QuadExt
    good: bool

    @property
    def label(self) -> str:
        return self.parent.label

    def to_json(self) -> dict:
        return {
            "label": self.parent.label,
            "k": self.k,
            "cz": self.cz,
            "degree": self.degree,
            "action": str(self.action),
            "good": self.good,
        }

    def __str__(self) -> str:
        return f"{self.parent.label}^{self.k}"


def _check_k(k: int) -> None:
    if not isinstance(k, int) or k < 1:
        raise DomainError(f"iterate multiplicity must be a positive integer, got {k!r}")


def cz_index(o: SimpleOrbit, k: int) -> int:
    _check_k(k)
    kind = o.kind
    if isinstance(kind, Elliptic):
        return 2 * k * kind.r + 2 * kind.alpha.floor_mul(k) + 1
    if isinstance(kind, EvenHyperbolic):
        return 2 * k * kind.r
    return (2 * kind.r + 1) * k


def degree(o: SimpleOrbit, k: int) -> int:
    return cz_index(o, k) - 1


def is_good(o: SimpleOrbit, k: int) -> bool:
    _check_k(k)
    return not (isinstance(o.kind, OddHyperbolic) and k % 2 == 0)


def mean_index(o: SimpleOrbit) -> QuadExt:
    """Asymptotic growth rate of ``CZ(g^k)`` in ``k``."""
    kind = o.kind
    if isinstance(kind, Elliptic):
        return 2 * (kind.r + kind.alpha)
    if isinstance(kind, EvenHyperbolic):
        return QuadExt(2 * kind.r)
    return QuadExt(2 * kind.r + 1)


@dataclass(frozen=True)
class Superadditivity:
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs >= self.rhs


def check_superadditivity(o: SimpleOrbit, parts: Sequence[int]) -> Superadditivity:
    """Compare ``|g^(k1+...+ks)|`` against ``|g^k1| + ... + |g^ks|``."""
    if not parts:
        raise DomainError("superadditivity needs a nonempty partition")
    for k in parts:
        _check_k(k)
    return Superadditivity(degree(o, sum(parts)), sum(degree(o, k) for k in parts))


@dataclass(frozen=True)
class ConvexityCheck:
    convex: bool
    witness: IteratedOrbit | None = None

    def __bool__(self) -> bool:
        return self.convex


def is_dynamically_convex(orbits: Iterable[SimpleOrbit], k_max: int) -> ConvexityCheck:
    """Check ``CZ(g^k) >= 3`` for every orbit and every ``k <= k_max``.

    Once an orbit's index is nondecreasing in ``k`` (non-negative mean
    index) the scan for it stops at ``k = 1``.
    """
    _check_k(k_max)
    for o in orbits:
        monotone = mean_index(o).sign() >= 0
        for k in range(1, k_max + 1):
            if cz_index(o, k) < 3:
                return ConvexityCheck(False, o.iterate(k))
            if monotone:
                break
    return ConvexityCheck(True)
