"""Fans, characters and invariant divisors of toric varieties."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Iterable, Optional, Sequence, Tuple

from . import exact
from .errors import (
    DependentDirections,
    DimensionMismatch,
    DuplicateRay,
    EmptyFan,
    MalformedCone,
    MalformedFan,
    NotPrimitive,
    RaysDontSpan,
    ZeroVector,
)
from .exact import IntMat, IntVec

if TYPE_CHECKING:
    from .qdiv import QDivisor


@dataclass(frozen=True)
class Fan:
    """A fan in ``N = Z^rank`` given by primitive rays and maximal cones.

    Cones are stored as sorted tuples of ray indices. The ray order fixes the
    coordinate order of every divisor on this fan.
    """

    rank: int
    rays: Tuple[IntVec, ...]
    cones: Tuple[Tuple[int, ...], ...]

    @classmethod
    def from_dict(cls, data: dict) -> "Fan":
        try:
            rank = data["rank"]
            rays = data["rays"]
            cones = data["cones"]
        except (KeyError, TypeError) as exc:
            raise MalformedFan(f"fan object needs rank, rays and cones ({exc})") from None
        if isinstance(rank, bool) or not isinstance(rank, int):
            raise MalformedFan(f"rank must be an integer, got {rank!r}")
        try:
            ray_t = tuple(exact.as_vector(r) for r in rays)
            cone_t = tuple(tuple(sorted(int(i) for i in c)) for c in cones)
        except (TypeError, ValueError) as exc:
            raise MalformedFan(str(exc)) from None
        return cls(rank, ray_t, cone_t)

    def to_dict(self) -> dict:
        return {
            "rank": self.rank,
            "rays": [list(r) for r in self.rays],
            "cones": [list(c) for c in self.cones],
        }

    @property
    def n_rays(self) -> int:
        return len(self.rays)

    def pairing_matrix(self) -> IntMat:
        """Rows are the ray generators; ``P @ v`` lists the pairings <v, e>."""
        return self.rays

    def cone_rays(self, cone: Iterable[int]) -> IntMat:
        return tuple(self.rays[i] for i in cone)


def affine_space(rank: int) -> Fan:
    """The fan of ``A^rank``: one smooth cone on the standard basis."""
    return Fan(rank, exact.identity(rank), (tuple(range(rank)),))


def projective_space(rank: int) -> Fan:
    rays = exact.identity(rank) + (tuple([-1] * rank),)
    cones = tuple(tuple(j for j in range(rank + 1) if j != i) for i in range(rank + 1))
    return Fan(rank, rays, cones)


def validate_fan(fan: Fan) -> Fan:
    if fan.rank < 1 or not fan.rays:
        raise EmptyFan("a fan needs rank >= 1 and at least one ray")
    seen = {}
    for idx, ray in enumerate(fan.rays):
        if len(ray) != fan.rank:
            raise DimensionMismatch(f"ray {idx} has length {len(ray)}, rank is {fan.rank}")
        if exact.content(ray) != 1:
            raise NotPrimitive(f"ray {idx} = {list(ray)} is not primitive")
        if ray in seen:
            raise DuplicateRay(f"rays {seen[ray]} and {idx} coincide")
        seen[ray] = idx
    used = set()
    for c_idx, cone in enumerate(fan.cones):
        if not cone:
            raise MalformedCone(f"cone {c_idx} is empty")
        if len(set(cone)) != len(cone):
            raise MalformedCone(f"cone {c_idx} repeats a ray")
        for i in cone:
            if not 0 <= i < fan.n_rays:
                raise MalformedCone(f"cone {c_idx} references ray {i}; fan has {fan.n_rays} rays")
        used.update(cone)
    missing = sorted(set(range(fan.n_rays)) - used)
    if missing:
        raise MalformedCone(f"rays {missing} lie in no cone")
    return fan


def _check_char(fan: Fan, v: Sequence[int]) -> IntVec:
    v = exact.as_vector(v)
    if len(v) != fan.rank:
        raise DimensionMismatch(f"character has length {len(v)}, fan rank is {fan.rank}")
    return v


def pairings(fan: Fan, v: Sequence[int]) -> IntVec:
    """``<v, e_rho>`` for every ray, in ray order."""
    return exact.matvec(fan.pairing_matrix(), _check_char(fan, v))


def div_char(fan: Fan, v: Sequence[int]) -> "QDivisor":
    """Divisor of the character ``chi^v``."""
    from .qdiv import QDivisor

    return QDivisor.from_values(fan, pairings(fan, v))


@dataclass(frozen=True)
class ClassGroup:
    """``Cl(X) = coker(M -> Z^rays)`` read off a Smith form ``S = U P V``."""

    free_rank: int
    torsion: Tuple[int, ...]
    U: IntMat = field(repr=False)
    S: IntMat = field(repr=False)
    V: IntMat = field(repr=False)

    @property
    def exponent(self) -> int:
        """Exponent of the torsion subgroup (1 when torsion-free)."""
        return math.lcm(*self.torsion) if self.torsion else 1

    def class_of(self, coefficients: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """Coordinates ``(torsion residues, free part)`` of an integral divisor class."""
        c = exact.matvec(self.U, coefficients)
        r = len(self.S[0])
        diag = [self.S[i][i] for i in range(r)]
        residues = tuple(c[i] % s for i, s in enumerate(diag) if s > 1)
        return residues, tuple(c[r:])

    def order_of(self, coefficients: Sequence[int]) -> Optional[int]:
        """Order of the class of an integral divisor; None when infinite."""
        c = exact.matvec(self.U, coefficients)
        r = len(self.S[0])
        if any(c[r:]):
            return None
        order = 1
        for i in range(r):
            s = self.S[i][i]
            order = math.lcm(order, s // math.gcd(s, c[i]))
        return order


def class_group(fan: Fan) -> ClassGroup:
    P = fan.pairing_matrix()
    if len(P) < fan.rank:
        raise RaysDontSpan(f"{len(P)} rays cannot span a rank {fan.rank} lattice")
    U, S, V = exact.smith_normal_form(P)
    diag = [S[i][i] for i in range(fan.rank)]
    if any(s == 0 for s in diag):
        raise RaysDontSpan("rays do not span N tensor Q; the class group has a torus factor")
    return ClassGroup(
        free_rank=fan.n_rays - fan.rank,
        torsion=tuple(s for s in diag if s > 1),
        U=U,
        S=S,
        V=V,
    )


def is_quasi_smooth(fan: Fan) -> bool:
    """Every maximal cone is simplicial."""
    return all(exact.rank(fan.cone_rays(c)) == len(c) for c in fan.cones)


def is_smooth(fan: Fan) -> bool:
    """Every maximal cone is generated by part of a basis of N."""
    for cone in fan.cones:
        rays = fan.cone_rays(cone)
        factors = exact.invariant_factors(rays)
        if len(factors) < len(cone) or any(s != 1 for s in factors):
            return False
    return True


class FormClass(enum.Enum):
    REGULAR = "Regular"
    LOG_POLE = "LogPole"
    WORSE = "Worse"


class DerivationClass(enum.Enum):
    REGULAR = "Regular"
    LOG_REGULAR = "LogRegular"
    WORSE = "Worse"


def log_form_membership(
    m: Sequence[int], directions: Sequence[Sequence[int]], e: Sequence[int]
) -> FormClass:
    """Classify ``chi^m * a_{m_1} ^ ... ^ a_{m_p}`` along the divisor ``V(e)``.

    Each direction ``m_i`` stands for the invariant form ``d chi^{m_i} / chi^{m_i}``.
    """
    m, e = exact.as_vector(m), exact.as_vector(e)
    dirs = tuple(exact.as_vector(d) for d in directions)
    if len(m) != len(e) or any(len(d) != len(e) for d in dirs):
        raise DimensionMismatch("m, directions and e must have the same length")
    if exact.content(e) != 1:
        raise NotPrimitive(f"e = {list(e)} is not primitive")
    if dirs and exact.rank(dirs) < len(dirs):
        raise DependentDirections("the wedge of the directions vanishes")
    k = exact.dot(m, e)
    if k < 0:
        return FormClass.WORSE
    if k > 0 or all(exact.dot(d, e) == 0 for d in dirs):
        return FormClass.REGULAR
    return FormClass.LOG_POLE


def log_derivation_membership(
    m: Sequence[int], e0: Sequence[int], e: Sequence[int]
) -> DerivationClass:
    """Classify the derivation ``chi^m * theta_{e0}`` along ``V(e)``."""
    m, e0, e = exact.as_vector(m), exact.as_vector(e0), exact.as_vector(e)
    if len(m) != len(e) or len(e0) != len(e):
        raise DimensionMismatch("m, e0 and e must have the same length")
    if not any(e0):
        raise ZeroVector("e0 must be nonzero")
    if exact.content(e) != 1:
        raise NotPrimitive(f"e = {list(e)} is not primitive")
    k = exact.dot(m, e)
    if k >= 0:
        return DerivationClass.LOG_REGULAR
    if k == -1 and exact.rank((e0, e)) == 1:
        return DerivationClass.REGULAR
    return DerivationClass.WORSE
