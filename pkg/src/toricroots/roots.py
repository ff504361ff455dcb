"""Normalized n-th roots of torus characters.

For a fan ``Delta`` in ``N`` and a character ``v`` of ``M = N^*``, the
normalized ``n``-th root of ``chi^v`` is a toric morphism: each of its ``d``
components is the toric variety of ``Delta`` over the finer-grained lattice
``N' = {e : <v, e> in nZ}``. Everything below is computed from that lattice
and from the Q-divisor ``D = div(chi^v) / n``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import FrozenSet, List, Sequence, Tuple

from . import exact, qdiv, toric
from .errors import (
    BadN,
    DimensionMismatch,
    NotNTorsion,
    OutOfRange,
    SigmaTooSmall,
    VerificationError,
)
from .exact import IntMat, IntVec
from .qdiv import QDivisor
from .toric import Fan


def _check_n(n: int) -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise BadN(f"n must be an integer >= 1, got {n!r}")
    return n


def char_root_order(rank: int, v: Sequence[int], n: int) -> Tuple[int, int]:
    """``(n', d)``: the order of ``v/n`` in ``M_Q/M`` and the component count."""
    _check_n(n)
    v = exact.as_vector(v)
    if len(v) != rank:
        raise DimensionMismatch(f"character has length {len(v)}, rank is {rank}")
    n_prime = n // math.gcd(n, exact.content(v))
    return n_prime, n // n_prime


def root_sublattice(fan: Fan, v: Sequence[int], n: int) -> IntMat:
    """HNF basis (as rows, in N-coordinates) of ``N' = {e : <v,e> in nZ}``."""
    _check_n(n)
    v = toric._check_char(fan, v)
    # N' is the projection of ker[v | -n] onto the first rank coordinates,
    # and the projection is injective.
    kernel = exact.kernel_basis((v + (-n,),))
    gens = tuple(k[:-1] for k in kernel)
    H, _ = exact.hermite_normal_form(gens)
    return H


def ramification_index(ord_: int, n: int) -> int:
    """``n / gcd(n, ord)`` with ``gcd(n, 0) = n``."""
    _check_n(n)
    return n // math.gcd(n, ord_)


def _lattice_coordinates(basis: IntMat, e: Sequence[int]) -> IntVec:
    x = exact.solve_integer(exact.transpose(basis), e)
    if x is None:
        raise VerificationError(f"{list(e)} is not in the sublattice")
    return x


def _component_rays(fan: Fan, basis: IntMat, v: IntVec, n: int) -> Tuple[IntVec, ...]:
    rays = []
    for e in fan.rays:
        k = ramification_index(exact.dot(v, e), n)
        coords = _lattice_coordinates(basis, tuple(k * x for x in e))
        p, c = exact.primitivize(coords)
        if c != 1:
            raise VerificationError("first lattice point on a ray is not primitive")
        rays.append(p)
    return tuple(rays)


def psi_exponent(basis: IntMat, v: Sequence[int], n: int) -> IntVec:
    """``v/n`` in the basis of ``M'`` dual to the rows of ``basis``."""
    out = []
    for b in basis:
        q, r = divmod(exact.dot(v, b), n)
        if r:
            raise VerificationError("basis vector outside N'")
        out.append(q)
    return tuple(out)


def component_fan(fan: Fan, v: Sequence[int], n: int) -> Tuple[Fan, IntMat]:
    """The fan of one component, in coordinates of the HNF basis of ``N'``."""
    v = toric._check_char(fan, v)
    basis = root_sublattice(fan, v, n)
    return Fan(fan.rank, _component_rays(fan, basis, v, n), fan.cones), basis


def pullback_divisor(fan: Fan, v: Sequence[int], n: int) -> QDivisor:
    """``pi^* D`` on the component fan, ray by ray: ``ord / gcd(n, ord)``.

    Cross-checked against ``div(chi^{v/n})`` computed in ``M'``.
    """
    v = toric._check_char(fan, v)
    _check_n(n)
    cfan, basis = component_fan(fan, v, n)
    coeffs = [o // math.gcd(n, o) for o in toric.pairings(fan, v)]
    pulled = QDivisor.from_values(cfan, coeffs)
    if toric.div_char(cfan, psi_exponent(basis, v, n)) != pulled:
        raise VerificationError("pullback disagrees with div(chi^(v/n)) on N'")
    return pulled


def eigensheaf_divisors(D: QDivisor, n: int) -> List[QDivisor]:
    """``[floor(i*D) for i in 0..n-1]``."""
    _check_n(n)
    return [qdiv.floor_div(i * D) for i in range(n)]


@dataclass(frozen=True)
class RootData:
    n: int
    v: IntVec
    n_prime: int
    d: int
    sublattice_basis: IntMat
    component_fan: Fan
    ramification: Tuple[int, ...]
    pullback: QDivisor
    eigensheaves: Tuple[QDivisor, ...]
    flat: bool
    toroidal: bool
    psi_exponent: IntVec

    @property
    def divisor(self) -> QDivisor:
        """``D = div(chi^v) / n`` on the base fan."""
        return Fraction(1, self.n) * toric.div_char(self.eigensheaves[0].fan, self.v)

    def check(self) -> "RootData":
        if self.d * self.n_prime != self.n:
            raise VerificationError("d * n' != n")
        if abs(exact.det(self.sublattice_basis)) != self.n_prime:
            raise VerificationError("|det N' basis| != n'")
        if any(self.eigensheaves[0].coefficients):
            raise VerificationError("eigensheaf 0 is not trivial")
        if any(self.n_prime % e for e in self.ramification):
            raise VerificationError("ramification index does not divide n'")
        if not self.pullback.is_integral():
            raise VerificationError("pullback is not integral")
        return self


def normalized_char_root(fan: Fan, v: Sequence[int], n: int) -> RootData:
    toric.validate_fan(fan)
    _check_n(n)
    v = toric._check_char(fan, v)
    n_prime, d = char_root_order(fan.rank, v, n)
    cfan, basis = component_fan(fan, v, n)
    ords = toric.pairings(fan, v)
    D = Fraction(1, n) * toric.div_char(fan, v)
    sheaves = eigensheaf_divisors(D, n)
    return RootData(
        n=n,
        v=v,
        n_prime=n_prime,
        d=d,
        sublattice_basis=basis,
        component_fan=cfan,
        ramification=tuple(ramification_index(o, n) for o in ords),
        pullback=pullback_divisor(fan, v, n),
        eigensheaves=tuple(sheaves),
        flat=all(qdiv.is_cartier(s) for s in sheaves[1:]),
        toroidal=toric.is_quasi_smooth(fan),
        psi_exponent=psi_exponent(basis, v, n),
    ).check()


def epsilon(d: Fraction, i: int) -> int:
    """1 iff ``d`` is fractional and ``i*d + 1/r(d)`` is not an integer."""
    d = Fraction(d)
    if d.denominator == 1:
        return 0
    return int((i * d + Fraction(1, d.denominator)).denominator != 1)


class Mode(enum.Enum):
    FORMS_LOG = "forms-log"
    FORMS = "forms"
    DERIVATIONS = "der"
    DERIVATIONS_LOG = "der-log"


@dataclass(frozen=True)
class DecompRow:
    i: int
    mode: Mode
    twist: QDivisor
    log_support: FrozenSet[int]


def differential_decomposition(
    D: QDivisor, sigma: Sequence[int], n: int, mode: Mode
) -> List[DecompRow]:
    """Eigenspace ``i`` of forms or derivations upstairs, as (twist, log support).

    Row ``i`` describes the sheaf of forms (or derivations) on the base with
    log poles (or log zeros) along ``log_support``, twisted by ``floor(i*D)``.
    """
    _check_n(n)
    mode = Mode(mode)
    sigma = frozenset(sigma)
    if not sigma <= set(range(D.fan.n_rays)):
        raise OutOfRange(f"sigma {sorted(sigma)} names rays outside the fan")
    if not qdiv.frac_support(D) <= sigma:
        raise SigmaTooSmall(
            f"sigma {sorted(sigma)} misses {sorted(qdiv.frac_support(D) - sigma)}"
        )
    nD = n * D
    if not nD.is_integral() or qdiv.is_principal(nD) is None:
        raise NotNTorsion(f"{n} * D is not principal")
    rows = []
    for i in range(n):
        iD = i * D
        if mode in (Mode.FORMS_LOG, Mode.DERIVATIONS_LOG):
            supp = sigma
        elif mode is Mode.FORMS:
            supp = qdiv.frac_support(iD)
        else:
            supp = frozenset(k for k, a in enumerate(D.coefficients) if epsilon(a, i))
        rows.append(DecompRow(i, mode, qdiv.floor_div(iD), supp))
    return rows


@dataclass(frozen=True)
class Codim1Model:
    """Local model of the root over a prime divisor where the function is ``u f^m``.

    The algebra is ``O[T1, T2] / (T1^g - u, T2^n' - f T1^j)``.
    """

    n: int
    m: int
    g: int
    n_prime: int
    j: int
    m_prime: int


def codim1_model(n: int, m: int) -> Codim1Model:
    _check_n(n)
    g = math.gcd(n, m)
    n_prime, m_prime = n // g, m // g
    j = pow(m_prime, -1, n_prime) if n_prime > 1 else 0
    j = j or n_prime
    if (j * m - g) % n or not 1 <= j <= n_prime:
        raise VerificationError("no valid j")
    return Codim1Model(n=n, m=m, g=g, n_prime=n_prime, j=j, m_prime=m_prime)


def codim1_decompose(model: Codim1Model, i: int) -> Tuple[int, int, int]:
    """``(alpha, beta, gamma)`` with ``i = alpha*j + beta*n' + gamma*n``."""
    n, n_prime, g, j = model.n, model.n_prime, model.g, model.j
    if not 0 <= i < n:
        raise OutOfRange(f"i = {i} outside [0, {n})")
    alpha = (i * model.m_prime) % n_prime
    beta = ((i - alpha * j) // n_prime) % g
    gamma, rem = divmod(i - alpha * j - n_prime * beta, n)
    if rem:
        raise VerificationError("non-integral gamma")
    lhs = model.m * gamma + (j * model.m // n) * alpha + model.m_prime * beta
    if lhs != i * model.m // n:
        raise VerificationError("floor identity fails")
    return alpha, beta, gamma
