"""Index-one covers and the local model of semistable reduction."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from . import exact, qdiv, roots, toric
from .errors import BadInput, VerificationError
from .exact import IntMat, IntVec
from .qdiv import QDivisor
from .roots import RootData
from .toric import Fan


@dataclass(frozen=True)
class IndexOneCover:
    r: int
    v: IntVec
    root: RootData


def index_one_cover(fan: Fan, D: QDivisor) -> IndexOneCover:
    """The degree-``r`` cyclic cover on which the torsion divisor ``D`` becomes principal.

    ``r`` is the index of ``D`` and ``v`` the character returned by the
    integer solver for ``div(chi^v) = r*D``, which fixes the choice of
    rational function.
    """
    toric.validate_fan(fan)
    if D.fan != fan:
        raise BadInput("divisor is not on the given fan")
    r, v = qdiv.torsion_index(D)
    root = roots.normalized_char_root(fan, v, r)
    if root.d != 1 or root.n_prime != r:
        raise VerificationError(f"T^{r} - chi^v is reducible (d = {root.d})")
    pulled = roots.pullback_divisor(fan, v, r)
    if not pulled.is_integral() or toric.div_char(root.component_fan, root.psi_exponent) != pulled:
        raise VerificationError("pullback of D is not the divisor of the root")
    return IndexOneCover(r=r, v=v, root=root)


@dataclass(frozen=True)
class SemistableReport:
    n: int
    m: Tuple[int, ...]
    g: int
    n_prime: int
    component_count: int
    lattice_basis: IntMat
    lattice_index: int
    is_normal: bool
    is_smooth: bool
    codim1: Tuple[int, ...]
    codim2: Tuple[Tuple[int, int], ...]


def semistable_lattice(m: Sequence[int], n: int) -> IntMat:
    """HNF basis of ``{l in Z^d : sum l_i m_i in nZ}``.

    This is the lattice of the ``n'``-th root of ``prod z_i^(m_i/g)``; dividing
    the congruence by ``g`` shows the two descriptions agree.
    """
    m = exact.as_vector(m)
    kernel = exact.kernel_basis((m + (-n,),))
    H, _ = exact.hermite_normal_form(tuple(k[:-1] for k in kernel))
    return H


def semistable_analyze(m: Sequence[int], n: int) -> SemistableReport:
    """Invariants of ``t^n = prod z_i^(m_i)`` over affine space.

    Smoothness is read off the singular locus, which is the union of
    ``{t = z_i = 0}`` over ``m_i >= 2`` and ``{t = z_i = z_j = 0}`` over pairs
    with ``m_i = m_j = 1``. With every ``m_i >= 1`` this is the same as asking
    for a single variable with exponent one.
    """
    try:
        m = exact.as_vector(m)
    except (TypeError, ValueError) as exc:
        raise BadInput(str(exc)) from None
    if isinstance(n, bool) or not isinstance(n, int) or n < 2:
        raise BadInput(f"n must be an integer >= 2, got {n!r}")
    if not m or any(x < 0 for x in m) or not any(m):
        raise BadInput("multiplicities must be non-negative and not all zero")
    g = math.gcd(n, *m)
    n_prime = n // g
    basis = semistable_lattice(m, n)
    index = exact.sublattice_index(basis)
    if index != n_prime:
        raise VerificationError(f"lattice index {index} differs from n' = {n_prime}")
    codim1 = tuple(i for i, x in enumerate(m) if x >= 2)
    ones = [i for i, x in enumerate(m) if x == 1]
    codim2 = tuple((a, b) for k, a in enumerate(ones) for b in ones[k + 1 :])
    return SemistableReport(
        n=n,
        m=m,
        g=g,
        n_prime=n_prime,
        component_count=g,
        lattice_basis=basis,
        lattice_index=index,
        is_normal=max(m) == 1,
        is_smooth=not codim1 and not codim2,
        codim1=codim1,
        codim2=codim2,
    )
