"""Binomials ``T^n - f`` over cyclotomic fields.

Elements of ``Q(zeta_N)`` are coefficient vectors in the power basis
``1, zeta_N, ..., zeta_N^(phi(N)-1)``, reduced modulo the N-th cyclotomic
polynomial. Equality is coefficient equality.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from . import qdiv
from .errors import (
    BadInput,
    BadN,
    LevelTooSmall,
    NotRootOfUnity,
    VerificationError,
    ZeroInput,
)
from .qdiv import QDivisor

RatLike = Union[int, Fraction, str]


def _check_positive(n: int, what: str = "n") -> int:
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise BadN(f"{what} must be an integer >= 1, got {n!r}")
    return n


def _divisors(n: int) -> List[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _prime_divisors(n: int) -> List[int]:
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


# -- integer polynomials, coefficient lists low degree first ------------------


def _poly_mul(a: Sequence, b: Sequence) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a: list) -> list:
    while a and not a[-1]:
        a.pop()
    return a


def _poly_divmod(a: Sequence, b: Sequence) -> Tuple[list, list]:
    """Division by ``b`` over Q (or exactly over Z when ``b`` is monic)."""
    a, b = _trim(list(a)), _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    lead = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] if lead == 1 else Fraction(a[-1]) / lead
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        _trim(a)
    return q, a


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> Tuple[int, ...]:
    """Integer coefficients of the N-th cyclotomic polynomial, low degree first."""
    _check_positive(N, "N")
    num = [-1] + [0] * (N - 1) + [1]
    for d in _divisors(N)[:-1]:
        num, rem = _poly_divmod(num, cyclotomic_polynomial(d))
        if rem:
            raise VerificationError(f"Phi_{d} does not divide T^{N} - 1")
    return tuple(int(c) for c in num)


def euler_phi(N: int) -> int:
    return len(cyclotomic_polynomial(N)) - 1


def contains_roots_of_unity(N: int, d: int) -> bool:
    """Whether ``mu_d`` lies in ``Q(zeta_N)``."""
    return N % d == 0 or (N % 2 == 1 and (2 * N) % d == 0)


def minimal_level(d: int) -> int:
    """Smallest ``N`` with ``mu_d`` inside ``Q(zeta_N)``."""
    _check_positive(d, "d")
    return d // 2 if d % 4 == 2 else d


class CycloNum:
    """Immutable element of ``Q(zeta_N)``."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Sequence[RatLike]):
        _check_positive(level, "level")
        phi = euler_phi(level)
        vals = [Fraction(c) for c in coeffs]
        if len(vals) > phi:
            _, vals = _poly_divmod(vals, cyclotomic_polynomial(level))
        vals = [Fraction(c) for c in vals]
        vals += [Fraction(0)] * (phi - len(vals))
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("CycloNum is immutable")

    @classmethod
    def rational(cls, level: int, q: RatLike) -> "CycloNum":
        return cls(level, [q])

    @classmethod
    def zeta_power(cls, level: int, k: int) -> "CycloNum":
        """``zeta_N^k``."""
        k %= level
        return cls(level, [0] * k + [1])

    @classmethod
    def root_of_unity(cls, level: int, d: int, k: int = 1) -> "CycloNum":
        """``zeta_d^k`` realized in ``Q(zeta_level)``, with ``zeta_d = exp(2 pi i / d)``.

        For odd levels, ``-zeta_N^((N+1)/2)`` serves as the primitive 2N-th root.
        """
        _check_positive(d, "d")
        if level % d == 0:
            return cls.zeta_power(level, (level // d) * k)
        if not contains_roots_of_unity(level, d):
            raise LevelTooSmall(f"mu_{d} is not contained in Q(zeta_{level})")
        omega = -cls.zeta_power(level, (level + 1) // 2)
        return omega ** (((2 * level) // d) * k % (2 * level))

    def _coerce(self, other) -> "CycloNum":
        if isinstance(other, CycloNum):
            if other.level != self.level:
                raise BadInput(f"levels {self.level} and {other.level} differ")
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNum.rational(self.level, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.level, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycloNum(self.level, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.level, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNum(self.level, _poly_mul(self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNum":
        if self.is_zero():
            raise ZeroDivisionError("zero has no inverse")
        # extended Euclid against Phi_N over Q
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self.level)], list(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        _trim(r1)
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            prod = _poly_mul(q, s1)
            width = max(len(s0), len(prod))
            s_new = [
                (s0[i] if i < len(s0) else 0) - (prod[i] if i < len(prod) else 0)
                for i in range(width)
            ]
            s0, s1 = s1, _trim(s_new)
        c = r1[0]
        inv = CycloNum(self.level, [x / c for x in s1])
        if inv * self != 1:
            raise VerificationError("inverse check failed")
        return inv

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __pow__(self, k: int) -> "CycloNum":
        if k < 0:
            return self.inverse() ** (-k)
        out, base = CycloNum.rational(self.level, 1), self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise BadInput(f"{self} is not rational")
        return self.coeffs[0]

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, CycloNum):
            return self.level == other.level and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def to_json(self) -> List[str]:
        return [qdiv.format_rational(c) for c in self.coeffs]

    def __repr__(self) -> str:
        terms = []
        for k, c in enumerate(self.coeffs):
            if c:
                mono = "" if k == 0 else ("z" if k == 1 else f"z^{k}")
                terms.append(f"({c})*{mono}" if mono else f"({c})")
        return f"CycloNum[{self.level}](" + (" + ".join(terms) or "0") + ")"


class CycloPoly:
    """Immutable polynomial in ``T`` over ``Q(zeta_N)``, low degree first."""

    __slots__ = ("level", "coeffs")

    def __init__(self, level: int, coeffs: Sequence[Union[CycloNum, RatLike]]):
        vals = [
            c if isinstance(c, CycloNum) else CycloNum.rational(level, c) for c in coeffs
        ]
        if any(c.level != level for c in vals):
            raise BadInput("coefficient level mismatch")
        while vals and vals[-1].is_zero():
            vals.pop()
        object.__setattr__(self, "level", level)
        object.__setattr__(self, "coeffs", tuple(vals))

    def __setattr__(self, name, value):
        raise AttributeError("CycloPoly is immutable")

    @classmethod
    def binomial(cls, level: int, n: int, c: Union[CycloNum, RatLike]) -> "CycloPoly":
        """``T^n - c``."""
        c = c if isinstance(c, CycloNum) else CycloNum.rational(level, c)
        return cls(level, [-c] + [0] * (n - 1) + [1]) if n else cls(level, [1 - c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _zero(self) -> CycloNum:
        return CycloNum.rational(self.level, 0)

    def __add__(self, other: "CycloPoly") -> "CycloPoly":
        w = max(len(self.coeffs), len(other.coeffs))
        z = self._zero()
        a = self.coeffs + (z,) * (w - len(self.coeffs))
        b = other.coeffs + (z,) * (w - len(other.coeffs))
        return CycloPoly(self.level, [x + y for x, y in zip(a, b)])

    def __neg__(self) -> "CycloPoly":
        return CycloPoly(self.level, [-c for c in self.coeffs])

    def __sub__(self, other: "CycloPoly") -> "CycloPoly":
        return self + (-other)

    def __mul__(self, other) -> "CycloPoly":
        if isinstance(other, (CycloNum, int, Fraction)):
            return CycloPoly(self.level, [c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return CycloPoly(self.level, [])
        out = [self._zero()] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x.is_zero():
                continue
            for j, y in enumerate(other.coeffs):
                out[i + j] = out[i + j] + x * y
        return CycloPoly(self.level, out)

    __rmul__ = __mul__

    def divmod(self, other: "CycloPoly") -> Tuple["CycloPoly", "CycloPoly"]:
        if not other.coeffs:
            raise ZeroDivisionError("polynomial division by zero")
        lead_inv = other.coeffs[-1].inverse()
        a = list(self.coeffs)
        q = [self._zero()] * max(len(a) - len(other.coeffs) + 1, 0)
        while len(a) >= len(other.coeffs):
            c = a[-1] * lead_inv
            shift = len(a) - len(other.coeffs)
            q[shift] = c
            for i, y in enumerate(other.coeffs):
                a[i + shift] = a[i + shift] - c * y
            a.pop()
            while a and a[-1].is_zero():
                a.pop()
        return CycloPoly(self.level, q), CycloPoly(self.level, a)

    def __mod__(self, other: "CycloPoly") -> "CycloPoly":
        return self.divmod(other)[1]

    def exact_div(self, other: "CycloPoly") -> "CycloPoly":
        q, r = self.divmod(other)
        if r.coeffs:
            raise VerificationError("division leaves a remainder")
        return q

    def scale_variable(self, xi: CycloNum) -> "CycloPoly":
        """Substitute ``T -> xi * T``."""
        out, power = [], CycloNum.rational(self.level, 1)
        for c in self.coeffs:
            out.append(c * power)
            power = power * xi
        return CycloPoly(self.level, out)

    def is_one(self) -> bool:
        return len(self.coeffs) == 1 and self.coeffs[0] == 1

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycloPoly):
            return NotImplemented
        return self.level == other.level and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.level, self.coeffs))

    def to_json(self) -> List[List[str]]:
        return [c.to_json() for c in self.coeffs]

    def __repr__(self) -> str:
        return f"CycloPoly[{self.level}]({list(self.coeffs)})"


# -- rational roots and Capelli ---------------------------------------------


def integer_root(a: int, k: int) -> Optional[int]:
    """Exact non-negative k-th root of ``a >= 0``, or None."""
    if a < 0:
        return None
    if a < 2:
        return a
    x = 1 << ((a.bit_length() + k - 1) // k)
    while True:
        y = ((k - 1) * x + a // x ** (k - 1)) // k
        if y >= x:
            break
        x = y
    return x if x**k == a else None


def rational_root(f: RatLike, k: int) -> Optional[Fraction]:
    """A rational ``g`` with ``g^k = f`` (the positive one for even k), or None."""
    f = Fraction(f)
    if f < 0 and k % 2 == 0:
        return None
    num = integer_root(abs(f.numerator), k)
    den = integer_root(f.denominator, k)
    if num is None or den is None:
        return None
    return Fraction(num if f >= 0 else -num, den)


def _check_f(f: RatLike) -> Fraction:
    f = Fraction(f)
    if f == 0:
        raise ZeroInput("f must be nonzero")
    return f


def max_root_divisor_Q(f: RatLike, n: int) -> Tuple[int, Fraction]:
    """Largest ``d | n`` with ``f = g^d`` for a rational ``g``."""
    f = _check_f(f)
    _check_positive(n)
    for d in reversed(_divisors(n)):
        g = rational_root(f, d)
        if g is not None:
            return d, g
    raise AssertionError("unreachable: d = 1 always works")


def capelli_reason(f: RatLike, n: int) -> Tuple[bool, str]:
    """Irreducibility of ``T^n - f`` over Q with a human-readable reason."""
    f = _check_f(f)
    _check_positive(n)
    fs = qdiv.format_rational(f)
    for p in _prime_divisors(n):
        g = rational_root(f, p)
        if g is not None:
            return False, f"f = ({qdiv.format_rational(g)})^{p}, {p} | n"
    if n % 4 == 0:
        x = rational_root(-f / 4, 4)
        if x is not None:
            return False, f"f = -4*{qdiv.format_rational(x)}^4, 4 | n"
    return True, f"f = {fs} is no p-th power for p | n and not of the form -4x^4 with 4 | n"


def capelli_irreducible(f: RatLike, n: int) -> bool:
    return capelli_reason(f, n)[0]


# -- decomposition ----------------------------------------------------------


@dataclass(frozen=True)
class KummerDecomp:
    n: int
    d: int
    n_prime: int
    f: Fraction
    g: CycloNum
    level: int
    roots: Tuple[CycloNum, ...]
    factors: Tuple[CycloPoly, ...]
    idempotents: Tuple[CycloPoly, ...]
    maximality: str

    @property
    def modulus(self) -> CycloPoly:
        return CycloPoly.binomial(self.level, self.n, self.f)

    def verify(self) -> "KummerDecomp":
        mod = self.modulus
        if self.d * self.n_prime != self.n:
            raise VerificationError("d * n' != n")
        if self.g ** self.d != self.f:
            raise VerificationError("g^d != f")
        prod = CycloPoly(self.level, [1])
        for fac in self.factors:
            prod = prod * fac
        if prod != mod:
            raise VerificationError("product of factors differs from T^n - f")
        total = CycloPoly(self.level, [])
        for P in self.idempotents:
            total = total + P
        if not (total % mod).is_one():
            raise VerificationError("idempotents do not sum to 1")
        for k, P in enumerate(self.idempotents):
            if (P * P) % mod != P:
                raise VerificationError(f"P_{k} is not idempotent")
            for l in range(k + 1, self.d):
                if ((P * self.idempotents[l]) % mod).coeffs:
                    raise VerificationError(f"P_{k} P_{l} != 0")
        return self


def kummer_decompose(
    f: RatLike,
    n: int,
    level: int,
    root: Optional[Tuple[int, CycloNum]] = None,
) -> KummerDecomp:
    """Split ``T^n - f`` as ``prod_{zeta in mu_d} (T^n' - zeta g)`` over ``Q(zeta_level)``.

    Without ``root``, ``d`` is the largest divisor of ``n`` for which ``f``
    has a rational ``d``-th root, so maximality is certified over Q. A caller
    may pass ``root=(d, g)`` with ``g`` in the cyclotomic field; ``g^d = f``
    is checked exactly but maximality is then only asserted.
    """
    f = _check_f(f)
    _check_positive(n)
    _check_positive(level, "level")
    if root is None:
        d, g_q = max_root_divisor_Q(f, n)
        g = CycloNum.rational(level, g_q)
        maximality = "certified"
    else:
        d, g = root
        _check_positive(d, "d")
        if n % d:
            raise BadInput(f"d = {d} does not divide n = {n}")
        if not isinstance(g, CycloNum) or g.level != level:
            raise BadInput("g must be a CycloNum at the decomposition level")
        if g**d != f:
            raise BadInput("supplied g does not satisfy g^d = f")
        maximality = "asserted"
    if not contains_roots_of_unity(level, d):
        raise LevelTooSmall(f"mu_{d} is not contained in Q(zeta_{level})")
    n_prime = n // d
    roots = tuple(CycloNum.root_of_unity(level, d, k) for k in range(d))
    mod = CycloPoly.binomial(level, n, f)
    factors = tuple(CycloPoly.binomial(level, n_prime, z * g) for z in roots)
    idempotents = []
    for k, (z, fac) in enumerate(zip(roots, factors)):
        denom = CycloNum.rational(level, 1)
        for l, z2 in enumerate(roots):
            if l != k:
                denom = denom * (z * g - z2 * g)
        if denom.is_zero():
            raise VerificationError("vanishing idempotent denominator")
        idempotents.append(mod.exact_div(fac) * denom.inverse())
    return KummerDecomp(
        n=n,
        d=d,
        n_prime=n_prime,
        f=f,
        g=g,
        level=level,
        roots=roots,
        factors=factors,
        idempotents=tuple(idempotents),
        maximality=maximality,
    ).verify()


def roots_of_unity(level: int, n: int) -> List[CycloNum]:
    """``[zeta_n^k for k in 0..n-1]`` inside ``Q(zeta_level)``."""
    return [CycloNum.root_of_unity(level, n, k) for k in range(n)]


def galois_act(decomp: KummerDecomp, xi: CycloNum) -> Tuple[int, ...]:
    """Permutation ``k -> l`` of factor indices with ``zeta_l = xi^n' zeta_k``.

    Checked against the action ``T -> xi T`` on the idempotents, which sends
    ``P_zeta`` to ``P_{xi^-n' zeta}``.
    """
    if not isinstance(xi, CycloNum) or xi.level != decomp.level:
        raise BadInput("xi must be a CycloNum at the decomposition level")
    if xi**decomp.n != 1:
        raise NotRootOfUnity(f"xi^{decomp.n} != 1")
    shift = xi**decomp.n_prime
    index = {z: k for k, z in enumerate(decomp.roots)}
    perm = []
    for z in decomp.roots:
        target = index.get(shift * z)
        if target is None:
            raise NotRootOfUnity("xi^n' does not preserve mu_d")
        perm.append(target)
    inverse = {l: k for k, l in enumerate(perm)}
    mod = decomp.modulus
    for k, P in enumerate(decomp.idempotents):
        if P.scale_variable(xi) % mod != decomp.idempotents[inverse[k]]:
            raise VerificationError("idempotent conjugation disagrees with the permutation")
    return tuple(perm)


def vandermonde_unit(n: int, level: int) -> CycloNum:
    """``prod_{i<j} (zeta_j - zeta_i)`` for ``zeta_k = zeta_n^k``."""
    _check_positive(n)
    if not contains_roots_of_unity(level, n):
        raise LevelTooSmall(f"mu_{n} is not contained in Q(zeta_{level})")
    zs = roots_of_unity(level, n)
    out = CycloNum.rational(level, 1)
    for j in range(n):
        for i in range(j):
            out = out * (zs[j] - zs[i])
    if out.is_zero():
        raise VerificationError("Vandermonde product vanished")
    return out


def grading_divisors(divf: QDivisor, n: int) -> List[QDivisor]:
    """``floor((i/n) * div f)`` for ``i = 0..n-1``: the graded pieces of the integral closure."""
    _check_positive(n)
    return [qdiv.floor_div(Fraction(i, n) * divf) for i in range(n)]
