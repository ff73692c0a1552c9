"""Exact scalar arithmetic: rationals and cyclotomic field elements.

Every coefficient in this package is an exact rational or an element of a
cyclotomic field Q(zeta_N), stored in the power basis modulo the N-th
cyclotomic polynomial.  Floats never enter a computation path; the complex
embedding below exists only as a cross-check oracle for tests and for the
single sign choice made when extracting square roots.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

# ---------------------------------------------------------------------------
# rationals
# ---------------------------------------------------------------------------

try:
    from gmpy2 import mpq as _mpq

    GMPY2_AVAILABLE = True
except ImportError:  # pragma: no cover - gmpy2 is present in the dev env
    _mpq = None
    GMPY2_AVAILABLE = False


def QQ(numerator=0, denominator=None):
    """Build an exact rational (gmpy2-backed when available)."""
    if denominator is None:
        if _mpq is not None:
            return _mpq(numerator)
        if isinstance(numerator, str):
            return Fraction(numerator)
        return Fraction(numerator)
    if _mpq is not None:
        return _mpq(numerator, denominator)
    return Fraction(numerator, denominator)


RATIONAL_TYPES = (int, Fraction) + ((_mpq,) if GMPY2_AVAILABLE else ())

ZERO = QQ(0)
ONE = QQ(1)
HALF = QQ(1, 2)


def is_rational(x) -> bool:
    """True for plain rational scalars (int, Fraction, gmpy2.mpq)."""
    return isinstance(x, RATIONAL_TYPES)


def rational_floor(x) -> int:
    """Floor of an exact rational."""
    num, den = x.numerator, x.denominator
    return num // den


def rational_ceil(x) -> int:
    """Ceiling of an exact rational."""
    num, den = x.numerator, x.denominator
    return -((-num) // den)


def binomial(r, i: int):
    """Generalized binomial coefficient C(r, i) for rational r, integer i >= 0."""
    if i < 0:
        return ZERO
    result = ONE
    r = QQ(r)
    for step in range(i):
        result = result * (r - step) / (step + 1)
    return result


# ---------------------------------------------------------------------------
# dense polynomials over Q (coefficient lists, low degree first)
# ---------------------------------------------------------------------------


def _ptrim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _padd(a: list, b: list) -> list:
    n = max(len(a), len(b))
    out = [ZERO] * n
    for i, c in enumerate(a):
        out[i] = out[i] + c
    for i, c in enumerate(b):
        out[i] = out[i] + c
    return _ptrim(out)


def _psub(a: list, b: list) -> list:
    return _padd(a, [-c for c in b])


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca == 0:
            continue
        for j, cb in enumerate(b):
            out[i + j] = out[i + j] + ca * cb
    return _ptrim(out)


def _pdivmod(a: list, b: list) -> tuple[list, list]:
    """Exact polynomial division with remainder over Q."""
    b = _ptrim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = _ptrim(list(a))
    quot = [ZERO] * max(0, len(a) - len(b) + 1)
    inv_lead = ONE / b[-1]
    while len(rem) >= len(b):
        coeff = rem[-1] * inv_lead
        deg = len(rem) - len(b)
        quot[deg] = coeff
        for i, cb in enumerate(b):
            rem[deg + i] = rem[deg + i] - coeff * cb
        _ptrim(rem)
        if not rem:
            break
    return _ptrim(quot), rem


def _pxgcd(a: list, b: list) -> tuple[list, list, list]:
    """Extended gcd over Q[t]: returns (g, u, v) with u*a + v*b = g."""
    r0, r1 = _ptrim(list(a)), _ptrim(list(b))
    s0, s1 = [ONE], []
    t0, t1 = [], [ONE]
    while r1:
        q, r = _pdivmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _psub(s0, _pmul(q, s1))
        t0, t1 = t1, _psub(t0, _pmul(q, t1))
    return r0, s0, t0


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    """Euler totient."""
    result = n
    p = 2
    m = n
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


@lru_cache(maxsize=None)
def cyclotomic_poly(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial (low degree first)."""
    if n == 1:
        return (QQ(-1), ONE)
    # x^n - 1 divided by the product of Phi_d over proper divisors d | n
    poly = [QQ(-1)] + [ZERO] * (n - 1) + [ONE]
    for d in range(1, n):
        if n % d == 0:
            q, r = _pdivmod(poly, list(cyclotomic_poly(d)))
            if r:
                raise ArithmeticError("cyclotomic polynomial division not exact")
            poly = q
    return tuple(poly)


# ---------------------------------------------------------------------------
# cyclotomic field elements
# ---------------------------------------------------------------------------


class CycScalar:
    """Element of Q(zeta_N): coefficient vector of length phi(N) over Q.

    Instances are immutable.  Arithmetic requires matching conductors; a
    rational-valued element mixes freely with any conductor.
    """

    __slots__ = ("conductor", "coeffs")

    def __init__(self, conductor: int, coeffs):
        if conductor < 1:
            raise ValueError(f"conductor must be >= 1, got {conductor}")
        degree = euler_phi(conductor)
        coeffs = [QQ(c) for c in coeffs]
        if len(coeffs) > degree:
            coeffs = self._reduce(conductor, coeffs)
        coeffs = coeffs + [ZERO] * (degree - len(coeffs))
        object.__setattr__(self, "conductor", conductor)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("CycScalar is immutable")

    @staticmethod
    def _reduce(conductor: int, coeffs: list) -> list:
        _, rem = _pdivmod(list(coeffs), list(cyclotomic_poly(conductor)))
        return rem

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_rational(cls, value, conductor: int = 1) -> "CycScalar":
        return cls(conductor, [QQ(value)])

    @classmethod
    def root_of_unity(cls, conductor: int, exponent: int) -> "CycScalar":
        exponent %= conductor
        return cls(conductor, [ZERO] * exponent + [ONE])

    # -- predicates and conversions -----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coeffs[0]

    def complex_value(self) -> complex:
        """Complex embedding zeta_N -> exp(2*pi*i/N).  Test oracle only."""
        root = cmath.exp(2j * cmath.pi / self.conductor)
        return sum(float(c) * root**j for j, c in enumerate(self.coeffs))

    # -- coercion ------------------------------------------------------------

    def _pair(self, other):
        """Coerce (self, other) to a common conductor or raise."""
        if is_rational(other):
            other = CycScalar.from_rational(other, self.conductor)
        if not isinstance(other, CycScalar):
            return None
        if self.conductor == other.conductor:
            return self, other
        if self.is_rational():
            return (
                CycScalar.from_rational(self.coeffs[0], other.conductor),
                other,
            )
        if other.is_rational():
            return (
                self,
                CycScalar.from_rational(other.coeffs[0], self.conductor),
            )
        raise ValueError(
            f"conductor mismatch: {self.conductor} vs {other.conductor}"
        )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycScalar(a.conductor, [x + y for x, y in zip(a.coeffs, b.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return CycScalar(self.conductor, [-c for c in self.coeffs])

    def __sub__(self, other):
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return CycScalar(a.conductor, [x - y for x, y in zip(a.coeffs, b.coeffs)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_rational(other):
            # fast path: scale the coefficient vector directly
            return CycScalar(self.conductor, [c * other for c in self.coeffs])
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        prod = _pmul(list(a.coeffs), list(b.coeffs))
        return CycScalar(a.conductor, prod)

    __rmul__ = __mul__

    def inverse(self) -> "CycScalar":
        if self.is_zero():
            raise ZeroDivisionError("division by zero CycScalar")
        if self.is_rational():
            return CycScalar.from_rational(ONE / self.coeffs[0], self.conductor)
        g, u, _ = _pxgcd(list(self.coeffs), list(cyclotomic_poly(self.conductor)))
        if len(g) != 1:
            raise ArithmeticError("inverse failed: gcd not constant")
        scale = ONE / g[0]
        return CycScalar(self.conductor, [c * scale for c in u])

    def __truediv__(self, other):
        if is_rational(other):
            return self * (ONE / QQ(other))
        pair = self._pair(other)
        if pair is None:
            return NotImplemented
        a, b = pair
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = CycScalar.from_rational(ONE, self.conductor)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # -- comparison ------------------------------------------------------------

    def __eq__(self, other):
        if is_rational(other):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, CycScalar):
            return NotImplemented
        if self.conductor == other.conductor:
            return self.coeffs == other.coeffs
        if self.is_rational() or other.is_rational():
            if self.is_rational() != other.is_rational():
                return False
            return self.coeffs[0] == other.coeffs[0]
        raise ValueError(
            f"conductor mismatch: {self.conductor} vs {other.conductor}"
        )

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.conductor, self.coeffs))

    def __bool__(self):
        return not self.is_zero()

    # -- rendering ---------------------------------------------------------------

    def __str__(self):
        if self.is_rational():
            return str(self.coeffs[0])
        sym = f"z{self.conductor}"
        parts = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                parts.append(str(c))
            else:
                power = sym if j == 1 else f"{sym}^{j}"
                parts.append(power if c == 1 else f"{c}*{power}")
        return " + ".join(parts) if parts else "0"

    def __repr__(self):
        return f"CycScalar({self.conductor}, {[str(c) for c in self.coeffs]})"

    # -- serialization --------------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "conductor": self.conductor,
            "coeffs": [str(c) for c in self.coeffs],
        }

    @classmethod
    def from_json(cls, data: dict) -> "CycScalar":
        return cls(data["conductor"], [QQ(c) for c in data["coeffs"]])


# ---------------------------------------------------------------------------
# named constructors used throughout the package
# ---------------------------------------------------------------------------


def cyc_root_of_unity(conductor: int, exponent: int) -> CycScalar:
    """zeta_N^m as an element of Q(zeta_N)."""
    return CycScalar.root_of_unity(conductor, exponent)


@lru_cache(maxsize=None)
def cyc_sqrt_k(k: int) -> CycScalar:
    """The square root of k in Q(zeta_{4k}) that is positive in the real embedding.

    Built from zeta_8 + zeta_8^-1 = sqrt(2) and quadratic Gauss sums for odd
    primes; the classical sign of the Gauss sum makes every factor positive.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    conductor = 4 * k
    square_part = 1
    squarefree = k
    p = 2
    while p * p <= squarefree:
        while squarefree % (p * p) == 0:
            squarefree //= p * p
            square_part *= p
        p += 1
    result = CycScalar.from_rational(square_part, conductor)
    remaining = squarefree
    p = 2
    while remaining > 1:
        if remaining % p == 0:
            remaining //= p
            if p == 2:
                # sqrt(2) = zeta_8 + zeta_8^-1; 8 | 4k because k is even here
                z8 = conductor // 8
                factor = cyc_root_of_unity(conductor, z8) + cyc_root_of_unity(
                    conductor, -z8
                )
            else:
                zp = conductor // p
                factor = CycScalar.from_rational(0, conductor)
                for a in range(p):
                    factor = factor + cyc_root_of_unity(conductor, zp * (a * a % p))
                if p % 4 == 3:
                    # Gauss sum equals i*sqrt(p); divide by i = zeta_4
                    factor = factor * cyc_root_of_unity(conductor, -(conductor // 4))
            result = result * factor
        p += 1
    numeric = result.complex_value()
    if abs(numeric - math.sqrt(k)) > 1e-9:  # pragma: no cover - sanity guard
        raise ArithmeticError(f"sqrt({k}) construction failed: {numeric}")
    return result


def k_to_the(k: int, exponent) -> CycScalar | object:
    """k raised to a half-integer power, exactly (uses cyc_sqrt_k for halves)."""
    e = QQ(exponent)
    if e.denominator == 1:
        return QQ(k) ** int(e)
    if e.denominator != 2:
        raise ValueError(f"exponent {e} is not a half-integer")
    n = rational_floor(e)
    return cyc_sqrt_k(k) * (QQ(k) ** n)


def eta_k(k: int) -> CycScalar:
    """A fixed primitive k-th root of unity inside Q(zeta_{4k})."""
    return cyc_root_of_unity(4 * k, 4)


# ---------------------------------------------------------------------------
# scalar helpers shared by the other modules (values are QQ or CycScalar)
# ---------------------------------------------------------------------------


def scalar_is_zero(x) -> bool:
    if isinstance(x, CycScalar):
        return x.is_zero()
    return x == 0


def scalar_str(x) -> str:
    if isinstance(x, CycScalar) and not x.is_rational():
        return f"({x})"
    if isinstance(x, CycScalar):
        return str(x.rational_value())
    return str(x)


def scalar_to_json(x):
    if isinstance(x, CycScalar):
        if x.is_rational():
            return str(x.rational_value())
        return x.to_json()
    return str(x)


def scalar_from_json(data):
    if isinstance(data, dict):
        return CycScalar.from_json(data)
    return QQ(data)


def complex_embedding(x) -> complex:
    """Numeric value of any scalar.  Test oracle only — never used to compute."""
    if isinstance(x, CycScalar):
        return x.complex_value()
    return complex(Fraction(x.numerator, x.denominator))
