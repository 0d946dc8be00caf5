"""Exact scalars: rationals, Gaussian rationals, rational quaternions and
cyclotomic elements.

Rationals are plain :class:`fractions.Fraction` values.  The rationals stand in
for a real closed field ``k`` at the level of signs and signatures, the
Gaussian rationals for ``k(i)``, and :class:`Quaternion` for Hamilton's
quaternions over ``k``.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

Rational = Fraction
Scalar = Union[Fraction, "GaussRational", "Quaternion", "CycloElement"]

_RATIONAL_RE = re.compile(r"^-?\d+(/\d+)?$")


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int) and not isinstance(x, bool):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def rational_sign(r) -> int:
    """Sign of a rational in its unique ordering: -1, 0 or +1."""
    r = as_rational(r)
    return (r > 0) - (r < 0)


# ---------------------------------------------------------------------------
# Gaussian rationals


@dataclass(frozen=True)
class GaussRational:
    re: Fraction
    im: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "re", as_rational(self.re))
        object.__setattr__(self, "im", as_rational(self.im))

    @classmethod
    def coerce(cls, x) -> "GaussRational":
        if isinstance(x, GaussRational):
            return x
        return cls(as_rational(x))

    def __add__(self, other):
        if not isinstance(other, _GAUSS_OPERANDS):
            return NotImplemented
        o = GaussRational.coerce(other)
        return GaussRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other):
        if not isinstance(other, _GAUSS_OPERANDS):
            return NotImplemented
        return self + (-GaussRational.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        return GaussRational.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, _GAUSS_OPERANDS):
            return NotImplemented
        o = GaussRational.coerce(other)
        return GaussRational(self.re * o.re - self.im * o.im,
                             self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def inverse(self) -> "GaussRational":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussRational(self.re / n, -self.im / n)

    def __truediv__(self, other):
        if not isinstance(other, _GAUSS_OPERANDS):
            return NotImplemented
        return self * GaussRational.coerce(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        return GaussRational.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        return _power(self, e)

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def is_rational(self) -> bool:
        return self.im == 0

    def __eq__(self, other):
        if isinstance(other, GaussRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.im == 0 and self.re == other
        return NotImplemented

    def __hash__(self):
        return hash(self.re) if self.im == 0 else hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __repr__(self):
        return f"GaussRational({self.re}, {self.im})"


I_UNIT = GaussRational(0, 1)


def gauss_conj(z) -> GaussRational:
    """Image of ``z`` under complex conjugation, the generator of Gal(k(i)|k)."""
    return GaussRational.coerce(z).conjugate()


# ---------------------------------------------------------------------------
# Quaternions


@dataclass(frozen=True)
class Quaternion:
    """a + bI + cJ + dK over the rationals, with I^2 = J^2 = K^2 = IJK = -1."""

    a: Fraction
    b: Fraction = Fraction(0)
    c: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, as_rational(getattr(self, name)))

    @classmethod
    def coerce(cls, x) -> "Quaternion":
        if isinstance(x, Quaternion):
            return x
        if isinstance(x, GaussRational):
            raise TypeError("Gaussian rationals do not embed canonically in the quaternions")
        return cls(as_rational(x))

    def __add__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        o = Quaternion.coerce(other)
        return Quaternion(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return Quaternion(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        return self + (-Quaternion.coerce(other))

    def __rsub__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        return Quaternion.coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        o = Quaternion.coerce(other)
        a1, b1, c1, d1 = self.a, self.b, self.c, self.d
        a2, b2, c2, d2 = o.a, o.b, o.c, o.d
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def __rmul__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        return Quaternion.coerce(other) * self

    def norm(self) -> Fraction:
        """Reduced norm a^2 + b^2 + c^2 + d^2."""
        return self.a * self.a + self.b * self.b + self.c * self.c + self.d * self.d

    def sigma(self) -> "Quaternion":
        return Quaternion(self.a, -self.b, -self.c, -self.d)

    def inverse(self) -> "Quaternion":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        s = self.sigma()
        return Quaternion(s.a / n, s.b / n, s.c / n, s.d / n)

    def __truediv__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        # right division: x / y = x * y^-1
        return self * Quaternion.coerce(other).inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        return Quaternion.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        return _power(self, e)

    def is_rational(self) -> bool:
        return self.b == 0 and self.c == 0 and self.d == 0

    def is_pure(self) -> bool:
        return self.a == 0

    def __eq__(self, other):
        if isinstance(other, Quaternion):
            return (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.a)
        return hash((self.a, self.b, self.c, self.d))

    def __bool__(self):
        return bool(self.a) or bool(self.b) or bool(self.c) or bool(self.d)

    def __repr__(self):
        return f"Quaternion({self.a}, {self.b}, {self.c}, {self.d})"


QI = Quaternion(0, 1, 0, 0)
QJ = Quaternion(0, 0, 1, 0)
QK = Quaternion(0, 0, 0, 1)


def quat_sigma(x) -> Quaternion:
    """The standard involution a+bI+cJ+dK -> a-bI-cJ-dK."""
    return Quaternion.coerce(x).sigma()


# ---------------------------------------------------------------------------
# Cyclotomic fields Q(zeta_m)

# Polynomials are tuples of coefficients, lowest degree first, no trailing zeros.


def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return _trim(out)


def _poly_sub(p, q):
    n = max(len(p), len(q))
    return _trim([(p[i] if i < len(p) else 0) - (q[i] if i < len(q) else 0) for i in range(n)])


def _poly_divmod(p, q):
    p = _trim(p)
    q = _trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    quot = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    rem = [Fraction(c) for c in p]
    lead = Fraction(q[-1])
    while len(rem) >= len(q):
        shift = len(rem) - len(q)
        f = rem[-1] / lead
        quot[shift] = f
        for i, c in enumerate(q):
            rem[shift + i] -= f * c
        rem = _trim(rem)
    return _trim(quot), rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, by dividing x^m - 1 by Phi_d for d | m, d < m."""
    if m < 1:
        raise ValueError("order must be positive")
    p = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            p, r = _poly_divmod(p, cyclotomic_polynomial(d))
            assert not r
    return tuple(int(c) for c in p)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce(p, m):
    _, r = _poly_divmod(p, cyclotomic_polynomial(m))
    deg = euler_phi(m)
    r = [Fraction(c) for c in r]
    return tuple(r + [Fraction(0)] * (deg - len(r)))


@dataclass(frozen=True)
class CycloElement:
    """Residue class of a rational polynomial in zeta modulo Phi_m."""

    order: int
    coeffs: tuple

    def __post_init__(self):
        if self.order < 1:
            raise ValueError("order must be positive")
        coeffs = tuple(as_rational(c) for c in self.coeffs)
        if len(coeffs) != euler_phi(self.order):
            coeffs = _reduce(coeffs, self.order)
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def from_poly(cls, m: int, poly) -> "CycloElement":
        return cls(m, _reduce(_trim([as_rational(c) for c in poly]), m))

    @classmethod
    def zeta(cls, m: int) -> "CycloElement":
        """The class of x, a primitive m-th root of unity."""
        return cls.from_poly(m, [0, 1])

    @classmethod
    def coerce(cls, x, m: int) -> "CycloElement":
        if isinstance(x, CycloElement):
            return x.lift(m)
        if isinstance(x, GaussRational):
            if m % 4:
                raise TypeError(f"i is not available in Q(zeta_{m})")
            return cls.from_poly(m, [x.re]) + cls.from_poly(m, [0] * (m // 4) + [x.im])
        if isinstance(x, Quaternion):
            raise TypeError("quaternions do not embed in a cyclotomic field")
        return cls.from_poly(m, [as_rational(x)])

    def lift(self, m: int) -> "CycloElement":
        """Image in Q(zeta_m) for a multiple m of the current order."""
        if m == self.order:
            return self
        if m % self.order:
            raise ValueError(f"Q(zeta_{self.order}) is not a subfield of Q(zeta_{m})")
        step = m // self.order
        poly = [Fraction(0)] * (step * len(self.coeffs))
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return CycloElement.from_poly(m, poly)

    def _pair(self, other):
        if isinstance(other, CycloElement):
            m = math.lcm(self.order, other.order)
            return self.lift(m), other.lift(m)
        if isinstance(other, GaussRational) and self.order % 4:
            m = math.lcm(self.order, 4)
            return self.lift(m), CycloElement.coerce(other, m)
        return self, CycloElement.coerce(other, self.order)

    def __add__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        if isinstance(other, Quaternion):
            return NotImplemented
        a, b = self._pair(other)
        return CycloElement(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloElement(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        if isinstance(other, Quaternion):
            return NotImplemented
        a, b = self._pair(other)
        return CycloElement(a.order, tuple(x - y for x, y in zip(a.coeffs, b.coeffs)))

    def __rsub__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        a, b = self._pair(other)
        return b - a

    def __mul__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        if isinstance(other, Quaternion):
            return NotImplemented
        a, b = self._pair(other)
        return CycloElement.from_poly(a.order, _poly_mul(list(a.coeffs), list(b.coeffs)))

    __rmul__ = __mul__

    def inverse(self) -> "CycloElement":
        if not self:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in Q[x]: s*self + t*Phi_m = 1
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self.order)], _trim(self.coeffs)
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        inv_const = 1 / r1[0]
        return CycloElement.from_poly(self.order, [c * inv_const for c in s1])

    def __truediv__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        if isinstance(other, Quaternion):
            return NotImplemented
        a, b = self._pair(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, _NUMERIC):
            return NotImplemented
        a, b = self._pair(other)
        return b * a.inverse()

    def __pow__(self, e: int):
        return _power(self, e)

    def conjugate(self) -> "CycloElement":
        """zeta -> zeta^(m-1)."""
        m = self.order
        poly = [Fraction(0)] * m
        for k, c in enumerate(self.coeffs):
            poly[(-k) % m] += c
        return CycloElement.from_poly(m, poly)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{format_scalar(self)} is not rational")
        return self.coeffs[0]

    def to_gauss(self) -> GaussRational:
        """Exact image in Q(i), when the element lies there."""
        m = self.order
        if m % 4 == 0:
            i_m = CycloElement.coerce(I_UNIT, m)
            # self = re + im*i  with re = (x + conj x)/2, im = (x - conj x)/(2i)
            re = (self + self.conjugate()) * Fraction(1, 2)
            im = (self - self.conjugate()) * Fraction(1, 2) * i_m.inverse()
            if re.is_rational() and im.is_rational():
                return GaussRational(re.to_rational(), im.to_rational())
        elif self.is_rational():
            return GaussRational(self.coeffs[0])
        raise ValueError(f"{format_scalar(self)} does not lie in Q(i)")

    def __eq__(self, other):
        if isinstance(other, CycloElement):
            if self.order == other.order:
                return self.coeffs == other.coeffs
            m = math.lcm(self.order, other.order)
            return self.lift(m).coeffs == other.lift(m).coeffs
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, GaussRational):
            try:
                return self.to_gauss() == other
            except ValueError:
                return False
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        return f"CycloElement({self.order}, {format_scalar(self)!r})"


def primitive_unity_root(n: int) -> CycloElement:
    """A primitive n-th root of unity inside Q(zeta_m), m = lcm(n, 4)."""
    if n < 1:
        raise ValueError("n must be positive")
    m = math.lcm(n, 4)
    return CycloElement.zeta(m) ** (m // n)


def multiplicative_order(x, limit: int = 10_000) -> int | None:
    """Smallest e >= 1 with x^e == 1, or None if not found below ``limit``."""
    one = one_like(x)
    y = x
    for e in range(1, limit + 1):
        if y == one:
            return e
        y = y * x
    return None


_NUMERIC = (int, Fraction, GaussRational, Quaternion, CycloElement)
_GAUSS_OPERANDS = (int, Fraction, GaussRational)

# ---------------------------------------------------------------------------
# Generic helpers over the tower

KINDS = ("rational", "gauss", "quaternion", "cyclo")


def _power(x, e: int):
    if e < 0:
        return _power(x.inverse(), -e)
    result = one_like(x)
    base = x
    while e:
        if e & 1:
            result = result * base
        base = base * base
        e >>= 1
    return result


def scalar_kind(x) -> str:
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return "rational"
    if isinstance(x, GaussRational):
        return "gauss"
    if isinstance(x, Quaternion):
        return "quaternion"
    if isinstance(x, CycloElement):
        return "cyclo"
    raise TypeError(f"not an exact scalar: {x!r}")


def zero_like(x):
    if isinstance(x, CycloElement):
        return CycloElement.from_poly(x.order, [])
    return coerce_kind(0, scalar_kind(x))


def one_like(x):
    if isinstance(x, CycloElement):
        return CycloElement.from_poly(x.order, [1])
    return coerce_kind(1, scalar_kind(x))


def coerce_kind(x, kind: str, order: int | None = None):
    if kind == "rational":
        if isinstance(x, (GaussRational, Quaternion, CycloElement)):
            if not x.is_rational():
                raise TypeError(f"{format_scalar(x)} is not rational")
            return x.coeffs[0] if isinstance(x, CycloElement) else (
                x.re if isinstance(x, GaussRational) else x.a)
        return as_rational(x)
    if kind == "gauss":
        if isinstance(x, CycloElement):
            return x.to_gauss()
        return GaussRational.coerce(x)
    if kind == "quaternion":
        return Quaternion.coerce(x)
    if kind == "cyclo":
        if order is None:
            raise ValueError("cyclotomic coercion needs an order")
        return CycloElement.coerce(x, order)
    raise ValueError(f"unknown scalar kind {kind!r}")


def unify(values) -> tuple[list, str, int | None]:
    """Coerce values to their common scalar kind.

    Returns (values, kind, cyclotomic order or None).
    """
    values = list(values)
    kinds = {scalar_kind(v) for v in values}
    if "quaternion" in kinds and kinds & {"gauss", "cyclo"}:
        raise TypeError("cannot mix quaternions with complex scalars")
    if "cyclo" in kinds:
        order = 1
        for v in values:
            if isinstance(v, CycloElement):
                order = math.lcm(order, v.order)
        if "gauss" in kinds:
            order = math.lcm(order, 4)
        return [coerce_kind(v, "cyclo", order) for v in values], "cyclo", order
    for kind in ("quaternion", "gauss", "rational"):
        if kind in kinds:
            return [coerce_kind(v, kind) for v in values], kind, None
    return values, "rational", None


def conj(x):
    """Complex conjugation c on rationals, Gaussian rationals and cyclotomic elements."""
    if isinstance(x, (GaussRational, CycloElement)):
        return x.conjugate()
    if isinstance(x, Quaternion):
        raise TypeError("complex conjugation is not defined on quaternions")
    return as_rational(x)


def is_rational_value(x) -> bool:
    if isinstance(x, (int, Fraction)):
        return True
    return x.is_rational()


def to_rational(x) -> Fraction:
    return coerce_kind(x, "rational")


# ---------------------------------------------------------------------------
# Canonical text encoding


def _fmt_q(r: Fraction) -> str:
    return str(as_rational(r))


def _parse_q(text: str) -> Fraction:
    text = text.strip()
    if not _RATIONAL_RE.match(text):
        raise ValueError(f"malformed rational {text!r}")
    num, _, den = text.partition("/")
    if den and int(den) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(num), int(den) if den else 1)


def format_scalar(x) -> str:
    """Canonical text: 'p/q', 're|im', 'a|b|c|d' or 'm:c0,c1,...'."""
    kind = scalar_kind(x)
    if kind == "rational":
        return _fmt_q(x)
    if kind == "gauss":
        return f"{_fmt_q(x.re)}|{_fmt_q(x.im)}"
    if kind == "quaternion":
        return "|".join(_fmt_q(getattr(x, n)) for n in "abcd")
    return f"{x.order}:" + ",".join(_fmt_q(c) for c in x.coeffs)


def parse_scalar(text: str, kind: str | None = None):
    """Inverse of :func:`format_scalar`; ``kind`` is inferred when omitted."""
    if not isinstance(text, str):
        raise ValueError(f"scalar must be a string, got {text!r}")
    if kind is None:
        if ":" in text:
            kind = "cyclo"
        else:
            kind = {0: "rational", 1: "gauss", 3: "quaternion"}.get(text.count("|"))
            if kind is None:
                raise ValueError(f"malformed scalar {text!r}")
    if kind == "rational":
        return _parse_q(text)
    if kind == "gauss":
        parts = text.split("|")
        if len(parts) != 2:
            raise ValueError(f"malformed Gaussian rational {text!r}")
        return GaussRational(_parse_q(parts[0]), _parse_q(parts[1]))
    if kind == "quaternion":
        parts = text.split("|")
        if len(parts) != 4:
            raise ValueError(f"malformed quaternion {text!r}")
        return Quaternion(*(_parse_q(p) for p in parts))
    if kind == "cyclo":
        head, sep, body = text.partition(":")
        if not sep or not head.strip().isdigit() or int(head) < 1:
            raise ValueError(f"malformed cyclotomic element {text!r}")
        m = int(head)
        coeffs = [_parse_q(c) for c in body.split(",")] if body else []
        if len(coeffs) != euler_phi(m):
            raise ValueError(f"Q(zeta_{m}) elements need {euler_phi(m)} coefficients")
        return CycloElement(m, tuple(coeffs))
    raise ValueError(f"unknown scalar kind {kind!r}")
