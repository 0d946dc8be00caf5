"""Quadratic and hermitian forms: exact congruence diagonalization, index,
equivalence over a real closed field, and 3-Pfister forms.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction

from . import exactnum as en
from .exactnum import QI, Quaternion
from .matrix import ExactMatrix, adjoint, as_kind


class FormError(ValueError):
    pass


class DegenerateFormError(FormError):
    def __init__(self, rank: int, size: int):
        super().__init__(f"degenerate form: rank {rank} < size {size}")
        self.rank = rank
        self.size = size


class FormKind(str, enum.Enum):
    QUADRATIC = "quadratic"
    HERMITIAN = "hermitian"
    QUAT_HERMITIAN = "quat_hermitian"
    QUAT_ANTIHERMITIAN = "quat_antihermitian"

    @property
    def adjoint(self) -> str:
        return {
            FormKind.QUADRATIC: "transpose",
            FormKind.HERMITIAN: "star",
            FormKind.QUAT_HERMITIAN: "sigma",
            FormKind.QUAT_ANTIHERMITIAN: "sigma",
        }[self]

    @property
    def parity(self) -> int:
        return -1 if self is FormKind.QUAT_ANTIHERMITIAN else 1

    @property
    def scalar(self) -> str:
        return {
            FormKind.QUADRATIC: "rational",
            FormKind.HERMITIAN: "gauss",
            FormKind.QUAT_HERMITIAN: "quaternion",
            FormKind.QUAT_ANTIHERMITIAN: "quaternion",
        }[self]


@dataclass(frozen=True)
class FormSpec:
    kind: FormKind
    gram: ExactMatrix

    def __post_init__(self):
        kind = FormKind(self.kind)
        object.__setattr__(self, "kind", kind)
        g = self.gram
        if not g.is_square:
            raise FormError(f"Gram matrix must be square, got {g.shape}")
        try:
            g = as_kind(g, kind.scalar)
        except TypeError as exc:
            raise FormError(f"{kind.value} form needs {kind.scalar} entries: {exc}") from None
        object.__setattr__(self, "gram", g)
        expected = g if kind.parity == 1 else -g
        if adjoint(g, kind.adjoint) != expected:
            raise FormError(f"Gram matrix does not satisfy the {kind.value} symmetry condition")

    @property
    def size(self) -> int:
        return self.gram.rows

    def congruent(self, u: ExactMatrix) -> "FormSpec":
        """The form with Gram matrix adjoint(U) S U."""
        return FormSpec(self.kind, adjoint(u, self.kind.adjoint) * self.gram * u)

    def to_json(self) -> dict:
        return {"kind": self.kind.value, "gram": self.gram.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "FormSpec":
        try:
            kind, gram = data["kind"], data["gram"]
        except (KeyError, TypeError):
            raise FormError("form JSON needs 'kind' and 'gram'") from None
        try:
            kind = FormKind(kind)
        except ValueError:
            raise FormError(f"unknown form kind {kind!r}") from None
        return cls(kind, ExactMatrix.from_json(gram))


def quadratic(rows) -> FormSpec:
    return FormSpec(FormKind.QUADRATIC, ExactMatrix.from_rows(rows))


def hermitian(rows) -> FormSpec:
    return FormSpec(FormKind.HERMITIAN, ExactMatrix.from_rows(rows))


def diagonal_form(kind: FormKind, values) -> FormSpec:
    return FormSpec(kind, ExactMatrix.diag(list(values)))


# ---------------------------------------------------------------------------
# Congruence diagonalization


def _adj_scalar(x, which: str):
    if which == "transpose":
        return x
    if which == "star":
        return en.conj(x)
    return en.quat_sigma(x)


def _elementary(n: int, like, updates: dict) -> ExactMatrix:
    one, zero = en.one_like(like), en.zero_like(like)
    rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for (i, j), v in updates.items():
        rows[i][j] = v
    return ExactMatrix.from_rows(rows)


def _swap(n: int, like, a: int, b: int) -> ExactMatrix:
    one, zero = en.one_like(like), en.zero_like(like)
    rows = [[one if i == j else zero for j in range(n)] for i in range(n)]
    rows[a][a] = rows[b][b] = zero
    rows[a][b] = rows[b][a] = one
    return ExactMatrix.from_rows(rows)


def congruence_diagonalize(gram: ExactMatrix, which: str) -> tuple[ExactMatrix, list]:
    """Return (W, pivots) with adjoint(W) * gram * W = diag(pivots).

    ``gram`` must satisfy adjoint(gram) = +-gram.  Zero pivots mark a
    degenerate form.  When no nonzero diagonal entry is left, column l is
    added to column k (scaled when the plain sum still vanishes).
    """
    n = gram.rows
    like = gram.entries[0]
    g = gram
    w = ExactMatrix.identity(n, like)
    eps = 1 if adjoint(gram, which) == gram else -1
    if eps == 1:
        unit = en.one_like(like)
    elif which == "sigma":
        unit = QI
    elif which == "star":
        unit = en.I_UNIT
    else:
        raise FormError("alternating forms have no diagonal form")
    pivots = []
    for k in range(n):
        if not g[k, k]:
            j = next((i for i in range(k + 1, n) if g[i, i]), None)
            if j is not None:
                e = _swap(n, like, k, j)
                g, w = adjoint(e, which) * g * e, w * e
            else:
                l = next((i for i in range(k + 1, n) if g[k, i]), None)
                if l is None:
                    pivots.append(en.zero_like(like))
                    continue
                e = _elementary(n, like, {(l, k): en.one_like(like)})
                trial = adjoint(e, which) * g * e
                if not trial[k, k]:
                    # g_kl * t = N(g_kl) * unit makes the new pivot 2 N(g_kl) * unit
                    t = _adj_scalar(g[k, l], which) * unit
                    e = _elementary(n, like, {(l, k): t})
                    trial = adjoint(e, which) * g * e
                g, w = trial, w * e
        d = g[k, k]
        inv = d.inverse() if hasattr(d, "inverse") else 1 / d
        updates = {(k, i): -(inv * g[k, i]) for i in range(k + 1, n) if g[k, i]}
        if updates:
            e = _elementary(n, like, updates)
            g, w = adjoint(e, which) * g * e, w * e
        pivots.append(g[k, k])
    assert g.is_diagonal(), "congruence diagonalization left off-diagonal entries"
    return w, pivots


@dataclass(frozen=True)
class Inertia:
    positive: int
    negative: int
    zero: int

    @property
    def rank(self) -> int:
        return self.positive + self.negative

    @property
    def signature(self) -> int:
        return self.positive - self.negative


def inertia(f: FormSpec) -> Inertia:
    """Sylvester inertia of a quadratic, hermitian or quaternionic hermitian form."""
    if f.kind is FormKind.QUAT_ANTIHERMITIAN:
        raise FormError("anti-hermitian forms have no index")
    _, pivots = congruence_diagonalize(f.gram, f.kind.adjoint)
    # pivots of a (sigma-)hermitian form are fixed by the involution, hence rational
    signs = [en.rational_sign(en.to_rational(d)) for d in pivots]
    return Inertia(signs.count(1), signs.count(-1), signs.count(0))


def _nondegenerate_inertia(f: FormSpec) -> Inertia:
    inert = inertia(f)
    if inert.zero:
        raise DegenerateFormError(inert.rank, f.size)
    return inert


def signature_index(f: FormSpec) -> int:
    """Index p: the number of positive entries of a diagonalized Gram matrix."""
    if f.kind in (FormKind.QUAT_HERMITIAN, FormKind.QUAT_ANTIHERMITIAN):
        from .quatlin import canonicalize_quat_hermitian

        return canonicalize_quat_hermitian(f)[0]
    return _nondegenerate_inertia(f).positive


def signature(f: FormSpec) -> int:
    """positive count minus negative count."""
    return _nondegenerate_inertia(f).signature


def equivalent(f: FormSpec, g: FormSpec) -> bool:
    """Equivalence over a real closed field: same rank and same index."""
    if f.kind is not g.kind:
        raise FormError(f"cannot compare a {f.kind.value} form with a {g.kind.value} form")
    if f.size != g.size:
        raise FormError(f"cannot compare forms of sizes {f.size} and {g.size}")
    if f.kind is FormKind.QUAT_ANTIHERMITIAN:
        from .quatlin import canonicalize_quat_antihermitian

        canonicalize_quat_antihermitian(f)
        canonicalize_quat_antihermitian(g)
        return True
    return signature_index(f) == signature_index(g)


# ---------------------------------------------------------------------------
# 3-Pfister forms


class PfisterClass(str, enum.Enum):
    DEFINITE = "definite"
    SPLIT = "split"


@dataclass(frozen=True)
class Pfister3:
    a: Fraction
    b: Fraction
    c: Fraction

    def __post_init__(self):
        for name in "abc":
            v = en.as_rational(getattr(self, name))
            if v == 0:
                raise FormError(f"Pfister slot {name} must be nonzero")
            object.__setattr__(self, name, v)


def pfister3_expand(p: Pfister3) -> FormSpec:
    """<1,a> x <1,b> x <1,c> = <1, a, b, ab, c, ac, bc, abc>."""
    a, b, c = p.a, p.b, p.c
    return diagonal_form(FormKind.QUADRATIC, [Fraction(1), a, b, a * b, c, a * c, b * c, a * b * c])


def pfister3_class(p: Pfister3) -> PfisterClass:
    sig = signature(pfister3_expand(p))
    if sig == 8:
        return PfisterClass.DEFINITE
    if sig == 0:
        return PfisterClass.SPLIT
    raise AssertionError(f"3-Pfister form with signature {sig}")


def quaternion_from_norm(r: Fraction) -> Quaternion:
    """A rational quaternion with reduced norm r > 0 (four-square theorem)."""
    from sympy.solvers.diophantine.diophantine import sum_of_four_squares

    r = en.as_rational(r)
    if r <= 0:
        raise ValueError("only positive rationals are quaternion norms")
    # r = (num * den) / den^2
    n, d = r.numerator * r.denominator, r.denominator
    s = sum_of_four_squares(n)
    return Quaternion(*(Fraction(x, d) for x in s))


def gauss_from_norm(r: Fraction, bound: int = 10**18):
    """A Gaussian rational with norm r > 0, or None when r is not a sum of two squares."""
    from sympy import factorint
    from sympy.solvers.diophantine.diophantine import prime_as_sum_of_two_squares

    r = en.as_rational(r)
    if r <= 0:
        return None
    n, d = r.numerator * r.denominator, r.denominator
    root = math.isqrt(n)
    if root * root == n:
        return en.GaussRational(Fraction(root, d))
    if n > bound:
        return None
    # multiply Gaussian integers of norm p over the prime factors p of n
    z = en.GaussRational(1)
    for p, e in factorint(n).items():
        if p % 4 == 3:
            if e % 2:
                return None
            z = z * p ** (e // 2)
        elif p == 2:
            z = z * en.GaussRational(1, 1) ** e
        else:
            a, b = prime_as_sum_of_two_squares(p)
            z = z * en.GaussRational(a, b) ** e
    return z / d
