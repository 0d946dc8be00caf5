"""Quaternionic linear algebra: the embedding mu of M_m(H) into M_2m(k(i)),
its image, compatibility of mu with the sigma-transpose, and canonical
shapes of quaternionic hermitian and anti-hermitian forms.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import exactnum as en
from .exactnum import GaussRational, Quaternion
from .forms import FormError, FormKind, FormSpec, congruence_diagonalize, quaternion_from_norm
from .matrix import A_n, ExactMatrix, as_kind


def mu_scalar(x) -> list[list[GaussRational]]:
    """a+bI+cJ+dK -> [[a+bi, c+di], [-c+di, a-bi]]."""
    q = Quaternion.coerce(x)
    return [
        [GaussRational(q.a, q.b), GaussRational(q.c, q.d)],
        [GaussRational(-q.c, q.d), GaussRational(q.a, -q.b)],
    ]


def mu_embed(m: ExactMatrix) -> ExactMatrix:
    """Apply mu entrywise, giving a 2r x 2c matrix over the Gaussian rationals."""
    m = as_kind(m, "quaternion")
    out = [[None] * (2 * m.cols) for _ in range(2 * m.rows)]
    for i in range(m.rows):
        for j in range(m.cols):
            block = mu_scalar(m[i, j])
            for a in range(2):
                for b in range(2):
                    out[2 * i + a][2 * j + b] = block[a][b]
    return ExactMatrix.from_rows(out)


def mu_inverse(n: ExactMatrix) -> ExactMatrix:
    """Recover the quaternionic matrix from a member of the image of mu."""
    if not in_quaternionic_image(n):
        raise ValueError("matrix is not in the image of mu")
    n = as_kind(n, "gauss")
    rows = []
    for i in range(n.rows // 2):
        row = []
        for j in range(n.cols // 2):
            p, q = n[2 * i, 2 * j], n[2 * i, 2 * j + 1]
            row.append(Quaternion(p.re, p.im, q.re, q.im))
        rows.append(row)
    return ExactMatrix.from_rows(rows)


def in_quaternionic_image(n: ExactMatrix) -> bool:
    """True iff N = A_n * conj(N) * A_n^-1, i.e. N lies in mu(M_{n/2}(H))."""
    if not n.is_square or n.rows % 2:
        raise ValueError(f"need a square matrix of even size, got {n.shape}")
    a = A_n(n.rows)
    return n == a * n.conj() * a.inverse()


def sigma_star(m: ExactMatrix) -> ExactMatrix:
    return as_kind(m, "quaternion").sigma_star()


def sigma_transpose_compat(m: ExactMatrix) -> bool:
    """Check mu(sigma(M)^t) == A * mu(M)^t * A^-1 exactly."""
    mu = mu_embed(m)
    if not mu.is_square:
        raise ValueError("sigma-transpose compatibility needs a square matrix")
    a = A_n(mu.rows)
    return mu_embed(sigma_star(m)) == a * mu.transpose() * a.inverse()


def embedded_form_matrix(h: FormSpec) -> ExactMatrix:
    """T = A^-1 * mu([h]); bilinear form preserved by mu of the isometries of h.

    T is antisymmetric for hermitian h and symmetric for anti-hermitian h.
    """
    if h.kind not in (FormKind.QUAT_HERMITIAN, FormKind.QUAT_ANTIHERMITIAN):
        raise FormError(f"expected a quaternionic form, got {h.kind.value}")
    if not h.gram.is_invertible():
        raise FormError("singular Gram matrix")
    mu = mu_embed(h.gram)
    return A_n(mu.rows).inverse() * mu


def canonicalize_quat_hermitian(h: FormSpec) -> tuple[int, ExactMatrix]:
    """Index p and W with sigma_star(W) [h] W = I_p = diag(1 x p, -1 x (m - p)).

    Positive rationals are reduced norms of rational quaternions, so the
    diagonal pivots rescale exactly to +-1.
    """
    if h.kind is not FormKind.QUAT_HERMITIAN:
        raise FormError(f"expected a quaternionic hermitian form, got {h.kind.value}")
    w, pivots = congruence_diagonalize(h.gram, "sigma")
    values = [en.to_rational(d) for d in pivots]
    if any(v == 0 for v in values):
        raise FormError("degenerate quaternionic hermitian form")
    order = sorted(range(len(values)), key=lambda i: values[i] < 0)
    scale = []
    for i in order:
        q = quaternion_from_norm(abs(values[i]))
        scale.append(q.inverse())
    n = len(values)
    perm_scale = ExactMatrix.from_rows([
        [scale[c] if order[c] == r else Quaternion(0) for c in range(n)] for r in range(n)
    ])
    w = w * perm_scale
    p = sum(1 for v in values if v > 0)
    return p, w


def canonicalize_quat_antihermitian(h: FormSpec) -> ExactMatrix:
    """W with sigma_star(W) [h] W diagonal with nonzero pure quaternion entries."""
    if h.kind is not FormKind.QUAT_ANTIHERMITIAN:
        raise FormError(f"expected a quaternionic anti-hermitian form, got {h.kind.value}")
    w, pivots = congruence_diagonalize(h.gram, "sigma")
    if any(not d for d in pivots):
        raise FormError("degenerate quaternionic anti-hermitian form")
    return w


def pure_unit_split(x: Quaternion) -> tuple[Fraction, Quaternion] | None:
    """x = s * u with s > 0 rational and u a pure quaternion of norm 1.

    Only possible over the rationals when the norm of x is a rational square;
    returns None otherwise.
    """
    x = Quaternion.coerce(x)
    if not x or not x.is_pure():
        raise ValueError("expected a nonzero pure quaternion")
    s = _rational_sqrt(x.norm())
    if s is None:
        return None
    return s, x / s


def rotate_to_I(u: Quaternion) -> Quaternion:
    """q with sigma(q) u q = N(q) I for a pure unit quaternion u."""
    q = u + en.QI
    return q if q else en.QJ


def _rational_sqrt(r: Fraction) -> Fraction | None:
    if r < 0:
        return None
    n, d = math.isqrt(r.numerator), math.isqrt(r.denominator)
    if n * n == r.numerator and d * d == r.denominator:
        return Fraction(n, d)
    return None
