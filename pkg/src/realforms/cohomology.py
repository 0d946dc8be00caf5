"""Galois 1-cocycles for Gal(k(i)|k) = {1, c}.

A cocycle is a single invertible matrix B with B * c(B) = Id, where c is one
of three twisted conjugation actions.  Classes are detected through
signatures of attached hermitian forms, never by searching orbits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import exactnum as en
from .exactnum import CycloElement, GaussRational
from .forms import FormKind, FormSpec, congruence_diagonalize, gauss_from_norm, signature_index
from .matrix import (
    A_n,
    ExactMatrix,
    I_p,
    J_p,
    Lcg,
    SamplingError,
    SingularMatrixError,
    as_kind,
)

HILBERT90_ATTEMPTS = 32

PLAIN = "plain"
QUATERNION_TWIST = "quaternion_twist"
UNITARY_TWIST = "unitary_twist"
ACTION_TAGS = (PLAIN, QUATERNION_TWIST, UNITARY_TWIST)


class CocycleError(ValueError):
    pass


@dataclass(frozen=True)
class ConjAction:
    """Twisted conjugation on n x n matrices.

    plain:             c(M) = conj(M)
    quaternion_twist:  c(M) = A_n conj(M) A_n^-1
    unitary_twist:     c(M) = I_p (conj(M)^t)^-1 I_p

    ``p`` is required for the unitary twist.  For the other two tags it is
    optional context naming the invariant form (I_p for orthogonal groups,
    A_n^-1 I_2p for quaternionic hermitian groups) used by
    :func:`cocycle_index`.
    """

    tag: str
    n: int
    p: int | None = None

    def __post_init__(self):
        if self.tag not in ACTION_TAGS:
            raise CocycleError(f"unknown action tag {self.tag!r}")
        if self.n < 1:
            raise CocycleError("action size must be positive")
        if self.tag == QUATERNION_TWIST and self.n % 2:
            raise CocycleError("quaternion twist needs an even size")
        if self.tag == UNITARY_TWIST and self.p is None:
            raise CocycleError("unitary twist needs an index p")
        if self.p is not None:
            bound = self.n // 2 if self.tag == QUATERNION_TWIST else self.n
            if not 0 <= self.p <= bound:
                raise CocycleError(f"index p={self.p} outside [0, {bound}]")

    def __call__(self, m: ExactMatrix) -> ExactMatrix:
        if m.shape != (self.n, self.n):
            raise CocycleError(f"action on {self.n}x{self.n} matrices applied to {m.shape}")
        if self.tag == PLAIN:
            return m.conj()
        if self.tag == QUATERNION_TWIST:
            a = A_n(self.n)
            return a * m.conj() * a.inverse()
        ip = I_p(self.n, self.p)
        return ip * m.star().inverse() * ip

    def to_json(self) -> dict:
        out = {"tag": self.tag, "n": self.n}
        if self.p is not None:
            out["p"] = self.p
        return out

    @classmethod
    def from_json(cls, data: dict) -> "ConjAction":
        try:
            return cls(data["tag"], data["n"], data.get("p"))
        except (KeyError, TypeError, AttributeError):
            raise CocycleError("action JSON needs 'tag' and 'n'") from None


@dataclass(frozen=True)
class Cocycle:
    action: ConjAction
    B: ExactMatrix

    def to_json(self) -> dict:
        return {"action": self.action.to_json(), "B": self.B.to_json()}

    @classmethod
    def from_json(cls, data: dict) -> "Cocycle":
        try:
            action, b = data["action"], data["B"]
        except (KeyError, TypeError):
            raise CocycleError("cocycle JSON needs 'action' and 'B'") from None
        return cls(ConjAction.from_json(action), ExactMatrix.from_json(b))


def _check_size(x: Cocycle):
    if x.B.shape != (x.action.n, x.action.n):
        raise CocycleError(f"B has shape {x.B.shape}, action expects {x.action.n}x{x.action.n}")


def verify_cocycle(x: Cocycle) -> bool:
    """Exact check of B * c(B) = Id."""
    _check_size(x)
    try:
        return (x.B * x.action(x.B)).is_identity()
    except SingularMatrixError:
        return False


def _require_cocycle(x: Cocycle):
    if not verify_cocycle(x):
        raise CocycleError("B * c(B) != Id")


# ---------------------------------------------------------------------------
# Representatives

FAMILY_SU = "su"
FAMILY_SO = "so"
FAMILY_SUH = "suh"
FAMILIES = (FAMILY_SU, FAMILY_SO, FAMILY_SUH)


def rep_cocycle(family: str, n: int, p: int, q: int) -> Cocycle:
    """Representative x_q of the class with index q.

    su:  B = I_q I_p under the unitary twist with index p
    so:  B = I_q I_p under plain conjugation, q = p mod 2
    suh: B = I_2q I_2p (size 2n) under the quaternion twist; any 0 <= q <= n
    """
    if family == FAMILY_SUH:
        if not (0 <= p <= n and 0 <= q <= n):
            raise CocycleError(f"need 0 <= p, q <= n={n}")
        b = I_p(2 * n, 2 * q) * I_p(2 * n, 2 * p)
        return Cocycle(ConjAction(QUATERNION_TWIST, 2 * n, p), b)
    if family not in (FAMILY_SU, FAMILY_SO):
        raise CocycleError(f"unknown family {family!r}")
    if not (0 <= p <= n and 0 <= q <= n):
        raise CocycleError(f"need 0 <= p, q <= n={n}")
    if (q - p) % 2:
        raise CocycleError(f"q={q} and p={p} must have the same parity")
    b = I_p(n, q) * I_p(n, p)
    tag = UNITARY_TWIST if family == FAMILY_SU else PLAIN
    return Cocycle(ConjAction(tag, n, p), b)


def twist_matrix(n: int, p: int, q: int) -> ExactMatrix:
    """D = J_q J_p."""
    return J_p(n, q) * J_p(n, p)


# ---------------------------------------------------------------------------
# Class invariants


def _hermitian_of(x: Cocycle) -> ExactMatrix:
    """B * I_p, hermitian whenever x is a cocycle of the unitary or orthogonal kind."""
    return as_kind(x.B * I_p(x.action.n, x.action.p), "gauss")


def cocycle_index(x: Cocycle, seed: int = 0) -> int:
    """Complete class invariant q.

    unitary twist / plain (orthogonal context): index of the hermitian
    matrix B * I_p.  quaternion twist (quaternionic hermitian context):
    trivialize B = P c(P)^-1, transport T = A^-1 I_2p to P^t T P and return
    the quaternionic index of the form with mu-image A P^t T P.
    """
    _require_cocycle(x)
    act = x.action
    if act.p is None:
        raise CocycleError("cocycle_index needs the form context p on the action")
    if act.tag in (UNITARY_TWIST, PLAIN):
        if act.tag == PLAIN and not (x.B.transpose() * I_p(act.n, act.p) * x.B == I_p(act.n, act.p)):
            raise CocycleError("B does not preserve I_p")
        return signature_index(FormSpec(FormKind.HERMITIAN, _hermitian_of(x)))
    a = A_n(act.n)
    t = a.inverse() * I_p(act.n, 2 * act.p)
    if not (x.B.transpose() * t * x.B == t):
        raise CocycleError("B does not preserve A^-1 I_2p")
    p_mat = hilbert90_solve(x, seed)
    herm = as_kind(a * p_mat.transpose() * t * p_mat, "gauss")
    return signature_index(FormSpec(FormKind.HERMITIAN, herm)) // 2


# ---------------------------------------------------------------------------
# Hilbert 90


def _random_like(b: ExactMatrix, rng: Lcg) -> ExactMatrix:
    n = rng.matrix(b.rows, b.cols, "gauss")
    if b.scalar == "cyclo":
        return as_kind(n, "cyclo", math.lcm(b.order, 4))
    return n


def hilbert90_solve(x: Cocycle, seed: int = 0, start: ExactMatrix | None = None) -> ExactMatrix:
    """Invertible P with B = P c(P)^-1, by averaging P = N + B c(N).

    Seeds seed, seed+1, ... are tried up to 32 times.  ``start`` fixes the
    first N.
    """
    if x.action.tag == UNITARY_TWIST:
        raise CocycleError("Hilbert 90 applies to the plain and quaternion-twist actions")
    _require_cocycle(x)
    for attempt in range(HILBERT90_ATTEMPTS):
        if attempt == 0 and start is not None:
            n = start
        else:
            n = _random_like(x.B, Lcg(seed + attempt))
        p = n + x.B * x.action(n)
        if p.is_invertible():
            return p
    raise SamplingError(f"no invertible average in {HILBERT90_ATTEMPTS} attempts", seed)


def coboundary(action: ConjAction, m: ExactMatrix) -> Cocycle:
    """The cocycle B = M^-1 c(M)."""
    return Cocycle(action, m.inverse() * action(m))


def real_det_normalize(m: ExactMatrix) -> ExactMatrix:
    """Rescale the first column by conj(det M) so that det M becomes real.

    Then B = M^-1 c(M) has determinant 1 under the plain and quaternion twists.
    """
    d = m.det()
    scale = ExactMatrix.diag([en.conj(d)] + [en.one_like(d)] * (m.rows - 1))
    return m * scale


def _scalar_root_class(b: ExactMatrix) -> int | None:
    """Sign of det(alpha Id) where alpha^2 = zeta and B = zeta Id with zeta a root of unity."""
    if not b.is_diagonal() or len(set(b.diagonal())) != 1:
        return None
    zeta = b[0, 0]
    if not isinstance(zeta, CycloElement):
        zeta = en.coerce_kind(zeta, "cyclo", 4)
    order = en.multiplicative_order(zeta, limit=4 * zeta.order)
    if order is None:
        return None
    m = math.lcm(zeta.order, order)
    big = CycloElement.zeta(2 * m)
    z = big * big  # a primitive m-th root of unity inside Q(zeta_2m)
    target = zeta.lift(2 * m)
    power = z
    for j in range(1, m + 1):
        if power == target:
            alpha = big ** j
            break
        power = power * z
    else:
        return None
    d = alpha ** b.rows
    return en.rational_sign(d.to_rational()) if d.is_rational() else None


def sl_quaternionic_class(x: Cocycle, seed: int = 0) -> int:
    """+1 for the trivial class of H^1(k, SL_{n/2}(H)), -1 for the other one.

    With B = P c(P)^-1 the determinant of P is fixed by c; its sign is the
    class (c-fixed matrices have positive determinant).
    """
    if x.action.tag != QUATERNION_TWIST:
        raise CocycleError("expected the quaternion-twist action")
    _require_cocycle(x)
    if x.B.det() != 1:
        raise CocycleError("B must have determinant 1")
    p = hilbert90_solve(x, seed)
    d = p.det()
    if en.is_rational_value(d):
        return en.rational_sign(en.to_rational(d))
    # det P lies in a real cyclotomic subfield; fall back to the scalar square-root
    # solution, which has a rational determinant.
    sign = _scalar_root_class(x.B)
    if sign is None:
        raise CocycleError("determinant of the trivializer is not rational")
    return sign


def det_positive_sample(n: int, seed: int, height: int = 5) -> ExactMatrix:
    """Invertible M = N + c(N), fixed by the quaternion twist, from seed."""
    act = ConjAction(QUATERNION_TWIST, n)
    for attempt in range(HILBERT90_ATTEMPTS):
        nm = Lcg(seed * HILBERT90_ATTEMPTS + attempt).matrix(n, n, "gauss", height)
        m = nm + act(nm)
        if m.is_invertible():
            return m
    raise SamplingError("no invertible c-fixed matrix", seed)


# ---------------------------------------------------------------------------
# Explicit trivialization, equation M^-1 B c(M) = I_r I_p


@dataclass(frozen=True)
class CoboundaryWitness:
    M: ExactMatrix
    D: ExactMatrix  # rational diagonal, positive entries first
    index: int
    normalized: bool  # D == I_r exactly
    det_norm: object  # det M * conj(det M)
    det_one: bool  # det M == 1 after optional root-of-unity rescaling


def coboundary_witness(x: Cocycle) -> CoboundaryWitness:
    """M and real diagonal D with M^-1 B c(M) = D I_p, unitary-twist cocycles."""
    if x.action.tag != UNITARY_TWIST:
        raise CocycleError("expected the unitary-twist action")
    _require_cocycle(x)
    n, p = x.action.n, x.action.p
    h = _hermitian_of(x)
    w, pivots = congruence_diagonalize(h, "star")
    values = [en.to_rational(d) for d in pivots]
    if any(v == 0 for v in values):
        raise CocycleError("B * I_p is degenerate")
    order = sorted(range(n), key=lambda i: values[i] < 0)
    scales, diag, normalized = [], [], True
    for i in order:
        g = gauss_from_norm(abs(values[i]))
        if g is None:
            normalized = False
            scales.append(GaussRational(1))
            diag.append(values[i])
        else:
            scales.append(g.inverse())
            diag.append(Fraction(1 if values[i] > 0 else -1))
    perm_scale = ExactMatrix.from_rows([
        [scales[c] if order[c] == r else GaussRational(0) for c in range(n)] for r in range(n)
    ])
    w = w * perm_scale  # w^* (B I_p) w = diag
    m = w.star().inverse()
    det = m.det()
    det_norm = det * en.conj(det)
    det_one = det == 1
    if not det_one:
        zeta = _unit_root(det, n)
        if zeta is not None:
            m = m * zeta
            det_one = True
            det_norm = Fraction(1)
    d = ExactMatrix.diag(diag)
    return CoboundaryWitness(m, d, sum(1 for v in diag if v > 0), normalized, det_norm, det_one)


def _unit_root(det, n: int):
    """zeta among the fourth roots of unity with zeta^n * det = 1, if any."""
    for zeta in (GaussRational(1), GaussRational(-1), en.I_UNIT, -en.I_UNIT):
        if (zeta ** n) * det == 1:
            return zeta
    return None
