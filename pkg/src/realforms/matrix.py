"""Dense exact matrices over the scalar tower, the structured matrices
I_p, J_p, A_n, and exact sampling of form-preserving matrices through the
Cayley transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import exactnum as en
from .exactnum import GaussRational, Quaternion


class SingularMatrixError(ZeroDivisionError):
    pass


class SamplingError(RuntimeError):
    def __init__(self, message: str, seed: int):
        super().__init__(f"{message} (seed={seed})")
        self.seed = seed


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    rows: int
    cols: int
    entries: tuple
    scalar: str = "rational"
    order: int | None = None  # cyclotomic order when scalar == "cyclo"

    # -- construction -------------------------------------------------------

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: Iterable) -> "ExactMatrix":
        entries = list(entries)
        if rows < 1 or cols < 1:
            raise ValueError("matrix dimensions must be positive")
        if len(entries) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(entries)}")
        values, kind, order = en.unify(entries)
        return cls(rows, cols, tuple(values), kind, order)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence]) -> "ExactMatrix":
        rows = [list(r) for r in rows]
        if not rows or any(len(r) != len(rows[0]) for r in rows):
            raise ValueError("ragged or empty row list")
        return cls.from_entries(len(rows), len(rows[0]), [x for r in rows for x in r])

    @classmethod
    def identity(cls, n: int, like=1) -> "ExactMatrix":
        one, zero = en.one_like(like), en.zero_like(like)
        return cls.from_entries(n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None, like=1) -> "ExactMatrix":
        cols = rows if cols is None else cols
        return cls.from_entries(rows, cols, [en.zero_like(like)] * (rows * cols))

    @classmethod
    def diag(cls, values: Sequence) -> "ExactMatrix":
        values = list(values)
        n = len(values)
        zero = en.zero_like(values[0])
        return cls.from_entries(n, n, [values[i] if i == j else zero
                                       for i in range(n) for j in range(n)])

    # -- access -------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> list:
        return list(self.entries[i * self.cols:(i + 1) * self.cols])

    def to_rows(self) -> list[list]:
        return [self.row(i) for i in range(self.rows)]

    def diagonal(self) -> list:
        return [self[i, i] for i in range(min(self.rows, self.cols))]

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def _like(self):
        return self.entries[0]

    def map(self, fn: Callable) -> "ExactMatrix":
        return ExactMatrix.from_entries(self.rows, self.cols, [fn(x) for x in self.entries])

    def is_identity(self) -> bool:
        return self == ExactMatrix.identity(self.rows, self._like()) if self.is_square else False

    def is_diagonal(self) -> bool:
        return all(not self[i, j] for i in range(self.rows) for j in range(self.cols) if i != j)

    def is_zero(self) -> bool:
        return not any(self.entries)

    # -- arithmetic ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.shape == other.shape and all(a == b for a, b in zip(self.entries, other.entries))

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def _check_same_shape(self, other: "ExactMatrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix.from_entries(self.rows, self.cols,
                                        [a + b for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        self._check_same_shape(other)
        return ExactMatrix.from_entries(self.rows, self.cols,
                                        [a - b for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "ExactMatrix":
        return ExactMatrix.from_entries(self.rows, self.cols, [-a for a in self.entries])

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return self.matmul(other)
        # right scalar multiplication (matters for quaternions)
        return ExactMatrix.from_entries(self.rows, self.cols, [a * other for a in self.entries])

    def __rmul__(self, other):
        return ExactMatrix.from_entries(self.rows, self.cols, [other * a for a in self.entries])

    def __matmul__(self, other: "ExactMatrix") -> "ExactMatrix":
        return self.matmul(other)

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a, b = self.entries, other.entries
        n, m, p = self.rows, self.cols, other.cols
        out = []
        for i in range(n):
            arow = a[i * m:(i + 1) * m]
            for j in range(p):
                acc = None
                for k in range(m):
                    x = arow[k]
                    if not x:
                        continue
                    y = b[k * p + j]
                    if not y:
                        continue
                    t = x * y
                    acc = t if acc is None else acc + t
                out.append(acc if acc is not None else en.zero_like(a[0]) * en.zero_like(b[0]))
        return ExactMatrix.from_entries(n, p, out)

    def __pow__(self, e: int) -> "ExactMatrix":
        if not self.is_square:
            raise ValueError("power of a non-square matrix")
        if e < 0:
            return self.inverse() ** (-e)
        result = ExactMatrix.identity(self.rows, self._like())
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- involutions --------------------------------------------------------

    @property
    def T(self) -> "ExactMatrix":
        return self.transpose()

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix.from_entries(self.cols, self.rows,
                                        [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def conj(self) -> "ExactMatrix":
        """Entrywise complex conjugation M -> M-bar."""
        return self.map(en.conj)

    def star(self) -> "ExactMatrix":
        """Conjugate transpose."""
        return self.conj().transpose()

    def sigma_star(self) -> "ExactMatrix":
        """Entrywise quaternion involution followed by transpose."""
        return self.map(en.quat_sigma).transpose()

    # -- elimination --------------------------------------------------------

    def det(self):
        """Exact determinant by Gaussian elimination (commutative scalars only)."""
        if not self.is_square:
            raise ValueError("determinant of a non-square matrix")
        if self.scalar == "quaternion":
            raise TypeError("determinant is not defined over the quaternions")
        a = self.to_rows()
        n = self.rows
        det = en.one_like(self._like())
        for k in range(n):
            piv = next((r for r in range(k, n) if a[r][k]), None)
            if piv is None:
                return en.zero_like(self._like())
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            pivot = a[k][k]
            det = det * pivot
            inv = pivot.inverse() if hasattr(pivot, "inverse") else 1 / pivot
            for r in range(k + 1, n):
                if a[r][k]:
                    f = a[r][k] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[k])]
        return det

    def rank(self) -> int:
        a = self.to_rows()
        rank = 0
        for col in range(self.cols):
            piv = next((r for r in range(rank, self.rows) if a[r][col]), None)
            if piv is None:
                continue
            a[rank], a[piv] = a[piv], a[rank]
            inv = _inv(a[rank][col])
            for r in range(rank + 1, self.rows):
                if a[r][col]:
                    f = a[r][col] * inv
                    a[r] = [x - f * y for x, y in zip(a[r], a[rank])]
            rank += 1
        return rank

    def inverse(self) -> "ExactMatrix":
        """Gauss-Jordan inverse using left row operations (valid over the quaternions)."""
        if not self.is_square:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        one, zero = en.one_like(self._like()), en.zero_like(self._like())
        a = [row + [one if i == j else zero for j in range(n)]
             for i, row in enumerate(self.to_rows())]
        for k in range(n):
            piv = next((r for r in range(k, n) if a[r][k]), None)
            if piv is None:
                raise SingularMatrixError("matrix is singular")
            a[k], a[piv] = a[piv], a[k]
            inv = _inv(a[k][k])
            a[k] = [inv * x for x in a[k]]
            for r in range(n):
                if r != k and a[r][k]:
                    f = a[r][k]
                    a[r] = [x - f * y for x, y in zip(a[r], a[k])]
        return ExactMatrix.from_entries(n, n, [x for row in a for x in row[n:]])

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    # -- interchange --------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "rows": self.rows,
            "cols": self.cols,
            "scalar": self.scalar,
            "entries": [en.format_scalar(x) for x in self.entries],
        }

    @classmethod
    def from_json(cls, data: dict) -> "ExactMatrix":
        try:
            rows, cols, kind, entries = data["rows"], data["cols"], data["scalar"], data["entries"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"matrix JSON needs rows, cols, scalar, entries: {exc}") from None
        if kind not in en.KINDS:
            raise ValueError(f"unknown scalar kind {kind!r}")
        if not isinstance(rows, int) or not isinstance(cols, int) or not isinstance(entries, list):
            raise ValueError("rows/cols must be integers and entries a list")
        return cls.from_entries(rows, cols, [en.parse_scalar(e, kind) for e in entries])

    def __repr__(self):
        body = "; ".join(", ".join(en.format_scalar(x) for x in self.row(i)) for i in range(self.rows))
        return f"ExactMatrix[{self.scalar}]({body})"


def _inv(x):
    return x.inverse() if hasattr(x, "inverse") else 1 / x


def as_kind(m: ExactMatrix, kind: str, order: int | None = None) -> ExactMatrix:
    """The same matrix with entries coerced to ``kind``."""
    if m.scalar == kind and (kind != "cyclo" or m.order == order):
        return m
    values = [en.coerce_kind(x, kind, order) for x in m.entries]
    return ExactMatrix(m.rows, m.cols, tuple(values), kind, order if kind == "cyclo" else None)


# ---------------------------------------------------------------------------
# Structured matrices


def I_p(n: int, p: int) -> ExactMatrix:
    """diag(1 x p, -1 x (n - p))."""
    _check_index(n, p)
    return ExactMatrix.diag([Fraction(1)] * p + [Fraction(-1)] * (n - p))


def J_p(n: int, p: int) -> ExactMatrix:
    """diag(1 x p, i x (n - p))."""
    _check_index(n, p)
    return ExactMatrix.diag([GaussRational(1)] * p + [GaussRational(0, 1)] * (n - p))


def A_n(n: int) -> ExactMatrix:
    """Block diagonal with blocks [[0, 1], [-1, 0]]; a_ij = 1 for odd i, j = i+1."""
    if n < 2 or n % 2:
        raise ValueError(f"A_n needs a positive even size, got {n}")
    entries = []
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i % 2 == 1 and j == i + 1:
                entries.append(Fraction(1))
            elif i % 2 == 0 and j == i - 1:
                entries.append(Fraction(-1))
            else:
                entries.append(Fraction(0))
    return ExactMatrix.from_entries(n, n, entries)


def _check_index(n: int, p: int):
    if n < 1:
        raise ValueError(f"size must be positive, got {n}")
    if not 0 <= p <= n:
        raise ValueError(f"index p={p} outside [0, {n}]")


@dataclass(frozen=True)
class StructuredKind:
    tag: str  # "Ip", "Jp" or "An"
    n: int
    p: int = 0


def build_structured(kind: StructuredKind) -> ExactMatrix:
    if kind.tag == "Ip":
        return I_p(kind.n, kind.p)
    if kind.tag == "Jp":
        return J_p(kind.n, kind.p)
    if kind.tag == "An":
        return A_n(kind.n)
    raise ValueError(f"unknown structured matrix tag {kind.tag!r}")


def exact_det(m: ExactMatrix):
    return m.det()


def star(m: ExactMatrix) -> ExactMatrix:
    return m.star()


# ---------------------------------------------------------------------------
# Seeded generator and Cayley sampling

LCG_MULTIPLIER = 6364136223846793005
LCG_INCREMENT = 1442695040888963407
_MASK64 = (1 << 64) - 1


class Lcg:
    """64-bit linear congruential generator; outputs the top 31 bits of the state."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state * LCG_MULTIPLIER + LCG_INCREMENT) & _MASK64
        return self.state >> 33

    def integer(self, lo: int, hi: int) -> int:
        return lo + self.next() % (hi - lo + 1)

    def rational(self, height: int = 5) -> Fraction:
        return Fraction(self.integer(-height, height), self.integer(1, height))

    def gauss(self, height: int = 5) -> GaussRational:
        return GaussRational(self.rational(height), self.rational(height))

    def quaternion(self, height: int = 5) -> Quaternion:
        return Quaternion(*(self.rational(height) for _ in range(4)))

    def scalar(self, kind: str, height: int = 5):
        if kind == "rational":
            return self.rational(height)
        if kind == "gauss":
            return self.gauss(height)
        if kind == "quaternion":
            return self.quaternion(height)
        raise ValueError(f"cannot sample scalars of kind {kind!r}")

    def matrix(self, rows: int, cols: int, kind: str = "rational", height: int = 5) -> ExactMatrix:
        return ExactMatrix.from_entries(rows, cols, [self.scalar(kind, height) for _ in range(rows * cols)])


ADJOINTS = ("transpose", "star", "sigma")


def adjoint(m: ExactMatrix, which: str) -> ExactMatrix:
    if which == "transpose":
        return m.transpose()
    if which == "star":
        return m.star()
    if which == "sigma":
        return m.sigma_star()
    raise ValueError(f"unknown adjoint {which!r}")


def form_parity(gram: ExactMatrix, which: str) -> int:
    """+1 if adjoint(S) == S, -1 if adjoint(S) == -S."""
    a = adjoint(gram, which)
    if a == gram:
        return 1
    if a == -gram:
        return -1
    raise ValueError(f"Gram matrix is neither {which}-symmetric nor {which}-antisymmetric")


def cayley_transform(x: ExactMatrix) -> ExactMatrix:
    """(Id - X)(Id + X)^-1; raises SingularMatrixError if Id + X is singular."""
    one = ExactMatrix.identity(x.rows, x.entries[0])
    return (one - x) * (one + x).inverse()


def skew_sample(gram: ExactMatrix, which: str, rng: Lcg, height: int = 5,
                kind: str | None = None) -> ExactMatrix:
    """Random X with adjoint(X) S = -S X."""
    eps = form_parity(gram, which)
    kind = kind or gram.scalar
    r = rng.matrix(gram.rows, gram.cols, kind, height)
    y = r - adjoint(r, which) * eps
    return gram.inverse() * y


def cayley_from_gram(gram: ExactMatrix, which: str, seed: int, height: int = 5,
                     max_attempts: int = 16, kind: str | None = None) -> ExactMatrix:
    """Seeded exact sample M with adjoint(M) S M = S.

    For ``which == "star"`` the sample is corrected to determinant 1.
    """
    if not gram.is_square or not gram.is_invertible():
        raise ValueError("Gram matrix must be square and invertible")
    rng = Lcg(seed)
    for _ in range(max_attempts):
        x = skew_sample(gram, which, rng, height, kind)
        try:
            m = cayley_transform(x)
        except SingularMatrixError:
            continue
        if which == "star":
            m = m * _unimodular_correction(gram, m.det())
        return m
    raise SamplingError(f"Id + X singular in {max_attempts} attempts", seed)


def _unimodular_correction(gram: ExactMatrix, d) -> ExactMatrix:
    """U preserving the hermitian form with det U = 1/d (d of unit modulus)."""
    from .forms import congruence_diagonalize

    w, _ = congruence_diagonalize(as_kind(gram, "gauss"), "star")
    n = gram.rows
    fix = ExactMatrix.diag([en.conj(d)] + [GaussRational(1)] * (n - 1))
    return w * fix * w.inverse()


def cayley_sample(form, seed: int, height: int = 5) -> ExactMatrix:
    """Seeded element of the isometry group of ``form`` (a :class:`~realforms.forms.FormSpec`)."""
    return cayley_from_gram(form.gram, form.kind.adjoint, seed, height)
