"""Picard-Vessiot classes for a simple real differential Galois group.

Given the group G of a real Picard-Vessiot extension L|K, the classes of all
Picard-Vessiot extensions for the same equation correspond to H^1(k, G), and
the Galois group of each class is the real form obtained by twisting.  The
differential field K, the extension L and the operator L(Y) are not modelled:
a class is a label plus a group descriptor.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, replace


class DescriptorError(ValueError):
    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name
        self.message = message


class Variant(str, enum.Enum):
    SL_K = "SLnK"          # SL(n, k)
    SL_H = "SLmH"          # SL(m, H)
    SU = "SU"              # SU(n, k(i), h_p)
    SO_ODD = "SOodd"       # SO(n, k, Q_p), n odd
    SP_K = "Sp2nK"         # Sp(2n, k)
    SU_H_HERM = "SUHherm"  # SU(n, H, h_p), h hermitian
    SO_EVEN = "SOeven"     # SO(n, k, Q_p), n even
    SU_H_ANTI = "SUHanti"  # SU(m, H, h), h anti-hermitian
    G2 = "G2"
    F4 = "F4"
    E8 = "E8"


G2_FORMS = ("compact", "split")
TRIPLE_FORMS = ("0", "1", "2")  # the three real forms of F4 / E8, unnamed

_FIELDS = {
    Variant.SL_K: ("n",),
    Variant.SL_H: ("m",),
    Variant.SU: ("n", "p"),
    Variant.SO_ODD: ("n", "p"),
    Variant.SP_K: ("n",),
    Variant.SU_H_HERM: ("n", "p"),
    Variant.SO_EVEN: ("n", "p"),
    Variant.SU_H_ANTI: ("m",),
    Variant.G2: ("form",),
    Variant.F4: ("form",),
    Variant.E8: ("form",),
}

_MIN_SIZE = {
    Variant.SL_K: 2,
    Variant.SL_H: 1,
    Variant.SU: 2,
    Variant.SO_ODD: 1,
    Variant.SP_K: 1,
    Variant.SU_H_HERM: 1,
    Variant.SO_EVEN: 2,
    Variant.SU_H_ANTI: 1,
}


@dataclass(frozen=True)
class GroupDescriptor:
    variant: Variant
    n: int | None = None
    m: int | None = None
    p: int | None = None
    form: str | None = None

    def __post_init__(self):
        try:
            variant = Variant(self.variant)
        except ValueError:
            raise DescriptorError("variant", f"unknown variant {self.variant!r}") from None
        object.__setattr__(self, "variant", variant)
        wanted = _FIELDS[variant]
        for name in ("n", "m", "p", "form"):
            value = getattr(self, name)
            if name in wanted and value is None:
                raise DescriptorError(name, f"required for {variant.value}")
            if name not in wanted and value is not None:
                raise DescriptorError(name, f"not a parameter of {variant.value}")
        for name in ("n", "m", "p"):
            value = getattr(self, name)
            if value is not None and (not isinstance(value, int) or isinstance(value, bool)):
                raise DescriptorError(name, f"must be an integer, got {value!r}")
        size_field = "n" if "n" in wanted else "m" if "m" in wanted else None
        if size_field:
            size = getattr(self, size_field)
            if size < _MIN_SIZE[variant]:
                raise DescriptorError(size_field, f"must be >= {_MIN_SIZE[variant]} for {variant.value}")
        if variant is Variant.SO_ODD and self.n % 2 == 0:
            raise DescriptorError("n", "must be odd for SOodd")
        if variant is Variant.SO_EVEN and self.n % 2:
            raise DescriptorError("n", "must be even for SOeven")
        if self.p is not None and not 0 <= self.p <= self.n:
            raise DescriptorError("p", f"must satisfy 0 <= p <= n={self.n}")
        if self.form is not None:
            form = str(self.form).lower()
            allowed = G2_FORMS if variant is Variant.G2 else TRIPLE_FORMS
            if form not in allowed:
                raise DescriptorError("form", f"must be one of {', '.join(allowed)}")
            object.__setattr__(self, "form", form)

    def to_json(self) -> dict:
        out = {"variant": self.variant.value}
        for name in ("n", "m", "p", "form"):
            value = getattr(self, name)
            if value is not None:
                out[name] = value
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GroupDescriptor":
        if not isinstance(data, dict) or "variant" not in data:
            raise DescriptorError("variant", "descriptor JSON needs a 'variant'")
        unknown = set(data) - {"variant", "n", "m", "p", "form"}
        if unknown:
            raise DescriptorError(sorted(unknown)[0], "unknown descriptor field")
        return cls(**data)

    def __str__(self):
        params = ", ".join(f"{k}={v}" for k, v in self.to_json().items() if k != "variant")
        return f"{self.variant.value}({params})"


@dataclass(frozen=True)
class PVClass:
    label: int | str
    galois_group: GroupDescriptor
    trivial: bool = False

    def to_json(self) -> dict:
        return {"label": self.label, "group": self.galois_group.to_json(), "trivial": self.trivial}


@dataclass(frozen=True)
class ClassificationResult:
    input: GroupDescriptor
    classes: tuple[PVClass, ...] = field(default_factory=tuple)

    @property
    def count(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "input": self.input.to_json(),
            "count": self.count,
            "classes": [c.to_json() for c in self.classes],
        }


def canonical_group(g: GroupDescriptor) -> GroupDescriptor:
    """Fold the index p to min(p, n - p) for SU and SO: a form and its negative
    have the same automorphism group."""
    if g.variant in (Variant.SU, Variant.SO_ODD, Variant.SO_EVEN):
        return replace(g, p=min(g.p, g.n - g.p))
    return g


def _same_parity(n: int, p: int) -> list[int]:
    return [q for q in range(n + 1) if (q - p) % 2 == 0]


def classify(g: GroupDescriptor) -> ClassificationResult:
    v = g.variant
    if v in (Variant.SL_K, Variant.SP_K, Variant.SU_H_ANTI):
        classes = [PVClass(0, g, True)]
    elif v is Variant.SL_H:
        # the second class is x(c) = zeta Id; conjugation by zeta^(-1/2) Id fixes G
        classes = [PVClass(0, g, True), PVClass(1, g, False)]
    elif v is Variant.SU:
        group = canonical_group(g)
        classes = [PVClass(q, group, q == g.p) for q in _same_parity(g.n, g.p)]
    elif v in (Variant.SO_ODD, Variant.SO_EVEN):
        classes = [PVClass(q, replace(g, p=min(q, g.n - q)), q == g.p)
                   for q in _same_parity(g.n, g.p)]
    elif v is Variant.SU_H_HERM:
        classes = [PVClass(q, replace(g, p=q), q == g.p) for q in range(g.n + 1)]
    else:
        forms = G2_FORMS if v is Variant.G2 else TRIPLE_FORMS
        ordered = [g.form] + [f for f in forms if f != g.form]
        classes = [PVClass(f, replace(g, form=f), f == g.form) for f in ordered]
    return ClassificationResult(g, tuple(classes))


def group_of_class(g: GroupDescriptor, label) -> GroupDescriptor:
    for c in classify(g).classes:
        if c.label == label or str(c.label) == str(label):
            return c.galois_group
    raise DescriptorError("label", f"{label!r} is not a class label for {g}")


# shorthand constructors


def SL_K(n):
    return GroupDescriptor(Variant.SL_K, n=n)


def SL_H(m):
    return GroupDescriptor(Variant.SL_H, m=m)


def SU(n, p):
    return GroupDescriptor(Variant.SU, n=n, p=p)


def SO_odd(n, p):
    return GroupDescriptor(Variant.SO_ODD, n=n, p=p)


def Sp_K(n):
    return GroupDescriptor(Variant.SP_K, n=n)


def SU_H_herm(n, p):
    return GroupDescriptor(Variant.SU_H_HERM, n=n, p=p)


def SO_even(n, p):
    return GroupDescriptor(Variant.SO_EVEN, n=n, p=p)


def SU_H_anti(m):
    return GroupDescriptor(Variant.SU_H_ANTI, m=m)


def G2(form):
    return GroupDescriptor(Variant.G2, form=form)


def F4(form):
    return GroupDescriptor(Variant.F4, form=str(form))


def E8(form):
    return GroupDescriptor(Variant.E8, form=str(form))


def all_descriptors(max_n: int) -> list[GroupDescriptor]:
    """Every admissible descriptor with size parameter at most max_n."""
    out = []
    for n in range(2, max_n + 1):
        out.append(SL_K(n))
        out.extend(SU(n, p) for p in range(n + 1))
    for m in range(1, max_n + 1):
        out.append(SL_H(m))
        out.append(SU_H_anti(m))
    for n in range(1, max_n + 1):
        out.append(Sp_K(n))
        out.extend(SU_H_herm(n, p) for p in range(n + 1))
        if n % 2:
            out.extend(SO_odd(n, p) for p in range(n + 1))
        else:
            out.extend(SO_even(n, p) for p in range(n + 1))
    out.extend(G2(f) for f in G2_FORMS)
    out.extend(F4(f) for f in TRIPLE_FORMS)
    out.extend(E8(f) for f in TRIPLE_FORMS)
    return out
