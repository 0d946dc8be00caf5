"""Seeded verification suites over the whole library.

Each suite returns a :class:`SuiteResult`; reports are ordered by suite name
and then by case index, so identical arguments give identical reports.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import classify as cl
from . import cohomology as co
from . import exactnum as en
from .forms import FormKind, FormSpec, Pfister3, PfisterClass, pfister3_class, pfister3_expand, signature, signature_index
from .matrix import A_n, ExactMatrix, I_p, J_p, Lcg, cayley_from_gram, cayley_sample
from .quatlin import in_quaternionic_image, mu_embed, sigma_transpose_compat

MAX_N_BOUND = 10
DEFAULT_MAX_N = 8
DEFAULT_SAMPLES = 100
QUAT_REP_MAX_N = 4  # quaternionic representatives get slow beyond this


@dataclass
class SuiteResult:
    suite: str
    cases: int = 0
    passed: int = 0
    failed: int = 0
    counterexample: str | None = None

    def check(self, ok: bool, case: str):
        self.cases += 1
        if ok:
            self.passed += 1
        else:
            self.failed += 1
            if self.counterexample is None:
                self.counterexample = case

    @property
    def ok(self) -> bool:
        return self.failed == 0 and self.cases > 0

    def to_json(self) -> dict:
        return {
            "suite": self.suite,
            "cases": self.cases,
            "passed": self.passed,
            "failed": self.failed,
            "counterexample": self.counterexample,
        }


@dataclass(frozen=True)
class Options:
    seed: int = 0
    max_n: int = DEFAULT_MAX_N
    samples: int = DEFAULT_SAMPLES


# ---------------------------------------------------------------------------
# Counting oracles, independent of classify()


def theorem_count(g: cl.GroupDescriptor) -> int:
    """Closed-form number of Picard-Vessiot classes."""
    v, n, p = g.variant, g.n, g.p
    V = cl.Variant
    if v in (V.SL_K, V.SP_K, V.SU_H_ANTI):
        return 1
    if v is V.SL_H:
        return 2
    if v is V.SU:
        return n // 2 + 1 if (n % 2 or p % 2 == 0) else n // 2
    if v is V.SO_ODD:
        return (n + 1) // 2
    if v is V.SU_H_HERM:
        return n + 1
    if v is V.SO_EVEN:
        return n // 2 + 1 if p % 2 == 0 else n // 2
    if v is V.G2:
        return 2
    return 3


def enumerated_count(g: cl.GroupDescriptor) -> int:
    """Brute-force count of admissible class parameters q in [0, n]."""
    V = cl.Variant
    if g.variant in (V.SU, V.SO_ODD, V.SO_EVEN):
        return sum(1 for q in range(g.n + 1) if q % 2 == g.p % 2)
    if g.variant is V.SU_H_HERM:
        return sum(1 for _ in range(g.n + 1))
    if g.variant is V.SL_H:
        return 2  # trivial class and zeta Id
    if g.variant in (V.G2, V.F4, V.E8):
        return len(cl.G2_FORMS if g.variant is V.G2 else cl.TRIPLE_FORMS)
    return 1


def suite_counts(opts: Options) -> SuiteResult:
    r = SuiteResult("counts")
    for g in cl.all_descriptors(opts.max_n):
        res = cl.classify(g)
        canon = cl.canonical_group(g)
        trivial = [c for c in res.classes if c.trivial]
        other = cl.classify(canon)
        ok = (
            res.count == theorem_count(g) == enumerated_count(g)
            and len(trivial) == 1
            and trivial[0].galois_group == canon
            and other.count == res.count
            and sorted(map(str, (c.galois_group for c in other.classes)))
            == sorted(map(str, (c.galois_group for c in res.classes)))
        )
        r.check(ok, f"{g}: classify={res.count} theorem={theorem_count(g)} enumerated={enumerated_count(g)}")
    return r


# ---------------------------------------------------------------------------


def suite_representatives(opts: Options) -> SuiteResult:
    """cocycle_index over rep_cocycle(q) recovers q; labels of classify match."""
    r = SuiteResult("representatives")
    for n in range(1, opts.max_n + 1):
        for p in range(n + 1):
            families = [("so", cl.SO_odd(n, p) if n % 2 else cl.SO_even(n, p))]
            if n >= 2:
                families.append(("su", cl.SU(n, p)))
            if n <= QUAT_REP_MAX_N:
                families.append(("suh", cl.SU_H_herm(n, p)))
            for fam, g in families:
                labels = [c.label for c in cl.classify(g).classes]
                indexes = [co.cocycle_index(co.rep_cocycle(fam, n, p, q), opts.seed) for q in labels]
                ok = indexes == labels and len(set(indexes)) == len(indexes)
                r.check(ok, f"{fam} n={n} p={p}: labels={labels} indexes={indexes}")
    return r


def suite_twist_identities(opts: Options) -> SuiteResult:
    r = SuiteResult("twist-identities")
    for n in range(2, opts.max_n + 1, 2):
        a = A_n(n)
        ident = ExactMatrix.identity(n)
        r.check(a * a == -ident and a.T == -a and a.inverse() == -a, f"A_{n}")
    for n in range(1, opts.max_n + 1):
        ident = ExactMatrix.identity(n)
        for q in range(n + 1):
            jq, iq = J_p(n, q), I_p(n, q)
            r.check(jq * iq * jq == ident and jq * jq == iq and jq.star() * jq == ident,
                    f"J_q identities n={n} q={q}")
            for p in range(n + 1):
                d = co.twist_matrix(n, p, q)
                ip = I_p(n, p)
                r.check(d.T * iq * d == ip, f"D^t I_q D = I_p n={n} p={p} q={q}")
                r.check(d.star() * ip * d == ip, f"D* I_p D = I_p n={n} p={p} q={q}")
                if (q - p) % 2 == 0:
                    x = co.rep_cocycle("su", n, p, q)
                    r.check(co.verify_cocycle(x), f"B_q c(B_q) = Id n={n} p={p} q={q}")
    return r


def _quat_matrix(rng: Lcg, size: int) -> ExactMatrix:
    return rng.matrix(size, size, "quaternion")


def suite_embedding(opts: Options) -> SuiteResult:
    r = SuiteResult("embedding")
    rng = Lcg(opts.seed)
    for k in range(opts.samples):
        size = 1 + k % 3
        m, n = _quat_matrix(rng, size), _quat_matrix(rng, size)
        r.check(mu_embed(m * n) == mu_embed(m) * mu_embed(n), f"mu(MN) sample {k}")
        r.check(mu_embed(m + n) == mu_embed(m) + mu_embed(n), f"mu(M+N) sample {k}")
        r.check(sigma_transpose_compat(m), f"sigma-transpose sample {k}")
        r.check(in_quaternionic_image(mu_embed(m)), f"image membership sample {k}")
        r.check((m * n).sigma_star() == n.sigma_star() * m.sigma_star(), f"sigma_star anti sample {k}")
    i = en.I_UNIT
    r.check(not in_quaternionic_image(ExactMatrix.diag([i, i])), "diag(i, i) rejected")
    return r


def suite_det_positivity(opts: Options) -> SuiteResult:
    r = SuiteResult("det-positivity")
    for k in range(opts.samples):
        n = (2, 4, 6)[k % 3]
        m = co.det_positive_sample(n, opts.seed + k)
        act = co.ConjAction(co.QUATERNION_TWIST, n)
        d = m.det()
        ok = act(m) == m and en.is_rational_value(d) and en.to_rational(d) > 0
        r.check(ok, f"n={n} seed={opts.seed + k}: det={en.format_scalar(d)}")
    return r


def suite_hilbert90(opts: Options) -> SuiteResult:
    r = SuiteResult("hilbert90")
    count = max(1, opts.samples // 2)
    for tag in (co.PLAIN, co.QUATERNION_TWIST):
        for k in range(count):
            n = (2, 4)[k % 2]
            act = co.ConjAction(tag, n)
            m = co.real_det_normalize(Lcg(opts.seed * 7919 + k).matrix(n, n, "gauss"))
            x = co.coboundary(act, m)
            p = co.hilbert90_solve(x, opts.seed + k)
            ok = co.verify_cocycle(x) and p * act(p).inverse() == x.B
            if tag == co.QUATERNION_TWIST:
                ok = ok and co.sl_quaternionic_class(x, opts.seed + k) == 1
            r.check(ok, f"{tag} n={n} sample {k}")
    for n, zeta in ((2, Fraction(-1)), (4, en.I_UNIT)):
        x = co.Cocycle(co.ConjAction(co.QUATERNION_TWIST, n), ExactMatrix.diag([zeta] * n))
        r.check(co.sl_quaternionic_class(x, opts.seed) == -1, f"zeta Id n={n}")
    return r


def _height_rationals(h: int) -> list[Fraction]:
    return sorted({Fraction(a, b) for a in range(-h, h + 1) for b in range(1, h + 1) if a})


def suite_pfister(opts: Options) -> SuiteResult:
    r = SuiteResult("pfister")
    for signs in itertools.product((1, -1), repeat=3):
        cls = pfister3_class(Pfister3(*signs))
        expected = PfisterClass.DEFINITE if signs == (1, 1, 1) else PfisterClass.SPLIT
        r.check(cls is expected, f"signs {signs}: {cls.value}")
    for a, b, c in itertools.product(_height_rationals(3), repeat=3):
        p = Pfister3(a, b, c)
        sig = signature(pfister3_expand(p))
        cls = pfister3_class(p)
        definite = a > 0 and b > 0 and c > 0
        ok = sig in (8, 0) and (cls is PfisterClass.DEFINITE) == definite
        r.check(ok, f"({a}, {b}, {c}): signature {sig}")
    return r


def suite_transport(opts: Options) -> SuiteResult:
    r = SuiteResult("transport")
    count = max(1, opts.samples // 4)
    cases = [(n, p, q) for n in range(2, 6) for p in range(n + 1) for q in range(n + 1)]
    for k in range(count):
        n, p, q = cases[(opts.seed + 13 * k) % len(cases)]
        m = cayley_sample(FormSpec(FormKind.QUADRATIC, I_p(n, p)), opts.seed + k)
        d = co.twist_matrix(n, p, q)
        nm = d * m * d.inverse()
        iq = I_p(n, q)
        r.check(m.T * I_p(n, p) * m == I_p(n, p) and m.det() == 1 and nm.T * iq * nm == iq,
                f"SO transport n={n} p={p} q={q} seed={opts.seed + k}")
    sp_cases = [(n, p, q) for n in range(1, 4) for p in range(n + 1) for q in range(n + 1)]
    for k in range(count):
        n, p, q = sp_cases[(opts.seed + 7 * k) % len(sp_cases)]
        size = 2 * n
        a_inv = A_n(size).inverse()
        tp, tq = a_inv * I_p(size, 2 * p), a_inv * I_p(size, 2 * q)
        nm = cayley_from_gram(tp, "transpose", opts.seed + k, kind="gauss")
        d = J_p(size, 2 * q) * J_p(size, 2 * p)
        pm = d * nm * d.inverse()
        r.check(nm.T * tp * nm == tp and pm.T * tq * pm == tq,
                f"Sp transport n={n} p={p} q={q} seed={opts.seed + k}")
    return r


def suite_cayley(opts: Options) -> SuiteResult:
    r = SuiteResult("cayley")
    count = max(1, opts.samples // 4)
    for k in range(count):
        n = 1 + k % 4
        p = k % (n + 1)
        for kind in (FormKind.QUADRATIC, FormKind.HERMITIAN):
            form = FormSpec(kind, I_p(n, p))
            m = cayley_sample(form, opts.seed + k)
            r.check(form.congruent(m) == form and m.det() == 1,
                    f"{kind.value} n={n} p={p} seed={opts.seed + k}")
        hform = FormSpec(FormKind.QUAT_HERMITIAN, I_p(n, p))
        m = cayley_sample(hform, opts.seed + k)
        r.check(hform.congruent(m) == hform and signature_index(hform) == p,
                f"quat_hermitian n={n} p={p} seed={opts.seed + k}")
    return r


SUITES: dict[str, Callable[[Options], SuiteResult]] = {
    "cayley": suite_cayley,
    "counts": suite_counts,
    "det-positivity": suite_det_positivity,
    "embedding": suite_embedding,
    "hilbert90": suite_hilbert90,
    "pfister": suite_pfister,
    "representatives": suite_representatives,
    "transport": suite_transport,
    "twist-identities": suite_twist_identities,
}


@dataclass
class Report:
    options: Options
    results: list[SuiteResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def to_json(self) -> dict:
        return {
            "seed": self.options.seed,
            "max_n": self.options.max_n,
            "samples": self.options.samples,
            "all_passed": self.ok,
            "suites": [r.to_json() for r in self.results],
        }


def run(suites: list[str] | None = None, opts: Options = Options()) -> Report:
    if opts.max_n < 1 or opts.max_n > MAX_N_BOUND:
        raise ValueError(f"max-n must lie in [1, {MAX_N_BOUND}]")
    if opts.samples < 1:
        raise ValueError("samples must be positive")
    names = sorted(SUITES) if not suites else sorted(set(suites))
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite {unknown[0]!r}; choose from {', '.join(sorted(SUITES))}")
    return Report(opts, [SUITES[name](opts) for name in names])
