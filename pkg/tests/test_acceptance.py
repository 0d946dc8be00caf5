"""Acceptance criteria 1-10.

Each criterion is a function returning (passed, detail).  Under pytest every
criterion prints one PASS/FAIL line to the terminal; running this file as a
script prints the same lines.
"""

from __future__ import annotations

import itertools
import json
import os
import subprocess
import sys
from collections import Counter
from fractions import Fraction

import jsonschema
import pytest

from realforms import classify as cl
from realforms import cli
from realforms import cohomology as co
from realforms import exactnum as en
from realforms.forms import FormKind, FormSpec, Pfister3, PfisterClass, pfister3_class, pfister3_expand, signature
from realforms.matrix import A_n, ExactMatrix, I_p, J_p, Lcg, cayley_from_gram, cayley_sample
from realforms.quatlin import in_quaternionic_image, mu_embed, sigma_transpose_compat


class Tally:
    def __init__(self):
        self.cases = 0
        self.failures: list[str] = []

    def check(self, ok: bool, case: str):
        self.cases += 1
        if not ok:
            self.failures.append(case)

    def result(self, what: str) -> tuple[bool, str]:
        if self.failures:
            return False, f"{len(self.failures)}/{self.cases} {what} failed, first: {self.failures[0]}"
        return True, f"{self.cases} {what}"


def closed_form(g: cl.GroupDescriptor) -> int:
    v, n, p = g.variant, g.n, g.p
    V = cl.Variant
    if v is V.SU:
        return n // 2 + 1 if (n % 2 or p % 2 == 0) else n // 2
    if v is V.SO_ODD:
        return (n + 1) // 2
    if v is V.SO_EVEN:
        return n // 2 + 1 if p % 2 == 0 else n // 2
    if v is V.SU_H_HERM:
        return n + 1
    return {V.SL_K: 1, V.SL_H: 2, V.SP_K: 1, V.SU_H_ANTI: 1, V.G2: 2, V.F4: 3, V.E8: 3}[v]


def criterion_1():
    t = Tally()
    for g in cl.all_descriptors(10):
        got = cl.classify(g).count
        t.check(got == closed_form(g), f"{g}: {got} != {closed_form(g)}")
    return t.result("descriptors with n <= 10 match the closed-form counts")


def criterion_2():
    t = Tally()
    for n in range(1, 9):
        for p in range(n + 1):
            fams = [("so", cl.SO_odd(n, p) if n % 2 else cl.SO_even(n, p))]
            if n >= 2:
                fams.append(("su", cl.SU(n, p)))
            for fam, g in fams:
                labels = [c.label for c in cl.classify(g).classes]
                idx = [co.cocycle_index(co.rep_cocycle(fam, n, p, q)) for q in labels]
                t.check(idx == labels and len(set(idx)) == len(idx), f"{fam} n={n} p={p}: {idx} vs {labels}")
    return t.result("SU/SO families with n <= 8 have distinct indexes equal to the labels")


def criterion_3():
    t = Tally()
    for n in range(2, 11, 2):
        t.check(A_n(n) * A_n(n) == -ExactMatrix.identity(n), f"A_{n}^2")
    for n in range(1, 9):
        ident = ExactMatrix.identity(n)
        for p, q in itertools.product(range(n + 1), repeat=2):
            d = co.twist_matrix(n, p, q)
            t.check(J_p(n, q) * I_p(n, q) * J_p(n, q) == ident, f"J I J n={n} q={q}")
            t.check(d.T * I_p(n, q) * d == I_p(n, p), f"D^t I_q D n={n} p={p} q={q}")
            t.check(d.star() * I_p(n, p) * d == I_p(n, p), f"D* I_p D n={n} p={p} q={q}")
            if (p - q) % 2 == 0:
                x = co.rep_cocycle("su", n, p, q)
                t.check((x.B * x.action(x.B)).is_identity(), f"B c(B) n={n} p={p} q={q}")
    return t.result("exact identities")


def criterion_4():
    t = Tally()
    rng = Lcg(20240)
    for k in range(100):
        size = 1 + k % 3
        m = rng.matrix(size, size, "quaternion")
        n = rng.matrix(size, size, "quaternion")
        t.check(mu_embed(m * n) == mu_embed(m) * mu_embed(n), f"mu(MN) pair {k}")
        t.check(sigma_transpose_compat(m), f"sigma-transpose {k}")
        t.check(in_quaternionic_image(mu_embed(m)), f"image {k}")
    i = en.I_UNIT
    t.check(not in_quaternionic_image(ExactMatrix.diag([i, i])), "diag(i, i) witness")
    return t.result("embedding checks")


def criterion_5():
    t = Tally()
    for k in range(100):
        n = (2, 4, 6)[k % 3]
        m = co.det_positive_sample(n, seed=1000 + k)
        d = m.det()
        fixed = co.ConjAction(co.QUATERNION_TWIST, n)(m) == m
        positive = en.is_rational_value(d) and en.to_rational(d) > 0
        t.check(fixed and positive, f"seed {1000 + k}: det {en.format_scalar(d)}")
    return t.result("c-fixed invertible matrices with positive rational determinant")


def criterion_6():
    t = Tally()
    for tag in (co.PLAIN, co.QUATERNION_TWIST):
        act_n = (2, 4)
        for k in range(50):
            n = act_n[k % 2]
            act = co.ConjAction(tag, n)
            m = co.real_det_normalize(Lcg(500 + k).matrix(n, n, "gauss"))
            x = co.coboundary(act, m)
            p = co.hilbert90_solve(x, seed=k)
            ok = p * act(p).inverse() == x.B
            if tag == co.QUATERNION_TWIST:
                ok = ok and co.sl_quaternionic_class(x, seed=k) == 1
            t.check(ok, f"{tag} sample {k}")
    for n, zeta in ((2, Fraction(-1)), (4, en.I_UNIT)):
        x = co.Cocycle(co.ConjAction(co.QUATERNION_TWIST, n), ExactMatrix.diag([zeta] * n))
        t.check(co.sl_quaternionic_class(x) == -1, f"zeta Id n={n}")
    return t.result("Hilbert 90 solutions and SL classes")


def criterion_7():
    t = Tally()
    for signs in itertools.product((1, -1), repeat=3):
        want = PfisterClass.DEFINITE if signs == (1, 1, 1) else PfisterClass.SPLIT
        t.check(pfister3_class(Pfister3(*signs)) is want, f"signs {signs}")
    values = sorted({Fraction(a, b) for a in range(-3, 4) for b in range(1, 4) if a})
    for a, b, c in itertools.product(values, repeat=3):
        p = Pfister3(a, b, c)
        sig = signature(pfister3_expand(p))
        definite = pfister3_class(p) is PfisterClass.DEFINITE
        t.check(sig in (0, 8) and definite == (a > 0 and b > 0 and c > 0), f"({a}, {b}, {c})")
    return t.result("Pfister forms")


def criterion_8():
    t = Tally()
    for k in range(25):
        n = 2 + k % 4
        p, q = k % (n + 1), (3 * k + 1) % (n + 1)
        m = cayley_sample(FormSpec(FormKind.QUADRATIC, I_p(n, p)), seed=k)
        d = co.twist_matrix(n, p, q)
        nm = d * m * d.inverse()
        t.check(m.T * I_p(n, p) * m == I_p(n, p) and nm.T * I_p(n, q) * nm == I_p(n, q), f"SO n={n} p={p} q={q}")
    for k in range(25):
        n = 1 + k % 3
        p, q = k % (n + 1), (2 * k + 1) % (n + 1)
        size = 2 * n
        tp = A_n(size).inverse() * I_p(size, 2 * p)
        tq = A_n(size).inverse() * I_p(size, 2 * q)
        nm = cayley_from_gram(tp, "transpose", seed=k, kind="gauss")
        d = J_p(size, 2 * q) * J_p(size, 2 * p)
        pm = d * nm * d.inverse()
        t.check(nm.T * tp * nm == tp and pm.T * tq * pm == tq, f"Sp n={n} p={p} q={q}")
    return t.result("transported samples")


def criterion_9():
    t = Tally()
    r = cl.classify(cl.G2("compact"))
    t.check({c.galois_group.form for c in r.classes} == {"compact", "split"}, "G2 groups")
    nontrivial = [c.galois_group.form for c in r.classes if not c.trivial]
    t.check(nontrivial == ["split"], f"G2 nontrivial class -> {nontrivial}")
    for ctor in (cl.F4, cl.E8):
        for form in cl.TRIPLE_FORMS:
            forms = Counter(c.galois_group.form for c in cl.classify(ctor(form)).classes)
            t.check(forms == Counter(cl.TRIPLE_FORMS), f"{ctor.__name__}({form}): {dict(forms)}")
    return t.result("exceptional class lists")


CLI_VALID = [
    ["classify", "--family", "su", "--n", "5", "--p", "1"],
    ["classify", "--family", "sp", "--n", "3"],
    ["classify", "--family", "g2", "--form", "split", "--output", "text"],
    ["cocycle", "--family", "su", "--n", "4", "--p", "1", "--q", "3"],
    ["cocycle", "--family", "suh", "--n", "2", "--p", "1", "--q", "0"],
    ["forms", "--kind", "hermitian", "--n", "3", "--p", "2"],
    ["forms", "--pfister", "2,3,-5"],
    ["sample", "--family", "suh", "--n", "2", "--p", "1", "--seed", "4"],
    ["verify", "--suite", "twist-identities", "--max-n", "6"],
    ["verify", "--suite", "det-positivity", "--seed", "7", "--samples", "50"],
    ["verify", "--suite", "counts", "--max-n", "10"],
]

CLI_INVALID = [
    [],
    ["classify", "--family", "su", "--n", "4"],
    ["classify", "--family", "so", "--n", "4", "--p", "7"],
    ["classify", "--family", "g2", "--form", "7"],
    ["classify", "--family", "sl", "--n", "x"],
    ["cocycle", "--family", "su", "--n", "4", "--p", "1", "--q", "2"],
    ["forms", "--pfister", "0,1,1"],
    ["sample", "--family", "so", "--n", "3"],
    ["verify", "--suite", "nope"],
    ["verify", "--max-n", "99"],
    ["classify", "--input-file", "/nonexistent.json"],
]


def _invoke(argv):
    proc = subprocess.run([sys.executable, "-m", "realforms", *argv], capture_output=True, check=False, env=dict(os.environ))
    return proc.returncode, proc.stdout


def criterion_10():
    t = Tally()
    validator = jsonschema.Draft202012Validator(cli.load_schema())
    for argv in CLI_VALID + CLI_INVALID:
        first, second = _invoke(argv), _invoke(argv)
        t.check(first == second, f"non-deterministic: {' '.join(argv)}")
        code, out = first
        text = out.decode()
        expected = 2 if argv in CLI_INVALID else 0
        t.check(code == expected, f"exit {code} != {expected}: {' '.join(argv)}")
        if "text" in argv:
            doc, _ = cli.run([a for a in argv if a not in ("--output", "text")])
            text = doc
        try:
            validator.validate(json.loads(text))
            valid = True
        except (json.JSONDecodeError, jsonschema.ValidationError):
            valid = False
        t.check(valid, f"schema: {' '.join(argv)}")
    return t.result("CLI determinism, schema and exit-code checks")


CRITERIA = [
    (1, "counting theorems", criterion_1),
    (2, "representative inequivalence", criterion_2),
    (3, "identity suite", criterion_3),
    (4, "quaternionic embedding", criterion_4),
    (5, "determinant positivity", criterion_5),
    (6, "constructive Hilbert 90", criterion_6),
    (7, "Pfister classification", criterion_7),
    (8, "transport of membership", criterion_8),
    (9, "exceptional class lists", criterion_9),
    (10, "CLI determinism and schema", criterion_10),
]


def _line(number: int, name: str, ok: bool, detail: str) -> str:
    return f"criterion {number:>2} [{'PASS' if ok else 'FAIL'}] {name}: {detail}"


@pytest.mark.parametrize("number, name, fn", CRITERIA, ids=[f"c{n:02d}" for n, _, _ in CRITERIA])
def test_criterion(number, name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print("\n" + _line(number, name, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    results = [(n, name, *fn()) for n, name, fn in CRITERIA]
    for n, name, ok, detail in results:
        print(_line(n, name, ok, detail))
    sys.exit(0 if all(r[2] for r in results) else 1)
