"""Command-line front end.

    realforms classify --family su --n 5 --p 1
    realforms cocycle  --family so --n 4 --p 2 --q 0
    realforms forms    --input-file form.json
    realforms sample   --family su --n 3 --p 1 --samples 2
    realforms verify   --suite counts --max-n 10

Every command prints one JSON document (or its flattened text rendering).
Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib import resources
from typing import Any

from . import classify as cl
from . import cohomology as co
from . import exactnum as en
from . import verify as vf
from .forms import (
    FormError,
    FormKind,
    FormSpec,
    Pfister3,
    congruence_diagonalize,
    inertia,
    pfister3_class,
    pfister3_expand,
)
from .matrix import A_n, ExactMatrix, I_p, SamplingError, adjoint, cayley_from_gram
from .quatlin import canonicalize_quat_antihermitian, canonicalize_quat_hermitian

SEED_ENV = "REALFORMS_SEED"
MAX_MATRIX_SIZE = 32

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_USAGE = 2

FAMILIES = ("sl", "slh", "su", "so", "sp", "suh", "suh-anti", "g2", "f4", "e8")


class UsageError(Exception):
    def __init__(self, message: str, field: str | None = None, kind: str = "usage"):
        super().__init__(message)
        self.message = message
        self.field = field
        self.kind = kind


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def load_schema() -> dict:
    text = resources.files("realforms").joinpath("schema/output.schema.json").read_text("utf-8")
    return json.loads(text)


# ---------------------------------------------------------------------------
# helpers


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    raw = os.environ.get(SEED_ENV)
    if raw is None or raw == "":
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV} must be an integer, got {raw!r}", SEED_ENV) from None


def _read_input(path: str) -> Any:
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}", "input-file", "invalid_input") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}", "input-file", "invalid_input") from None


def _require(args, *names: str):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required here", name)


def _forbid(args, *names: str):
    for name in names:
        if getattr(args, name, None) is not None:
            raise UsageError(f"--{name.replace('_', '-')} does not apply here", name)


def _check_size(n: int, field: str = "n"):
    if n < 1 or n > MAX_MATRIX_SIZE:
        raise UsageError(f"matrix size must lie in [1, {MAX_MATRIX_SIZE}], got {n}", field)


def _mat(m: ExactMatrix) -> dict:
    return m.to_json()


# ---------------------------------------------------------------------------
# classify


_FAMILY_VARIANTS = {
    "sl": cl.Variant.SL_K,
    "slh": cl.Variant.SL_H,
    "su": cl.Variant.SU,
    "sp": cl.Variant.SP_K,
    "suh": cl.Variant.SU_H_HERM,
    "suh-anti": cl.Variant.SU_H_ANTI,
    "g2": cl.Variant.G2,
    "f4": cl.Variant.F4,
    "e8": cl.Variant.E8,
}


def descriptor_from_family(family: str, n=None, m=None, p=None, form=None) -> cl.GroupDescriptor:
    if family == "so":
        # odd and even orthogonal groups behave differently; n decides
        if n is None:
            raise cl.DescriptorError("n", "required for SO")
        variant = cl.Variant.SO_ODD if n % 2 else cl.Variant.SO_EVEN
    else:
        variant = _FAMILY_VARIANTS[family]
    return cl.GroupDescriptor(variant, n=n, m=m, p=p, form=form)


def cmd_classify(args) -> tuple[dict, int]:
    if args.input_file is not None:
        if args.family is not None:
            raise UsageError("give either --family or --input-file", "family")
        _forbid(args, "n", "m", "p", "form")
        g = cl.GroupDescriptor.from_json(_read_input(args.input_file))
    else:
        _require(args, "family")
        g = descriptor_from_family(args.family, args.n, args.m, args.p, args.form)
    result = cl.classify(g)
    return {"command": "classify", **result.to_json()}, EXIT_OK


# ---------------------------------------------------------------------------
# cocycle


def _inspect_cocycle(x: co.Cocycle, seed: int) -> dict:
    if not co.verify_cocycle(x):
        raise co.CocycleError("B * c(B) != Id")
    act = x.action
    out: dict[str, Any] = {"command": "cocycle", "cocycle": x.to_json(), "is_cocycle": True}
    checks = [True]
    out["index"] = co.cocycle_index(x, seed) if act.p is not None else None
    if act.tag == co.UNITARY_TWIST:
        w = co.coboundary_witness(x)
        lhs = w.M.inverse() * x.B * act(w.M)
        ok = lhs == w.D * I_p(act.n, act.p)
        checks.append(ok)
        out["witness"] = {
            "M": _mat(w.M),
            "D": _mat(w.D),
            "index": w.index,
            "normalized": w.normalized,
            "det_one": w.det_one,
            "det_norm": en.format_scalar(w.det_norm),
            "verified": ok,
        }
    else:
        p = co.hilbert90_solve(x, seed)
        ok = p * act(p).inverse() == x.B
        checks.append(ok)
        out["trivializer"] = {"P": _mat(p), "verified": ok}
        if act.tag == co.QUATERNION_TWIST and x.B.det() == 1:
            try:
                out["sl_class"] = co.sl_quaternionic_class(x, seed)
            except co.CocycleError:
                out["sl_class"] = None
    out["verified"] = all(checks)
    return out


def cmd_cocycle(args) -> tuple[dict, int]:
    seed = _seed(args)
    if args.input_file is not None:
        if args.family is not None:
            raise UsageError("give either --family or --input-file", "family")
        _forbid(args, "n", "p", "q")
        x = co.Cocycle.from_json(_read_input(args.input_file))
        _check_size(x.action.n)
    else:
        _require(args, "family", "n", "p", "q")
        if args.family not in co.FAMILIES:
            raise UsageError(f"cocycle families are {', '.join(co.FAMILIES)}", "family")
        _check_size(args.n * (2 if args.family == co.FAMILY_SUH else 1))
        x = co.rep_cocycle(args.family, args.n, args.p, args.q)
    out = _inspect_cocycle(x, seed)
    return out, EXIT_OK if out["verified"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# forms


def _form_report(f: FormSpec) -> dict:
    out: dict[str, Any] = {"command": "forms", "form": f.to_json()}
    which = f.kind.adjoint
    if f.kind is FormKind.QUAT_ANTIHERMITIAN:
        w = canonicalize_quat_antihermitian(f)
        d = adjoint(w, which) * f.gram * w
        out.update(inertia=None, index=None, signature=None)
        out["canonical"] = {"W": _mat(w), "diagonal": _mat(d), "verified": d.is_diagonal()}
        return out
    inert = inertia(f)
    out["inertia"] = {"positive": inert.positive, "negative": inert.negative, "zero": inert.zero}
    degenerate = inert.zero > 0
    out["index"] = None if degenerate else inert.positive
    out["signature"] = None if degenerate else inert.signature
    if f.kind is FormKind.QUAT_HERMITIAN and not degenerate:
        p, w = canonicalize_quat_hermitian(f)
        d = adjoint(w, which) * f.gram * w
        ok = d == I_p(f.size, p)
    else:
        w, pivots = congruence_diagonalize(f.gram, which)
        d = adjoint(w, which) * f.gram * w
        ok = d == ExactMatrix.diag(pivots)
    out["canonical"] = {"W": _mat(w), "diagonal": _mat(d), "verified": ok}
    return out


def _parse_pfister(text: str) -> Pfister3:
    parts = text.split(",")
    if len(parts) != 3:
        raise UsageError("--pfister takes three comma-separated rationals a,b,c", "pfister")
    try:
        values = [en.parse_scalar(s.strip(), "rational") for s in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad --pfister value: {exc}", "pfister") from None
    return Pfister3(*values)


def cmd_forms(args) -> tuple[dict, int]:
    modes = [args.input_file is not None, args.kind is not None, args.pfister is not None]
    if sum(modes) != 1:
        raise UsageError("give exactly one of --input-file, --kind or --pfister", "input-file")
    if args.pfister is not None:
        _forbid(args, "n", "p")
        pf = _parse_pfister(args.pfister)
        expanded = pfister3_expand(pf)
        cls = pfister3_class(pf)
        inert = inertia(expanded)
        doc = {
            "command": "forms",
            "pfister": {k: en.format_scalar(getattr(pf, k)) for k in "abc"},
            "form": expanded.to_json(),
            "signature": inert.signature,
            "class": cls.value,
        }
        return doc, EXIT_OK
    if args.kind is not None:
        _require(args, "n", "p")
        _check_size(args.n)
        if not 0 <= args.p <= args.n:
            raise UsageError(f"need 0 <= p <= n={args.n}", "p")
        kind = FormKind(args.kind)
        if kind is FormKind.QUAT_ANTIHERMITIAN:
            raise UsageError("--kind builds I_p and needs a (quaternionic) hermitian or quadratic kind", "kind")
        f = FormSpec(kind, I_p(args.n, args.p))
    else:
        _forbid(args, "n", "p")
        f = FormSpec.from_json(_read_input(args.input_file))
        _check_size(f.size)
    out = _form_report(f)
    return out, EXIT_OK if out["canonical"]["verified"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# sample


def _sample_target(args) -> tuple[dict, ExactMatrix, str, bool]:
    """(form JSON, Gram matrix, adjoint, determinant-one claim)."""
    if args.input_file is not None:
        if args.family is not None:
            raise UsageError("give either --family or --input-file", "family")
        _forbid(args, "n", "p")
        f = FormSpec.from_json(_read_input(args.input_file))
        _check_size(f.size)
        return f.to_json(), f.gram, f.kind.adjoint, f.kind in (FormKind.QUADRATIC, FormKind.HERMITIAN)
    _require(args, "family", "n")
    fam = args.family
    if fam not in ("so", "su", "sp", "suh"):
        raise UsageError("sample families are so, su, sp, suh", "family")
    size = 2 * args.n if fam == "sp" else args.n
    _check_size(size)
    if fam == "sp":
        gram = A_n(size) if args.p is None else A_n(size).inverse() * I_p(size, 2 * args.p)
        if args.p is not None and not 0 <= args.p <= args.n:
            raise UsageError(f"need 0 <= p <= n={args.n}", "p")
        return {"kind": "alternating", "gram": gram.to_json()}, gram, "transpose", False
    _require(args, "p")
    if not 0 <= args.p <= args.n:
        raise UsageError(f"need 0 <= p <= n={args.n}", "p")
    kind = {"so": FormKind.QUADRATIC, "su": FormKind.HERMITIAN, "suh": FormKind.QUAT_HERMITIAN}[fam]
    f = FormSpec(kind, I_p(args.n, args.p))
    return f.to_json(), f.gram, kind.adjoint, fam != "suh"


def cmd_sample(args) -> tuple[dict, int]:
    seed = _seed(args)
    count = args.samples if args.samples is not None else 1
    if count < 1 or count > 1000:
        raise UsageError("--samples must lie in [1, 1000]", "samples")
    form_json, gram, which, det_one = _sample_target(args)
    samples = []
    for k in range(count):
        m = cayley_from_gram(gram, which, seed + k)
        ok = adjoint(m, which) * gram * m == gram
        det = None
        if m.scalar != "quaternion":
            d = m.det()
            det = en.format_scalar(d)
            if det_one:
                ok = ok and d == 1
        samples.append({"seed": seed + k, "matrix": _mat(m), "det": det, "verified": ok})
    doc = {"command": "sample", "form": form_json, "adjoint": which, "samples": samples}
    doc["verified"] = all(s["verified"] for s in samples)
    return doc, EXIT_OK if doc["verified"] else EXIT_VERIFY


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> tuple[dict, int]:
    suites = []
    for item in args.suite or []:
        suites.extend(s.strip() for s in item.split(",") if s.strip())
    unknown = [s for s in suites if s not in vf.SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(sorted(vf.SUITES))}", "suite")
    max_n = args.max_n if args.max_n is not None else vf.DEFAULT_MAX_N
    if not 1 <= max_n <= vf.MAX_N_BOUND:
        raise UsageError(f"--max-n must lie in [1, {vf.MAX_N_BOUND}]", "max-n")
    samples = args.samples if args.samples is not None else vf.DEFAULT_SAMPLES
    if not 1 <= samples <= 10000:
        raise UsageError("--samples must lie in [1, 10000]", "samples")
    report = vf.run(suites, vf.Options(_seed(args), max_n, samples))
    return {"command": "verify", **report.to_json()}, EXIT_OK if report.ok else EXIT_VERIFY


# ---------------------------------------------------------------------------
# parser and rendering


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="realforms", description="Real forms, Galois cocycles and Picard-Vessiot classes.")
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(p: argparse.ArgumentParser):
        p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
        p.add_argument("--input-file", default=None, help="JSON input file, '-' for stdin")
        p.add_argument("--output", choices=("json", "text"), default="json")

    p = sub.add_parser("classify", help="list the Picard-Vessiot classes of a group")
    p.add_argument("--family", choices=FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--form")
    common(p)
    p.set_defaults(handler=cmd_classify)

    p = sub.add_parser("cocycle", help="build or inspect a 1-cocycle")
    p.add_argument("--family", choices=co.FAMILIES)
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--q", type=int)
    common(p)
    p.set_defaults(handler=cmd_cocycle)

    p = sub.add_parser("forms", help="index, inertia and canonical shape of a form")
    p.add_argument("--kind", choices=[k.value for k in FormKind])
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--pfister", help="a,b,c for the form <<a,b,c>>")
    common(p)
    p.set_defaults(handler=cmd_forms)

    p = sub.add_parser("sample", help="seeded exact isometries via the Cayley transform")
    p.add_argument("--family", choices=("so", "su", "sp", "suh"))
    p.add_argument("--n", type=int)
    p.add_argument("--p", type=int)
    p.add_argument("--samples", type=int)
    common(p)
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument("--suite", action="append", help=f"one of {', '.join(sorted(vf.SUITES))}; repeatable")
    p.add_argument("--max-n", type=int)
    p.add_argument("--samples", type=int)
    common(p)
    p.set_defaults(handler=cmd_verify)
    return parser


def flatten(doc: Any, prefix: str = "") -> list[str]:
    """Lossless text rendering: one ``path = json`` line per leaf."""
    if isinstance(doc, dict) and doc:
        lines = []
        for k, v in doc.items():
            lines.extend(flatten(v, f"{prefix}.{k}" if prefix else k))
        return lines
    if isinstance(doc, list) and doc:
        lines = []
        for i, v in enumerate(doc):
            lines.extend(flatten(v, f"{prefix}[{i}]"))
        return lines
    return [f"{prefix or '$'} = {json.dumps(doc)}"]


def render(doc: dict, output: str) -> str:
    if output == "text":
        return "\n".join(flatten(doc)) + "\n"
    return json.dumps(doc, indent=2) + "\n"


def _error_doc(kind: str, message: str, field: str | None) -> dict:
    return {"error": {"type": kind, "message": message, "field": field}}


def _output_choice(argv: list[str]) -> str:
    for i, a in enumerate(argv):
        if a == "--output=text" or (a == "--output" and i + 1 < len(argv) and argv[i + 1] == "text"):
            return "text"
    return "json"


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Execute a command line and return (rendered output, exit code)."""
    argv = list(sys.argv[1:] if argv is None else argv)
    output = _output_choice(argv)
    try:
        args = build_parser().parse_args(argv)
        output = args.output
        doc, code = args.handler(args)
    except UsageError as exc:
        doc, code = _error_doc(exc.kind, exc.message, exc.field), EXIT_USAGE
    except cl.DescriptorError as exc:
        doc, code = _error_doc("invalid_input", exc.message, exc.field), EXIT_USAGE
    except (FormError, co.CocycleError, ValueError, TypeError, ZeroDivisionError) as exc:
        doc, code = _error_doc("invalid_input", str(exc), None), EXIT_USAGE
    except SamplingError as exc:
        doc, code = _error_doc("computation", str(exc), "seed"), EXIT_VERIFY
    return render(doc, output), code


def main(argv: list[str] | None = None) -> int:
    text, code = run(argv)
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
