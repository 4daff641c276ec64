"""Command-line interface.

Exit codes: 0 success, 1 I/O or unreadable JSON, 2 invalid input, 3 internal error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import json
import math
import os
import sys

import numpy as np

from .base_plane import BIFURCATION, L, a_eigenvalues, base_from_triple, classify_base, planar_model
from .components import Quotient, component_of_label, project, quotient_label
from .errors import ComplexEigenvalues, NonDiagonalizable, StructureViolation, SymclassError
from .matcore import DEFAULT_TOL, eigs
from .normal_forms import normal_form
from .paths import analyze_path
from .signatures import b_signature, krein_from_btype, stability_check
from .svg import render_diagram
from .wonenburger import assemble, from_matrix, validate_triple

EXIT_OK, EXIT_IO, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    """Unreadable input (exit 1)."""


def default_tol() -> float:
    raw = os.environ.get("SYMCLASS_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError as exc:
        raise SymclassError(f"SYMCLASS_TOL={raw!r} is not a number") from exc
    if not tol > 0:
        raise SymclassError("SYMCLASS_TOL must be positive")
    return tol


def load_document(path: str):
    try:
        with open(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        doc = json.loads(raw.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise InputError(f"{path} is not valid UTF-8 JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SymclassError("input document must be a JSON object")
    return doc, hashlib.sha256(raw).hexdigest()


def _matrix(entry, key, n=None):
    if key not in entry:
        raise SymclassError(f"missing field {key!r}")
    try:
        a = np.array(entry[key], dtype=float)
    except (TypeError, ValueError) as exc:
        raise SymclassError(f"field {key!r} is not a numeric array") from exc
    if a.ndim == 0:
        a = a.reshape(1, 1)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise SymclassError(f"field {key!r} must be a square row-major array")
    if n is not None and a.shape[0] != n:
        raise SymclassError(f"field {key!r} has size {a.shape[0]}, expected {n}")
    if not np.all(np.isfinite(a)):
        raise SymclassError(f"field {key!r} has non-finite entries")
    return a


def parse_triple(entry: dict, tol: float):
    if "M" in entry:
        return from_matrix(_matrix(entry, "M"), tol)
    n = entry.get("n")
    if n not in (1, 2):
        raise SymclassError("field 'n' must be 1 or 2 (or give 'M')")
    return validate_triple(_matrix(entry, "A", n), _matrix(entry, "B", n), _matrix(entry, "C", n), tol)


def _settings(doc, args):
    s = doc.get("settings") or {}
    if not isinstance(s, dict):
        raise SymclassError("'settings' must be an object")
    tol = args.tol if getattr(args, "tol", None) is not None else s.get("tol", default_tol())
    k_max = getattr(args, "k_max", None)
    k_max = k_max if k_max is not None else s.get("k_max", 6)
    quotient = getattr(args, "quotient", None) or s.get("quotient", "SpI")
    try:
        tol, k_max, quotient = float(tol), int(k_max), Quotient(quotient)
    except (TypeError, ValueError) as exc:
        raise SymclassError(f"invalid settings: {exc}") from exc
    if not tol > 0:
        raise SymclassError("tol must be positive")
    return tol, k_max, quotient


def _cx(z) -> list:
    z = complex(z)
    return [z.real, z.imag]


# ---------------------------------------------------------------------------
# reports


def _krein(t, tol):
    try:
        return krein_from_btype(t, tol)
    except ComplexEigenvalues:
        # over N no eigenvalue of M is on the unit circle
        return []
    except NonDiagonalizable:
        return krein_from_btype(normal_form(t, tol).representative, tol)


def build_report(t, tol: float, quotient, digest: str | None = None) -> dict:
    """JSON-ready classification report of one triple."""
    M = assemble(t)
    stab = stability_check(M, tol)
    rep = {
        "input_sha256": digest,
        "n": t.n,
        "tol": tol,
        "eigenvalues_M": [
            {"value": _cx(e.value), "multiplicity": e.multiplicity, "semisimple": e.semisimple}
            for e in eigs(M, tol)
        ],
        "stability": {
            "status": str(stab.status),
            "witness": None if stab.witness is None else _cx(stab.witness),
            "reason": stab.reason,
        },
        "krein": [{"eigenvalue": _cx(lam), "signature": list(pq)} for lam, pq in _krein(t, tol)],
    }
    if t.n == 1:
        pm = planar_model(t, tol)
        a = float(t.A[0, 0])
        rep.update({
            "stratum": "planar",
            "eigenvalues_A": [_cx(a)],
            "b_types": [str(s) for s in b_signature(t, tol)],
            "planar": {
                "SpI_GL1": {"chart": pm.spi.chart, "value": _planar_value(pm.spi.value)},
                "Sp2": {"chart": pm.sp.chart, "value": _planar_value(pm.sp.value)},
                "base": pm.base,
            },
        })
        return rep
    p = base_from_triple(t)
    stratum = classify_base(p, tol)
    try:
        btypes = [str(s) for s in b_signature(t, tol)]
    except ComplexEigenvalues:
        btypes = None
    except NonDiagonalizable:
        # Jordan-type A over the double wall: use the GIT representative
        btypes = [str(s) for s in normal_form(t, tol).signs]
    spi = quotient_label(t, "SpI", tol)
    labels = {"SpI": spi, "Sp4": project(spi)}
    on_locus = stratum.label in BIFURCATION
    comps = {q: (None if on_locus else str(component_of_label(lab))) for q, lab in labels.items()}
    q = Quotient(quotient).value
    rep.update({
        "stratum": stratum.label.value,
        "stratum_kind": stratum.kind.value,
        "singular_adjacent": stratum.singular_adjacent,
        "on_bifurcation_locus": on_locus,
        "base_point": {"tau": p.tau, "delta": p.delta},
        "eigenvalues_A": [_cx(m) for m in a_eigenvalues(p)],
        "b_types": btypes,
        "sheet_labels": {k: str(v) for k, v in labels.items()},
        "components": comps,
        "quotient": q,
        "component": comps[q],
        "strongly_stable_sheet": (not on_locus) and spi.strongly_stable,
        "normal_form": normal_form(t, tol).to_dict(),
    })
    if stratum.label is L.N:
        rep["b_types"] = None
    return rep


def _planar_value(v):
    if isinstance(v, tuple):
        return list(v)
    return v


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True, allow_nan=False) + "\n"


def cmd_classify(args) -> int:
    doc, digest = load_document(args.input)
    tol, _, quotient = _settings(doc, args)
    t = parse_triple(doc, tol)
    sys.stdout.write(_dump(build_report(t, tol, quotient, digest)))
    return EXIT_OK


def cmd_normal_form(args) -> int:
    doc, _ = load_document(args.input)
    tol, _, _ = _settings(doc, args)
    t = parse_triple(doc, tol)
    if t.n != 2:
        raise SymclassError("normal forms are computed for n = 2")
    sys.stdout.write(_dump(normal_form(t, tol).to_dict()))
    return EXIT_OK


def parse_family(doc, tol):
    fam = doc.get("family")
    if not isinstance(fam, list) or len(fam) < 2:
        raise SymclassError("'family' must be an array with at least two entries")
    out = []
    for i, entry in enumerate(fam):
        if not isinstance(entry, dict) or "param" not in entry:
            raise SymclassError(f"family entry {i} needs a 'param' field")
        entry = dict(entry)
        entry.setdefault("n", 2)
        try:
            param = float(entry["param"])
        except (TypeError, ValueError) as exc:
            raise SymclassError(f"family entry {i}: 'param' is not a number") from exc
        if not math.isfinite(param):
            raise SymclassError(f"family entry {i}: 'param' is not finite")
        out.append((param, parse_triple(entry, tol)))
    return out


def family_table(report) -> str:
    rows = [f"{'param':>14}  {'event':<10} {'line':<8} detail"]
    for e in report.events:
        rows.append(f"{e.param:>14.8g}  {e.kind:<10} {e.line:<8} {e.detail}")
    rows.append(f"verdict: {report.verdict}")
    return "\n".join(rows) + "\n"


def cmd_family(args) -> int:
    doc, digest = load_document(args.input)
    tol, k_max, quotient = _settings(doc, args)
    fam = parse_family(doc, tol)
    report = analyze_path(fam, k_max=k_max, tol=tol, quotient=quotient)
    if args.csv_out:
        try:
            with open(args.csv_out, "w", newline="", encoding="utf-8") as fh:
                w = csv.writer(fh, lineterminator="\n")
                w.writerow(["param", "tau", "delta", "label"])
                for s in report.samples:
                    w.writerow([repr(s.param), repr(s.base.tau), repr(s.base.delta), str(s.label)])
        except OSError as exc:
            raise InputError(f"cannot write {args.csv_out}: {exc.strerror}") from exc
    if args.json:
        doc_out = report.to_dict()
        doc_out.update({"input_sha256": digest, "k_max": k_max, "quotient": quotient.value, "tol": tol})
        sys.stdout.write(_dump(doc_out))
    else:
        sys.stdout.write(family_table(report))
    return EXIT_OK


def cmd_diagram(args) -> int:
    overlay = None
    if args.overlay:
        doc, _ = load_document(args.overlay)
        tol, k_max, quotient = _settings(doc, argparse.Namespace(tol=None, k_max=args.k_max, quotient=None))
        overlay = analyze_path(parse_family(doc, tol), k_max=k_max or 6, tol=tol, quotient=quotient)
    try:
        svg = render_diagram(tuple(args.xrange), tuple(args.yrange), args.k_max, overlay)
    except ValueError as exc:
        raise SymclassError(str(exc)) from exc
    try:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(svg)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror}") from exc
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symclass", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("input", help="UTF-8 JSON input document")
        sp.add_argument("--tol", type=float, default=None,
                        help="relative tolerance (default: settings.tol, $SYMCLASS_TOL, or 1e-9)")

    c = sub.add_parser("classify", help="classify one triple or matrix")
    common(c)
    c.add_argument("--quotient", choices=["SpI", "Sp4"], default=None, help="quotient for 'component' (default SpI)")
    c.set_defaults(func=cmd_classify)

    nf = sub.add_parser("normal-form", help="print only the normal form")
    common(nf)
    nf.set_defaults(func=cmd_normal_form)

    f = sub.add_parser("family", help="analyze a sampled one-parameter family")
    common(f)
    f.add_argument("--k-max", type=int, default=None, help="largest resonance order checked (default 6)")
    f.add_argument("--quotient", choices=["SpI", "Sp4"], default=None)
    f.add_argument("--csv-out", default=None, help="write (param, tau, delta, label) rows here")
    f.add_argument("--json", action="store_true", help="print the full report as JSON instead of a table")
    f.set_defaults(func=cmd_family)

    d = sub.add_parser("diagram", help="write the stability diagram as SVG")
    d.add_argument("--xrange", nargs=2, type=float, default=[-4.0, 4.0], metavar=("MIN", "MAX"))
    d.add_argument("--yrange", nargs=2, type=float, default=[-3.0, 5.0], metavar=("MIN", "MAX"))
    d.add_argument("--k-max", type=int, default=None, help="draw resonance lines up to this order")
    d.add_argument("--overlay", default=None, help="family document to draw with its events")
    d.add_argument("--out", required=True, help="output SVG path")
    d.set_defaults(func=cmd_diagram)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except StructureViolation as exc:
        print("error: invalid triple", file=sys.stderr)
        for eq, res in exc.failures:
            print(f"  {eq}: residual {res:.3e}", file=sys.stderr)
        return EXIT_INVALID
    except (SymclassError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # noqa: BLE001
        print(f"internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
