"""Command line front end.

Usage:
    coxnef presets
    coxnef curves --preset halphen-e8-m2 --format dot
    coxnef nef surface.json --format tsv
    coxnef cohomology --preset halphen-e8-m2 --class=-6,2,2,2,2,2,2,2,2,2
    coxnef analyze --preset halphen-e8-m2 --format json

A surface config is a JSON object with ``name``, ``basis`` (labels),
optional ``gram`` (default ``diag(1,-1,...,-1)``), ``canonical``, ``kind``
(``"weak_del_pezzo"`` or ``"elliptic"`` with ``index``), ``minus_two`` and an
optional ``minus_one``; classes are integer lists in the declared basis.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import coxdeg
from .cohomology import base_locus, cohomology
from .errors import CoxnefError, LatticeError, ModelError
from .lattice import DivisorClass, PicardLattice, square
from .surface import (
    ELLIPTIC,
    WEAK_DEL_PEZZO,
    SurfaceModel,
    check_model,
    is_nef,
    negative_curves,
    populated,
    preset,
    preset_names,
)

EXIT_OK = 0
EXIT_INVALID = 2


# ---------------------------------------------------------------- config files


def _int_list(value, what: str) -> tuple[int, ...]:
    if not isinstance(value, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in value):
        raise ModelError(f"{what} must be a list of integers", [f"got {value!r}"])
    return tuple(value)


def model_from_config(data: dict) -> SurfaceModel:
    """Build and validate a model from a parsed surface config."""
    if not isinstance(data, dict):
        raise ModelError("config must be a JSON object")
    problems = []
    if "basis" not in data and "labels" in data:
        data = dict(data, basis=data["labels"])
    for key in ("basis", "canonical", "kind"):
        if key not in data:
            problems.append(f"missing field {key!r}")
    if problems:
        raise ModelError("malformed surface config", problems)
    labels = data["basis"]
    if not isinstance(labels, list) or not all(isinstance(x, str) for x in labels):
        raise ModelError("basis must be a list of labels")
    n = len(labels)
    if "rank" in data and data["rank"] != n:
        raise ModelError("rank does not match the number of basis labels", [f"rank={data['rank']}, labels={n}"])
    name = str(data.get("name", "surface"))
    if "gram" in data and data["gram"] is not None:
        rows = data["gram"]
        if not isinstance(rows, list):
            raise ModelError("gram must be a list of rows")
        gram = tuple(_int_list(r, "gram row") for r in rows)
    else:
        gram = tuple(tuple((1 if i == 0 else -1) if i == j else 0 for j in range(n)) for i in range(n))
    try:
        lat = PicardLattice(gram, _int_list(data["canonical"], "canonical"), tuple(labels), name)
    except LatticeError as exc:
        raise ModelError("malformed lattice", [str(exc)]) from exc
    kind = data["kind"]
    if kind == ELLIPTIC:
        index = data.get("index")
        if not isinstance(index, int) or isinstance(index, bool):
            raise ModelError("elliptic surfaces need an integer index")
    elif kind == WEAK_DEL_PEZZO:
        index = None
    else:
        raise ModelError(f"unknown kind {kind!r}", [f"expected {WEAK_DEL_PEZZO!r} or {ELLIPTIC!r}"])
    twos = tuple(DivisorClass(_int_list(c, "minus_two entry"), name) for c in data.get("minus_two", []))
    ones = tuple(DivisorClass(_int_list(c, "minus_one entry"), name) for c in data.get("minus_one", []) or [])
    model = check_model(SurfaceModel(lat, kind, index, twos, ones, name))
    return check_model(populated(model))


def load_config(path: str | Path) -> SurfaceModel:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ModelError(f"cannot read {path}", [str(exc)]) from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ModelError(f"{path} is not valid JSON", [str(exc)]) from exc
    return model_from_config(data)


def model_to_config(model: SurfaceModel) -> dict:
    lat = model.lattice
    out = {
        "name": model.name,
        "rank": lat.rank,
        "basis": list(lat.basis_labels),
        "gram": [list(r) for r in lat.gram],
        "canonical": list(lat.canonical),
        "kind": model.kind,
        "minus_two": [list(c.coeffs) for c in model.minus_two],
        "minus_one": [list(c.coeffs) for c in model.minus_one],
    }
    if model.is_elliptic:
        out["index"] = model.index
    return out


def parse_class(model: SurfaceModel, text: str) -> DivisorClass:
    try:
        coeffs = tuple(int(x) for x in text.split(","))
    except ValueError as exc:
        raise ModelError(f"cannot parse class {text!r}", ["expected comma separated integers"]) from exc
    if len(coeffs) != model.lattice.rank:
        raise ModelError(f"class {text!r} has {len(coeffs)} coordinates", [f"lattice rank is {model.lattice.rank}"])
    return DivisorClass(coeffs, model.lattice.basis_id)


# ---------------------------------------------------------------- output


def dumps(payload) -> str:
    """Canonical JSON: sorted keys, fixed indentation, trailing newline."""
    return json.dumps(payload, sort_keys=True, indent=2) + "\n"


def _curve_type(model: SurfaceModel, c: DivisorClass) -> str:
    return f"({square(model.lattice, c)})-curve"


def emit_dot(model: SurfaceModel) -> str:
    """Dual graph of the negative curves: (-2)-curves as boxes, (-1)-curves as circles."""
    lat = model.lattice
    curves = negative_curves(model)
    lines = [f'graph "{model.name}" {{']
    for i, c in enumerate(curves):
        shape = "box" if square(lat, c) == -2 else "circle"
        lines.append(f'  n{i} [label="{lat.format(c)}", shape={shape}];')
    for i in range(len(curves)):
        for j in range(i + 1, len(curves)):
            k = model.pair(curves[i], curves[j])
            if k > 0:
                lines.append(f'  n{i} -- n{j} [label="{k}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _tsv(rows: Sequence[Sequence[object]]) -> str:
    return "".join("\t".join(str(x) for x in r) + "\n" for r in rows)


def _classification_dict(cls: coxdeg.NefClassification | None) -> dict | None:
    if cls is None:
        return None
    out = {"tag": cls.tag}
    if cls.tag == coxdeg.PULLBACK:
        out.update(
            degree=cls.degree,
            dp_flag=cls.dp_flag,
            trace=[list(c.coeffs) for c in cls.trace],
        )
    return out


def _verdict_dict(v: coxdeg.NecessityVerdict) -> dict:
    out = {"status": v.status}
    if v.witness is not None:
        out["witness"] = {
            "lemma": v.witness.lemma,
            "rule": v.witness.rule,
            "classes": [list(c.coeffs) for c in v.witness.classes],
        }
    if v.reason:
        out["reason"] = v.reason
    return out


def _type_of(model: SurfaceModel, cand: coxdeg.Candidate) -> str:
    if cand.kind == "negative":
        return _curve_type(model, cand.cls)
    if cand.classification is not None:
        return cand.classification.tag
    return "AmpleExtra"


def render_curves(model: SurfaceModel, fmt: str) -> str:
    lat = model.lattice
    curves = negative_curves(model)
    if fmt == "dot":
        return emit_dot(model)
    if fmt == "json":
        return dumps(
            {
                "model": model.name,
                "basis": list(lat.basis_labels),
                "negative_curves": [
                    {"class": list(c.coeffs), "square": square(lat, c), "label": lat.format(c)} for c in curves
                ],
            }
        )
    if fmt == "tsv":
        return _tsv([("class", "type", "label")] + [(str(c), _curve_type(model, c), lat.format(c)) for c in curves])
    lines = [f"{model.name}: {len(curves)} negative curves"]
    lines += [f"  {_curve_type(model, c):12s} {lat.format(c)}" for c in curves]
    return "\n".join(lines) + "\n"


def render_nef(model: SurfaceModel, fmt: str) -> str:
    lat = model.lattice
    hb = coxdeg.nef_hilbert_basis(model)
    rows = [(n, coxdeg.classify_nef(model, n, check_basis=False)) for n in hb]
    if fmt == "dot":
        return emit_dot(model)
    if fmt == "json":
        return dumps(
            {
                "model": model.name,
                "basis": list(lat.basis_labels),
                "hilbert_basis": [
                    {
                        "class": list(n.coeffs),
                        "label": lat.format(n),
                        "square": square(lat, n),
                        "anticanonical_degree": lat.anticanonical_degree(n),
                        "classification": _classification_dict(c),
                    }
                    for n, c in rows
                ],
            }
        )
    if fmt == "tsv":
        body = [(str(n), c.tag, square(lat, n), lat.anticanonical_degree(n)) for n, c in rows]
        return _tsv([("class", "type", "square", "-K.N")] + body)
    lines = [f"{model.name}: {len(rows)} Hilbert basis elements of the nef cone"]
    lines += [f"  {c.tag:22s} {lat.format(n)}" for n, c in rows]
    return "\n".join(lines) + "\n"


def render_cohomology(model: SurfaceModel, d: DivisorClass, fmt: str) -> str:
    v = cohomology(model, d)
    bl = None
    if not d.is_zero() and is_nef(model, d):
        bl = str(base_locus(model, d))
    if fmt == "json":
        return dumps({"class": list(d.coeffs), "h0": v.h0, "h1": v.h1, "h2": v.h2, "chi": v.chi, "base_locus": bl})
    if fmt == "tsv":
        return _tsv([("class", "h0", "h1", "h2", "chi", "base_locus"), (str(d), v.h0, v.h1, v.h2, v.chi, bl or "")])
    text = f"{model.lattice.format(d)}: h0={v.h0} h1={v.h1} h2={v.h2} chi={v.chi}"
    if bl is not None:
        text += f" base_locus={bl}"
    return text + "\n"


def report_dict(model: SurfaceModel, report: coxdeg.Report) -> dict:
    lat = model.lattice
    return {
        "model": report.name,
        "basis": list(lat.basis_labels),
        "negative_curves": [list(c.coeffs) for c in report.negative_curves],
        "hilbert_basis": [list(c.coeffs) for c in report.hilbert_basis],
        "extra_candidates": [list(c.coeffs) for c in report.extra],
        "candidates": [
            {
                "class": list(c.cls.coeffs),
                "label": lat.format(c.cls),
                "kind": c.kind,
                "type": _type_of(model, c),
                "classification": _classification_dict(c.classification),
                "verdict": _verdict_dict(c.verdict),
            }
            for c in report.candidates
        ],
        "summary": dict(report.summary),
    }


def render_report(model: SurfaceModel, report: coxdeg.Report, fmt: str) -> str:
    lat = model.lattice
    if fmt == "dot":
        return emit_dot(model)
    if fmt == "json":
        return dumps(report_dict(model, report))
    if fmt == "tsv":
        body = [(str(c.cls), _type_of(model, c), c.verdict.status, c.verdict.describe()) for c in report.candidates]
        return _tsv([("class", "type", "status", "rule_or_witness")] + body)
    s = report.summary
    lines = [
        f"{report.name}: {s['necessary']} necessary degrees "
        f"({s['negative']} negative curves, {s['conic_bundles']} conic bundles, "
        f"{s['twisted_cubics']} twisted cubics, {s['anticanonical']} anticanonical, {s['other']} other); "
        f"{s['not_necessary']} eliminated, {s['undetermined']} undetermined"
    ]
    for c in report.candidates:
        if c.kind == "negative" or c.verdict.status != coxdeg.NOT_NECESSARY:
            lines.append(f"  {c.verdict.status:13s} {_type_of(model, c):22s} {lat.format(c.cls)}  [{c.verdict.describe()}]")
    return "\n".join(lines) + "\n"


def render_presets(fmt: str) -> str:
    rows = []
    for name in preset_names():
        m = preset(name)
        rows.append({"name": name, "kind": m.kind, "index": m.index, "rank": m.lattice.rank})
    if fmt == "json":
        return dumps({"presets": rows})
    if fmt == "tsv":
        return _tsv([("name", "kind", "index", "rank")] + [(r["name"], r["kind"], r["index"] or "", r["rank"]) for r in rows])
    return "".join(f"{r['name']:18s} {r['kind']:15s} m={r['index'] or '-'} rank={r['rank']}\n" for r in rows)


# ---------------------------------------------------------------- entry point


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "tsv", "text", "dot"), default="text")
    common.add_argument("--jobs", type=int, default=1, help="worker processes for analyze (results do not depend on it)")
    common.add_argument("--pool-depth", type=int, default=coxdeg.DEFAULT_POOL_DEPTH, help="max summands in Koszul auxiliary classes")
    common.add_argument("--seed-order", choices=("canonical",), default="canonical")

    parser = argparse.ArgumentParser(prog="coxnef", description="Negative curves, nef cones and Cox ring degrees of surfaces with -K nef.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("presets", parents=[common], help="list the built-in surfaces")
    for name, text in (
        ("curves", "negative curves"),
        ("nef", "Hilbert basis of the nef cone with classifications"),
        ("cohomology", "h0, h1, h2 of a class"),
        ("analyze", "necessity verdict for every candidate degree"),
    ):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("config", nargs="?", help="surface config JSON")
        p.add_argument("--preset", choices=preset_names())
        if name == "cohomology":
            p.add_argument("--class", dest="cls", required=True, help="comma separated coordinates")
    return parser


def _model(args) -> SurfaceModel:
    if args.preset and args.config:
        raise ModelError("give either a config file or --preset, not both")
    if args.preset:
        return preset(args.preset)
    if args.config:
        return load_config(args.config)
    raise ModelError("no surface given", ["pass a config file or --preset NAME"])


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "presets":
            sys.stdout.write(render_presets(args.format))
            return EXIT_OK
        model = _model(args)
        if args.command == "curves":
            out = render_curves(model, args.format)
        elif args.command == "nef":
            out = render_nef(model, args.format)
        elif args.command == "cohomology":
            out = render_cohomology(model, parse_class(model, args.cls), args.format)
        else:
            report = coxdeg.analyze(model, jobs=max(1, args.jobs), pool_depth=args.pool_depth)
            out = render_report(model, report, args.format)
    except ModelError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for line in exc.diagnostics:
            print(f"  {line}", file=sys.stderr)
        return EXIT_INVALID
    except (LatticeError, CoxnefError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    sys.stdout.write(out)
    return EXIT_OK


if __name__ == "__main__":
    raise SystemExit(main())
