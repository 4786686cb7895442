"""Command-line front end: ``maqc <command> [options] <input.json>``.

Exit codes: 0 success, 1 bad input, 2 an internal identity failed.  Errors are
printed to stderr as one JSON line.
"""

from __future__ import annotations

import json
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import click

from . import report as rp
from .cellular import build_cochain
from .dga import build_R, cohomology_ring, tor_bidegree, tor_dimensions
from .errors import InvariantError, ValidationError
from .hochster import hochster, model_dims
from .homology import Ring
from .io import parse_input
from .simplicial import ColoredComplex, bits, restricted_faces, subsets_by_size
from .stretch import SimplicialPoset, stretch
from .verify import run_sweep

COMMANDS = ("betti", "subcomplexes", "ring", "tor", "verify", "stretch")


@dataclass(frozen=True)
class JobSpec:
    command: str
    model: str = "torus"
    dims: tuple[int, ...] | None = None
    coeff: Ring = Ring.Z2
    input_path: str | None = None
    output_format: str = "json"
    seed: int = 0
    trials: int = 50
    max_vertices: int = 6


def _load(job: JobSpec):
    if job.input_path is None:
        raise ValidationError(f"command {job.command!r} needs an input file")
    try:
        text = Path(job.input_path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise ValidationError(f"cannot read {job.input_path}: {exc}") from None
    return parse_input(text)


def _complex(job: JobSpec) -> ColoredComplex:
    obj = _load(job)
    if isinstance(obj, SimplicialPoset):
        raise ValidationError(f"command {job.command!r} needs a complex, not a poset")
    return obj


def _dims(job: JobSpec, cc: ColoredComplex) -> tuple[int, ...]:
    return model_dims(cc, job.model, job.dims)


def _betti(cc: ColoredComplex, job: JobSpec) -> dict[str, Any]:
    table = hochster(cc, job.model, job.coeff, job.dims)
    if job.model in ("real", "torus"):
        route = "cellular"
        other = build_cochain(cc, job.model, job.coeff).cohomology().groups
    else:
        route = "dga"
        other = build_R(cc, job.coeff, _dims(job, cc)).cohomology().groups
    agrees = dict(other) == table.totals()
    out = {"command": "betti", **rp.complex_header(cc), "table": rp.table_json(table),
           "cross_check": {"route": route, "agrees": agrees}}
    if not agrees:
        raise InvariantError(f"hochster and {route} totals disagree")
    return out


def _subcomplexes(cc: ColoredComplex) -> dict[str, Any]:
    pieces = []
    for L in subsets_by_size(cc.all_blocks):
        faces = sorted(restricted_faces(cc, L), key=lambda s: (bin(s).count("1"), tuple(bits(s))))
        pieces.append({"L": rp.block_list(L), "faces": [cc.vertex_names(s) for s in faces]})
    return {"command": "subcomplexes", **rp.complex_header(cc), "pieces": pieces}


def _ring(cc: ColoredComplex, job: JobSpec) -> dict[str, Any]:
    if job.coeff is not Ring.Z2:
        raise ValidationError("ring structure is computed over z2 only")
    pres = cohomology_ring(build_R(cc, Ring.Z2, _dims(job, cc)))
    failures = pres.check_axioms()
    if failures:
        raise InvariantError("ring axioms fail: " + ", ".join(failures))
    classes = [
        {"index": n, "degree": c.dim, "L": rp.block_list(c.L),
         "representative": [rp.monomial_text(cc, lab) for lab in c.rep]}
        for n, c in enumerate(pres.classes)
    ]
    products = [
        {"a": a, "b": b, "result": sorted(out)}
        for (a, b), out in sorted(pres.table.items())
        if a <= b and a != pres.unit and b != pres.unit
    ]
    return {"command": "ring", **rp.complex_header(cc), "model": job.model, "dims": list(_dims(job, cc)),
            "unit": pres.unit, "classes": classes, "products": products}


def _tor(cc: ColoredComplex, job: JobSpec) -> dict[str, Any]:
    dims = _dims(job, cc) if job.model != "real" else None
    table = tor_dimensions(cc, dims)
    entries = [
        {"L": rp.block_list(L), "degree": q, "homological_degree": tor_bidegree(q, L, table.dims), "dim": g.free}
        for (q, L), g in sorted(table.entries.items(), key=lambda kv: (bin(kv[0][1]).count("1"), kv[0][1], kv[0][0]))
    ]
    return {"command": "tor", **rp.complex_header(cc), "dims": list(table.dims), "tor": entries,
            "total_ranks": list(table.total_ranks())}


def _verify(job: JobSpec) -> dict[str, Any]:
    res = run_sweep(job.seed, job.trials, job.max_vertices)
    failures = [
        {"index": c.index, "details": c.details, "instance": c.complex.to_json()} for c in res.failures()
    ]
    return {"command": "verify", "seed": job.seed, "trials": job.trials, "max_vertices": job.max_vertices,
            "agreed": res.agreed, "total": res.total, "summary": res.summary(), "failures": failures}


def _stretch(job: JobSpec) -> dict[str, Any]:
    obj = _load(job)
    if not isinstance(obj, SimplicialPoset):
        raise ValidationError("stretch needs a poset input with an 'elements' list")
    res = stretch(obj)
    table = hochster(res.complex, "torus", job.coeff)
    return {"command": "stretch",
            "stretch": {"complex": res.complex.to_json(), "levels": dict(res.levels), "n": res.n},
            "table": rp.table_json(table)}


def run_command(job: JobSpec) -> dict[str, Any]:
    if job.command not in COMMANDS:
        raise ValidationError(f"unknown command {job.command!r}")
    if job.command == "verify":
        return _verify(job)
    if job.command == "stretch":
        return _stretch(job)
    cc = _complex(job)
    if job.command == "betti":
        return _betti(cc, job)
    if job.command == "subcomplexes":
        return _subcomplexes(cc)
    if job.command == "ring":
        return _ring(cc, job)
    return _tor(cc, job)


def _parse_dims(text: str | None) -> tuple[int, ...] | None:
    if text is None:
        return None
    try:
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError:
        raise ValidationError(f"--dims must be comma-separated integers, got {text!r}") from None


def _fail(kind: str, message: str, code: int) -> None:
    click.echo(json.dumps({"error": kind, "message": message}, ensure_ascii=False), err=True)
    sys.exit(code)


@click.command(context_settings={"help_option_names": ["-h", "--help"]})
@click.argument("command", type=click.Choice(COMMANDS))
@click.argument("input_path", required=False)
@click.option("--model", type=click.Choice(["real", "torus", "spheres"]), default="torus", show_default=True)
@click.option("--dims", default=None, help="Sphere dimensions d1,d2,... (spheres model).")
@click.option("--coeff", type=click.Choice(["z2", "q", "z"]), default="z2", show_default=True)
@click.option("--format", "output_format", type=click.Choice(["json", "md"]), default="json", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--trials", type=int, default=50, show_default=True)
@click.option("--max-vertices", type=int, default=6, show_default=True)
def main(command, input_path, model, dims, coeff, output_format, seed, trials, max_vertices) -> None:
    """Multigraded cohomology of partition quotients of moment-angle complexes."""
    try:
        job = JobSpec(command, model, _parse_dims(dims), Ring.parse(coeff), input_path,
                      output_format, seed, trials, max_vertices)
        if trials < 0 or max_vertices < 1:
            raise ValidationError("--trials must be >= 0 and --max-vertices >= 1")
        out = run_command(job)
    except ValidationError as exc:
        _fail("validation", str(exc), 1)
    except InvariantError as exc:
        _fail("invariant", str(exc), 2)
    text = rp.dumps(out) if output_format == "json" else rp.to_markdown(out)
    click.echo(text, nl=False)
    if command == "verify" and out["agreed"] != out["total"]:
        sys.exit(2)


def run(argv: list[str] | None = None) -> None:
    """Console entry point; option parsing errors also become one-line exit-1 errors."""
    try:
        main.main(args=argv, prog_name="maqc", standalone_mode=False)
    except click.UsageError as exc:
        _fail("usage", exc.format_message().replace("\n", " "), 1)
    except click.exceptions.Abort:
        _fail("usage", "aborted", 1)


if __name__ == "__main__":
    run()
