from __future__ import annotations

import json
import subprocess
import sys
from pathlib import Path

import pytest

from maqc.cli import JobSpec, run_command
from maqc.errors import ValidationError
from maqc.homology import Ring
from maqc.io import parse_input
from maqc.simplicial import ColoredComplex
from maqc.stretch import SimplicialPoset

DATA = Path(__file__).resolve().parent.parent / "data"
SQUARE = {
    "vertices": ["v1", "v2", "v3", "v4"],
    "facets": [["v1", "v2"], ["v2", "v3"], ["v3", "v4"], ["v4", "v1"]],
    "partition": [["v1", "v3"], ["v2", "v4"]],
}


def maqc(*args: str) -> subprocess.CompletedProcess:
    return subprocess.run([sys.executable, "-m", "maqc.cli", *args], capture_output=True, text=True, timeout=120)


def test_parse_input_examples():
    cc = parse_input(json.dumps(SQUARE))
    assert isinstance(cc, ColoredComplex) and cc.k == 2
    plain = {k: v for k, v in SQUARE.items() if k != "partition"}
    assert parse_input(json.dumps(plain)).k == 4
    bad = dict(SQUARE, facets=[["v1", "v9"]])
    with pytest.raises(ValidationError, match="v9"):
        parse_input(json.dumps(bad))
    with pytest.raises(ValidationError):
        parse_input("{not json")
    assert isinstance(parse_input((DATA / "bigon_poset.json").read_text()), SimplicialPoset)


def test_betti_on_pentagon():
    path = str(DATA / "pentagon.json")
    torus = run_command(JobSpec("betti", "torus", None, Ring.Z2, path))
    assert torus["table"]["total_ranks"] == [1, 0, 0, 5, 5, 0, 0, 1]
    assert torus["cross_check"] == {"route": "cellular", "agrees": True}
    real = run_command(JobSpec("betti", "real", None, Ring.Z2, path))
    assert real["table"]["total_ranks"] == [1, 10, 1]


def test_betti_spheres_uses_dga_route():
    out = run_command(JobSpec("betti", "spheres", (2, 3), Ring.Z, str(DATA / "square_two_blocks.json")))
    assert out["cross_check"] == {"route": "dga", "agrees": True}


def test_ring_lists_top_product():
    out = run_command(JobSpec("ring", "torus", None, Ring.Z2, str(DATA / "square_two_blocks.json")))
    degree = {c["index"]: c["degree"] for c in out["classes"]}
    assert any(degree[p["a"]] == 2 and degree[p["b"]] == 2 and [degree[x] for x in p["result"]] == [4]
               for p in out["products"])


def test_verify_summary():
    out = run_command(JobSpec("verify", seed=7, trials=50, max_vertices=6))
    assert out["summary"] == "150/150 route agreements"
    assert out["failures"] == []


def test_byte_identical_reports():
    args = ["betti", "--model", "torus", "--coeff", "z", str(DATA / "octagon_three_blocks.json")]
    first, second = maqc(*args), maqc(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout
    a = maqc("verify", "--seed", "3", "--trials", "5")
    b = maqc("verify", "--seed", "3", "--trials", "5")
    assert a.stdout == b.stdout


def test_json_round_trips():
    proc = maqc("tor", str(DATA / "square_two_blocks.json"))
    data = json.loads(proc.stdout)
    assert json.loads(json.dumps(data)) == data
    assert data["total_ranks"] == [1, 0, 2, 0, 1]


def test_markdown_output():
    proc = maqc("betti", "--model", "real", "--format", "md", str(DATA / "pentagon.json"))
    assert proc.returncode == 0
    assert proc.stdout.startswith("# maqc betti")
    assert "cross-check against cellular: agrees" in proc.stdout


def test_stretch_command(tmp_path):
    proc = maqc("stretch", str(DATA / "bigon_poset.json"))
    data = json.loads(proc.stdout)
    assert data["stretch"]["n"] == 1
    assert data["table"]["total_ranks"] == [1, 0, 0, 0, 1]


@pytest.mark.parametrize(
    "args, code, kind",
    [
        (["nonsense", "x.json"], 1, "usage"),
        (["betti", "--coeff", "r", "x.json"], 1, "usage"),
        (["betti"], 1, "validation"),
        (["betti", "/nonexistent/file.json"], 1, "validation"),
        (["betti", "--model", "spheres", "--dims", "1", str(DATA / "square_two_blocks.json")], 1, "validation"),
        (["betti", "--model", "spheres", "--dims", "a,b", str(DATA / "square_two_blocks.json")], 1, "validation"),
        (["ring", "--coeff", "q", str(DATA / "square_two_blocks.json")], 1, "validation"),
        (["betti", str(DATA / "bigon_poset.json")], 1, "validation"),
        (["stretch", str(DATA / "pentagon.json")], 1, "validation"),
    ],
)
def test_errors_are_single_json_lines(args, code, kind):
    proc = maqc(*args)
    assert proc.returncode == code
    lines = proc.stderr.strip().splitlines()
    assert len(lines) == 1
    assert json.loads(lines[0])["error"] == kind
    assert proc.stdout == ""


def test_tor_rejects_degenerate_partition(tmp_path):
    path = tmp_path / "degenerate.json"
    path.write_text(json.dumps(dict(SQUARE, partition=[["v1", "v2"], ["v3", "v4"]])))
    proc = maqc("tor", str(path))
    assert proc.returncode == 1
    assert "non-degenerate" in json.loads(proc.stderr)["message"]


def test_bad_vertex_named_in_error(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(dict(SQUARE, facets=[["v1", "v9"]])))
    proc = maqc("subcomplexes", str(path))
    assert proc.returncode == 1
    assert "v9" in json.loads(proc.stderr)["message"]
