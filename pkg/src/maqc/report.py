"""Turning computed objects into deterministic JSON and Markdown reports."""

from __future__ import annotations

import json
from typing import Any, Mapping

from .graded import CellLabel
from .hochster import MultidegreeTable
from .homology import Group, Ring
from .simplicial import ColoredComplex, bits


def block_list(L: int) -> list[int]:
    """1-based sorted block indices."""
    return [i + 1 for i in bits(L)]


def render_group(g: Group, ring: Ring) -> Any:
    if ring is Ring.Z:
        return g.to_json()
    return g.free


def monomial_text(cc: ColoredComplex, lab: CellLabel) -> str:
    t = "".join(f"t{i + 1}" for i in bits(lab.J))
    v = "v{" + ",".join(cc.names[x] for x in bits(lab.sigma)) + "}" if lab.sigma else ""
    return (t + ("·" if t and v else "") + v) or "1"


def complex_header(cc: ColoredComplex) -> dict:
    return {"vertices": list(cc.names), "partition": cc.block_vertex_names(), "k": cc.k}


def table_json(table: MultidegreeTable) -> dict:
    pieces: dict[int, dict[str, Any]] = {}
    for (q, L), g in sorted(table.entries.items(), key=lambda kv: (bin(kv[0][1]).count("1"), kv[0][1], kv[0][0])):
        pieces.setdefault(L, {})[str(q)] = render_group(g, table.ring)
    return {
        "model": table.model,
        "coeff": table.ring.value,
        "dims": list(table.dims),
        "pieces": [{"L": block_list(L), "groups": groups} for L, groups in pieces.items()],
        "totals": {str(q): render_group(g, table.ring) for q, g in table.totals().items()},
        "total_ranks": list(table.total_ranks()),
    }


def dumps(report: Mapping[str, Any]) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _cell(value: Any) -> str:
    if isinstance(value, dict):
        return str(Group(value["free"], tuple(value["torsion"])))
    return str(value)


def to_markdown(report: Mapping[str, Any]) -> str:
    cmd = report.get("command", "")
    lines = [f"# maqc {cmd}", ""]
    if "vertices" in report:
        lines.append(f"- vertices: {', '.join(report['vertices'])}")
        lines.append("- partition: " + " | ".join("{" + ", ".join(b) + "}" for b in report["partition"]))
        lines.append("")
    table = report.get("table")
    if table:
        lines.append(f"model **{table['model']}**, coefficients **{table['coeff']}**")
        lines.append("")
        lines.append("| L | degree | group |")
        lines.append("|---|---|---|")
        for piece in table["pieces"]:
            for q, g in piece["groups"].items():
                lines.append(f"| {{{', '.join(map(str, piece['L']))}}} | {q} | {_cell(g)} |")
        lines.append("")
        lines.append("| degree | total |")
        lines.append("|---|---|")
        for q, g in table["totals"].items():
            lines.append(f"| {q} | {_cell(g)} |")
        lines.append("")
    if "cross_check" in report:
        cc = report["cross_check"]
        lines.append(f"cross-check against {cc['route']}: {'agrees' if cc['agrees'] else 'DISAGREES'}")
        lines.append("")
    if "pieces" in report:
        for piece in report["pieces"]:
            faces = "; ".join("{" + ",".join(f) + "}" for f in piece["faces"])
            lines.append(f"- L = {{{', '.join(map(str, piece['L']))}}}: {faces}")
        lines.append("")
    if "classes" in report:
        lines.append("| class | degree | L | representative |")
        lines.append("|---|---|---|---|")
        for c in report["classes"]:
            lines.append(f"| {c['index']} | {c['degree']} | {{{', '.join(map(str, c['L']))}}} | {' + '.join(c['representative'])} |")
        lines.append("")
        for p in report["products"]:
            rhs = " + ".join(f"c{x}" for x in p["result"])
            lines.append(f"- c{p['a']} · c{p['b']} = {rhs}")
        lines.append("")
    if "tor" in report:
        lines.append("| L | degree | homological degree | dim |")
        lines.append("|---|---|---|---|")
        for e in report["tor"]:
            lines.append(f"| {{{', '.join(map(str, e['L']))}}} | {e['degree']} | {e['homological_degree']} | {e['dim']} |")
        lines.append("")
    if "summary" in report:
        lines.append(report["summary"])
        for f in report.get("failures", []):
            lines.append(f"- instance {f['index']}: {'; '.join(f['details'])}")
            lines.append(f"  reproducer: `{json.dumps(f['instance'], sort_keys=True)}`")
        lines.append("")
    if "stretch" in report:
        lines.append(f"levels: {report['stretch']['levels']}, top level n = {report['stretch']['n']}")
        lines.append("")
        lines.append("```json")
        lines.append(json.dumps(report["stretch"]["complex"], sort_keys=True))
        lines.append("```")
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
