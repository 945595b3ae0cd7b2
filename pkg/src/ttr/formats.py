"""Text formats: .rep modules, module shorthands, record streams, DOT, cache."""

from __future__ import annotations

import hashlib
import json
import re
from importlib import resources
from pathlib import Path
from typing import TYPE_CHECKING, Iterable, TextIO

import numpy as np

from .algebra import BoundQuiverAlgebra, build_algebra
from .complexes import TwoTermComplex, direct_sum_complexes
from .errors import ParseError
from .modules import min_presentation
from .representation import Representation, injective, projective, simple

if TYPE_CHECKING:
    from .exchange import MutationGraph
    from .reduction import ReductionReport

_SHORTHAND = re.compile(r"^([PSI])(\d+)(\[1\])?$")
_GKEY = re.compile(r"^g:\s*(-?\d+(?:\s*,\s*-?\d+)*)$")


# -- algebras ----------------------------------------------------------------


def resolve_path(name: str) -> Path:
    """A file path, falling back to the algebras shipped with the package."""
    path = Path(name)
    if path.exists():
        return path
    data = resources.files("ttr") / "data"
    for candidate in (path.name, path.name + ".alg"):
        bundled = data / candidate
        if bundled.is_file():
            return Path(str(bundled))
    raise ParseError(f"no such file: {name}")


def load_algebra(name: str, p: int | None = None) -> BoundQuiverAlgebra:
    return build_algebra(resolve_path(name).read_text(), p)


def spec_hash(alg: BoundQuiverAlgebra) -> str:
    """Hash of the algebra text with comments and blank lines dropped."""
    lines = [ln.split("#", 1)[0].strip() for ln in (alg.text or "").splitlines()]
    canon = "\n".join(" ".join(ln.split()) for ln in lines if ln)
    return hashlib.sha256(canon.encode()).hexdigest()[:16]


# -- .rep files ------------------------------------------------------------------


def parse_rep(alg: BoundQuiverAlgebra, text: str) -> Representation:
    """Parse ``dims d1 .. dn`` followed by ``map <label>`` blocks of matrix rows.

    Arrows without a ``map`` block get the zero matrix.
    """
    lines = [ln.split("#", 1)[0].split() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines or lines[0][0] != "dims":
        raise ParseError("a module file starts with 'dims'")
    try:
        dims = [int(x) for x in lines[0][1:]]
    except ValueError as exc:
        raise ParseError(f"bad dims line: {' '.join(lines[0])}") from exc
    if len(dims) != alg.n or any(d < 0 for d in dims):
        raise ParseError(f"expected {alg.n} non-negative dimensions")
    maps: dict[str, list[list[int]]] = {}
    current = None
    for ln in lines[1:]:
        if ln[0] == "map":
            if len(ln) != 2 or ln[1] not in alg.quiver.index:
                raise ParseError(f"unknown arrow in: {' '.join(ln)}")
            current = ln[1]
            maps[current] = []
        elif current is None:
            raise ParseError("matrix row before any 'map' line")
        else:
            try:
                maps[current].append([int(x) for x in ln])
            except ValueError as exc:
                raise ParseError(f"bad matrix row: {' '.join(ln)}") from exc
    mats = []
    for a in alg.quiver.arrows:
        shape = (dims[a.target - 1], dims[a.source - 1])
        rows = maps.get(a.label)
        if not rows:
            mats.append(np.zeros(shape, dtype=np.int64))
            continue
        m = np.array(rows, dtype=np.int64)
        if m.shape != shape:
            raise ParseError(f"map {a.label} has shape {m.shape}, expected {shape}")
        mats.append(m % alg.field.p)
    rep = Representation(alg, dims, mats)
    if not rep.satisfies_relations():
        raise ParseError("the module does not satisfy the relations")
    return rep


def format_rep(m: Representation) -> str:
    out = ["dims " + " ".join(map(str, m.dims))]
    for a, mat in zip(m.alg.quiver.arrows, m.maps):
        if mat.size and mat.any():
            out.append(f"map {a.label}")
            out.extend(" ".join(map(str, row)) for row in mat.tolist())
    return "\n".join(out) + "\n"


# -- module arguments ------------------------------------------------------------


def _shorthand(alg: BoundQuiverAlgebra, token: str) -> TwoTermComplex:
    m = _SHORTHAND.match(token)
    if not m:
        raise ParseError(f"not a module shorthand: {token}")
    kind, i, shifted = m.group(1), int(m.group(2)), m.group(3)
    if not 1 <= i <= alg.n:
        raise ParseError(f"vertex {i} out of range")
    if shifted:
        if kind != "P":
            raise ParseError("only projectives can be shifted")
        return TwoTermComplex.stalk(alg, [i], -1)
    if kind == "P":
        return TwoTermComplex.stalk(alg, [i])
    return min_presentation(simple(alg, i) if kind == "S" else injective(alg, i))


def _from_g(alg: BoundQuiverAlgebra, g: tuple[int, ...], graph: "MutationGraph | None") -> TwoTermComplex:
    if len(g) != alg.n:
        raise ParseError(f"g-vector {g} needs {alg.n} entries")
    if graph is None:
        raise ParseError("a g-vector module needs an enumerated graph to look it up in")
    for node in graph.nodes.values():
        for part in node.parts:
            if part.g == g:
                return part.complex
    raise ParseError(f"no enumerated summand has g-vector {g}")


def module_complex(alg: BoundQuiverAlgebra, spec: str, graph: "MutationGraph | None" = None) -> TwoTermComplex:
    """The complex named by a module argument.

    ``spec`` is a .rep file path, a shorthand such as ``P3``, ``S2``, ``I1``
    or ``P2[1]``, a g-vector ``g:1,-1`` of an enumerated summand, or several
    of these joined by ``+``.
    """
    spec = spec.strip()
    if Path(spec).is_file():
        return min_presentation(parse_rep(alg, Path(spec).read_text()))
    parts = []
    for token in (t.strip() for t in spec.split("+")):
        gm = _GKEY.match(token)
        if gm:
            parts.append(_from_g(alg, tuple(int(x) for x in gm.group(1).split(",")), graph))
        elif _SHORTHAND.match(token):
            parts.append(_shorthand(alg, token))
        else:
            try:
                path = resolve_path(token)
            except ParseError:
                raise ParseError(f"cannot read module argument: {token}") from None
            parts.append(min_presentation(parse_rep(alg, path.read_text())))
    return direct_sum_complexes(alg, parts)


def module_of(alg: BoundQuiverAlgebra, spec: str) -> Representation:
    """The module named by a .rep path or an unshifted shorthand."""
    if Path(spec).is_file():
        return parse_rep(alg, Path(spec).read_text())
    m = _SHORTHAND.match(spec.strip())
    if m and not m.group(3):
        i = int(m.group(2))
        if not 1 <= i <= alg.n:
            raise ParseError(f"vertex {i} out of range")
        return {"P": projective, "S": simple, "I": injective}[m.group(1)](alg, i)
    return parse_rep(alg, resolve_path(spec).read_text())


# -- record stream and DOT -------------------------------------------------------


def _dump(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


def node_records(graph: "MutationGraph", extra: dict | None = None) -> Iterable[dict]:
    """One record per node, in sorted key order, with a fixed field order."""
    tops = set(graph.maximum)
    bottoms = set(graph.minimum)
    for key in graph.keys():
        node = graph.nodes[key]
        rec = {
            "key": [list(g) for g in key],
            "dims": list(node.module.dims),
            "support": sorted(node.support),
            "neighbors": [[list(g) for g in nb] for nb in sorted(set(graph.neighbors[key].values()))],
            "is_max": key in tops,
            "is_min": key in bottoms,
        }
        if extra is not None:
            for name, values in extra.items():
                rec[name] = values[key]
        yield rec


def write_records(graph: "MutationGraph", out: TextIO, extra: dict | None = None) -> None:
    for rec in node_records(graph, extra):
        out.write(_dump(rec) + "\n")


def read_records(stream: TextIO) -> list[dict]:
    return [json.loads(ln) for ln in stream if ln.strip()]


def node_label(graph: "MutationGraph", key) -> str:
    node = graph.nodes[key]
    return ",".join(map(str, node.module.dims)) + "|" + ",".join(map(str, sorted(node.support)))


def write_dot(graph: "MutationGraph", out: TextIO, name: str = "sttilt") -> None:
    keys = graph.keys()
    ids = {k: f"n{i}" for i, k in enumerate(keys)}
    out.write(f"digraph {name} {{\n")
    for k in keys:
        out.write(f'  {ids[k]} [label="{node_label(graph, k)}"];\n')
    for a, b in graph.hasse_arrows:
        out.write(f"  {ids[a]} -> {ids[b]};\n")
    out.write("}\n")


def report_lines(report: "ReductionReport") -> list[str]:
    fmt = lambda key: ";".join(",".join(map(str, g)) for g in key)  # noqa: E731
    return [
        f"interval={report.size} dimC={report.dim_c}",
        "U=" + fmt(tuple(s.g for s in report.u_parts)),
        "bongartz=" + fmt(report.bongartz_key),
        "cobongartz=" + fmt(report.cobongartz_key),
        f"dimC_endo={report.dim_c_endo} dimC_torsionfree={report.dim_c_torsionfree}",
    ]


# -- cache -------------------------------------------------------------------------


def _module_payload(m: Representation) -> dict:
    return {"dims": list(m.dims), "maps": [mat.tolist() for mat in m.maps]}


def _module_from(alg: BoundQuiverAlgebra, payload: dict) -> Representation:
    dims = payload["dims"]
    mats = [
        np.array(mat, dtype=np.int64).reshape(dims[a.target - 1], dims[a.source - 1])
        for a, mat in zip(alg.quiver.arrows, payload["maps"])
    ]
    return Representation(alg, dims, mats)


def graph_payload(graph: "MutationGraph") -> dict:
    nodes = []
    for key in graph.keys():
        node = graph.nodes[key]
        nodes.append(
            {
                "parts": [
                    {"complex": s.complex.to_payload(), "module": _module_payload(s.module), "shift": s.shift_vertex}
                    for s in node.parts
                ],
                "neighbors": {str(k): [list(g) for g in v] for k, v in sorted(graph.neighbors[key].items())},
            }
        )
    return {
        "p": graph.alg.field.p,
        "complete": graph.complete,
        "frozen": [list(g) for g in graph.frozen],
        "nodes": nodes,
        "arrows": [[[list(g) for g in a], [list(g) for g in b]] for a, b in graph.hasse_arrows],
    }


def graph_from_payload(alg: BoundQuiverAlgebra, payload: dict) -> "MutationGraph":
    from .exchange import MutationGraph, Node
    from .silting import Summand, key_of

    as_key = lambda raw: tuple(tuple(g) for g in raw)  # noqa: E731
    graph = MutationGraph(alg, complete=payload["complete"], frozen=as_key(payload["frozen"]))
    for rec in payload["nodes"]:
        parts = [
            Summand(TwoTermComplex.from_payload(alg, s["complex"]), _module_from(alg, s["module"]), s["shift"])
            for s in rec["parts"]
        ]
        key = key_of(parts)
        graph.nodes[key] = Node(key, parts)
        graph.neighbors[key] = {int(k): as_key(v) for k, v in rec["neighbors"].items()}
    graph.hasse_arrows = [(as_key(a), as_key(b)) for a, b in payload["arrows"]]
    return graph


def cache_path(cache_dir: Path | str, alg: BoundQuiverAlgebra, tag: str = "full") -> Path:
    return Path(cache_dir) / f"{spec_hash(alg)}-p{alg.field.p}-{tag}.json"


def save_graph(cache_dir: Path | str, graph: "MutationGraph", tag: str = "full") -> Path:
    path = cache_path(cache_dir, graph.alg, tag)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(graph_payload(graph), separators=(",", ":")))
    return path


def load_graph(cache_dir: Path | str, alg: BoundQuiverAlgebra, tag: str = "full") -> "MutationGraph | None":
    path = cache_path(cache_dir, alg, tag)
    if not path.is_file():
        return None
    payload = json.loads(path.read_text())
    if payload.get("p") != alg.field.p:
        return None
    return graph_from_payload(alg, payload)
