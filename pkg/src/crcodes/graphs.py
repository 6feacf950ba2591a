"""Coset graphs: construction, distance regularity, folding, covers.

Vertices are packed syndromes and adjacency is syndrome XOR with the unit
syndromes, so graphs are built without touching any codeword.  Distances
come from a frontier BFS ran from every base vertex at once (boolean
reachability through a float matmul); the distance matrix then drives the
distance-regularity counts, the antipodal fibre partition, folding, and
the cover checks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .codes import LinearCode
from .regularity import CosetTable, IntersectionArray, enumerate_cosets

__all__ = [
    "CosetGraph",
    "FoldedGraph",
    "DRReport",
    "AntipodalReport",
    "CoverReport",
    "CoverArrayReport",
    "ZeroAppendReport",
    "build_coset_graph",
    "all_distances",
    "check_distance_regular",
    "check_antipodal",
    "fold",
    "verify_cover",
    "verify_antipodal_cover_array",
    "check_zero_append_subgraph",
    "export_graph",
    "parse_graph6",
]

_VERTEX_CAP = 1 << 14


@dataclass(frozen=True)
class CosetGraph:
    vertex_count: int
    valency: int
    adjacency: np.ndarray  # vertex_count x valency, rows sorted
    generator_syndromes: Tuple[int, ...]

    def neighbor_rows(self) -> Sequence[Sequence[int]]:
        return self.adjacency


@dataclass(frozen=True)
class FoldedGraph:
    vertex_count: int
    adjacency: Tuple[Tuple[int, ...], ...]
    fibre_size: int

    def neighbor_rows(self) -> Sequence[Sequence[int]]:
        return self.adjacency

    @property
    def is_complete(self) -> bool:
        return all(
            len(row) == self.vertex_count - 1 for row in self.adjacency
        )


def build_coset_graph(code: LinearCode) -> CosetGraph:
    """Graph on all cosets, adjacent when syndromes differ by a unit."""
    size = 1 << code.syndrome_width
    if size > _VERTEX_CAP:
        raise ValueError("coset graph capped at 2^14 vertices")
    units = np.array(code.unit_syndromes, dtype=np.int64)
    if len(set(code.unit_syndromes)) != len(code.unit_syndromes) or (units == 0).any():
        raise ValueError("unit syndromes must be nonzero and distinct")
    verts = np.arange(size, dtype=np.int64)
    adj = np.sort(verts[:, None] ^ units[None, :], axis=1)
    return CosetGraph(size, len(code.unit_syndromes), adj, tuple(code.unit_syndromes))


def all_distances(graph) -> np.ndarray:
    """Pairwise distance matrix; -1 marks unreachable pairs."""
    v = graph.vertex_count
    a = np.zeros((v, v), dtype=np.float32)
    for x, row in enumerate(graph.neighbor_rows()):
        a[x, list(row)] = 1.0
    dist = np.full((v, v), -1, dtype=np.int16)
    np.fill_diagonal(dist, 0)
    reached = np.eye(v, dtype=bool)
    frontier = np.eye(v, dtype=np.float32)
    d = 0
    while True:
        new = ((frontier @ a) > 0) & ~reached
        if not new.any():
            return dist
        d += 1
        dist[new] = d
        reached |= new
        frontier = new.astype(np.float32)


@dataclass(frozen=True)
class DRReport:
    connected: bool
    distance_regular: bool
    array: Optional[IntersectionArray]
    diameter: int
    witness: Optional[Dict[str, int]] = None


def check_distance_regular(graph, dist: Optional[np.ndarray] = None) -> DRReport:
    """Constant down/up neighbor counts per distance level, from every base."""
    if dist is None:
        dist = all_distances(graph)
    if (dist < 0).any():
        bad = int(np.argwhere(dist < 0)[0][1])
        return DRReport(False, False, None, -1, {"unreachable_vertex": bad})
    diameter = int(dist.max())
    rows = graph.neighbor_rows()
    adj = np.asarray(rows) if isinstance(rows, np.ndarray) else None
    c_vals: List[Optional[int]] = [None] * (diameter + 1)
    b_vals: List[Optional[int]] = [None] * (diameter + 1)
    for base in range(graph.vertex_count):
        drow = dist[base]
        if adj is not None:
            levels = drow[adj]
            down = (levels == drow[:, None] - 1).sum(axis=1)
            up = (levels == drow[:, None] + 1).sum(axis=1)
        else:
            down = np.array(
                [sum(1 for t in rows[s] if drow[t] == drow[s] - 1)
                 for s in range(graph.vertex_count)]
            )
            up = np.array(
                [sum(1 for t in rows[s] if drow[t] == drow[s] + 1)
                 for s in range(graph.vertex_count)]
            )
        for l in range(diameter + 1):
            sel = drow == l
            if not sel.any():
                continue
            cv, bv = down[sel], up[sel]
            if c_vals[l] is None:
                c_vals[l], b_vals[l] = int(cv[0]), int(bv[0])
            if (cv != c_vals[l]).any() or (bv != b_vals[l]).any():
                off = int(np.argwhere(sel)[((cv != c_vals[l]) | (bv != b_vals[l])).argmax()][0])
                return DRReport(
                    True, False, None, diameter,
                    {"base": base, "vertex": off, "level": l},
                )
    array = IntersectionArray(
        b=tuple(b_vals[l] for l in range(diameter)),  # type: ignore[misc]
        c=tuple(c_vals[l] for l in range(1, diameter + 1)),  # type: ignore[misc]
    )
    return DRReport(True, True, array, diameter)


@dataclass(frozen=True)
class AntipodalReport:
    applicable: bool
    antipodal: bool
    fibre_size: int
    fibres: Optional[Tuple[Tuple[int, ...], ...]]
    witness: Optional[Dict[str, int]] = None


def check_antipodal(graph, dist: Optional[np.ndarray] = None) -> AntipodalReport:
    """Is being at maximum distance (or equal) an equivalence relation with
    equal class sizes?  Diameter below 3 is reported not applicable."""
    if dist is None:
        dist = all_distances(graph)
    diameter = int(dist.max())
    if diameter < 3:
        return AntipodalReport(False, False, 0, None)
    at_max = dist == diameter
    fibres: List[Tuple[int, ...]] = []
    owner = [-1] * graph.vertex_count
    for v in range(graph.vertex_count):
        if owner[v] >= 0:
            continue
        block = (v,) + tuple(int(w) for w in np.flatnonzero(at_max[v]))
        for x in block:
            for y in block:
                if x != y and dist[x, y] != diameter:
                    return AntipodalReport(
                        True, False, 0, None, {"u": x, "w": y, "d": int(dist[x, y])}
                    )
            if owner[x] >= 0:
                return AntipodalReport(True, False, 0, None, {"u": x, "w": v, "d": -1})
            owner[x] = len(fibres)
        fibres.append(block)
    sizes = {len(b) for b in fibres}
    if len(sizes) != 1:
        return AntipodalReport(True, False, 0, None, {"u": -1, "w": -1, "d": -1})
    return AntipodalReport(True, True, sizes.pop(), tuple(fibres))


def fold(graph, fibres: Sequence[Sequence[int]]) -> FoldedGraph:
    """Quotient on the fibre partition; blocks adjacent when any edge crosses."""
    block_of = [-1] * graph.vertex_count
    for i, block in enumerate(fibres):
        for v in block:
            block_of[v] = i
    if min(block_of) < 0:
        raise ValueError("fibres do not cover the vertex set")
    nbr: List[set] = [set() for _ in fibres]
    for v, row in enumerate(graph.neighbor_rows()):
        bv = block_of[v]
        for w in row:
            bw = block_of[w]
            if bw != bv:
                nbr[bv].add(bw)
    return FoldedGraph(
        len(fibres),
        tuple(tuple(sorted(s)) for s in nbr),
        len(fibres[0]),
    )


@dataclass(frozen=True)
class CoverReport:
    fibre_size: int
    constant_fibres: bool
    locally_bijective: bool
    projection: Tuple[int, ...]
    witness: Optional[int] = None

    @property
    def verdict(self) -> bool:
        return self.constant_fibres and self.locally_bijective


def verify_cover(
    fine_graph: CosetGraph,
    coarse_graph: CosetGraph,
    fine_code: LinearCode,
    coarse_code: LinearCode,
    fine_table: Optional[CosetTable] = None,
) -> CoverReport:
    """Project fine cosets onto the coarse code's cosets and verify the
    projection is a covering map: constant fibres and a bijection between
    each vertex's edges and its image's edges."""
    for row in fine_code.generator_rows:
        if not coarse_code.contains(row):
            raise ValueError("fine code is not contained in the coarse code")
    if fine_table is None:
        fine_table = enumerate_cosets(fine_code, with_distributions=False)
    proj = tuple(
        coarse_code.syndrome(fine_table.leader_of(s))
        for s in range(fine_graph.vertex_count)
    )
    counts: Dict[int, int] = {}
    for image in proj:
        counts[image] = counts.get(image, 0) + 1
    expected = fine_graph.vertex_count // coarse_graph.vertex_count
    constant = (
        len(counts) == coarse_graph.vertex_count
        and set(counts.values()) == {expected}
    )
    proj_arr = np.array(proj, dtype=np.int64)
    images = np.sort(proj_arr[fine_graph.adjacency], axis=1)
    targets = coarse_graph.adjacency[proj_arr]
    ok_rows = (images == targets).all(axis=1)
    witness = None if ok_rows.all() else int(np.flatnonzero(~ok_rows)[0])
    return CoverReport(expected, constant, witness is None, proj, witness)


@dataclass(frozen=True)
class CoverArrayReport:
    applicable: bool
    matches: Optional[bool]
    array: Optional[IntersectionArray]
    folded_vertices: int
    fibre_size: int


def verify_antipodal_cover_array(graph, dist: Optional[np.ndarray] = None) -> CoverArrayReport:
    """For a diameter-3 antipodal cover of a complete graph, the array must
    be (N-1, (r-1)c2, 1; 1, c2, N-1) with the graph's own c2."""
    if dist is None:
        dist = all_distances(graph)
    dr = check_distance_regular(graph, dist)
    if not dr.distance_regular or dr.diameter != 3:
        return CoverArrayReport(False, None, dr.array, 0, 0)
    anti = check_antipodal(graph, dist)
    if not anti.antipodal:
        return CoverArrayReport(False, None, dr.array, 0, 0)
    folded = fold(graph, anti.fibres)
    if not folded.is_complete:
        return CoverArrayReport(False, None, dr.array, folded.vertex_count, anti.fibre_size)
    n_folded = folded.vertex_count
    r = anti.fibre_size
    c2 = dr.array.c[1]
    expected = IntersectionArray(
        b=(n_folded - 1, (r - 1) * c2, 1), c=(1, c2, n_folded - 1)
    )
    return CoverArrayReport(
        True, dr.array == expected, dr.array, n_folded, r
    )


@dataclass(frozen=True)
class ZeroAppendReport:
    injective: bool
    edges_total: int
    edges_preserved: int
    extra_edges: int
    induced_subgraph: bool


def check_zero_append_subgraph(
    small_code: LinearCode,
    big_code: LinearCode,
    small_graph: Optional[CosetGraph] = None,
    big_graph: Optional[CosetGraph] = None,
) -> ZeroAppendReport:
    """Embed the small coset space into the big one by writing each
    projection bit at the position of its matching functional and zero at
    the new ones, then test whether the image is an induced subgraph.

    The verdict is computed, not presumed; for this family the extra
    functional bit kills the edges whose position constant it detects, so
    the check reports a negative result.
    """
    if small_code.ctx is not big_code.ctx and small_code.ctx.m != big_code.ctx.m:
        raise ValueError("codes live over different fields")
    small_masks = list(small_code.proj_masks)
    big_masks = list(big_code.proj_masks)
    try:
        slot = [big_masks.index(mask) for mask in small_masks]
    except ValueError as exc:
        raise ValueError("projection functionals do not align") from exc
    m = small_code.ctx.m

    def embed(s: int) -> int:
        out = s & ((1 << m) - 1)
        for k, j in enumerate(slot):
            if s >> (m + k) & 1:
                out |= 1 << (m + j)
        return out

    if small_graph is None:
        small_graph = build_coset_graph(small_code)
    if big_graph is None:
        big_graph = build_coset_graph(big_code)
    image = [embed(s) for s in range(small_graph.vertex_count)]
    injective = len(set(image)) == len(image)
    image_set = set(image)
    big_adj = {v: set(int(w) for w in big_graph.adjacency[v]) for v in image}
    total = preserved = 0
    for s in range(small_graph.vertex_count):
        for t in small_graph.adjacency[s]:
            if s < t:
                total += 1
                if image[t] in big_adj[image[s]]:
                    preserved += 1
    extra = 0
    for v in image:
        extra += sum(1 for w in big_adj[v] if w in image_set)
    extra = extra // 2 - preserved
    return ZeroAppendReport(
        injective, total, preserved, extra,
        injective and preserved == total and extra == 0,
    )


def _graph6_bytes(graph) -> bytes:
    v = graph.vertex_count
    if v > 258047:
        raise ValueError("vertex count beyond supported graph6 range")
    out = bytearray()
    if v <= 62:
        out.append(v + 63)
    else:
        out.append(126)
        out.append(((v >> 12) & 63) + 63)
        out.append(((v >> 6) & 63) + 63)
        out.append((v & 63) + 63)
    rows = [set(map(int, row)) for row in graph.neighbor_rows()]
    bits = []
    for j in range(1, v):
        for i in range(j):
            bits.append(1 if j in rows[i] else 0)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        chunk = 0
        for bit in bits[k : k + 6]:
            chunk = chunk << 1 | bit
        out.append(chunk + 63)
    return bytes(out)


def parse_graph6(data: bytes) -> List[Tuple[int, ...]]:
    """Adjacency lists from a graph6 byte string."""
    data = data.strip()
    pos = 0
    if data[pos] == 126:
        v = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        pos = 4
    else:
        v = data[pos] - 63
        pos = 1
    bits = []
    for byte in data[pos:]:
        val = byte - 63
        bits.extend((val >> k) & 1 for k in range(5, -1, -1))
    nbr: List[set] = [set() for _ in range(v)]
    idx = 0
    for j in range(1, v):
        for i in range(j):
            if bits[idx]:
                nbr[i].add(j)
                nbr[j].add(i)
            idx += 1
    return [tuple(sorted(s)) for s in nbr]


def export_graph(graph, fmt: str) -> bytes:
    """Serialize with vertices in syndrome order: graph6, edge-list, json."""
    if fmt == "graph6":
        return _graph6_bytes(graph)
    if fmt == "edge-list":
        lines = []
        for v, row in enumerate(graph.neighbor_rows()):
            for w in row:
                if v < w:
                    lines.append(f"{v} {int(w)}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        payload = {
            "vertices": graph.vertex_count,
            "adjacency": [[int(w) for w in row] for row in graph.neighbor_rows()],
        }
        return (json.dumps(payload, indent=1) + "\n").encode()
    raise ValueError(f"unsupported export format: {fmt}")
