"""Cube complexes glued from labelled planar forests.

A forest with k internal edges labels a k-dimensional subcube; the flip
orbit of a forest (all ways of mirroring at its edges) assembles into one
closed k-cube.  The base complex has a single vertex.  The cover keeps one
copy of every subcube per sheet parameter and reglues the inward faces with
a parameter shift, so a vertex of the cover is exactly a parameter.  Both
variants are built from the same orbit tables; the base is the cover with
the parameter group collapsed.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache

from . import __version__
from .forests import (
    PlanarForest,
    edge_type,
    enumerate_forests,
    flip,
    internal_edges,
    leaf_order,
    restrict_to_edge,
)
from .params import param_hex, type_index

__all__ = [
    "OrientedEdge",
    "SubcubeLabel",
    "Square",
    "Midcube",
    "LinkComplex",
    "NpcReport",
    "ComplexModel",
    "build_complex",
    "corner_pairs",
    "link_of",
    "check_npc",
    "model_json",
    "skeleton_dot",
]

SUPPORTED_N = (2, 3, 4)


@dataclass(frozen=True)
class OrientedEdge:
    """A directed 1-cube: a one-edge forest plus the start parameter."""

    fidx: int
    param: int


@dataclass(frozen=True)
class SubcubeLabel:
    forest: str
    param: int

    def text(self) -> str:
        return f"{self.forest}@{param_hex(self.param)}"


@dataclass(frozen=True)
class Square:
    """A closed 2-cube, resolved into its boundary and midcube data.

    sides[d] holds the two same-direction oriented boundary edges in
    direction d; midcube d is the one crossing (dual to) those edges and
    has their type.  Reflection about midcube d reverses direction-d edges
    and translates the others, shifting the parameter by the midcube type
    either way.
    """

    orbit_id: int
    anchor: int
    subcubes: tuple[SubcubeLabel, SubcubeLabel, SubcubeLabel, SubcubeLabel]
    sides: tuple[
        tuple[OrientedEdge, OrientedEdge], tuple[OrientedEdge, OrientedEdge]
    ]
    midcube_types: tuple[int, int]


@dataclass(frozen=True)
class Midcube:
    square: Square
    axis: int

    @property
    def type_id(self) -> int:
        return self.square.midcube_types[self.axis]


@dataclass(frozen=True)
class _Orbit:
    rep: int
    members: tuple[tuple[int, int], ...]  # (forest index, parameter offset)


@dataclass(frozen=True)
class _SquareInfo:
    a0: int
    a1: int
    b0: int
    b1: int
    t1: int
    t2: int
    m1: int
    m2: int


class _CubeTables:
    """Variant-independent combinatorics for one leaf count."""

    def __init__(self, n: int):
        self.n = n
        self.tindex = type_index(n)
        self.forests: list[tuple[PlanarForest, ...]] = [
            enumerate_forests(n, k) for k in range(n)
        ]
        self.serials: list[list[str]] = [
            [f.serialize() for f in fs] for fs in self.forests
        ]
        self.index: list[dict[str, int]] = [
            {s: i for i, s in enumerate(serials)} for serials in self.serials
        ]

        # directed 1-cube tables
        edges = self.forests[1]
        self.edge_orders: list[tuple[int, ...]] = []
        self.edge_type_id: list[int] = []
        self.edge_mask: list[int] = []
        self.partner: list[int] = []
        for f in edges:
            (eid,) = internal_edges(f)
            self.edge_orders.append(leaf_order(f, eid))
            tid = self.tindex.index[edge_type(f, eid)]
            self.edge_type_id.append(tid)
            self.edge_mask.append(1 << tid)
            self.partner.append(self.index[1][flip(f, eid).serialize()])
        for i, p in enumerate(self.partner):
            assert p != i and self.partner[p] == i

        # undirected 1-cube pairing; the pair representative is the member
        # with the smaller canonical text (= smaller index)
        self.pair_id: list[int] = [-1] * len(edges)
        self.pair_rep: list[int] = []
        for i in range(len(edges)):
            if self.pair_id[i] < 0:
                self.pair_id[i] = self.pair_id[self.partner[i]] = len(self.pair_rep)
                self.pair_rep.append(i)

        # flip orbits, one per closed k-cube
        self.orbits: list[list[_Orbit]] = [[] for _ in range(n)]
        self.orbit_of: list[dict[int, tuple[int, int]]] = [{} for _ in range(n)]
        self.orbits[0] = [_Orbit(0, ((0, 0),))]
        self.orbit_of[0] = {0: (0, 0)}
        for k in range(1, n):
            for fidx, rep in enumerate(self.forests[k]):
                if fidx in self.orbit_of[k]:
                    continue
                eids = internal_edges(rep)
                masks = [1 << self.tindex.index[edge_type(rep, e)] for e in eids]
                members = []
                for subset in range(1 << k):
                    g = rep
                    off = 0
                    for bit in range(k):
                        if subset >> bit & 1:
                            g = flip(g, eids[bit])
                            off ^= masks[bit]
                    members.append((self.index[k][g.serialize()], off))
                oid = len(self.orbits[k])
                assert len({m for m, _ in members}) == 1 << k, "orbit not free"
                for m, off in members:
                    self.orbit_of[k][m] = (oid, off)
                self.orbits[k].append(_Orbit(fidx, tuple(members)))

        # square boundary tables per 2-cube orbit
        self.square_info: list[_SquareInfo] = []
        if n >= 3:
            for orbit in self.orbits[2]:
                rep = self.forests[2][orbit.rep]
                e1, e2 = internal_edges(rep)
                t1 = self.tindex.index[edge_type(rep, e1)]
                t2 = self.tindex.index[edge_type(rep, e2)]
                a0 = self.index[1][restrict_to_edge(rep, e1).serialize()]
                a1 = self.index[1][restrict_to_edge(flip(rep, e2), e1).serialize()]
                b0 = self.index[1][restrict_to_edge(rep, e2).serialize()]
                b1 = self.index[1][restrict_to_edge(flip(rep, e1), e2).serialize()]
                self.square_info.append(
                    _SquareInfo(a0, a1, b0, b1, t1, t2, 1 << t1, 1 << t2)
                )

        # emanating directed 1-cubes at the outward corner of every subcube;
        # these are the link simplices
        self.emanating: list[list[tuple[int, ...]]] = [[], []]
        self.emanating[1] = [(i,) for i in range(len(edges))]
        for k in range(2, n):
            rows = []
            for f in self.forests[k]:
                rows.append(
                    tuple(
                        self.index[1][restrict_to_edge(f, e).serialize()]
                        for e in internal_edges(f)
                    )
                )
            self.emanating.append(rows)


@lru_cache(maxsize=None)
def _tables(n: int) -> _CubeTables:
    return _CubeTables(n)


class ComplexModel:
    """A built complex: either the one-vertex base space or its cover."""

    def __init__(self, n: int, variant: str):
        if n not in SUPPORTED_N:
            raise ValueError(f"supported leaf counts are {SUPPORTED_N}, got {n}")
        if variant not in ("base", "cover"):
            raise ValueError(f"variant must be 'base' or 'cover', got {variant!r}")
        self.n = n
        self.variant = variant
        self.is_cover = variant == "cover"
        self.tables = _tables(n)
        self.tindex = self.tables.tindex
        self.nparams = self.tindex.param_count if self.is_cover else 1
        # materialize the cube lists: a k-cube is (orbit id, anchor parameter)
        self.cubes: dict[int, list[tuple[int, int]]] = {}
        for k in range(n):
            self.cubes[k] = [
                (oid, s)
                for oid in range(len(self.tables.orbits[k]))
                for s in range(self.nparams)
            ]

    # -- parameters ---------------------------------------------------------

    def pmask(self, mask: int) -> int:
        """Parameter shift for a type mask; collapses to 0 in the base."""
        return mask if self.is_cover else 0

    @property
    def vertices(self) -> range:
        return range(self.nparams)

    # -- directed 1-cubes -----------------------------------------------------

    @property
    def edge_count(self) -> int:
        return len(self.tables.forests[1]) * self.nparams

    def oriented_edges(self):
        for fidx in range(len(self.tables.forests[1])):
            for s in range(self.nparams):
                yield OrientedEdge(fidx, s)

    def edge(self, forest: PlanarForest | str, param: int = 0) -> OrientedEdge:
        serial = forest if isinstance(forest, str) else forest.serialize()
        fidx = self.tables.index[1].get(serial)
        if fidx is None:
            raise ValueError(f"{serial!r} does not label a directed 1-cube")
        if not 0 <= param < self.nparams:
            raise ValueError(f"parameter {param} out of range")
        return OrientedEdge(fidx, param)

    def edge_serial(self, e: OrientedEdge) -> str:
        return self.tables.serials[1][e.fidx]

    def edge_text(self, e: OrientedEdge) -> str:
        return f"{self.edge_serial(e)}@{param_hex(e.param)}"

    def edge_type_id(self, e: OrientedEdge) -> int:
        return self.tables.edge_type_id[e.fidx]

    def reverse(self, e: OrientedEdge) -> OrientedEdge:
        return OrientedEdge(
            self.tables.partner[e.fidx],
            e.param ^ self.pmask(self.tables.edge_mask[e.fidx]),
        )

    def initial(self, e: OrientedEdge) -> int:
        return e.param

    def terminal(self, e: OrientedEdge) -> int:
        return e.param ^ self.pmask(self.tables.edge_mask[e.fidx])

    def oriented_id(self, e: OrientedEdge) -> int:
        return e.fidx * self.nparams + e.param

    @property
    def und_count(self) -> int:
        return len(self.tables.pair_rep) * self.nparams

    def und_id(self, e: OrientedEdge) -> int:
        """Index of the undirected 1-cube beneath a directed one."""
        t = self.tables
        if t.pair_rep[t.pair_id[e.fidx]] == e.fidx:
            anchor = e.param
        else:
            anchor = e.param ^ self.pmask(t.edge_mask[e.fidx])
        return t.pair_id[e.fidx] * self.nparams + anchor

    def und_rep_edge(self, und: int) -> OrientedEdge:
        pid, anchor = divmod(und, self.nparams)
        return OrientedEdge(self.tables.pair_rep[pid], anchor)

    # -- squares --------------------------------------------------------------

    @property
    def square_count(self) -> int:
        return len(self.tables.orbits[2]) * self.nparams if self.n >= 3 else 0

    def squares(self):
        for oid in range(len(self.tables.orbits[2]) if self.n >= 3 else 0):
            for s in range(self.nparams):
                yield self.square(oid, s)

    def square(self, orbit_id: int, anchor: int) -> Square:
        info = self.tables.square_info[orbit_id]
        orbit = self.tables.orbits[2][orbit_id]
        s = anchor
        pm1, pm2 = self.pmask(info.m1), self.pmask(info.m2)
        subcubes = tuple(
            SubcubeLabel(self.tables.serials[2][m], s ^ self.pmask(off))
            for m, off in orbit.members
        )
        sides = (
            (OrientedEdge(info.a0, s), OrientedEdge(info.a1, s ^ pm2)),
            (OrientedEdge(info.b0, s), OrientedEdge(info.b1, s ^ pm1)),
        )
        return Square(orbit_id, anchor, subcubes, sides, (info.t1, info.t2))

    def square_of_subcube(self, f2idx: int, param: int) -> Square:
        """The closed square containing the 2-subcube (forest, parameter)."""
        oid, off = self.tables.orbit_of[2][f2idx]
        return self.square(oid, param ^ self.pmask(off))

    # -- census and reports -----------------------------------------------------

    def census(self) -> dict:
        return {
            "vertices": self.nparams,
            "cubes": {k: len(self.cubes[k]) for k in range(self.n)},
            "subcubes": {
                k: len(self.tables.forests[k]) * self.nparams for k in range(self.n)
            },
        }

    def describe(self) -> str:
        c = self.census()
        lines = [
            f"complex: {self.variant} n={self.n}",
            f"vertices: {c['vertices']}",
        ]
        for k in range(1, self.n):
            lines.append(f"{k}-cubes: {c['cubes'][k]} ({c['subcubes'][k]} subcubes)")
        return "\n".join(lines)


def build_complex(n: int, variant: str = "base") -> ComplexModel:
    """Build the complex for n leaves; variant 'base' or 'cover'."""
    return ComplexModel(n, variant)


# ---------------------------------------------------------------------------
# corners and links

def corner_pairs(model: ComplexModel) -> list[tuple[int, tuple[OrientedEdge, OrientedEdge]]]:
    """One entry per 2-subcube: the vertex at its outward corner and the
    unordered pair of directed 1-cubes emanating there."""
    out = []
    if model.n < 3:
        return out
    for fidx, (ea, eb) in enumerate(model.tables.emanating[2]):
        for s in range(model.nparams):
            out.append((s, (OrientedEdge(ea, s), OrientedEdge(eb, s))))
    return out


@dataclass(frozen=True)
class LinkComplex:
    """The link of a vertex: directed 1-cubes starting there span a simplex
    when they emanate from a common subcube corner."""

    vertex: int
    vertex_fidx: tuple[int, ...]
    simplices: dict[int, tuple[tuple[int, ...], ...]]  # dim -> vertex tuples

    def counts(self) -> dict[int, int]:
        out = {0: len(self.vertex_fidx)}
        out.update({d: len(sx) for d, sx in self.simplices.items()})
        return out


def link_of(model: ComplexModel, v: int) -> LinkComplex:
    if not 0 <= v < model.nparams:
        raise ValueError(f"vertex {v} not in the model")
    simplices: dict[int, tuple[tuple[int, ...], ...]] = {}
    for k in range(2, model.n):
        simplices[k - 1] = tuple(
            tuple(sorted(row)) for row in model.tables.emanating[k]
        )
    return LinkComplex(
        vertex=v,
        vertex_fidx=tuple(range(len(model.tables.forests[1]))),
        simplices=simplices,
    )


@dataclass(frozen=True)
class NpcReport:
    simplicial: bool
    flag: bool
    witness: str | None

    @property
    def passed(self) -> bool:
        return self.simplicial and self.flag

    def to_json(self) -> dict:
        return {
            "simplicial": self.simplicial,
            "flag": self.flag,
            "pass": self.passed,
            "witness": self.witness,
        }


def _link_failure(model: ComplexModel, link: LinkComplex) -> NpcReport | None:
    def name(fidx: int) -> str:
        return f"{model.tables.serials[1][fidx]}@{param_hex(link.vertex)}"

    # simplicial: distinct vertices, no repeated simplex, faces closed
    seen_by_dim: dict[int, set] = {}
    for dim in sorted(link.simplices):
        seen = set()
        for simplex in link.simplices[dim]:
            if len(set(simplex)) != len(simplex):
                return NpcReport(
                    False, True, f"degenerate simplex {[name(i) for i in simplex]}"
                )
            if simplex in seen:
                return NpcReport(
                    False, True, f"doubled simplex {[name(i) for i in simplex]}"
                )
            seen.add(simplex)
        seen_by_dim[dim] = seen
    for dim in sorted(link.simplices):
        if dim < 2:
            continue
        for simplex in link.simplices[dim]:
            for drop in range(len(simplex)):
                face = simplex[:drop] + simplex[drop + 1 :]
                if face not in seen_by_dim[dim - 1]:
                    return NpcReport(
                        False, True, f"open face {[name(i) for i in face]}"
                    )

    # flag: every clique spans a simplex
    adj: dict[int, set[int]] = {u: set() for u in link.vertex_fidx}
    for u, w in link.simplices.get(1, ()):
        adj[u].add(w)
        adj[w].add(u)
    max_dim = max(seen_by_dim, default=0)

    def extend(clique: list[int], candidates: list[int]) -> NpcReport | None:
        for i, u in enumerate(candidates):
            clique.append(u)
            if len(clique) >= 3:
                dim = len(clique) - 1
                key = tuple(sorted(clique))
                if dim > max_dim or key not in seen_by_dim.get(dim, ()):
                    return NpcReport(
                        True, False, f"unspanned clique {[name(i) for i in key]}"
                    )
            rest = [w for w in candidates[i + 1 :] if w in adj[u]]
            fail = extend(clique, rest)
            if fail is not None:
                return fail
            clique.pop()
        return None

    order = sorted(adj)
    for u in order:
        fail = extend([u], [w for w in order if w > u and w in adj[u]])
        if fail is not None:
            return fail
    return None


def check_npc(model: ComplexModel) -> NpcReport:
    """Links must be flag simplicial complexes, at every vertex."""
    for v in model.vertices:
        fail = _link_failure(model, link_of(model, v))
        if fail is not None:
            return fail
    return NpcReport(True, True, None)


# ---------------------------------------------------------------------------
# exports

def _tool_header(model: ComplexModel) -> dict:
    return {
        "tool": {"name": "forestcubes", "version": __version__},
        "n": model.n,
        "variant": model.variant,
        "typeOrder": model.tindex.labels(),
    }


def model_json(model: ComplexModel) -> dict:
    t = model.tables
    edges = []
    for fidx in range(len(t.forests[1])):
        for s in range(model.nparams):
            rev = model.reverse(OrientedEdge(fidx, s))
            edges.append(
                {
                    "forest": t.serials[1][fidx],
                    "param": param_hex(s),
                    "reverse": model.oriented_id(rev),
                }
            )
    squares = []
    for sq in model.squares():
        squares.append(
            [{"forest": c.forest, "param": param_hex(c.param)} for c in sq.subcubes]
        )
    cubes = {}
    for k in range(model.n):
        rows = []
        for oid, anchor in model.cubes[k]:
            orbit = t.orbits[k][oid]
            rows.append(
                [
                    {
                        "forest": t.serials[k][m],
                        "param": param_hex(anchor ^ model.pmask(off)),
                    }
                    for m, off in orbit.members
                ]
            )
        cubes[str(k)] = rows
    out = _tool_header(model)
    out.update(
        {
            "vertices": [param_hex(s) for s in model.vertices],
            "edges": edges,
            "squares": squares,
            "cubes": cubes,
        }
    )
    return out


def skeleton_dot(model: ComplexModel) -> str:
    """DOT graph of the 1-skeleton; edge attribute `type` is the label set."""
    lines = [f"graph skeleton_{model.variant}_{model.n} {{"]
    for v in model.vertices:
        lines.append(f'  "{param_hex(v)}";')
    for pid in range(len(model.tables.pair_rep)):
        fidx = model.tables.pair_rep[pid]
        for s in range(model.nparams):
            e = OrientedEdge(fidx, s)
            tid = model.tables.edge_type_id[fidx]
            lines.append(
                f'  "{param_hex(model.initial(e))}" -- '
                f'"{param_hex(model.terminal(e))}" '
                f'[type="{model.tindex.type_label(tid)}"];'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=2) + "\n"
