"""Hyperplanes, reflections and the specialness checks.

A hyperplane is a class of undirected 1-cubes under the relation
"opposite sides of a common square"; translating across squares without
reversing gives the finer directed classes used for two-sidedness.  The
remaining pathology checks are incidence questions at vertices: two
directed dual 1-cubes starting at the same vertex either span a square
corner or witness an osculation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import __version__
from ._kernels import noncorner_scan, union_labels
from .complexes import ComplexModel, Midcube, OrientedEdge, Square
from .forests import ChildRange, TreeGroup, insert_edge, insertion_sites, internal_edges
from .params import param_hex

__all__ = [
    "HyperplanePartition",
    "OrientedClassPartition",
    "Reflection",
    "TypeLemmaReport",
    "SpecialnessReport",
    "compute_hyperplanes",
    "compute_oriented_classes",
    "verify_type_lemma",
    "reflect_order",
    "classify_reflection",
    "valid_reflections",
    "reflect_edge",
    "squares_containing",
    "check_two_sided",
    "specialness_report",
    "hyperplanes_dot",
]


# ---------------------------------------------------------------------------
# partitions

def _svec(model: ComplexModel) -> np.ndarray:
    return np.arange(model.nparams, dtype=np.int64)


def _und_ids(model: ComplexModel, fidx: int, svec: np.ndarray) -> np.ndarray:
    t = model.tables
    pid = t.pair_id[fidx]
    anchor = svec
    if t.pair_rep[pid] != fidx:
        anchor = svec ^ model.pmask(t.edge_mask[fidx])
    return pid * model.nparams + anchor


@dataclass(eq=False)
class HyperplanePartition:
    """Classes of undirected 1-cubes dual to a common hyperplane."""

    model: ComplexModel
    labels: np.ndarray  # undirected 1-cube id -> class id
    count: int
    type_of: list[int]  # class id -> type id (well defined, asserted)
    rep_und: list[int]  # class id -> least undirected 1-cube id

    def class_of(self, edge: OrientedEdge) -> int:
        return int(self.labels[self.model.und_id(edge)])

    def members(self, h: int) -> list[int]:
        return [int(i) for i in np.flatnonzero(self.labels == h)]

    def rep_text(self, h: int) -> str:
        return self.model.edge_text(self.model.und_rep_edge(self.rep_und[h]))


@dataclass(eq=False)
class OrientedClassPartition:
    """Classes of directed 1-cubes under same-direction translation."""

    model: ComplexModel
    labels: np.ndarray  # directed 1-cube id -> class id
    count: int

    def class_of(self, edge: OrientedEdge) -> int:
        return int(self.labels[self.model.oriented_id(edge)])


def _square_union_pairs(model: ComplexModel, oriented: bool):
    """Union pairs induced by all squares, vectorized over the anchor."""
    t = model.tables
    P = model.nparams
    sv = _svec(model)
    lefts: list[np.ndarray] = []
    rights: list[np.ndarray] = []
    for info in t.square_info:
        pm1, pm2 = model.pmask(info.m1), model.pmask(info.m2)
        if not oriented:
            lefts.append(_und_ids(model, info.a0, sv))
            rights.append(_und_ids(model, info.a1, sv ^ pm2))
            lefts.append(_und_ids(model, info.b0, sv))
            rights.append(_und_ids(model, info.b1, sv ^ pm1))
            continue
        # forward and reversed orientations translate separately
        lefts.append(info.a0 * P + sv)
        rights.append(info.a1 * P + (sv ^ pm2))
        lefts.append(t.partner[info.a0] * P + (sv ^ pm1))
        rights.append(t.partner[info.a1] * P + (sv ^ pm1 ^ pm2))
        lefts.append(info.b0 * P + sv)
        rights.append(info.b1 * P + (sv ^ pm1))
        lefts.append(t.partner[info.b0] * P + (sv ^ pm2))
        rights.append(t.partner[info.b1] * P + (sv ^ pm1 ^ pm2))
    if not lefts:
        empty = np.empty(0, dtype=np.int64)
        return empty, empty
    return np.concatenate(lefts), np.concatenate(rights)


def compute_hyperplanes(model: ComplexModel) -> HyperplanePartition:
    """Union over every square of its two opposite-side pairs."""
    a, b = _square_union_pairs(model, oriented=False)
    labels = union_labels(model.und_count, a, b)
    count = int(labels.max()) + 1 if len(labels) else 0
    type_of = [-1] * count
    rep_und = [-1] * count
    t = model.tables
    for und in range(model.und_count):
        h = int(labels[und])
        pid = und // model.nparams
        tid = t.edge_type_id[t.pair_rep[pid]]
        if rep_und[h] < 0:
            rep_und[h] = und
            type_of[h] = tid
        else:
            # the type of a hyperplane is the type of any dual 1-cube
            assert type_of[h] == tid, "hyperplane with mixed types"
    return HyperplanePartition(model, labels, count, type_of, rep_und)


def compute_oriented_classes(model: ComplexModel) -> OrientedClassPartition:
    a, b = _square_union_pairs(model, oriented=True)
    labels = union_labels(len(model.tables.forests[1]) * model.nparams, a, b)
    return OrientedClassPartition(model, labels, int(labels.max()) + 1)


@dataclass
class TypeLemmaReport:
    passed: bool
    hyperplane_count: int
    witness: str | None

    def to_json(self) -> dict:
        return {
            "pass": self.passed,
            "hyperplaneCount": self.hyperplane_count,
            "witness": self.witness,
        }


def verify_type_lemma(model: ComplexModel) -> TypeLemmaReport:
    """In the base space, two directed 1-cubes have the same type exactly
    when they are dual to the same hyperplane."""
    if model.is_cover:
        raise ValueError("the type lemma is a base-space statement")
    hp = compute_hyperplanes(model)
    t = model.tables
    class_of_type: dict[int, int] = {}
    seen_edge: dict[int, int] = {}
    for und in range(model.und_count):
        h = int(hp.labels[und])
        tid = t.edge_type_id[t.pair_rep[und // model.nparams]]
        if tid in class_of_type:
            if class_of_type[tid] != h:
                other = seen_edge[tid]
                witness = (
                    f"same type, different hyperplane: "
                    f"{hp.model.edge_text(model.und_rep_edge(other))} vs "
                    f"{hp.model.edge_text(model.und_rep_edge(und))}"
                )
                return TypeLemmaReport(False, hp.count, witness)
        else:
            class_of_type[tid] = h
            seen_edge[tid] = und
        if hp.type_of[h] != tid:  # pragma: no cover - guarded by assert above
            return TypeLemmaReport(False, hp.count, "mixed-type hyperplane")
    return TypeLemmaReport(True, hp.count, None)


# ---------------------------------------------------------------------------
# reflections

def reflect_order(order: tuple[int, ...], l: frozenset[int] | set[int]) -> tuple[int, ...]:
    """Reverse, in place, the run of `order` occupied by the type l.

    Requires the types to be nested or disjoint and the intersection to be
    a contiguous run (possibly empty) of the order.
    """
    lset = frozenset(l)
    oset = frozenset(order)
    inter = lset & oset
    if inter and not (lset <= oset or oset <= lset):
        raise ValueError("types are neither nested nor disjoint")
    if not inter:
        return tuple(order)
    positions = [i for i, x in enumerate(order) if x in inter]
    start, stop = positions[0], positions[-1] + 1
    if stop - start != len(positions):
        raise ValueError("type does not occupy a contiguous run of the order")
    return order[:start] + tuple(reversed(order[start:stop])) + order[stop:]


@dataclass(frozen=True)
class Reflection:
    """Classification of reflecting a directed 1-cube across a type.

    kind 'valid' carries a witness midcube; 'strongly_invalid' means the
    types are neither nested nor disjoint, so no witness can exist.
    """

    kind: str  # 'valid' | 'invalid' | 'strongly_invalid'
    midcube: Midcube | None = None

    @property
    def is_valid(self) -> bool:
        return self.kind == "valid"


def classify_reflection(
    model: ComplexModel, edge: OrientedEdge, l: frozenset[int] | set[int]
) -> Reflection:
    t = model.tables
    lset = frozenset(l)
    tid_l = t.tindex.index.get(lset)
    if tid_l is None:
        raise ValueError(f"{set(l)} is not a type over 1..{model.n}")
    order = t.edge_orders[edge.fidx]
    oset = frozenset(order)
    inter = lset & oset
    if inter and not (lset <= oset or oset <= lset):
        return Reflection("strongly_invalid")

    forest = t.forests[1][edge.fidx]
    (orig_eid,) = internal_edges(forest)
    if lset == oset:
        sites = insertion_sites(forest)
        if not sites:
            return Reflection("invalid")
        site = sites[0]
    elif lset < oset:
        positions = [i for i, x in enumerate(order) if x in lset]
        start, stop = positions[0], positions[-1] + 1
        if stop - start != len(positions):
            return Reflection("invalid")
        site = ChildRange(orig_eid, start, stop)
    elif oset < lset:
        extras = sorted(lset - oset)
        site = TreeGroup((min(oset), *extras))
    else:
        site = TreeGroup(tuple(sorted(lset)))
    sigma, _ = insert_edge(forest, site)
    square = model.square_of_subcube(
        t.index[2][sigma.serialize()], edge.param
    )
    axis = square.midcube_types.index(tid_l)
    return Reflection("valid", Midcube(square, axis))


def valid_reflections(model: ComplexModel, edge: OrientedEdge):
    """All (type, witness midcube) pairs that reflect the edge."""
    out = []
    for l in model.tindex.types:
        ref = classify_reflection(model, edge, l)
        if ref.is_valid:
            out.append((l, ref.midcube))
    return out


def reflect_edge(model: ComplexModel, edge: OrientedEdge, midcube: Midcube) -> OrientedEdge:
    """Reflect across a midcube of a square containing the edge: the dual
    direction reverses, the other direction translates; the parameter
    shifts by the midcube type either way."""
    square = midcube.square
    for direction in (0, 1):
        e0, e1 = square.sides[direction]
        if edge in (e0, e1):
            if direction == midcube.axis:
                return model.reverse(edge)
            return e1 if edge == e0 else e0
        r0, r1 = model.reverse(e0), model.reverse(e1)
        if edge in (r0, r1):
            if direction == midcube.axis:
                return model.reverse(edge)
            return r1 if edge == r0 else r0
    raise ValueError(
        f"{model.edge_text(edge)} does not bound square "
        f"(orbit {square.orbit_id}, anchor {param_hex(square.anchor)})"
    )


def squares_containing(model: ComplexModel, edge: OrientedEdge) -> list[Square]:
    """All squares having the directed 1-cube on their boundary."""
    t = model.tables
    out = []
    for oid, info in enumerate(t.square_info):
        pm1, pm2 = model.pmask(info.m1), model.pmask(info.m2)
        anchors = set()
        for slot_f, shift in (
            (info.a0, 0),
            (info.a1, pm2),
            (t.partner[info.a0], pm1),
            (t.partner[info.a1], pm1 ^ pm2),
            (info.b0, 0),
            (info.b1, pm1),
            (t.partner[info.b0], pm2),
            (t.partner[info.b1], pm1 ^ pm2),
        ):
            if slot_f == edge.fidx:
                anchors.add(edge.param ^ shift)
        for anchor in sorted(anchors):
            out.append(model.square(oid, anchor))
    return out


# ---------------------------------------------------------------------------
# specialness

def _oriented_hyp_labels(model: ComplexModel, hp: HyperplanePartition) -> np.ndarray:
    """Hyperplane label per directed 1-cube id (= label of its 1-cube)."""
    P = model.nparams
    sv = _svec(model)
    out = np.empty(len(model.tables.forests[1]) * P, dtype=np.int64)
    for fidx in range(len(model.tables.forests[1])):
        out[fidx * P : (fidx + 1) * P] = hp.labels[_und_ids(model, fidx, sv)]
    return out


def _noncorner_fidx_pairs(model: ComplexModel) -> tuple[np.ndarray, np.ndarray]:
    """Forest-index pairs sharing a start vertex but not a square corner.

    The directed 1-cubes at a vertex s are (f, s) for every one-edge forest
    f, and the corner pairs at s come from the 2-subcubes (g, s); neither
    set depends on s, so the pair list is computed once.
    """
    n1 = len(model.tables.forests[1])
    corners = {tuple(sorted(em)) for em in model.tables.emanating[2]} if model.n >= 3 else set()
    a, b = [], []
    for f1 in range(n1):
        for f2 in range(f1 + 1, n1):
            if (f1, f2) not in corners:
                a.append(f1)
                b.append(f2)
    return np.array(a, dtype=np.int64), np.array(b, dtype=np.int64)


@dataclass
class PairRecord:
    h1: int
    h2: int
    intersect: bool
    osculate: bool

    @property
    def inter_osculate(self) -> bool:
        return self.intersect and self.osculate


@dataclass
class HyperplaneRecord:
    id: int
    type_label: str
    two_sided: bool
    self_intersects: bool
    self_osculates: bool


@dataclass
class SpecialnessReport:
    variant: str
    n: int
    hyperplanes: list[HyperplaneRecord]
    pairs: list[PairRecord]
    same_type_intersections: int
    witnesses: list[str] = field(default_factory=list)

    @property
    def all_two_sided(self) -> bool:
        return all(h.two_sided for h in self.hyperplanes)

    @property
    def any_self_intersection(self) -> bool:
        return any(h.self_intersects for h in self.hyperplanes)

    @property
    def any_self_osculation(self) -> bool:
        return any(h.self_osculates for h in self.hyperplanes)

    @property
    def any_inter_osculation(self) -> bool:
        return any(p.inter_osculate for p in self.pairs)

    @property
    def passed(self) -> bool:
        return (
            self.all_two_sided
            and not self.any_self_intersection
            and not self.any_self_osculation
            and not self.any_inter_osculation
        )

    def to_json(self) -> dict:
        return {
            "tool": {"name": "forestcubes", "version": __version__},
            "variant": self.variant,
            "n": self.n,
            "hyperplanes": [
                {
                    "id": h.id,
                    "type": h.type_label,
                    "twoSided": h.two_sided,
                    "selfIntersects": h.self_intersects,
                    "selfOsculates": h.self_osculates,
                }
                for h in self.hyperplanes
            ],
            "pairs": [
                {
                    "h1": p.h1,
                    "h2": p.h2,
                    "intersect": p.intersect,
                    "osculate": p.osculate,
                    "interOsculate": p.inter_osculate,
                }
                for p in self.pairs
            ],
            "sameTypeIntersections": self.same_type_intersections,
            "pass": self.passed,
            "witnesses": self.witnesses,
        }


def check_two_sided(
    model: ComplexModel,
    hp: HyperplanePartition,
    ocp: OrientedClassPartition,
    h: int,
) -> tuple[bool, str | None]:
    """Two-sided iff no directed dual 1-cube shares its translation class
    with its own reverse."""
    for und in hp.members(h):
        edge = model.und_rep_edge(und)
        if ocp.class_of(edge) == ocp.class_of(model.reverse(edge)):
            return False, model.edge_text(edge)
    return True, None


def specialness_report(model: ComplexModel) -> SpecialnessReport:
    t = model.tables
    P = model.nparams
    hp = compute_hyperplanes(model)
    ocp = compute_oriented_classes(model)

    # two-sidedness, vectorized: compare the translation class of each
    # undirected 1-cube's two orientations
    rep_f = np.repeat(np.array(t.pair_rep, dtype=np.int64), P)
    anchor = np.tile(_svec(model), len(t.pair_rep))
    rev_f = np.array([t.partner[f] for f in rep_f.tolist()], dtype=np.int64)
    masks = np.array(
        [model.pmask(t.edge_mask[f]) for f in rep_f.tolist()], dtype=np.int64
    )
    plus = ocp.labels[rep_f * P + anchor]
    minus = ocp.labels[rev_f * P + (anchor ^ masks)]
    one_sided_und = np.flatnonzero(plus == minus)
    two_sided = [True] * hp.count
    ts_witness: dict[int, str] = {}
    for und in one_sided_und:
        h = int(hp.labels[und])
        if two_sided[h]:
            two_sided[h] = False
            ts_witness[h] = model.edge_text(model.und_rep_edge(int(und)))

    # intersections: the two midcubes of every square; keep numeric
    # first-witness data, render text only for failures
    intersect_at: dict[tuple[int, int], tuple[int, int]] = {}
    sv = _svec(model)
    for oid, info in enumerate(t.square_info):
        ha = hp.labels[_und_ids(model, info.a0, sv)]
        hb = hp.labels[_und_ids(model, info.b0, sv)]
        lo = np.minimum(ha, hb)
        hi = np.maximum(ha, hb)
        keys = lo * hp.count + hi
        uniq, idx = np.unique(keys, return_index=True)
        for key, i in zip(uniq.tolist(), idx.tolist()):
            pair = divmod(key, hp.count)
            if pair not in intersect_at:
                intersect_at[pair] = (oid, i)

    def intersect_text(pair: tuple[int, int]) -> str:
        oid, s = intersect_at[pair]
        sq = model.square(oid, s)
        return (
            f"square {sq.subcubes[0].text()} crosses types "
            f"{model.tindex.type_label(sq.midcube_types[0])},"
            f"{model.tindex.type_label(sq.midcube_types[1])}"
        )

    # osculations: directed dual 1-cubes sharing a start vertex, no corner
    h_or = _oriented_hyp_labels(model, hp)
    nc_a, nc_b = _noncorner_fidx_pairs(model)
    rows = noncorner_scan(h_or, P, nc_a, nc_b)
    osculate_at: dict[tuple[int, int], tuple[int, int, int]] = {
        (h1, h2): (s, f1, f2) for h1, h2, s, f1, f2 in rows.tolist()
    }

    def osculate_text(pair: tuple[int, int]) -> str:
        s, f1, f2 = osculate_at[pair]
        return (
            f"at vertex {param_hex(s)}: "
            f"{model.edge_text(OrientedEdge(f1, s))} and "
            f"{model.edge_text(OrientedEdge(f2, s))}"
        )

    hyperplanes = []
    witnesses: list[str] = []
    for h in range(hp.count):
        self_int = (h, h) in intersect_at
        self_osc = (h, h) in osculate_at
        rec = HyperplaneRecord(
            id=h,
            type_label=model.tindex.type_label(hp.type_of[h]),
            two_sided=two_sided[h],
            self_intersects=self_int,
            self_osculates=self_osc,
        )
        hyperplanes.append(rec)
        if not two_sided[h]:
            witnesses.append(f"one-sided hyperplane {h}: {ts_witness[h]}")
        if self_int:
            witnesses.append(
                f"self-intersection of hyperplane {h}: {intersect_text((h, h))}"
            )
        if self_osc:
            witnesses.append(
                f"self-osculation of hyperplane {h}: {osculate_text((h, h))}"
            )

    pair_keys = sorted(
        {k for k in intersect_at if k[0] != k[1]}
        | {k for k in osculate_at if k[0] != k[1]}
    )
    pairs = []
    same_type = 0
    for key in pair_keys:
        rec = PairRecord(
            h1=key[0],
            h2=key[1],
            intersect=key in intersect_at,
            osculate=key in osculate_at,
        )
        pairs.append(rec)
        if rec.intersect and hp.type_of[key[0]] == hp.type_of[key[1]]:
            same_type += 1
        if rec.inter_osculate:
            witnesses.append(
                f"inter-osculation of hyperplanes {key[0]},{key[1]}: "
                f"{intersect_text(key)}; {osculate_text(key)}"
            )

    return SpecialnessReport(
        variant=model.variant,
        n=model.n,
        hyperplanes=hyperplanes,
        pairs=pairs,
        same_type_intersections=same_type,
        witnesses=witnesses,
    )


def hyperplanes_dot(report: SpecialnessReport) -> str:
    """DOT graph: nodes are hyperplanes, solid edges intersect, dashed
    edges osculate."""
    lines = [f"graph hyperplanes_{report.variant}_{report.n} {{"]
    for h in report.hyperplanes:
        lines.append(f'  "H{h.id}" [type="{h.type_label}"];')
    for p in report.pairs:
        if p.intersect:
            lines.append(f'  "H{p.h1}" -- "H{p.h2}";')
        if p.osculate:
            lines.append(f'  "H{p.h1}" -- "H{p.h2}" [style=dashed];')
    for h in report.hyperplanes:
        if h.self_intersects:
            lines.append(f'  "H{h.id}" -- "H{h.id}";')
        if h.self_osculates:
            lines.append(f'  "H{h.id}" -- "H{h.id}" [style=dashed];')
    lines.append("}")
    return "\n".join(lines) + "\n"
