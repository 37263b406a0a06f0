"""The finite cover, sheet-parameter words, and group presentations.

Vertices of the cover are sheet parameters; crossing a directed 1-cube of
type l moves the parameter by the characteristic vector of l.  A word in
the loop generators of the one-vertex space therefore lifts to an edge
path whose endpoint is the start plus the sum of its letter types, and the
loops that stay closed in the cover are exactly the words with vanishing
parameter image.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from functools import lru_cache

from . import __version__
from .complexes import ComplexModel, OrientedEdge, build_complex, link_of
from .forests import Internal, Leaf, PlanarForest, canonicalize, delete_edge, internal_edges
from .params import param_hex, type_index

__all__ = [
    "covering_image",
    "CoverReport",
    "verify_covering",
    "parse_word",
    "word_text",
    "word_image",
    "LiftResult",
    "lift_word",
    "Presentation",
    "presentation",
    "perm_image",
    "RelatorReport",
    "verify_relators",
    "square_boundary_word",
    "cyclic_class",
]

Letter = tuple[int, ...]  # an ordered subset of 1..n, length >= 2


# ---------------------------------------------------------------------------
# covering map

def covering_image(cell):
    """Drop the sheet parameter: vertices go to 0, labelled cells keep
    their forest."""
    if isinstance(cell, int):
        return 0
    if isinstance(cell, OrientedEdge):
        return OrientedEdge(cell.fidx, 0)
    if isinstance(cell, tuple) and len(cell) == 2:
        return (cell[0], 0)
    raise TypeError(f"cannot project {cell!r}")


@dataclass
class CoverReport:
    n: int
    degree_expected: int
    degree_actual: int
    cells_ok: bool
    links_checked: int
    links_ok: bool
    witness: str | None = None

    @property
    def degree_ok(self) -> bool:
        return self.degree_expected == self.degree_actual

    @property
    def passed(self) -> bool:
        return self.degree_ok and self.cells_ok and self.links_ok

    def to_json(self) -> dict:
        return {
            "tool": {"name": "forestcubes", "version": __version__},
            "n": self.n,
            "degreeExpected": self.degree_expected,
            "degreeActual": self.degree_actual,
            "degreeOk": self.degree_ok,
            "cellsOk": self.cells_ok,
            "linksChecked": self.links_checked,
            "linksOk": self.links_ok,
            "pass": self.passed,
            "witness": self.witness,
        }


def verify_covering(n: int) -> CoverReport:
    """Check the covering: degree, cube-to-cube projection respecting
    faces, and a link isomorphism at every cover vertex."""
    base = build_complex(n, "base")
    cov = build_complex(n, "cover")
    t = cov.tables
    expected = 1 << (2**n - n - 1)
    actual = len(cov.vertices)

    # projection is cubical: every closed cover cube projects bijectively
    # onto a closed base cube (its subcube labels are pairwise distinct
    # forests), and every outward face of a subcube is again a cell, at
    # the same parameter, so faces commute with dropping the parameter
    cells_ok = True
    witness = None
    for k in range(1, n):
        for oid, orbit in enumerate(t.orbits[k]):
            serials = {t.serials[k][m] for m, _ in orbit.members}
            if len(serials) != 1 << k:
                cells_ok, witness = False, f"orbit {k}.{oid} not embedded"
                break
            projected = {(t.serials[k][m], 0) for m, _ in orbit.members}
            base_cube = {
                (t.serials[k][m], 0) for m, _ in base.tables.orbits[k][oid].members
            }
            if projected != base_cube:
                cells_ok, witness = False, f"orbit {k}.{oid} projects badly"
                break
            for m, _off in orbit.members:
                forest = t.forests[k][m]
                for e in internal_edges(forest):
                    face = delete_edge(forest, e)
                    if face.serialize() not in t.index[k - 1]:
                        cells_ok = False
                        witness = f"face {face.serialize()} is not a cell"
                        break
                if not cells_ok:
                    break
            if not cells_ok:
                break
        if not cells_ok:
            break

    # link isomorphism at every cover vertex, via the parameter-forgetting
    # bijection on directed 1-cubes
    base_link = link_of(base, 0)
    base_vertices = {base.edge_serial(OrientedEdge(f, 0)) for f in base_link.vertex_fidx}
    links_ok = True
    links_checked = 0
    for v in cov.vertices:
        lk = link_of(cov, v)
        links_checked += 1
        vertices = {cov.edge_serial(OrientedEdge(f, v)) for f in lk.vertex_fidx}
        if vertices != base_vertices:
            links_ok, witness = False, f"link vertex sets differ at {param_hex(v)}"
            break
        for dim in set(lk.simplices) | set(base_link.simplices):
            got = {
                tuple(t.serials[1][i] for i in sx)
                for sx in lk.simplices.get(dim, ())
            }
            want = {
                tuple(base.tables.serials[1][i] for i in sx)
                for sx in base_link.simplices.get(dim, ())
            }
            if got != want:
                links_ok = False
                witness = f"link simplices differ at {param_hex(v)} dim {dim}"
                break
        if not links_ok:
            break

    return CoverReport(n, expected, actual, cells_ok, links_checked, links_ok, witness)


# ---------------------------------------------------------------------------
# words in the loop generators

def parse_word(text: str) -> list[Letter]:
    """Parse a word like ``s(2,1)·s(3,1,2)``; ``.`` also separates letters."""
    word: list[Letter] = []
    stripped = text.strip()
    if not stripped:
        return word
    for part in stripped.replace("·", ".").split("."):
        part = part.strip()
        if not (part.startswith("s(") and part.endswith(")")):
            raise ValueError(f"bad letter {part!r}, expected s(a,b,...)")
        items = part[2:-1].split(",")
        letter = tuple(int(x) for x in items)
        if len(letter) < 2 or len(set(letter)) != len(letter):
            raise ValueError(f"letter {part!r} must list >= 2 distinct labels")
        word.append(letter)
    return word


def word_text(word: list[Letter]) -> str:
    return "·".join("s(" + ",".join(str(x) for x in a) + ")" for a in word)


def word_image(n: int, word: list[Letter]) -> int:
    """Sum of the characteristic vectors of the letter types."""
    ti = type_index(n)
    out = 0
    for letter in word:
        out ^= ti.mask(frozenset(letter))
    return out


@dataclass
class LiftResult:
    start: int
    end: int
    closed: bool
    path: list[OrientedEdge] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "start": param_hex(self.start),
            "end": param_hex(self.end),
            "closed": self.closed,
            "length": len(self.path),
        }


def _letter_edge(model: ComplexModel, letter: Letter, param: int) -> OrientedEdge:
    main = Internal(tuple(Leaf(x) for x in letter), 0)
    rest = tuple(Leaf(x) for x in sorted(set(range(1, model.n + 1)) - set(letter)))
    forest = canonicalize(PlanarForest((main, *rest), model.n))
    return model.edge(forest, param)


@lru_cache(maxsize=None)
def _cover_model(n: int) -> ComplexModel:
    return build_complex(n, "cover")


def lift_word(n: int, word: list[Letter] | tuple[Letter, ...], start: int = 0) -> LiftResult:
    """Trace the edge path of a word through the cover from a start
    parameter; closed iff the word's parameter image vanishes."""
    model = _cover_model(n)
    for letter in word:
        if any(not 1 <= x <= n for x in letter):
            raise ValueError(f"letter {letter} out of range for n={n}")
    if not 0 <= start < model.nparams:
        raise ValueError(f"start parameter {param_hex(start)} out of range")
    param = start
    path = []
    for letter in word:
        edge = _letter_edge(model, letter, param)
        path.append(edge)
        param = model.terminal(edge)
    return LiftResult(start, param, param == start, path)


# ---------------------------------------------------------------------------
# presentations

@dataclass
class Presentation:
    kind: str
    n: int
    generators: list[str]
    relators: list[list[str]]

    def text(self) -> str:
        lines = [f"gen {g}" for g in self.generators]
        lines += ["rel " + "·".join(w) for w in self.relators]
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "tool": {"name": "forestcubes", "version": __version__},
            "kind": self.kind,
            "n": self.n,
            "generators": self.generators,
            "relators": ["·".join(w) for w in self.relators],
        }


def _interval_reversal(n: int, i: int, j: int) -> tuple[int, ...]:
    """The permutation reversing i..j, identity elsewhere (one-line form)."""
    out = list(range(1, n + 1))
    out[i - 1 : j] = reversed(out[i - 1 : j])
    return tuple(out)


def _perm_name(p: tuple[int, ...]) -> str:
    return "p[" + ",".join(str(x) for x in p) + "]"


def _letter_name(a: Letter) -> str:
    return "s(" + ",".join(str(x) for x in a) + ")"


def _compose(u: tuple[int, ...], v: tuple[int, ...]) -> tuple[int, ...]:
    """(u·v)(x) = u(v(x)): the right factor acts first."""
    return tuple(u[v[x - 1] - 1] for x in range(1, len(u) + 1))


def _invert(p: tuple[int, ...]) -> tuple[int, ...]:
    out = [0] * len(p)
    for x, y in enumerate(p, start=1):
        out[y - 1] = x
    return tuple(out)


def _cactus(n: int) -> Presentation:
    if n > 9:
        raise ValueError("interval generator names support n <= 9")
    gens = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    name = {g: f"s{g[0]}{g[1]}" for g in gens}
    relators: list[list[str]] = []
    for g in gens:
        relators.append([name[g], name[g]])
    for (i, j), (k, l) in itertools.combinations(gens, 2):
        if set(range(i, j + 1)).isdisjoint(range(k, l + 1)):
            relators.append([name[(i, j)], name[(k, l)], name[(i, j)], name[(k, l)]])
    for i, j in gens:
        for k, l in gens:
            if (k, l) != (i, j) and i <= k and l <= j:
                a, b = i + j - l, i + j - k
                relators.append([name[(i, j)], name[(k, l)], name[(i, j)], name[(a, b)]])
    return Presentation("cactus", n, [name[g] for g in gens], relators)


def _virtual_cactus(n: int) -> Presentation:
    base = _cactus(n)
    perms = sorted(itertools.permutations(range(1, n + 1)))
    identity = tuple(range(1, n + 1))
    gens = base.generators + [_perm_name(p) for p in perms if p != identity]
    relators = [list(w) for w in base.relators]
    for u in perms:
        if u == identity:
            continue
        for v in perms:
            if v == identity:
                continue
            uv = _compose(u, v)
            if uv == identity:
                relators.append([_perm_name(u), _perm_name(v)])
            else:
                relators.append([_perm_name(u), _perm_name(v), _perm_name(_invert(uv))])
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for w in perms:
                if w == identity:
                    continue
                if all(w[i - 1 + k] == w[i - 1] + k for k in range(j - i + 1)):
                    a, b = w[i - 1], w[j - 1]
                    relators.append(
                        [
                            _perm_name(w),
                            f"s{i}{j}",
                            _perm_name(_invert(w)),
                            f"s{a}{b}",
                        ]
                    )
    return Presentation("virtual_cactus", n, gens, relators)


def _ordered_subsets(n: int):
    for size in range(2, n + 1):
        for combo in itertools.combinations(range(1, n + 1), size):
            yield from itertools.permutations(combo)


def _rev(a: Letter) -> Letter:
    return tuple(reversed(a))


def cyclic_class(word: tuple[Letter, ...]) -> tuple:
    """Canonical form of a cyclic word up to rotation and inversion."""
    inverse = tuple(_rev(a) for a in reversed(word))
    variants = []
    for w in (word, inverse):
        for r in range(len(w)):
            variants.append(w[r:] + w[:r])
    return min(variants)


def _loop_presentation(n: int) -> Presentation:
    gens = list(_ordered_subsets(n))
    relator_words: dict[tuple, tuple[Letter, ...]] = {}

    def add(word: tuple[Letter, ...]):
        relator_words.setdefault(cyclic_class(word), word)

    for a in gens:
        add((a, _rev(a)))
    labels = range(1, n + 1)
    for a in gens:
        rest = [x for x in labels if x not in a]
        for b_size in range(2, len(rest) + 1):
            for b_combo in itertools.combinations(rest, b_size):
                for b in itertools.permutations(b_combo):
                    add((a, b, _rev(a), _rev(b)))
        # nested: words from splitting off prefixes/suffixes around a
        for bc_size in range(1, len(rest) + 1):
            for bc_combo in itertools.combinations(rest, bc_size):
                for bc in itertools.permutations(bc_combo):
                    for cut in range(len(bc) + 1):
                        c, b = bc[:cut], bc[cut:]
                        cab = c + a + b
                        brac_r = _rev(b) + a + _rev(c)
                        add((_rev(a), cab, _rev(a), brac_r))
    words = sorted(relator_words.values(), key=lambda w: (len(w), w))
    return Presentation(
        "pvcn",
        n,
        [_letter_name(a) for a in gens],
        [[_letter_name(a) for a in w] for w in words],
    )


def presentation(kind: str, n: int) -> Presentation:
    """Finite presentations: 'cactus', 'virtual_cactus', or 'pvcn' (the
    loop generators of the one-vertex complex)."""
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    if kind == "cactus":
        return _cactus(n)
    if kind == "virtual_cactus":
        return _virtual_cactus(n)
    if kind == "pvcn":
        return _loop_presentation(n)
    raise ValueError(f"unknown presentation kind {kind!r}")


# ---------------------------------------------------------------------------
# permutation images

def perm_image(n: int, word) -> tuple[int, ...]:
    """Image in the symmetric group: interval letters ('s', i, j) map to
    interval reversals, permutation letters ('p', one-line tuple) to
    themselves.  The word multiplies left to right, the right factor
    acting first; a word is pure when its image is the identity."""
    out = tuple(range(1, n + 1))
    for letter in word:
        if letter[0] == "s":
            _, i, j = letter
            if not 1 <= i < j <= n:
                raise ValueError(f"bad interval letter {letter}")
            p = _interval_reversal(n, i, j)
        elif letter[0] == "p":
            p = tuple(letter[1])
            if sorted(p) != list(range(1, n + 1)):
                raise ValueError(f"bad permutation letter {letter}")
        else:
            raise ValueError(f"unknown letter {letter}")
        out = _compose(out, p)
    return out


# ---------------------------------------------------------------------------
# relator verification

def square_boundary_word(model: ComplexModel, orbit_id: int) -> tuple[Letter, ...]:
    """The cyclic word read along a square boundary, one letter per side."""
    t = model.tables
    info = t.square_info[orbit_id]
    return (
        t.edge_orders[info.a0],
        t.edge_orders[info.b1],
        t.edge_orders[t.partner[info.a1]],
        t.edge_orders[t.partner[info.b0]],
    )


@dataclass
class RelatorReport:
    n: int
    relator_count: int
    four_letter_count: int
    square_class_count: int
    all_zero_image: bool
    all_closed: bool
    all_realized: bool
    squares_are_relators: bool
    witness: str | None = None

    @property
    def passed(self) -> bool:
        return (
            self.all_zero_image
            and self.all_closed
            and self.all_realized
            and self.squares_are_relators
        )

    def to_json(self) -> dict:
        return {
            "tool": {"name": "forestcubes", "version": __version__},
            "n": self.n,
            "relators": self.relator_count,
            "fourLetterRelators": self.four_letter_count,
            "squareClasses": self.square_class_count,
            "allZeroImage": self.all_zero_image,
            "allClosed": self.all_closed,
            "allRealized": self.all_realized,
            "squaresAreRelators": self.squares_are_relators,
            "pass": self.passed,
            "witness": self.witness,
        }


def verify_relators(n: int) -> RelatorReport:
    """Every relator has vanishing parameter image and lifts closed; every
    four-letter relator appears as a square boundary, and conversely."""
    pres = presentation("pvcn", n)
    base = build_complex(n, "base")
    square_classes = {
        cyclic_class(square_boundary_word(base, oid))
        for oid in range(len(base.tables.square_info))
    }
    all_zero = True
    all_closed = True
    all_realized = True
    witness = None
    four_letter = 0
    for word_names in pres.relators:
        word = [_parse_letter_name(x) for x in word_names]
        if word_image(n, word) != 0:
            all_zero = False
            witness = witness or f"nonzero image: {'·'.join(word_names)}"
        lift = lift_word(n, word, 0)
        if not lift.closed:
            all_closed = False
            witness = witness or f"open lift: {'·'.join(word_names)}"
        if len(word) == 4:
            four_letter += 1
            if cyclic_class(tuple(word)) not in square_classes:
                all_realized = False
                witness = witness or f"no square realizes {'·'.join(word_names)}"
    relator_classes = {
        cyclic_class(tuple(_parse_letter_name(x) for x in w))
        for w in pres.relators
        if len(w) == 4
    }
    squares_ok = square_classes <= relator_classes
    if not squares_ok:
        witness = witness or "square boundary outside the relator list"
    return RelatorReport(
        n=n,
        relator_count=len(pres.relators),
        four_letter_count=four_letter,
        square_class_count=len(square_classes),
        all_zero_image=all_zero,
        all_closed=all_closed,
        all_realized=all_realized,
        squares_are_relators=squares_ok,
        witness=witness,
    )


def _parse_letter_name(name: str) -> Letter:
    if not (name.startswith("s(") and name.endswith(")")):
        raise ValueError(f"not a loop-generator name: {name!r}")
    return tuple(int(x) for x in name[2:-1].split(","))
