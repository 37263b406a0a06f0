"""Random reflection walks through actual squares of a base-space model.

A trip applies a random sequence of valid reflections and then keeps
reflecting until every type has been used an even number of times; the
expected outcome is a return to the starting directed 1-cube.
"""

from forestcubes.complexes import OrientedEdge
from forestcubes.hyperplanes import reflect_edge, valid_reflections

_cache: dict = {}


def _valid(model, edge):
    key = (id(model), edge.fidx, edge.param)
    if key not in _cache:
        _cache[key] = valid_reflections(model, edge)
    return _cache[key]


def even_reflection_trip(model, rng, steps=8, guard=200):
    """One randomized even-usage trip.

    Returns (start, end, used) on completion or None when the closing
    phase gave up (the caller resamples).
    """
    n1 = len(model.tables.forests[1])
    start = OrientedEdge(rng.randrange(n1), 0)
    edge = start
    odd: set = set()
    used = []
    for _ in range(steps):
        options = _valid(model, edge)
        l, mid = options[rng.randrange(len(options))]
        edge = reflect_edge(model, edge, mid)
        odd ^= {l}
        used.append(l)
    tries = 0
    while odd:
        tries += 1
        if tries > guard:
            return None
        options = _valid(model, edge)
        odd_options = [(l, m) for l, m in options if l in odd]
        pick = odd_options or options
        l, mid = pick[rng.randrange(len(pick))]
        edge = reflect_edge(model, edge, mid)
        odd ^= {l}
        used.append(l)
    return start, edge, used
