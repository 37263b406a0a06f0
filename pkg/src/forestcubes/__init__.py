"""forestcubes: cube complexes from labelled planar forests.

Builds the one-vertex complex whose k-cubes are flip orbits of planar
forests, and its finite sheet cover, then machine-checks the structural
properties: flag links, hyperplane types, covering degree, two-sidedness
and the absence of self-intersection, self-osculation and inter-osculation.
"""

__version__ = "0.1.0"
