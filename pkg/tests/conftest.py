import pytest

from forestcubes.complexes import build_complex


@pytest.fixture(scope="session")
def models():
    """Shared built models keyed by (n, variant)."""
    out = {}
    for n in (2, 3, 4):
        for variant in ("base", "cover"):
            out[(n, variant)] = build_complex(n, variant)
    return out
