import pytest

from forestcubes.params import param_add, param_hex, parse_param, type_index


def test_type_order_is_by_size_then_lex():
    ti = type_index(3)
    assert [sorted(t) for t in ti.types] == [[1, 2], [1, 3], [2, 3], [1, 2, 3]]
    assert ti.bits == 4
    assert type_index(4).bits == 11
    assert type_index(2).bits == 1


def test_masks_are_single_bits():
    ti = type_index(4)
    seen = set()
    for t in ti.types:
        m = ti.mask(t)
        assert m & (m - 1) == 0
        seen.add(m)
    assert len(seen) == ti.bits


def test_param_add_examples():
    m12 = type_index(3).mask({1, 2})
    assert param_add(3, 0, {1, 2}) == m12
    assert param_add(3, m12, {1, 2}) == 0
    m123 = type_index(3).mask({1, 2, 3})
    assert param_add(3, m12, {1, 2, 3}) == m12 | m123


def test_param_add_rejects_non_types():
    with pytest.raises(ValueError):
        param_add(3, 0, {1})
    with pytest.raises(ValueError):
        param_add(3, 0, {1, 4})


def test_hex_round_trip():
    assert param_hex(0) == "0"
    assert param_hex(10) == "a"
    assert parse_param(param_hex(2047)) == 2047


def test_labels():
    assert type_index(3).labels() == ["{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
