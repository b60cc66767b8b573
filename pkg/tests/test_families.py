"""Families: constructors, canonical keys, arithmetic, serialization."""

import pytest
from hypothesis import given, settings, strategies as st

from sumsys import families as fam
from sumsys.carrier import cyclic


def test_fin_places_implicit_labels():
    f = fam.fin(3, 1)
    assert f.size() == 2
    assert dict(f.entries) == {0: 3, 1: 1}


def test_seq_cycles_forever():
    s = fam.seq([7], (1, 2))
    assert [s.entry(i) for i in range(6)] == [7, 1, 2, 1, 2, 1]
    assert s.size() is fam.OMEGA


def test_multiset_takes_omega_counts():
    m = fam.ms({1: 3, 2: fam.OMEGA})
    counts = m.as_multiset()
    assert counts[1] == 3
    assert counts[2] is fam.OMEGA


def test_count_add_absorbs_omega():
    assert fam.count_add(2, 3) == 5
    assert fam.count_add(2, fam.OMEGA) is fam.OMEGA
    assert fam.count_add(fam.OMEGA, fam.OMEGA) is fam.OMEGA


def test_ew_add_pads_missing_labels_with_zero():
    car = cyclic(4)
    f = fam.fin(3, 1)
    g = fam.ExplicitFinite([(1, 1), (2, 2)])
    h = fam.ew_add(f, g, car)
    assert dict(h.entries) == {0: 3, 1: 2, 2: 2}


def test_ew_neg_flips_entries():
    car = cyclic(4)
    f = fam.fin(3, 1)
    assert dict(fam.ew_neg(f, car).entries) == {0: 1, 1: 3}


def test_empty_family_is_shared_and_empty():
    assert fam.EMPTY.is_empty()
    assert fam.EMPTY.size() == 0


@settings(max_examples=80, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 9), st.integers(0, 7)),
                max_size=5, unique_by=lambda p: p[0]))
def test_finite_json_round_trip(pairs):
    f = fam.ExplicitFinite(pairs)
    back = fam.family_from_json(fam.family_to_json(f))
    assert back.key() == f.key()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 7), max_size=3),
       st.lists(st.integers(0, 7), min_size=1, max_size=3),
       st.lists(st.integers(0, 7), max_size=2))
def test_transfinite_json_round_trip(prefix, cycle, final):
    f = fam.seq(prefix, tuple(cycle), tuple(final))
    back = fam.family_from_json(fam.family_to_json(f))
    assert back.key() == f.key()


@settings(max_examples=60, deadline=None)
@given(st.dictionaries(st.integers(0, 7),
                       st.one_of(st.integers(1, 4), st.just(fam.OMEGA)),
                       max_size=4))
def test_multiset_json_round_trip(counts):
    f = fam.ms(counts)
    back = fam.family_from_json(fam.family_to_json(f))
    assert back.key() == f.key()


def test_transfinite_entry_reaches_final_block():
    f = fam.Transfinite(blocks=[((), (1,))], final=(5,))
    assert f.order_type() == (1, 1)


def test_ms_disjoint_add_merges_counts():
    a = fam.ms({1: 2})
    b = fam.ms({1: 1, 3: fam.OMEGA})
    c = fam.ms_disjoint_add(a, b)
    counts = c.as_multiset()
    assert counts[1] == 3 and counts[3] is fam.OMEGA
