"""Table and rule systems: functionhood, traits, enumeration."""

import pytest

from sumsys import families as fam
from sumsys.carrier import cyclic
from sumsys.reports import Bounds
from sumsys.systems import (NotAFunction, RuleSystem, TableSystem, Traits,
                            table_from_dict)


def test_conflicting_pairs_raise_not_a_function():
    pairs = [(fam.fin(1), 0), (fam.fin(1), 1)]
    with pytest.raises(NotAFunction) as err:
        TableSystem(cyclic(2), pairs, Traits())
    e = err.value
    assert e.sum_a != e.sum_b
    assert e.family_a.key() == e.family_b.key()


def test_reindex_trait_identifies_relabeled_families():
    pairs = [(fam.ExplicitFinite([(0, 1)]), 1)]
    system = TableSystem(cyclic(4), pairs, Traits(reindex_invariant=True))
    assert system.query(fam.ExplicitFinite([(5, 1)])) == 1
    rigid = TableSystem(cyclic(4), pairs, Traits())
    assert rigid.query(fam.ExplicitFinite([(5, 1)])) is None


def test_reindex_trait_rejects_conflicting_relabels():
    pairs = [(fam.ExplicitFinite([(0, 1)]), 1),
             (fam.ExplicitFinite([(5, 1)]), 2)]
    with pytest.raises(NotAFunction):
        TableSystem(cyclic(4), pairs, Traits(reindex_invariant=True))
    # without the trait the two labelings are distinct families
    TableSystem(cyclic(4), pairs, Traits())


def test_zero_drop_trait_identifies_padded_families():
    # dropping entries equal to the empty sum needs an empty pair
    pairs = [(fam.EMPTY, 0), (fam.fin(1), 1)]
    system = TableSystem(cyclic(4), pairs,
                         Traits(reindex_invariant=True, zero_drop=True))
    assert system.query(fam.fin(1, 0, 0)) == 1


def test_rule_system_query_and_enumeration_agree():
    car = cyclic(3)

    def rule(f):
        total = 0
        for e, c in f.as_multiset().items():
            if c is fam.OMEGA:
                if e != 0:
                    return None
                continue
            total = (total + e * c) % 3
        return total

    system = RuleSystem(car, rule, Traits(reindex_invariant=True),
                        name="finitary oracle")
    b = Bounds(max_size=2, max_label=2, max_prefix=1, max_cycle=1)
    seen = 0
    for f, s in system.enumerate_summable(b):
        assert system.query(f) == rule(f) == s
        seen += 1
    assert seen > 0


def test_enumerate_summable_respects_bounds():
    pairs = [(fam.fin(1, 1, 1, 1, 1), 1), (fam.fin(1), 1)]
    system = TableSystem(cyclic(2), pairs, Traits())
    small = list(system.enumerate_summable(Bounds(max_size=2, max_label=2)))
    assert [f.key() for f, s in small] == [fam.fin(1).key()]


def test_table_from_dict_round_trip():
    system = table_from_dict(cyclic(2), {fam.fin(1): 1},
                             Traits(), name="one pair")
    assert system.query(fam.fin(1)) == 1
    assert system.query(fam.fin(1, 1)) is None
