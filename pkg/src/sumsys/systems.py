"""Summation systems: partial functions from families to carrier elements.

A system answers one question -- query(family) -> element or None -- and
everything else (axiom checks, closures, topologies) is built on top of
that.  Two implementations are provided.  TableSystem stores explicit
(family, sum) pairs and is the workhorse for hand-built fixtures;
RuleSystem wraps a Python function and covers the unbounded models
(finitary summation, induced summation from a topology, and so on).

Traits record which invariances a system's *storage* may exploit:
reindex-invariant systems key families by their multiset of entries, and
zero-dropping systems key by the core (zero entries removed).  Traits are
a storage contract, not a claim: the axiom checkers never assume them.
"""

import itertools

from . import families as fam
from .reports import Bounds


class NotAFunction(ValueError):
    """Two stored pairs give the same family different sums."""

    def __init__(self, family_a, family_b, sum_a, sum_b):
        self.family_a = family_a
        self.family_b = family_b
        self.sum_a = sum_a
        self.sum_b = sum_b
        msg = ("conflicting sums %r and %r for families %r and %r "
               "that the traits identify" % (sum_a, sum_b,
                                             family_a, family_b))
        super(NotAFunction, self).__init__(msg)


class InvalidFamily(ValueError):
    """A family shape the system cannot meaningfully receive, e.g. an
    unlabelled multiset handed to a system that is not reindex-invariant."""


class Traits(object):
    def __init__(self, reindex_invariant=False, zero_drop=False):
        self.reindex_invariant = reindex_invariant
        self.zero_drop = zero_drop

    def __repr__(self):
        return "Traits(reindex_invariant=%r, zero_drop=%r)" % (
            self.reindex_invariant, self.zero_drop)


class SummationSystem(object):
    """Shared behavior for both implementations."""

    def __init__(self, carrier, traits, name=""):
        self.carrier = carrier
        self.traits = traits
        self.name = name

    # query() is provided by subclasses

    def summable(self, family):
        return self.query(family) is not None

    def sum_of(self, family):
        s = self.query(family)
        if s is None:
            raise KeyError("family %r is not summable" % (family,))
        return s

    def empty_sum(self):
        return self.query(fam.EMPTY)

    def induced_add(self, x, y):
        """The partial binary operation read off pair families."""
        return self.query(fam.fam([(0, x), (1, y)]))

    def add_or_induced(self, x, y):
        """Carrier addition when present, induced addition otherwise."""
        if self.carrier.add is not None:
            return self.carrier.plus(x, y)
        return self.induced_add(x, y)

    def check_family(self, family):
        if family.kind == "multiset" and not self.traits.reindex_invariant:
            raise InvalidFamily(
                "multiset families presume reindexing invariance, which "
                "system %r does not declare" % (self.name,))

    def storage_key(self, family):
        """How the traits identify this family for table storage."""
        f = family.canonical()
        if self.traits.zero_drop:
            z = self.empty_sum()
            if z is not None:
                f = fam.drop_zeros(f, z)
        if self.traits.reindex_invariant:
            return ("ms", fam.ms_key(f.as_multiset()))
        return f.key()

    # -- bounded enumeration ------------------------------------------

    def candidate_families(self, bounds=None, kinds=None):
        """Every representable family within the bounds, appropriate to
        the system's traits (multisets only when reindexing is declared)."""
        b = bounds or Bounds()
        els = tuple(self.carrier.elements())
        if kinds is None:
            kinds = ["finite", "transfinite"]
            if self.traits.reindex_invariant:
                kinds.append("multiset")
        if "finite" in kinds:
            for f in fam.finite_families(els, range(b.max_label),
                                         b.max_size):
                yield f
        if "transfinite" in kinds:
            for f in fam.transfinite_families(els, b.max_prefix,
                                              b.max_cycle, b.max_final,
                                              b.max_blocks):
                yield f
        if "multiset" in kinds:
            for f in fam.multiset_families(els, b.max_support, b.max_mult):
                yield f

    def enumerate_summable(self, bounds=None, kinds=None):
        """(family, sum) pairs within bounds.  Subclasses may refine."""
        for f in self.candidate_families(bounds, kinds):
            s = self.query(f)
            if s is not None:
                yield (f, s)


class TableSystem(SummationSystem):
    def __init__(self, carrier, pairs, traits=None, name=""):
        super(TableSystem, self).__init__(carrier,
                                          traits or Traits(), name)
        pairs = [(f, s) for f, s in pairs]
        # the empty sum must be known before zero-dropping keys make sense
        self._empty = None
        for f, s in pairs:
            if f.kind == "finite" and f.is_empty():
                self._empty = s
        self._table = {}
        for f, s in pairs:
            self.check_family(f)
            key = self.storage_key(f)
            if key in self._table:
                old_f, old_s = self._table[key]
                if old_s != s:
                    raise NotAFunction(old_f, f, old_s, s)
            else:
                self._table[key] = (f, s)

    def empty_sum(self):
        return self._empty

    def query(self, family):
        self.check_family(family)
        hit = self._table.get(self.storage_key(family))
        return hit[1] if hit is not None else None

    def pairs(self):
        """Stored (representative family, sum) pairs."""
        return [v for _, v in sorted(self._table.items(),
                                     key=lambda kv: repr(kv[0]))]

    def enumerate_summable(self, bounds=None, kinds=None):
        b = bounds or Bounds()
        for f, s in self.pairs():
            if kinds is not None and f.kind not in kinds:
                continue
            if within_bounds(f, b):
                yield (f, s)

    def __repr__(self):
        return "TableSystem(%r, %d pairs)" % (self.name, len(self._table))


class RuleSystem(SummationSystem):
    def __init__(self, carrier, rule, traits=None, name="",
                 enumerator=None, kinds=None):
        super(RuleSystem, self).__init__(carrier, traits or Traits(), name)
        self.rule = rule
        self.enumerator = enumerator
        self.kinds = kinds   # None means: whatever the traits allow

    def query(self, family):
        self.check_family(family)
        if self.kinds is not None and family.kind not in self.kinds:
            return None
        return self.rule(family.canonical())

    def enumerate_summable(self, bounds=None, kinds=None):
        if self.enumerator is not None:
            for f, s in self.enumerator(bounds or Bounds()):
                if kinds is None or f.kind in kinds:
                    yield (f, s)
            return
        use = kinds
        if use is None and self.kinds is not None:
            use = list(self.kinds)
            if "multiset" in use and not self.traits.reindex_invariant:
                use.remove("multiset")
        for pair in super(RuleSystem, self).enumerate_summable(bounds, use):
            yield pair

    def __repr__(self):
        return "RuleSystem(%r)" % (self.name,)


def within_bounds(f, b):
    if f.kind == "finite":
        return f.size() <= max(b.max_size, b.max_label)
    if f.kind == "multiset":
        return (len(f.counts) <= b.max_support
                and all(c is fam.OMEGA or c <= b.max_mult
                        for _, c in f.counts))
    return (len(f.blocks) <= b.max_blocks
            and len(f.final) <= b.max_final
            and all(len(blk.canonical().prefix) <= b.max_prefix
                    and len(blk.canonical().cycle) <= b.max_cycle
                    for blk in f.blocks))


def table_from_dict(carrier, mapping, traits=None, name=""):
    """Convenience: build a TableSystem from {family: sum}."""
    return TableSystem(carrier, mapping.items(), traits, name)
