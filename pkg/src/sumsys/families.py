"""Indexed families of carrier elements.

Three shapes of family are representable:

  ExplicitFinite  finitely many entries with distinct integer or string labels
  Transfinite     entries laid out along ordinal positions w*b + j, stored as
                  one eventually-periodic block per limit segment plus a
                  finite tail of extra entries after the last block
  MultisetFamily  an unlabelled bag of entries; counts are positive integers
                  or the infinite marker OMEGA

A Transfinite family with blocks ((prefix, cycle), ...) and final entries
(f0, ..., fm-1) denotes the function on the ordinal w*nblocks + m whose
restriction to the k-th copy of w reads prefix, then cycle repeated forever.
Eventual periodicity per block is what keeps every operation here exact:
equality, subfamilies along arithmetic progressions, entrywise algebra and
canonical forms are all decided by finite windows with no approximation.
"""

import itertools
import math


class FamilyError(ValueError):
    pass


class UnrepresentableSelection(FamilyError):
    """A subfamily that does not fit the eventually-periodic representation."""


# -- infinite count marker -------------------------------------------


class _OmegaType(object):
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super(_OmegaType, cls).__new__(cls)
        return cls._instance

    def __repr__(self):
        return "OMEGA"


OMEGA = _OmegaType()


def count_add(a, b):
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a + b


def count_mul(a, b):
    # counts are always >= 1 here, so omega times anything stays omega
    if a is OMEGA or b is OMEGA:
        return OMEGA
    return a * b


def count_le(a, b):
    if b is OMEGA:
        return True
    if a is OMEGA:
        return False
    return a <= b


def count_key(c):
    # sortable stand-in: OMEGA compares above every int
    return (1, 0) if c is OMEGA else (0, c)


def _label_key(label):
    if isinstance(label, bool) or not isinstance(label, (int, str)):
        raise FamilyError("labels must be ints or strings, got %r" % (label,))
    if isinstance(label, int):
        return (0, label, "")
    return (1, 0, label)


# -- ordinal positions ------------------------------------------------


class OrdinalIndex(object):
    """The ordinal w*block + offset, ordered lexicographically."""

    __slots__ = ("block", "offset")

    def __init__(self, block, offset):
        if block < 0 or offset < 0:
            raise FamilyError("ordinal parts must be nonnegative")
        self.block = block
        self.offset = offset

    def pair(self):
        return (self.block, self.offset)

    def __eq__(self, other):
        return (isinstance(other, OrdinalIndex)
                and self.pair() == other.pair())

    def __lt__(self, other):
        return self.pair() < other.pair()

    def __le__(self, other):
        return self.pair() <= other.pair()

    def __hash__(self):
        return hash(("ord", self.block, self.offset))

    def __repr__(self):
        if self.block == 0:
            return "o(%d)" % self.offset
        return "o(w*%d+%d)" % (self.block, self.offset)


# -- finite families ---------------------------------------------------


class ExplicitFinite(object):
    kind = "finite"

    def __init__(self, entries):
        items = []
        seen = set()
        for label, elem in entries:
            _label_key(label)
            if label in seen:
                raise FamilyError("duplicate label %r" % (label,))
            seen.add(label)
            items.append((label, elem))
        items.sort(key=lambda le: _label_key(le[0]))
        self.entries = tuple(items)

    def labels(self):
        return tuple(l for l, _ in self.entries)

    def elements(self):
        return tuple(e for _, e in self.entries)

    def entry(self, label):
        for l, e in self.entries:
            if l == label:
                return e
        raise KeyError(label)

    def size(self):
        return len(self.entries)

    def is_empty(self):
        return not self.entries

    def as_multiset(self):
        counts = {}
        for _, e in self.entries:
            counts[e] = counts.get(e, 0) + 1
        return counts

    def key(self):
        return ("fin", self.entries)

    def canonical(self):
        return self

    def __eq__(self, other):
        return isinstance(other, Family) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        inner = ", ".join("%r@%r" % (e, l) for l, e in self.entries)
        return "fin(%s)" % inner


# -- transfinite families ----------------------------------------------


def _primitive_cycle(cycle):
    """Shrink a cycle to its shortest repeating pattern."""
    n = len(cycle)
    for d in range(1, n + 1):
        if n % d == 0 and cycle == cycle[:d] * (n // d):
            return cycle[:d]
    return cycle


def _canonical_block(prefix, cycle):
    """Unique representation of an eventually periodic sequence.

    First the cycle is cut down to its primitive period.  Then the prefix
    is shrunk while its last entry matches the last cycle entry (rotating
    the cycle right to compensate), which finds the true preperiod.  Last,
    the cycle is rotated to its lexicographically least phase, growing the
    prefix by the skipped entries so the sequence itself never changes.
    """
    prefix = list(prefix)
    cycle = list(_primitive_cycle(tuple(cycle)))
    while prefix and prefix[-1] == cycle[-1]:
        prefix.pop()
        cycle = [cycle[-1]] + cycle[:-1]
    best_k = 0
    best = cycle
    for k in range(1, len(cycle)):
        rot = cycle[k:] + cycle[:k]
        if rot < best:
            best = rot
            best_k = k
    prefix = prefix + cycle[:best_k]
    return tuple(prefix), tuple(best)


class Block(object):
    """One limit segment: an eventually periodic run of length w."""

    __slots__ = ("prefix", "cycle")

    def __init__(self, prefix, cycle):
        cycle = tuple(cycle)
        if not cycle:
            raise FamilyError("a block needs a nonempty cycle")
        self.prefix = tuple(prefix)
        self.cycle = cycle

    def at(self, j):
        if j < len(self.prefix):
            return self.prefix[j]
        return self.cycle[(j - len(self.prefix)) % len(self.cycle)]

    def expansion(self, length):
        return tuple(self.at(j) for j in range(length))

    def canonical(self):
        p, c = _canonical_block(self.prefix, self.cycle)
        return Block(p, c)

    def window(self):
        """A length on which this block is fully determined."""
        return len(self.prefix) + 2 * len(self.cycle)

    def __repr__(self):
        return "Block(%r, %r)" % (self.prefix, self.cycle)


def _blocks_equal(b1, b2):
    n = max(len(b1.prefix), len(b2.prefix))
    p = _lcm(len(b1.cycle), len(b2.cycle))
    w = n + p
    return b1.expansion(w) == b2.expansion(w)


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class Transfinite(object):
    kind = "transfinite"

    def __init__(self, blocks, final=()):
        blocks = tuple(blocks)
        if not blocks:
            raise FamilyError("a transfinite family needs at least one block")
        self.blocks = blocks
        self.final = tuple(final)

    def order_type(self):
        """(number of limit blocks, length of the finite tail)."""
        return (len(self.blocks), len(self.final))

    def entry(self, idx):
        if isinstance(idx, int):
            idx = OrdinalIndex(0, idx)
        b, j = idx.pair()
        if b < len(self.blocks):
            return self.blocks[b].at(j)
        if b == len(self.blocks) and j < len(self.final):
            return self.final[j]
        raise KeyError(idx)

    def size(self):
        return OMEGA

    def is_empty(self):
        return False

    def as_multiset(self):
        counts = {}
        for blk in self.blocks:
            for e in blk.prefix:
                counts[e] = count_add(counts.get(e, 0), 1)
            for e in set(blk.cycle):
                counts[e] = OMEGA
        for e in self.final:
            counts[e] = count_add(counts.get(e, 0), 1)
        return counts

    def canonical(self):
        return Transfinite([b.canonical() for b in self.blocks], self.final)

    def key(self):
        c = self.canonical()
        return ("tf",
                tuple((b.prefix, b.cycle) for b in c.blocks),
                c.final)

    def __eq__(self, other):
        return isinstance(other, Family) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        parts = ["%r..%r" % (b.prefix, b.cycle) for b in self.blocks]
        if self.final:
            parts.append("then %r" % (self.final,))
        return "tf(%s)" % "; ".join(parts)


# -- multiset families --------------------------------------------------


class MultisetFamily(object):
    kind = "multiset"

    def __init__(self, counts):
        if isinstance(counts, dict):
            items = counts.items()
        else:
            items = counts
        cleaned = {}
        for elem, c in items:
            if c is OMEGA:
                pass
            elif isinstance(c, int) and c > 0:
                pass
            else:
                raise FamilyError("counts must be positive ints or OMEGA")
            if elem in cleaned:
                raise FamilyError("repeated element key %r" % (elem,))
            cleaned[elem] = c
        self.counts = tuple(sorted(cleaned.items(),
                                   key=lambda ec: (ec[0], count_key(ec[1]))))

    def as_multiset(self):
        return dict(self.counts)

    def support(self):
        return tuple(e for e, _ in self.counts)

    def count(self, elem):
        return dict(self.counts).get(elem, 0)

    def size(self):
        total = 0
        for _, c in self.counts:
            total = count_add(total, c)
        return total

    def is_empty(self):
        return not self.counts

    def is_finite(self):
        return all(c is not OMEGA for _, c in self.counts)

    def key(self):
        return ("ms", self.counts)

    def canonical(self):
        return self

    def __eq__(self, other):
        return isinstance(other, Family) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        inner = ", ".join("%r:%s" % (e, "w" if c is OMEGA else c)
                          for e, c in self.counts)
        return "ms{%s}" % inner


Family = (ExplicitFinite, Transfinite, MultisetFamily)


# -- convenience constructors ------------------------------------------


def fin(*elements):
    """Finite family with labels 0, 1, 2, ... in order."""
    return ExplicitFinite(enumerate(elements))


def fam(pairs):
    return ExplicitFinite(pairs)


def seq(prefix, cycle, final=()):
    """Single-block transfinite family: prefix then cycle forever."""
    return Transfinite([Block(prefix, cycle)], final)


def ms(counts):
    return MultisetFamily(counts)


EMPTY = ExplicitFinite(())


# -- multiset helpers ---------------------------------------------------


def ms_key(counts):
    return tuple(sorted(((e, count_key(c)) for e, c in counts.items())))


def multiset_eq(c1, c2):
    return ms_key(c1) == ms_key(c2)


# -- cores and zero handling -------------------------------------------


def drop_zeros(family, zero):
    """The core of a family: every entry equal to ``zero`` removed.

    The surviving entries keep their labels; a transfinite family whose
    block loses its whole cycle collapses into the following segment.
    """
    if zero is None:
        return family
    if family.kind == "finite":
        return ExplicitFinite((l, e) for l, e in family.entries if e != zero)
    if family.kind == "multiset":
        return MultisetFamily((e, c) for e, c in family.counts if e != zero)
    blocks = []
    spill = []         # finite entries waiting to join the next segment
    for blk in family.blocks:
        blk = blk.canonical()
        pfx = [e for e in blk.prefix if e != zero]
        cyc = [e for e in blk.cycle if e != zero]
        if cyc:
            blocks.append(Block(spill + pfx, cyc))
            spill = []
        else:
            spill = spill + pfx
    final = tuple(spill) + tuple(e for e in family.final if e != zero)
    if not blocks:
        return ExplicitFinite(enumerate(final))
    return Transfinite(blocks, final)


def is_core_extension(bigger, smaller, zero):
    """Is ``bigger`` the family ``smaller`` with extra zero entries?

    Only decided for finite families (where subfamily-with-same-core can be
    read straight off the labelled entries).
    """
    if bigger.kind != "finite" or smaller.kind != "finite":
        raise FamilyError("core-extension test only for finite families")
    big = dict(bigger.entries)
    small = dict(smaller.entries)
    for l, e in small.items():
        if l not in big or big[l] != e:
            return False
    for l, e in big.items():
        if l not in small and e != zero:
            return False
    return True


# -- subfamilies --------------------------------------------------------


def take_labels(family, labels):
    if family.kind != "finite":
        raise FamilyError("take_labels expects a finite family")
    labels = set(labels)
    return ExplicitFinite((l, e) for l, e in family.entries if l in labels)


def sub_multiset(family, takes):
    """Sub-multiset given a dict elem -> count to keep."""
    if family.kind != "multiset":
        raise FamilyError("sub_multiset expects a multiset family")
    have = family.as_multiset()
    out = {}
    for e, c in takes.items():
        if e not in have or not count_le(c, have[e]):
            raise FamilyError("taking more copies of %r than present" % (e,))
        if c is OMEGA or c > 0:
            out[e] = c
    return MultisetFamily(out)


def initial_segment(family, cut):
    """Entries at positions strictly below ``cut`` (an OrdinalIndex or int)."""
    if family.kind == "finite":
        # for integer-labelled finite families, cut by label value
        if not isinstance(cut, int):
            raise FamilyError("finite families cut at integer labels")
        return ExplicitFinite((l, e) for l, e in family.entries
                              if isinstance(l, int) and l < cut)
    if family.kind != "transfinite":
        raise FamilyError("initial_segment needs an ordered family")
    if isinstance(cut, int):
        cut = OrdinalIndex(0, cut)
    b, j = cut.pair()
    nb = len(family.blocks)
    if b > nb or (b == nb and j > len(family.final)):
        b, j = nb, len(family.final)
    if b == nb:
        return Transfinite(family.blocks, family.final[:j])
    head = family.blocks[:b]
    mid = family.blocks[b].expansion(j)
    if not head:
        return ExplicitFinite(enumerate(mid))
    return Transfinite(head, mid)


def tail_from(family, start):
    """Entries at positions >= ``start``, re-based at position zero."""
    if family.kind != "transfinite":
        raise FamilyError("tail_from needs a transfinite family")
    if isinstance(start, int):
        start = OrdinalIndex(0, start)
    b, j = start.pair()
    nb = len(family.blocks)
    if b >= nb:
        rest = family.final[j:] if b == nb else ()
        return ExplicitFinite(enumerate(rest))
    blk = family.blocks[b]
    if j <= len(blk.prefix):
        first = Block(blk.prefix[j:], blk.cycle)
    else:
        r = (j - len(blk.prefix)) % len(blk.cycle)
        first = Block((), blk.cycle[r:] + blk.cycle[:r])
    return Transfinite((first,) + family.blocks[b + 1:], family.final)


def arithmetic_subfamily(family, step, offset, block=0):
    """Entries of one block at positions offset, offset+step, ... (exact).

    Sampling an eventually periodic sequence along an arithmetic
    progression is again eventually periodic with the same cycle length,
    so this selection is always representable.
    """
    if family.kind != "transfinite":
        raise FamilyError("arithmetic_subfamily needs a transfinite family")
    if step <= 0:
        raise FamilyError("step must be positive")
    blk = family.blocks[block]
    n, c = len(blk.prefix), len(blk.cycle)
    pre = max(0, -(-(n - offset) // step))     # ceil((n-offset)/step)
    prefix = [blk.at(offset + step * k) for k in range(pre)]
    cycle = [blk.at(offset + step * (pre + k)) for k in range(c)]
    return Transfinite([Block(prefix, cycle)])


def mask_subfamily(family, prefix_keep, cycle_keep, block=0):
    """Keep block positions by two boolean masks (prefix-wise, cycle-wise).

    The cycle mask repeats along the cycle, so the kept entries form an
    eventually periodic subsequence; dropping all cycle positions leaves a
    finite family.
    """
    if family.kind != "transfinite":
        raise FamilyError("mask_subfamily needs a transfinite family")
    blk = family.blocks[block]
    n, c = len(blk.prefix), len(blk.cycle)
    if len(prefix_keep) != n or len(cycle_keep) != c:
        raise FamilyError("mask lengths must match the block")
    kept_prefix = [e for e, keep in zip(blk.prefix, prefix_keep) if keep]
    kept_cycle = [e for e, keep in zip(blk.cycle, cycle_keep) if keep]
    if not kept_cycle:
        return ExplicitFinite(enumerate(kept_prefix))
    return Transfinite([Block(kept_prefix, kept_cycle)])


def select(family, pred, window=48, guard=3):
    """General subfamily by a predicate on positions.

    Finite and multiset families are filtered directly.  For a transfinite
    family the predicate must look eventually periodic on a window of the
    block, with the pattern surviving ``guard`` extra repetitions;
    otherwise the selection has no representation here and
    UnrepresentableSelection is raised.  Prefer the exact helpers
    (initial_segment, tail_from, arithmetic_subfamily, mask_subfamily)
    when the shape of the selection is known.
    """
    if family.kind == "finite":
        return ExplicitFinite((l, e) for l, e in family.entries if pred(l))
    if family.kind == "multiset":
        return MultisetFamily((e, c) for e, c in family.counts if pred(e))
    if len(family.blocks) != 1 or family.final:
        raise UnrepresentableSelection("select handles single-block families")
    blk = family.blocks[0]
    n, c = len(blk.prefix), len(blk.cycle)
    probe = [bool(pred(OrdinalIndex(0, j))) for j in range(window)]
    for start in range(0, window - c * (guard + 1)):
        period = c
        ok = all(probe[j] == probe[j + period]
                 for j in range(start, window - period))
        if ok:
            kept_prefix = [blk.at(j) for j in range(start) if probe[j]]
            kept_cycle = [blk.at(start + j) for j in range(period)
                          if probe[start + j]]
            if not kept_cycle:
                return ExplicitFinite(enumerate(kept_prefix))
            return Transfinite([Block(kept_prefix, kept_cycle)])
    raise UnrepresentableSelection(
        "selection pattern not periodic within window %d" % window)


# -- extensions ---------------------------------------------------------


def extend(family, label, elem):
    """Adjoin one entry at a fresh label (finite families)."""
    if family.kind != "finite":
        raise FamilyError("extend expects a finite family")
    return ExplicitFinite(family.entries + ((label, elem),))


def fresh_label(family):
    ints = [l for l in family.labels() if isinstance(l, int)]
    return (max(ints) + 1) if ints else 0


def append_final(family, elem):
    """Adjoin one entry after everything else (transfinite families)."""
    if family.kind != "transfinite":
        raise FamilyError("append_final expects a transfinite family")
    return Transfinite(family.blocks, family.final + (elem,))


def bump(family, elem, count=1):
    """Adjoin ``count`` more copies of ``elem`` to a multiset family."""
    if family.kind != "multiset":
        raise FamilyError("bump expects a multiset family")
    have = family.as_multiset()
    have[elem] = count_add(have.get(elem, 0), count)
    return MultisetFamily(have)


def adjoin(family, elem):
    """Shape-appropriate single-entry extension."""
    if family.kind == "finite":
        return extend(family, fresh_label(family), elem)
    if family.kind == "transfinite":
        return append_final(family, elem)
    return bump(family, elem, 1)


# -- entrywise algebra ---------------------------------------------------


def _pad_transfinite(family, nblocks, zero):
    """View the family inside a larger ordinal by zero extension."""
    blocks = list(family.blocks)
    final = list(family.final)
    while len(blocks) < nblocks:
        blocks.append(Block(tuple(final), (zero,)))
        final = []
    return Transfinite(blocks, final)


def _block_add(b1, b2, carrier):
    n = max(len(b1.prefix), len(b2.prefix))
    p = _lcm(len(b1.cycle), len(b2.cycle))
    prefix = [carrier.plus(b1.at(j), b2.at(j)) for j in range(n)]
    cycle = [carrier.plus(b1.at(n + j), b2.at(n + j)) for j in range(p)]
    return Block(prefix, cycle).canonical()


def ew_add(f, g, carrier):
    """The family f + g over the union of the two index sets.

    Entries with a common label are added; a label present on one side
    only keeps its entry (the other side is read as zero there).  Needs
    the carrier zero and addition.
    """
    zero = carrier.zero
    if f.kind == "finite" and g.kind == "finite":
        left = dict(f.entries)
        right = dict(g.entries)
        out = []
        for l in set(left) | set(right):
            out.append((l, carrier.plus(left.get(l, zero),
                                        right.get(l, zero))))
        return ExplicitFinite(out)
    if f.kind == "transfinite" or g.kind == "transfinite":
        if f.kind == "finite":
            f = _finite_to_transfinite(f, zero)
        if g.kind == "finite":
            g = _finite_to_transfinite(g, zero)
        nb = max(len(f.blocks), len(g.blocks))
        f = _pad_transfinite(f, nb, zero)
        g = _pad_transfinite(g, nb, zero)
        nf = max(len(f.final), len(g.final))
        blocks = [_block_add(a, b, carrier)
                  for a, b in zip(f.blocks, g.blocks)]
        final = [carrier.plus(
                    f.final[j] if j < len(f.final) else zero,
                    g.final[j] if j < len(g.final) else zero)
                 for j in range(nf)]
        return Transfinite(blocks, final)
    raise FamilyError("ew_add does not pair multiset families; "
                      "use ms_disjoint_add or ms_overlap_add")


def _finite_to_transfinite(f, zero):
    """A finite integer-labelled family viewed inside the first block."""
    labels = f.labels()
    if any(not isinstance(l, int) for l in labels):
        raise FamilyError("only integer labels embed into ordinal positions")
    top = max(labels) + 1 if labels else 0
    look = dict(f.entries)
    prefix = [look.get(j, zero) for j in range(top)]
    return Transfinite([Block(prefix, (zero,))])


def ew_neg(f, carrier):
    if f.kind == "finite":
        return ExplicitFinite((l, carrier.minus(e)) for l, e in f.entries)
    if f.kind == "multiset":
        out = {}
        for e, c in f.counts:
            ne = carrier.minus(e)
            out[ne] = count_add(out.get(ne, 0), c)
        return MultisetFamily(out)
    blocks = [Block([carrier.minus(e) for e in b.prefix],
                    [carrier.minus(e) for e in b.cycle])
              for b in f.blocks]
    return Transfinite(blocks, tuple(carrier.minus(e) for e in f.final))


def ew_map(f, fn):
    """Apply a function to every entry, keeping the shape."""
    if f.kind == "finite":
        return ExplicitFinite((l, fn(e)) for l, e in f.entries)
    if f.kind == "multiset":
        out = {}
        for e, c in f.counts:
            ne = fn(e)
            out[ne] = count_add(out.get(ne, 0), c)
        return MultisetFamily(out)
    blocks = [Block([fn(e) for e in b.prefix], [fn(e) for e in b.cycle])
              for b in f.blocks]
    return Transfinite(blocks, tuple(fn(e) for e in f.final))


def ew_pair_mul(f, r_family, carrier):
    """Entrywise r_i * a_i for families over the same index set."""
    if f.kind == "finite" and r_family.kind == "finite":
        if f.labels() != r_family.labels():
            raise FamilyError("entrywise product needs matching labels")
        rf = dict(r_family.entries)
        return ExplicitFinite((l, carrier.times(rf[l], e))
                              for l, e in f.entries)
    if f.kind == "transfinite" and r_family.kind == "transfinite":
        if f.order_type() != r_family.order_type():
            raise FamilyError("entrywise product needs equal order types")
        blocks = []
        for a, b in zip(f.blocks, r_family.blocks):
            n = max(len(a.prefix), len(b.prefix))
            p = _lcm(len(a.cycle), len(b.cycle))
            prefix = [carrier.times(b.at(j), a.at(j)) for j in range(n)]
            cycle = [carrier.times(b.at(n + j), a.at(n + j))
                     for j in range(p)]
            blocks.append(Block(prefix, cycle).canonical())
        final = tuple(carrier.times(r, e)
                      for r, e in zip(r_family.final, f.final))
        return Transfinite(blocks, final)
    raise FamilyError("unsupported shapes for entrywise product")


def ms_disjoint_add(f, g):
    """Multiset union: the sum family over disjoint index sets."""
    out = f.as_multiset()
    for e, c in g.counts:
        out[e] = count_add(out.get(e, 0), c)
    return MultisetFamily(out)


def ms_overlap_add(f, g, overlap, carrier):
    """Sum family when some entries of f and g share labels.

    ``overlap`` maps pairs (x, y) to how many shared labels carry x in f
    and y in g.  The paired entries add; the rest pass through.
    """
    left = f.as_multiset()
    right = g.as_multiset()
    out = {}

    def take(cnts, e, c):
        have = cnts.get(e, 0)
        if not count_le(c, have):
            raise FamilyError("overlap exceeds multiplicity of %r" % (e,))
        if have is OMEGA:
            return    # removing finitely many from infinitely many
        if c is OMEGA:
            del cnts[e]
            return
        if have == c:
            del cnts[e]
        else:
            cnts[e] = have - c

    for (x, y), c in overlap.items():
        take(left, x, c)
        take(right, y, c)
        s = carrier.plus(x, y)
        out[s] = count_add(out.get(s, 0), c)
    for e, c in left.items():
        out[e] = count_add(out.get(e, 0), c)
    for e, c in right.items():
        out[e] = count_add(out.get(e, 0), c)
    return MultisetFamily(out)


def product_family(f, g, carrier):
    """The family (a_i * b_j) over the product of the two index sets.

    Finite times finite keeps labelled entries (labels are paired and then
    re-encoded as fresh integers, in label order).  Anything involving a
    multiset or transfinite family is returned as a multiset, which is the
    faithful form exactly when reindexing is immaterial.
    """
    if f.kind == "finite" and g.kind == "finite":
        out = []
        k = 0
        for _, a in f.entries:
            for _, b in g.entries:
                out.append((k, carrier.times(a, b)))
                k += 1
        return ExplicitFinite(out)
    mf = f.as_multiset()
    mg = g.as_multiset()
    out = {}
    for x, cx in mf.items():
        for y, cy in mg.items():
            p = carrier.times(x, y)
            out[p] = count_add(out.get(p, 0), count_mul(cx, cy))
    return MultisetFamily(out)


# -- serialization -------------------------------------------------------


def _count_to_json(c):
    return "omega" if c is OMEGA else c


def _count_from_json(c):
    return OMEGA if c == "omega" else c


def family_to_json(f):
    if f.kind == "finite":
        return {"kind": "finite",
                "entries": [[l, e] for l, e in f.entries]}
    if f.kind == "multiset":
        return {"kind": "multiset",
                "counts": [[e, _count_to_json(c)] for e, c in f.counts]}
    return {"kind": "transfinite",
            "blocks": [{"prefix": list(b.prefix), "cycle": list(b.cycle)}
                       for b in f.blocks],
            "final": list(f.final)}


def family_from_json(data):
    kind = data["kind"]
    if kind == "finite":
        return ExplicitFinite((l, e) for l, e in data["entries"])
    if kind == "multiset":
        return MultisetFamily((e, _count_from_json(c))
                              for e, c in data["counts"])
    if kind == "transfinite":
        blocks = [Block(b["prefix"], b["cycle"]) for b in data["blocks"]]
        return Transfinite(blocks, data.get("final", ()))
    raise FamilyError("unknown family kind %r" % (kind,))


# -- bounded generation ---------------------------------------------------


def finite_families(elements, labels, max_size):
    """Every finite family with labels from ``labels`` and size <= max_size."""
    elements = tuple(elements)
    labels = tuple(labels)
    for k in range(0, min(max_size, len(labels)) + 1):
        for labset in itertools.combinations(labels, k):
            for vals in itertools.product(elements, repeat=k):
                yield ExplicitFinite(zip(labset, vals))


def transfinite_families(elements, max_prefix, max_cycle, max_final,
                         max_blocks=1):
    """Canonically distinct transfinite families within the size caps."""
    elements = tuple(elements)

    def block_choices():
        for pn in range(0, max_prefix + 1):
            for cn in range(1, max_cycle + 1):
                for prefix in itertools.product(elements, repeat=pn):
                    for cycle in itertools.product(elements, repeat=cn):
                        yield Block(prefix, cycle)

    blocks_pool = list(block_choices())
    seen = set()
    for nb in range(1, max_blocks + 1):
        for blocks in itertools.product(blocks_pool, repeat=nb):
            for fn in range(0, max_final + 1):
                for final in itertools.product(elements, repeat=fn):
                    f = Transfinite(blocks, final)
                    k = f.key()
                    if k in seen:
                        continue
                    seen.add(k)
                    yield f.canonical()


def multiset_families(elements, max_support, max_mult):
    """Multiset families with bounded support and bounded finite counts."""
    elements = tuple(elements)
    count_choices = list(range(1, max_mult + 1)) + [OMEGA]
    for k in range(0, min(max_support, len(elements)) + 1):
        for supp in itertools.combinations(elements, k):
            for cnts in itertools.product(count_choices, repeat=k):
                yield MultisetFamily(zip(supp, cnts))


def sub_multisets(family, max_mult):
    """All ways to take a sub-multiset, with infinite counts sampled as
    0, 1, ..., max_mult or OMEGA copies."""
    items = family.counts
    per_entry = []
    for e, c in items:
        if c is OMEGA:
            choices = list(range(0, max_mult + 1)) + [OMEGA]
        else:
            choices = list(range(0, min(c, max_mult) + 1))
            if c not in choices:
                choices.append(c)
        per_entry.append([(e, t) for t in choices])
    for picks in itertools.product(*per_entry):
        yield MultisetFamily((e, t) for e, t in picks if t is OMEGA or t > 0)
