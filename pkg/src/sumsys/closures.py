"""Closure constructions on summation systems.

Three ways of enlarging a system's domain live here:

* zero extensions: make summability blind to entries equal to the empty
  sum, in two stages (first absorb zero-padded relatives, then key every
  family by its core);
* a Horn-style saturation oracle used to certify that the staged
  construction is the least one;
* finite extension closure: repeatedly adjoin one more entry to already
  summable families, exactly the step that grows a seed system into the
  finitary one when the carrier addition is total and associative.
"""

import itertools

from . import families as fam
from .families import OMEGA
from .reports import Bounds
from .systems import RuleSystem, TableSystem, Traits


class ClosureConflict(ValueError):
    """The construction would need one family to have two sums."""


# ---------------------------------------------------------------------
# zero extensions
# ---------------------------------------------------------------------

def same_core_consistent(system, bounds=None):
    """Precondition scan: summable families with equal cores must agree.

    Returns (True, None) or (False, witness) where the witness carries
    the two offending families and their sums.
    """
    b = bounds or Bounds()
    z = system.empty_sum()
    if z is None:
        return True, None
    seen = {}
    for f, s in system.enumerate_summable(b):
        core = fam.drop_zeros(f, z)
        key = core.key()
        if key in seen:
            g, t = seen[key]
            if t != s:
                return False, {"family_a": fam.family_to_json(g),
                               "family_b": fam.family_to_json(f),
                               "sum_a": t, "sum_b": s}
        else:
            seen[key] = (f, s)
    return True, None


def is_core_extension_general(bigger, smaller, zero):
    """Position-faithful core-extension test across family shapes."""
    if bigger.kind == "finite" and smaller.kind == "finite":
        return fam.is_core_extension(bigger, smaller, zero)
    if bigger.kind == "transfinite" and smaller.kind == "finite":
        labels = smaller.labels()
        if any(not isinstance(l, int) for l in labels):
            return False
        if len(bigger.blocks) != 1:
            return False      # smaller sits inside the first block only
        look = dict(smaller.entries)
        blk = bigger.blocks[0]
        top = max(labels) + 1 if labels else 0
        w = max(top, blk.window())
        for j in range(w):
            if blk.at(j) != look.get(j, zero):
                return False
        return all(e == zero for e in bigger.final)
    if bigger.kind == "transfinite" and smaller.kind == "transfinite":
        if len(bigger.blocks) != len(smaller.blocks):
            return False
        for b1, b2 in zip(bigger.blocks, smaller.blocks):
            n = max(len(b1.prefix), len(b2.prefix))
            p = n + 2 * max(len(b1.cycle), len(b2.cycle))
            if b1.expansion(p) != b2.expansion(p):
                return False
        k = len(smaller.final)
        return (bigger.final[:k] == smaller.final
                and all(e == zero for e in bigger.final[k:]))
    if bigger.kind == "multiset" and smaller.kind == "multiset":
        bc = bigger.as_multiset()
        sc = smaller.as_multiset()
        for e in set(bc) | set(sc):
            cb = bc.get(e, 0)
            cs = sc.get(e, 0)
            if e == zero:
                if not fam.count_le(cs, cb):
                    return False
            elif fam.count_key(cb) != fam.count_key(cs):
                return False
        return True
    return False


def finite_core(family, zero):
    """The core with original positions kept as labels, when finite.

    Returns None when the core has infinitely many entries or sits at
    limit positions that no finite-labelled family can name faithfully.
    """
    if family.kind == "finite":
        return fam.drop_zeros(family, zero)
    if family.kind == "multiset":
        return fam.drop_zeros(family, zero)
    if len(family.blocks) != 1:
        blocks_ok = all(all(e == zero for e in b.canonical().cycle)
                        for b in family.blocks)
        if not blocks_ok:
            return None
        entries = []
        for bi, b in enumerate(family.blocks):
            bc = b.canonical()
            for j, e in enumerate(bc.prefix):
                if e != zero:
                    lbl = j if bi == 0 else "w%d+%d" % (bi, j)
                    entries.append((lbl, e))
        for j, e in enumerate(family.final):
            if e != zero:
                entries.append(("w%d+%d" % (len(family.blocks), j), e))
        return fam.ExplicitFinite(entries)
    blk = family.blocks[0].canonical()
    if any(e != zero for e in blk.cycle):
        return None
    entries = [(j, e) for j, e in enumerate(blk.prefix) if e != zero]
    entries += [("w+%d" % j, e) for j, e in enumerate(family.final)
                if e != zero]
    return fam.ExplicitFinite(entries)


def zero_extension_forward(system, bounds=None, check=True):
    """Stage one: a family is summable when some zero-padded extension
    of it already was.  Exact for table systems, whose whole domain is
    the stored pairs."""
    b = bounds or Bounds()
    z = system.empty_sum()
    if z is None:
        raise ClosureConflict("the construction needs a summable empty "
                              "family to know what zero is")
    if check:
        ok, witness = same_core_consistent(system, b)
        if not ok:
            raise ClosureConflict(
                "two summable families share a core but disagree: "
                "%r" % (witness,))
    stored = list(system.enumerate_summable(b))

    def rule(x):
        for y, s in stored:
            if is_core_extension_general(y, x, z):
                return s
        return None

    return RuleSystem(system.carrier, rule, Traits(),
                      name=system.name + "+zero-forward")


def zero_extension_full(system, bounds=None, check=True):
    """Stage two: key every family by its core."""
    forward = zero_extension_forward(system, bounds, check)
    z = system.empty_sum()

    def rule(x):
        core = finite_core(x, z)
        if core is None:
            return None
        return forward.query(core)

    return RuleSystem(system.carrier, rule, Traits(),
                      name=system.name + "+zero-full")


def horn_forward_closure(pairs, universe, zero):
    """Least set of (family, sum) pairs containing ``pairs`` and closed
    under: bigger summable and bigger a core-extension of smaller implies
    smaller summable with the same sum.  Smaller ranges over ``universe``.
    """
    out = {f.key(): (f, s) for f, s in pairs}
    for x in universe:
        if x.key() in out:
            continue
        for y, s in pairs:
            if is_core_extension_general(y, x, zero):
                out[x.key()] = (x, s)
                break
    _assert_function(out.values(), zero, full=False)
    return [v for v in out.values()]


def horn_full_closure(pairs, universe, zero):
    """Least set of pairs closed under the core-extension rule in both
    directions, computed as a fixpoint over the finite universe."""
    out = {f.key(): (f, s) for f, s in pairs}
    changed = True
    while changed:
        changed = False
        current = list(out.values())
        for x in universe:
            if x.key() in out:
                continue
            for y, s in current:
                if (is_core_extension_general(y, x, zero)
                        or is_core_extension_general(x, y, zero)):
                    out[x.key()] = (x, s)
                    changed = True
                    break
    _assert_function(out.values(), zero, full=True)
    return [v for v in out.values()]


def _assert_function(pairs, zero, full):
    seen = {}
    for f, s in pairs:
        key = fam.drop_zeros(f, zero).key() if full else f.key()
        if key in seen and seen[key] != s:
            raise ClosureConflict(
                "closure would give two sums %r and %r" % (seen[key], s))
        seen[key] = s


# ---------------------------------------------------------------------
# finite extension closure
# ---------------------------------------------------------------------

def _check_addition(system):
    carrier = system.carrier
    if carrier.add is None:
        raise ClosureConflict("finite extension closure needs a total "
                              "carrier addition")
    els = tuple(carrier.elements())
    for x, y, w in itertools.product(els, repeat=3):
        if carrier.plus(carrier.plus(x, y), w) != \
                carrier.plus(x, carrier.plus(y, w)):
            raise ClosureConflict(
                "carrier addition is not associative at (%r, %r, %r)"
                % (x, y, w))
    for x, y in itertools.product(els, repeat=2):
        got = system.induced_add(x, y)
        if got is not None and got != carrier.plus(x, y):
            raise ClosureConflict(
                "the system already sums (%r, %r) to %r, not to the "
                "carrier addition's %r" % (x, y, got, carrier.plus(x, y)))


def finite_extension_closure(system, bounds=None):
    """Grow the system by adjoining entries one at a time.

    Starting from the system's finite summable families, repeatedly add
    (family plus one entry x at an unused label, old sum plus x) until
    nothing changes inside the bounded label pool.  With a total
    associative addition consistent with the system this reaches every
    finite family reachable by extensions, and the result is returned as
    a table.
    """
    b = bounds or Bounds()
    _check_addition(system)
    carrier = system.carrier
    pool = list(range(b.max_label))
    out = {}

    def put(f, s):
        key = f.key()
        if key in out:
            if out[key][1] != s:
                raise ClosureConflict(
                    "extension closure would give %r two sums: %r, %r"
                    % (f, out[key][1], s))
            return False
        out[key] = (f, s)
        return True

    for f, s in system.enumerate_summable(b, ["finite"]):
        if all(isinstance(l, int) and l in pool for l in f.labels()):
            put(f, s)
    frontier = list(out.values())
    while frontier:
        nxt = []
        for f, s in frontier:
            if f.size() >= b.max_size:
                continue
            used = set(f.labels())
            for lbl in pool:
                if lbl in used:
                    continue
                for x in carrier.elements():
                    g = fam.extend(f, lbl, x)
                    if put(g, carrier.plus(s, x)):
                        nxt.append(out[g.key()])
        frontier = nxt
    return TableSystem(carrier, out.values(), Traits(),
                       name=system.name + "+finite-extensions")


def restrict_to_image(system, bounds=None):
    """The system cut down to the sub-carrier its sums actually reach.

    Helpful before a closure when the carrier is larger than the reached
    values; raises when the image is not closed under the carrier
    addition (then no restriction makes sense).
    """
    from .carrier import Carrier

    b = bounds or Bounds()
    image = set()
    for _, s in system.enumerate_summable(b):
        image.add(s)
    old = system.carrier
    if old.add is not None:
        for x in image:
            for y in image:
                if old.plus(x, y) not in image:
                    raise ClosureConflict(
                        "image not closed under addition at (%r, %r)"
                        % (x, y))
    els = sorted(image)
    back = {e: i for i, e in enumerate(els)}
    add = None
    if old.add is not None:
        add = [[back[old.plus(x, y)] for y in els] for x in els]
    zero = back.get(old.zero)
    sub = Carrier(len(els), zero=zero, add=add,
                  names=[old.name(e) for e in els])

    def down(f):
        return fam.ew_map(f, lambda e: back[e])

    table = []
    for f, s in system.enumerate_summable(b):
        if all(e in image for e in _family_elements(f)):
            table.append((down(f), back[s]))
    return TableSystem(sub, table, Traits(),
                       name=system.name + "+image"), back


def _family_elements(f):
    if f.kind == "finite":
        return f.elements()
    if f.kind == "multiset":
        return f.support()
    out = []
    for b in f.blocks:
        out.extend(b.prefix)
        out.extend(b.cycle)
    out.extend(f.final)
    return out
