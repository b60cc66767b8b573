"""Finite topologies and the round trips between topologies and sums.

A topology on a small carrier is a set of open subsets, stored as
bitmasks.  Three constructions travel back and forth:

  * a topology plus an abelian group induces a summation system by
    recursive partial summation (summable families are those whose
    partial-sum family exists and has a unique topological limit);
  * a summation system induces limits of sequences (the sum of the
    difference family), and from those limits the finest topology in
    which they are all topological limits;
  * composing the two gives a self-map ``phi`` on topologies, which is
    extensive, idempotent, T1-valued, and independent of the group.

Everything here is exact.  Limits of eventually periodic sequences over
a finite carrier are decided by the set of values that occur cofinally,
and partial-sum recursions are run to a repeating state instead of to a
fixed horizon.  Only ``sigma_limit`` on rule systems needs a window, and
reports carry the bounds used.
"""

import itertools

from . import families as fam
from .families import Block, EMPTY, ExplicitFinite, FamilyError, Transfinite
from .reports import Bounds, HypothesisNotMet, ReportTimer
from .systems import RuleSystem, Traits


class CarrierTooLarge(ValueError):
    """Full topology enumeration is only attempted for tiny carriers."""


class NotInDomain(ValueError):
    """A difference or partial-sum family needed the limit (or sum) of an
    initial segment that does not have one.  ``index`` is the cut."""

    def __init__(self, index, message):
        super(NotInDomain, self).__init__(message)
        self.index = index


class WindowExhausted(RuntimeError):
    """A difference family did not settle into a repeating tail within
    the window; enlarge ``bounds.window`` to decide the instance."""


def mask_of(elements):
    m = 0
    for x in elements:
        m |= 1 << x
    return m


def set_of(mask):
    out = set()
    i = 0
    while mask:
        if mask & 1:
            out.add(i)
        mask >>= 1
        i += 1
    return out


def _submasks(mask):
    """All nonempty submasks of ``mask``."""
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


class FiniteTopology(object):
    """A topology on {0, ..., n-1}, opens stored as bitmasks."""

    def __init__(self, n, opens):
        self.n = n
        self.full = (1 << n) - 1
        opens = frozenset(int(u) for u in opens)
        for u in opens:
            if u < 0 or u > self.full:
                raise ValueError("open set %r out of range" % (u,))
        if 0 not in opens or self.full not in opens:
            raise ValueError("a topology contains the empty and full sets")
        for u in opens:
            for v in opens:
                if (u & v) not in opens:
                    raise ValueError("opens not closed under intersection")
                if (u | v) not in opens:
                    raise ValueError("opens not closed under union")
        self.opens = opens

    # -- constructors ------------------------------------------------

    @classmethod
    def discrete(cls, n):
        return cls(n, range(1 << n))

    @classmethod
    def indiscrete(cls, n):
        return cls(n, (0, (1 << n) - 1))

    @classmethod
    def generated(cls, n, base):
        """Smallest topology containing every mask in ``base``."""
        cur = set(int(u) for u in base)
        cur.add(0)
        cur.add((1 << n) - 1)
        while True:
            more = set()
            for u, v in itertools.combinations(sorted(cur), 2):
                if (u & v) not in cur:
                    more.add(u & v)
                if (u | v) not in cur:
                    more.add(u | v)
            if not more:
                return cls(n, cur)
            cur |= more

    # -- basic queries -----------------------------------------------

    def is_open(self, mask):
        return mask in self.opens

    def closure(self, mask):
        """Smallest closed superset of ``mask``."""
        acc = self.full
        for u in self.opens:
            c = self.full ^ u
            if mask | c == c:
                acc &= c
        return acc

    def point_closure(self, x):
        return self.closure(1 << x)

    def limit_points(self, values):
        """Elements x such that every open set containing x contains all
        of ``values``.  These are exactly the topological limits of any
        sequence whose cofinally-occurring value set is ``values``."""
        vmask = mask_of(values)
        out = set()
        for x in range(self.n):
            bit = 1 << x
            if all(u & vmask == vmask for u in self.opens if u & bit):
                out.add(x)
        return out

    @property
    def is_t1(self):
        return all(self.point_closure(x) == 1 << x for x in range(self.n))

    @property
    def is_discrete(self):
        return len(self.opens) == 1 << self.n

    def refines(self, other):
        """True when self is finer (has at least the other's opens)."""
        return self.n == other.n and other.opens <= self.opens

    def join(self, other):
        return FiniteTopology.generated(self.n, self.opens | other.opens)

    # -- plumbing ----------------------------------------------------

    def open_sets(self):
        return [sorted(set_of(u)) for u in sorted(self.opens)]

    def to_json(self):
        return {"n": self.n, "opens": self.open_sets()}

    @classmethod
    def from_json(cls, data):
        return cls(data["n"], (mask_of(u) for u in data["opens"]))

    def key(self):
        return (self.n, tuple(sorted(self.opens)))

    def __eq__(self, other):
        return isinstance(other, FiniteTopology) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return "FiniteTopology(%d, %d opens)" % (self.n, len(self.opens))


_TOPOLOGY_CACHE = {}


def enumerate_topologies(n):
    """Every topology on an n-point carrier (sorted, deterministic).

    Brute force over subsets of the proper nonempty subsets, keeping the
    collections closed under pairwise union and intersection.  The counts
    for n = 1..4 are 1, 4, 29, 355.
    """
    if n in _TOPOLOGY_CACHE:
        return list(_TOPOLOGY_CACHE[n])
    if n > 5:
        raise CarrierTooLarge("will not enumerate topologies on %d points" % n)
    full = (1 << n) - 1
    middles = [m for m in range(1, full)]
    found = []
    for picks in itertools.chain.from_iterable(
            itertools.combinations(middles, k)
            for k in range(len(middles) + 1)):
        opens = set(picks)
        opens.add(0)
        opens.add(full)
        ok = True
        for u, v in itertools.combinations(picks, 2):
            if (u & v) not in opens or (u | v) not in opens:
                ok = False
                break
        if ok:
            found.append(FiniteTopology(n, opens))
    found.sort(key=lambda t: (len(t.opens), tuple(sorted(t.opens))))
    _TOPOLOGY_CACHE[n] = found
    return list(found)


# -- limits of ordered families -----------------------------------------


def tail_values(f):
    """The eventual value set of an ordered family: the last entry for a
    successor order type, the last block's cycle values otherwise."""
    if f.kind == "finite":
        if f.is_empty():
            return None
        return frozenset((f.entries[-1][1],))
    if f.kind != "transfinite":
        raise FamilyError("tail_values needs an ordered family")
    if f.final:
        return frozenset((f.final[-1],))
    return frozenset(f.blocks[-1].cycle)


def limit_set(f, topo):
    """All topological limits of an ordered nonempty family."""
    tail = tail_values(f)
    if tail is None:
        raise FamilyError("the empty family has no intrinsic limit; the "
                          "pointed convention is the caller's business")
    return topo.limit_points(tail)


def is_gapless(f, topo):
    """True when every nonempty initial segment has at least one limit.

    Cuts at successor positions always have limits (the last entry is a
    limit of itself), so only the limit-ordinal cuts of a transfinite
    family can fail.
    """
    if f.kind == "finite":
        return True
    if f.kind != "transfinite":
        raise FamilyError("gaplessness is about ordered families")
    for blk in f.blocks:
        if not topo.limit_points(set(blk.cycle)):
            return False
    return True


def finest_topology_for_limits(n, constraints):
    """Finest topology in which, for every pair (x, tail), any sequence
    with eventual value set ``tail`` converges to x: opens are the sets
    U with x in U implying tail inside U.  This collection is always a
    topology; the constructor re-checks."""
    cons = [(x, mask_of(tail)) for x, tail in constraints]
    opens = []
    for u in range(1 << n):
        if all(t & u == t for x, t in cons if u >> x & 1):
            opens.append(u)
    return FiniteTopology(n, opens)


# -- summation induced by a topology -------------------------------------


def induced_summation(topo, carrier):
    """The summation system of recursive partial summation under ``topo``.

    A family is summable exactly when its partial-sum family exists and
    has a unique topological limit.  Unwinding the recursion over a
    finite carrier:

      * the empty sum is the distinguished element 0 (the conventional
        empty limit);
      * each successor step demands that the running partial sum be a
        closed point (the unique limit of a family ending there);
      * each limit-ordinal step collects the partial-sum values along
        one full repeating cycle, found exactly by state recurrence, and
        demands that they determine a unique limit.
    """
    if carrier.add is None or carrier.zero is None:
        raise HypothesisNotMet("induced summation needs addition with zero")
    n = carrier.size
    if n != topo.n:
        raise ValueError("topology is on %d points, carrier has %d"
                         % (topo.n, n))
    plus = carrier.plus
    zero = carrier.zero
    point_ok = [topo.point_closure(x) == 1 << x for x in range(n)]

    def run(values, t):
        """Fold successor steps; None when a partial sum is not closed."""
        for a in values:
            t = plus(t, a)
            if not point_ok[t]:
                return None
        return t

    def rule(f):
        if f.kind == "finite":
            if f.is_empty():
                return zero
            return run((e for _, e in f.entries), zero)
        if f.kind != "transfinite":
            return None
        t = zero
        for blk in f.blocks:
            t = run(blk.prefix, t)
            if t is None:
                return None
            cyc = blk.cycle
            seen = {}
            trail = []
            phase = 0
            while (phase, t) not in seen:
                seen[(phase, t)] = len(trail)
                p = plus(t, cyc[phase])
                if not point_ok[p]:
                    return None
                trail.append(p)
                t = p
                phase = (phase + 1) % len(cyc)
            lim = topo.limit_points(set(trail[seen[(phase, t)]:]))
            if len(lim) != 1:
                return None
            t = lim.pop()
        return run(f.final, t)

    return RuleSystem(carrier, rule, traits=Traits(),
                      name="partial-sums(%d opens)" % len(topo.opens),
                      kinds=("finite", "transfinite"))


# -- limits determined by a summation system ------------------------------


def _need_minus(carrier):
    if carrier.add is None or carrier.neg is None or carrier.zero is None:
        raise HypothesisNotMet("limits need an abelian group structure")
    return lambda x, y: carrier.plus(x, carrier.minus(y))


def _detect_tail(values, min_start, base_period, window):
    """Find (start, period) such that values[start:] repeats with the
    given period inside the window; period is a multiple of base_period.
    Returns None when nothing repeats for at least two full periods."""
    best = None
    period = base_period
    while period * 2 <= window - min_start:
        for start in range(min_start, window - 2 * period + 1):
            if all(values[j] == values[j + period]
                   for j in range(start, window - period)):
                best = (start, period)
                break
        if best:
            return best
        period += base_period
    return None


def _block_window(b, blk, n):
    """Steps to expand a block before trusting periodicity.  Partial-sum
    style recursions over an n-element carrier repeat with period at most
    cycle length times n, after a transient of at most one period past
    the prefix, so three periods past the prefix always suffice."""
    plen = len(blk.prefix)
    clen = len(blk.cycle)
    return max(b.window, plen + 3 * clen * n + 2)


def difference_family(system, f, bounds=None):
    """The difference family d(f): entry at i is f_i minus the limit of
    the strictly earlier part.  Raises NotInDomain when a proper initial
    segment has no limit (for finite cuts the index is the label; for
    transfinite cuts it is a (block, offset) pair).

    Transfinite results are produced through their eventually periodic
    representation: the entry stream must repeat inside the expansion
    window, which is certified on the window itself and sized so that
    any partial-sum style recursion over the carrier has settled."""
    minus = _need_minus(system.carrier)
    b = bounds or Bounds()
    if f.kind == "finite":
        if f.is_empty():
            return EMPTY
        entries = f.entries
        lim = system.query(EMPTY)
        if lim is None:
            raise NotInDomain(entries[0][0], "the empty segment has no limit")
        out = []
        for k, (lab, s) in enumerate(entries):
            out.append((lab, minus(s, lim)))
            if k + 1 < len(entries):
                lim = system.query(ExplicitFinite(out))
                if lim is None:
                    raise NotInDomain(entries[k + 1][0],
                                      "initial segment below label %r has "
                                      "no limit" % (entries[k + 1][0],))
        return ExplicitFinite(out)
    if f.kind != "transfinite":
        raise FamilyError("difference families need an ordered family")

    lim = system.query(EMPTY)
    if lim is None:
        raise NotInDomain((0, 0), "the empty segment has no limit")
    d_blocks = []

    def partial(final_part):
        if d_blocks:
            return Transfinite(d_blocks, tuple(final_part))
        return ExplicitFinite(enumerate(final_part))

    for bi, blk in enumerate(f.blocks):
        plen = len(blk.prefix)
        clen = len(blk.cycle)
        window = _block_window(b, blk, system.carrier.size)
        evals = []
        for j in range(window):
            evals.append(minus(blk.at(j), lim))
            lim = system.query(partial(evals))
            if lim is None:
                raise NotInDomain((bi, j + 1),
                                  "initial segment at block %d offset %d "
                                  "has no limit" % (bi, j + 1))
        hit = _detect_tail(evals, plen, clen, window)
        if hit is None:
            raise WindowExhausted("difference family did not repeat within "
                                  "window %d at block %d" % (window, bi))
        start, period = hit
        d_blocks.append(Block(evals[:start],
                              evals[start:start + period]))
        lim = system.query(Transfinite(d_blocks))
        if lim is None:
            raise NotInDomain((bi + 1, 0),
                              "segment through block %d has no limit" % bi)
    d_final = []
    for j, s in enumerate(f.final):
        d_final.append(minus(s, lim))
        if j + 1 < len(f.final):
            lim = system.query(Transfinite(d_blocks, tuple(d_final)))
            if lim is None:
                raise NotInDomain((len(f.blocks), j + 1),
                                  "segment before final entry %d has no "
                                  "limit" % (j + 1))
    return Transfinite(d_blocks, tuple(d_final))


def partial_sum_family(system, f, bounds=None):
    """The partial-sum family p(f): entry at i is the sum of the strictly
    earlier part plus f_i.  Raises NotInDomain when a proper initial
    segment is not summable."""
    if system.carrier.add is None:
        raise HypothesisNotMet("partial sums need addition")
    plus = system.carrier.plus
    b = bounds or Bounds()
    if f.kind == "finite":
        if f.is_empty():
            return EMPTY
        entries = f.entries
        total = system.query(EMPTY)
        if total is None:
            raise NotInDomain(entries[0][0], "the empty segment has no sum")
        out = []
        for k, (lab, a) in enumerate(entries):
            out.append((lab, plus(total, a)))
            if k + 1 < len(entries):
                total = system.query(ExplicitFinite(entries[:k + 1]))
                if total is None:
                    raise NotInDomain(entries[k + 1][0],
                                      "initial segment below label %r is "
                                      "not summable" % (entries[k + 1][0],))
        return ExplicitFinite(out)
    if f.kind != "transfinite":
        raise FamilyError("partial sums need an ordered family")
    total = system.query(EMPTY)
    if total is None:
        raise NotInDomain((0, 0), "the empty segment has no sum")
    p_blocks = []
    for bi, blk in enumerate(f.blocks):
        plen = len(blk.prefix)
        clen = len(blk.cycle)
        window = _block_window(b, blk, system.carrier.size)
        pvals = []
        for j in range(window):
            pvals.append(plus(total, blk.at(j)))
            cut = fam.initial_segment(f, fam.OrdinalIndex(bi, j + 1))
            total = system.query(cut)
            if total is None:
                raise NotInDomain((bi, j + 1),
                                  "initial segment at block %d offset %d is "
                                  "not summable" % (bi, j + 1))
        hit = _detect_tail(pvals, plen, clen, window)
        if hit is None:
            raise WindowExhausted("partial sums did not repeat within "
                                  "window %d at block %d" % (window, bi))
        start, period = hit
        p_blocks.append(Block(pvals[:start], pvals[start:start + period]))
        total = system.query(Transfinite(f.blocks[:bi + 1]))
        if total is None:
            raise NotInDomain((bi + 1, 0),
                              "segment through block %d is not summable"
                              % bi)
    p_final = []
    for j, a in enumerate(f.final):
        p_final.append(plus(total, a))
        if j + 1 < len(f.final):
            total = system.query(Transfinite(f.blocks, f.final[:j + 1]))
            if total is None:
                raise NotInDomain((len(f.blocks), j + 1),
                                  "segment before final entry %d is not "
                                  "summable" % (j + 1))
    return Transfinite(p_blocks, tuple(p_final))


def sigma_limit(system, f, bounds=None):
    """The limit of f under the system: the sum of its difference family.
    Returns the element, or None when the difference family fails to
    exist or is not summable."""
    if f.is_empty():
        return system.query(EMPTY)
    try:
        d = difference_family(system, f, bounds)
    except NotInDomain:
        return None
    return system.query(d)


# -- the sigma topology and phi ------------------------------------------


class _Memo(object):
    """Cache a system's query by canonical family key (systems are
    immutable, so this is observationally pure)."""

    def __init__(self, system):
        self.system = system
        self.carrier = system.carrier
        self.cache = {}

    def query(self, f):
        k = f.key()
        try:
            return self.cache[k]
        except KeyError:
            v = self.system.query(f)
            self.cache[k] = v
            return v


def _bounded_ordered_families(carrier, b):
    els = list(carrier.elements())
    for f in fam.finite_families(els, range(b.max_label), b.max_size):
        if not f.is_empty():
            yield f
    for f in fam.transfinite_families(els, b.max_prefix, b.max_cycle,
                                      b.max_final, b.max_blocks):
        yield f


def sigma_constraints(system, bounds=None):
    """Realized (limit, tail set) pairs of families with limits, found by
    bounded enumeration over ordered families."""
    b = bounds or Bounds()
    memo = _Memo(system)
    seen = set()
    for f in _bounded_ordered_families(system.carrier, b):
        try:
            x = sigma_limit(memo, f, b)
        except WindowExhausted:
            # within-bounds semantics: an instance the window cannot
            # decide contributes nothing, like any out-of-bounds family
            continue
        if x is None:
            continue
        seen.add((x, tail_values(f)))
    return sorted(seen, key=lambda c: (c[0], sorted(c[1])))


def sigma_topology(system, bounds=None):
    """The finest topology in which every limit the system produces is a
    topological limit.  When the empty family is not summable no family
    has a limit at all, so the result is discrete."""
    n = system.carrier.size
    if system.query(EMPTY) is None:
        return FiniteTopology.discrete(n)
    return finest_topology_for_limits(n, sigma_constraints(system, bounds))


def _phi_bounds(n, bounds):
    # Cycles must reach every subset of the carrier or the finest
    # topology is pinned down by too few (limit, tail) pairs, so the
    # cycle cap is raised to the carrier size whenever it falls short.
    # Long prefixes add no new pairs, hence the lean defaults.
    if bounds is None:
        return Bounds(max_size=2, max_label=2, max_prefix=1, max_cycle=n,
                      max_final=1, max_blocks=1)
    if bounds.max_cycle < n:
        return bounds.replace(max_cycle=n)
    return bounds


def phi(topo, carrier, bounds=None):
    """Induce sums by partial summation, then take the finest topology
    with those limits."""
    system = induced_summation(topo, carrier)
    return sigma_topology(system, _phi_bounds(carrier.size, bounds))


def phi_closed_form(topo):
    """Group-free description of phi.

    A sequence contributes a (limit, tail) pair exactly when every value
    it visits at a successor position is a closed point and its eventual
    value set C has a unique limit point x; the pure cycle through C
    realizes the pair.  So the opens of phi are the sets U such that
    x in U forces C inside U, over all such (x, C).
    """
    n = topo.n
    closed_pt = [topo.point_closure(x) == 1 << x for x in range(n)]
    cons = []
    for cmask in range(1, 1 << n):
        cvals = set_of(cmask)
        if not all(closed_pt[c] for c in cvals):
            continue
        lim = topo.limit_points(cvals)
        if len(lim) == 1:
            cons.append((lim.pop(), cvals))
    return finest_topology_for_limits(n, cons)


def full_sigma_topology(system, bounds=None):
    """Join of all topologies whose induced summation system agrees with
    the given system on every family within bounds.  Returns None when
    no topology induces the system (it then did not arise this way)."""
    carrier = system.carrier
    n = carrier.size
    if n > 4:
        raise CarrierTooLarge("full recovery enumerates all topologies; "
                              "%d points is past the desk bound" % n)
    b = bounds or Bounds()
    matches = []
    probe = [EMPTY] + list(_bounded_ordered_families(carrier, b))
    wanted = [system.query(f) for f in probe]
    for topo in enumerate_topologies(n):
        ind = induced_summation(topo, carrier)
        if all(ind.query(f) == w for f, w in zip(probe, wanted)):
            matches.append(topo)
    if not matches:
        return None
    out = matches[0]
    for t in matches[1:]:
        out = out.join(t)
    return out


# -- coreflections --------------------------------------------------------


def sequential_coreflection(topo):
    """Refine by declaring S closed when every limit of a sequence out of
    S stays in S.  Over a finite carrier a sequence's limits are decided
    by its cofinal value set, so the condition quantifies over nonempty
    subsets of S."""
    n = topo.n
    closed = []
    for smask in range(1 << n):
        ok = True
        for cmask in _submasks(smask):
            lmask = mask_of(topo.limit_points(set_of(cmask)))
            if lmask | smask != smask:
                ok = False
                break
        if ok:
            closed.append(smask)
    return FiniteTopology(n, (topo.full ^ s for s in closed))


def chain_coreflection(topo):
    """Same refinement, but closing under limits of arbitrary
    well-ordered families, computed as an iterated closure (a family's
    limits are again decided by its cofinal value set, so each round
    adds the limit points of subsets until nothing new appears)."""
    n = topo.n
    closed = []
    for smask in range(1 << n):
        cur = smask
        while True:
            nxt = cur
            for cmask in _submasks(cur):
                nxt |= mask_of(topo.limit_points(set_of(cmask)))
            if nxt == cur:
                break
            cur = nxt
        if cur == smask:
            closed.append(smask)
    return FiniteTopology(n, (topo.full ^ s for s in closed))


def net_coreflection(topo):
    """Closure under net limits recovers the topology itself: S is closed
    exactly when it contains its own closure."""
    n = topo.n
    closed = [s for s in range(1 << n) if topo.closure(s) == s]
    return FiniteTopology(n, (topo.full ^ s for s in closed))


def coreflections(topo):
    """(sequential, chain) coreflections, both refinements of topo."""
    return sequential_coreflection(topo), chain_coreflection(topo)


# -- theorem checks --------------------------------------------------------


def _scope_topologies(scope):
    n = scope.get("n", 2)
    topos = scope.get("topologies")
    if topos is None:
        topos = enumerate_topologies(n)
    return n, list(topos)


def _scope_carrier(scope, n):
    car = scope.get("carrier")
    if car is None:
        from . import carrier as carrier_mod
        car = carrier_mod.cyclic(n)
    if car.size != n:
        raise ValueError("carrier size %d does not match n=%d"
                         % (car.size, n))
    return car


def _topo_note(topo):
    return topo.open_sets()


def _unique_limit_walk(f, topo):
    """For the partial-sum criterion: does every nonempty initial cut of
    f (including f itself) have a unique topological limit, and if so
    what is the limit of the whole family?  Returns (ok, limit)."""
    if f.kind == "finite":
        vals = [e for _, e in f.entries]
        for v in vals:
            if topo.point_closure(v) != 1 << v:
                return False, None
        return True, vals[-1]
    for v in itertools.chain.from_iterable(
            itertools.chain(blk.prefix, blk.cycle) for blk in f.blocks):
        if topo.point_closure(v) != 1 << v:
            return False, None
    for v in f.final:
        if topo.point_closure(v) != 1 << v:
            return False, None
    last = None
    for blk in f.blocks:
        lim = topo.limit_points(set(blk.cycle))
        if len(lim) != 1:
            return False, None
        last = next(iter(lim))
    if f.final:
        last = f.final[-1]
    return True, last


def _drop_last(f):
    """The family without its final entry (None when there is none)."""
    if f.kind == "finite":
        if f.is_empty():
            return None
        return ExplicitFinite(f.entries[:-1])
    if f.final:
        return Transfinite(f.blocks, f.final[:-1])
    return None


def _last_entry(f):
    if f.kind == "finite":
        return f.entries[-1][1]
    return f.final[-1]


def _cofinal_variants(f):
    """A handful of cofinal subfamilies of a transfinite family."""
    out = []
    for step, offset in ((2, 0), (2, 1), (3, 0)):
        try:
            out.append(fam.arithmetic_subfamily(f, step, offset))
        except FamilyError:
            pass
    blk = f.blocks[0]
    plen = len(blk.prefix)
    if plen:
        out.append(fam.tail_from(f, plen))
    return [g for g in out if g.kind == "transfinite"]


def _gapless_limits_unique(topo):
    """Whether every gapless family has a unique limit: each nonempty
    value set with a limit point must have exactly one."""
    for cmask in range(1, 1 << topo.n):
        if len(topo.limit_points(set_of(cmask))) > 1:
            return False
    return True


def _chk_empty_sum_zero(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    for topo in topos:
        got = induced_summation(topo, car).query(EMPTY)
        if got != car.zero:
            return {"check": "thm-note", "note": "empty sum",
                    "topology": _topo_note(topo), "got": got}
    timer.note("topologies", len(topos))
    return None


def _axiom_sweep(scope, bounds, timer, axiom_id):
    from . import axioms
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    for topo in topos:
        rep = axioms.check_axiom(induced_summation(topo, car),
                                 axiom_id, bounds)
        if not rep.passed:
            w = dict(rep.witness)
            w["topology"] = _topo_note(topo)
            return w
    timer.note("topologies", len(topos))
    return None


def _chk_ordinal_reindex(scope, bounds, timer):
    return _axiom_sweep(scope, bounds, timer, "ordinal-reindex-invariance")


def _chk_initial_summability(scope, bounds, timer):
    return _axiom_sweep(scope, bounds, timer, "initial-summability")


def _chk_postfix(scope, bounds, timer):
    return _axiom_sweep(scope, bounds, timer, "postfix-associativity")


def _chk_limit_iff_unique(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    checked = 0
    for topo in topos:
        system = _Memo(induced_summation(topo, car))
        for f in _bounded_ordered_families(car, b):
            got = sigma_limit(system, f, b)
            ok, want = _unique_limit_walk(f, topo)
            checked += 1
            if (got is not None) != ok or (ok and got != want):
                return {"check": "thm-note",
                        "note": "limit exists iff every cut has a unique "
                                "topological limit",
                        "topology": _topo_note(topo),
                        "family": fam.family_to_json(f),
                        "system-limit": got,
                        "unique-tau-limit": want if ok else None}
    timer.note("instances", checked)
    return None


def _chk_t1_biconditional(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    t1 = [t for t in topos if t.is_t1]
    timer.note("t1-topologies", len(t1))
    for topo in t1:
        system = induced_summation(topo, car)
        for x in car.elements():
            for lab in range(b.max_label):
                got = system.query(ExplicitFinite([(lab, x)]))
                if got != x:
                    return {"check": "thm-note", "note": "singleton sum",
                            "topology": _topo_note(topo),
                            "element": x, "label": lab, "got": got}
            for y in car.elements():
                got = system.query(fam.fin(x, y))
                if got != car.plus(x, y):
                    return {"check": "thm-note",
                            "note": "induced addition disagrees",
                            "topology": _topo_note(topo),
                            "pair": [x, y], "got": got}
        for f in _bounded_ordered_families(car, b):
            shorter = _drop_last(f)
            total = system.query(f)
            if f.kind == "finite" and total is None:
                return {"check": "thm-note", "note": "finite totality",
                        "topology": _topo_note(topo),
                        "family": fam.family_to_json(f)}
            if shorter is None:
                continue
            head = system.query(shorter)
            if (total is None) != (head is None):
                return {"check": "thm-note",
                        "note": "tail extension must preserve summability "
                                "both ways",
                        "topology": _topo_note(topo),
                        "family": fam.family_to_json(f)}
            if total is not None and total != car.plus(head, _last_entry(f)):
                return {"check": "thm-note", "note": "tail extension sum",
                        "topology": _topo_note(topo),
                        "family": fam.family_to_json(f),
                        "got": total, "want": car.plus(head, _last_entry(f))}
    return None


def _chk_t1_zero_tail(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    zero = car.zero
    for topo in topos:
        if not topo.is_t1:
            continue
        system = induced_summation(topo, car)
        for f in _bounded_ordered_families(car, b):
            total = system.query(f)
            if total is None:
                continue
            grown = []
            if f.kind == "finite":
                g1 = fam.extend(f, fam.fresh_label(f), zero)
                grown.append(g1)
                grown.append(fam.extend(g1, fam.fresh_label(g1), zero))
                vals = tuple(e for _, e in f.entries)
                grown.append(Transfinite([Block(vals, (zero,))]))
            else:
                grown.append(fam.append_final(f, zero))
                grown.append(Transfinite(
                    f.blocks + (Block(f.final, (zero,)),)))
            for g in grown:
                if system.query(g) != total:
                    return {"check": "thm-note",
                            "note": "zero tail changed the sum",
                            "topology": _topo_note(topo),
                            "family": fam.family_to_json(f),
                            "grown": fam.family_to_json(g),
                            "want": total, "got": system.query(g)}
    return None


def _chk_gapless_cofinal(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    eligible = [t for t in topos if _gapless_limits_unique(t)]
    timer.note("eligible-topologies", len(eligible))
    for topo in eligible:
        system = _Memo(induced_summation(topo, car))
        for f in fam.transfinite_families(list(car.elements()),
                                          b.max_prefix, b.max_cycle, 0, 1):
            x = sigma_limit(system, f, b)
            if x is None:
                continue
            for g in _cofinal_variants(f):
                y = sigma_limit(system, g, b)
                if y != x:
                    return {"check": "thm-note",
                            "note": "cofinal subsequence changed the limit",
                            "topology": _topo_note(topo),
                            "family": fam.family_to_json(f),
                            "subfamily": fam.family_to_json(g),
                            "want": x, "got": y}
    return None


def _chk_phi_extensive(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    for topo in topos:
        if not phi(topo, car, bounds).refines(topo):
            return {"check": "thm-note", "note": "phi lost an open set",
                    "topology": _topo_note(topo)}
    timer.note("topologies", len(topos))
    return None


def _chk_phi_idempotent(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    for topo in topos:
        once = phi(topo, car, bounds)
        if phi(once, car, bounds) != once:
            return {"check": "thm-note", "note": "phi not idempotent",
                    "topology": _topo_note(topo),
                    "phi": _topo_note(once)}
    timer.note("topologies", len(topos))
    return None


def _chk_phi_t1(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    for topo in topos:
        if not phi(topo, car, bounds).is_t1:
            return {"check": "thm-note", "note": "phi image not T1",
                    "topology": _topo_note(topo)}
    timer.note("topologies", len(topos))
    return None


def _chk_phi_group_free(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    carriers = scope.get("carriers")
    if carriers is None:
        carriers = [_scope_carrier(scope, n)]
    for topo in topos:
        want = phi_closed_form(topo)
        for car in carriers:
            got = phi(topo, car, bounds)
            if got != want:
                return {"check": "thm-note",
                        "note": "phi depended on the group structure",
                        "topology": _topo_note(topo),
                        "carrier": car.names,
                        "got": got.to_json(), "want": want.to_json()}
    timer.note("topologies", len(topos))
    timer.note("carriers", len(carriers))
    return None


def _chk_phi_grows_sums(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    for topo in topos:
        before = induced_summation(topo, car)
        after = induced_summation(phi(topo, car, bounds), car)
        for f in itertools.chain([EMPTY],
                                 _bounded_ordered_families(car, b)):
            x = before.query(f)
            if x is None:
                continue
            y = after.query(f)
            if y != x:
                return {"check": "thm-note",
                        "note": "phi shrank the induced system",
                        "topology": _topo_note(topo),
                        "family": fam.family_to_json(f),
                        "before": x, "after": y}
    return None


def _chk_phi_closure_restricted(scope, bounds, timer):
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    eligible = [t for t in topos if _gapless_limits_unique(t)]
    timer.note("eligible-topologies", len(eligible))
    for t1, t2 in itertools.product(eligible, repeat=2):
        if not t2.refines(t1):
            continue
        if not phi(t2, car, bounds).refines(phi(t1, car, bounds)):
            return {"check": "thm-note", "note": "phi not monotone",
                    "coarse": _topo_note(t1), "fine": _topo_note(t2)}
    for topo in eligible:
        before = induced_summation(topo, car)
        after = induced_summation(phi(topo, car, bounds), car)
        for f in itertools.chain([EMPTY],
                                 _bounded_ordered_families(car, b)):
            if before.query(f) != after.query(f):
                return {"check": "thm-note",
                        "note": "induced systems differ on a family",
                        "topology": _topo_note(topo),
                        "family": fam.family_to_json(f)}
    return None


def _chk_order_reversing(scope, bounds, timer):
    from . import models
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    pairs = []
    if car.zero is not None:
        pairs.append((models.zero_only(car), models.finitary(car)))
    for topo in topos:
        small = induced_summation(topo, car)
        big = induced_summation(phi(topo, car, bounds), car)
        pairs.append((small, big))
    checked = 0
    for small, big in pairs:
        contained = all(
            big.query(f) == s
            for f, s in small.enumerate_summable(b))
        if not contained:
            continue
        checked += 1
        t_small = sigma_topology(small, b)
        t_big = sigma_topology(big, b)
        if not t_small.refines(t_big):
            return {"check": "thm-note",
                    "note": "larger system gave finer topology",
                    "small": getattr(small, "name", ""),
                    "big": getattr(big, "name", "")}
    timer.note("pairs", checked)
    return None


def _chk_successor_last(scope, bounds, timer):
    from . import axioms, models
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    systems = [models.finitary(car)] if car.zero is not None else []
    systems += [induced_summation(t, car) for t in topos]
    checked = 0
    for system in systems:
        if not axioms.check_axiom(system, "postfix-associativity", b).passed:
            continue
        memo = _Memo(system)
        for f in _bounded_ordered_families(car, b):
            if f.kind == "transfinite" and not f.final:
                continue
            x = sigma_limit(memo, f, b)
            if x is None:
                continue
            checked += 1
            if x != _last_entry(f):
                return {"check": "thm-note",
                        "note": "successor limit is not the last member",
                        "family": fam.family_to_json(f),
                        "limit": x, "last": _last_entry(f)}
    timer.note("instances", checked)
    return None


def _chk_cofinal_from_axioms(scope, bounds, timer):
    from . import axioms, models
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    systems = [models.finitary(car)] if car.zero is not None else []
    systems += [induced_summation(t, car) for t in topos]
    eligible = 0
    for system in systems:
        if not axioms.check_axiom(system, "postfix-associativity", b).passed:
            continue
        if not axioms.check_axiom(
                system, "ordinal-insertive-associativity", b).passed:
            continue
        eligible += 1
        memo = _Memo(system)
        for f in fam.transfinite_families(list(car.elements()),
                                          b.max_prefix, b.max_cycle, 0, 1):
            x = sigma_limit(memo, f, b)
            if x is None:
                continue
            for g in _cofinal_variants(f):
                y = sigma_limit(memo, g, b)
                if y != x:
                    return {"check": "thm-note",
                            "note": "cofinal subsequence changed the limit",
                            "family": fam.family_to_json(f),
                            "subfamily": fam.family_to_json(g),
                            "want": x, "got": y}
    timer.note("eligible-systems", eligible)
    return None


def _zero_tail_free(system, b):
    car = system.carrier
    zero = car.zero
    for f in _bounded_ordered_families(car, b):
        total = system.query(f)
        if total is None:
            continue
        if f.kind == "finite":
            grown = [Transfinite([Block(tuple(e for _, e in f.entries),
                                        (zero,))])]
        else:
            grown = [fam.append_final(f, zero)]
        for g in grown:
            if system.query(g) != total:
                return False
    return True


def _chk_t1_criterion(scope, bounds, timer):
    from . import models
    n, topos = _scope_topologies(scope)
    car = _scope_carrier(scope, n)
    if car.zero is None:
        raise HypothesisNotMet("the T1 criterion needs a group carrier")
    b = bounds or Bounds()
    systems = [models.finitary(car)]
    systems += [induced_summation(t, car) for t in topos]
    eligible = 0
    for system in systems:
        memo = _Memo(system)
        # singletons sum simply, at several labels
        simple = all(system.query(ExplicitFinite([(lab, x)])) == x
                     for x in car.elements() for lab in (0, 2))
        if not simple or not _zero_tail_free(system, b):
            continue
        # cofinal-subsequence stability, scanned within bounds
        stable = True
        for f in fam.transfinite_families(list(car.elements()),
                                          b.max_prefix, b.max_cycle, 0, 1):
            x = sigma_limit(memo, f, b)
            if x is None:
                continue
            if any(sigma_limit(memo, g, b) != x
                   for g in _cofinal_variants(f)):
                stable = False
                break
        if not stable:
            continue
        eligible += 1
        if not sigma_topology(system, b).is_t1:
            return {"check": "thm-note",
                    "note": "hypotheses hold but the topology is not T1",
                    "system": getattr(system, "name", "")}
    timer.note("eligible-systems", eligible)
    return None


def _chk_one_point_round_trip(scope, bounds, timer):
    from . import carrier as carrier_mod
    car = carrier_mod.cyclic(1)
    b = bounds or Bounds()
    system = induced_summation(FiniteTopology.indiscrete(1), car)
    for f in itertools.chain([EMPTY], _bounded_ordered_families(car, b)):
        if system.query(f) != 0:
            return {"check": "thm-note", "note": "one-point sums must be 0",
                    "family": fam.family_to_json(f)}
    if sigma_topology(system, b) != FiniteTopology.discrete(1):
        return {"check": "thm-note",
                "note": "one-point topology must be recovered"}
    return None


def _chk_indiscrete_empty_only(scope, bounds, timer):
    n = scope.get("n", 2)
    if n < 2:
        raise HypothesisNotMet("needs at least two points")
    car = _scope_carrier(scope, n)
    b = bounds or Bounds()
    system = induced_summation(FiniteTopology.indiscrete(n), car)
    if system.query(EMPTY) != car.zero:
        return {"check": "thm-note", "note": "empty family must sum to 0"}
    for f in _bounded_ordered_families(car, b):
        if system.query(f) is not None:
            return {"check": "thm-note",
                    "note": "only the empty family may be summable",
                    "family": fam.family_to_json(f)}
    t_sigma = sigma_topology(system, b)
    if not t_sigma.is_discrete:
        return {"check": "thm-note",
                "note": "empty-only system must give the discrete topology",
                "got": t_sigma.to_json()}
    # the system induced by the recovered topology is much larger: every
    # family with finitely many nonzero entries, summed by iterated
    # addition
    bigger = induced_summation(t_sigma, car)
    for f in itertools.chain([EMPTY], _bounded_ordered_families(car, b)):
        cnt = f.as_multiset()
        finitely_nonzero = all(c is not fam.OMEGA for e, c in cnt.items()
                               if e != car.zero)
        want = None
        if finitely_nonzero:
            want = car.zero
            for e, c in sorted(cnt.items()):
                if e != car.zero:
                    for _ in range(c):
                        want = car.plus(want, e)
        if bigger.query(f) != want:
            return {"check": "thm-note",
                    "note": "discrete-topology sums are iterated addition "
                            "on the finitely-nonzero families",
                    "family": fam.family_to_json(f),
                    "want": want, "got": bigger.query(f)}
    return None


def _chk_two_point_best_recovery(scope, bounds, timer):
    from . import carrier as carrier_mod
    car = carrier_mod.cyclic(2)
    b = bounds or Bounds()
    if len(enumerate_topologies(2)) != 4:
        return {"check": "thm-note",
                "note": "there are exactly four topologies on two points"}
    trivial = FiniteTopology.indiscrete(2)
    system = induced_summation(trivial, car)
    best = full_sigma_topology(system, b)
    if best != trivial:
        return {"check": "thm-note",
                "note": "join of inducing topologies must stay trivial",
                "got": None if best is None else best.to_json()}
    if not sigma_topology(system, b).is_discrete:
        return {"check": "thm-note",
                "note": "the limit-based topology is discrete"}
    return None


def _chk_three_point_best_recovery(scope, bounds, timer):
    from . import carrier as carrier_mod
    car = carrier_mod.cyclic(3)
    b = bounds or Bounds()
    system = induced_summation(FiniteTopology.indiscrete(3), car)
    best = full_sigma_topology(system, b)
    if best is None or not best.is_discrete:
        return {"check": "thm-note",
                "note": "on three points the join of inducing topologies "
                        "is discrete",
                "got": None if best is None else best.to_json()}
    if sigma_topology(system, b) != best:
        return {"check": "thm-note",
                "note": "both recovery routes must agree here"}
    return None


TOPO_CHECKS = [
    ("induced-empty-sum-zero", _chk_empty_sum_zero),
    ("induced-ordinal-reindex", _chk_ordinal_reindex),
    ("induced-initial-summability", _chk_initial_summability),
    ("induced-postfix-associativity", _chk_postfix),
    ("induced-limit-iff-unique-tau-limits", _chk_limit_iff_unique),
    ("induced-t1-biconditional", _chk_t1_biconditional),
    ("induced-t1-zero-tail", _chk_t1_zero_tail),
    ("induced-gapless-cofinal", _chk_gapless_cofinal),
    ("phi-extensive", _chk_phi_extensive),
    ("phi-idempotent", _chk_phi_idempotent),
    ("phi-image-t1", _chk_phi_t1),
    ("phi-group-independent", _chk_phi_group_free),
    ("phi-grows-summation", _chk_phi_grows_sums),
    ("phi-closure-on-unique-limit-spaces", _chk_phi_closure_restricted),
    ("sigma-topology-order-reversing", _chk_order_reversing),
    ("successor-limit-is-last", _chk_successor_last),
    ("cofinal-subsequence-limits", _chk_cofinal_from_axioms),
    ("t1-from-summation-freedoms", _chk_t1_criterion),
    ("one-point-round-trip", _chk_one_point_round_trip),
    ("indiscrete-empty-only", _chk_indiscrete_empty_only),
    ("two-point-best-recovery", _chk_two_point_best_recovery),
    ("three-point-best-recovery", _chk_three_point_best_recovery),
]

TOPO_CHECK_IDS = [name for name, _ in TOPO_CHECKS]
_TOPO = dict(TOPO_CHECKS)


def check_topo_theorem(check_id, bounds=None, **scope):
    """Run one topology-side theorem check; returns a CheckReport."""
    if check_id not in _TOPO:
        raise KeyError("unknown topology check %r" % (check_id,))
    b = bounds or Bounds()
    timer = ReportTimer(check_id, b)
    witness = _TOPO[check_id](scope, b, timer)
    if witness is None:
        return timer.passed()
    return timer.failed(witness)


def run_topo_suite(check_ids=None, bounds=None, **scope):
    """Run several topology checks; returns (reports, skipped)."""
    reports = []
    skipped = []
    for cid in check_ids or TOPO_CHECK_IDS:
        try:
            reports.append(check_topo_theorem(cid, bounds, **scope))
        except HypothesisNotMet as e:
            skipped.append((cid, str(e)))
    return reports, skipped
