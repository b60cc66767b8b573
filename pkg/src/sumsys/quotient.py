"""Summation systems on factor groups.

Projecting every stored pair of a summation system through X -> X/S
gives a quotient relation.  It is a summation system exactly when it is
still a function, and that happens exactly when the subgroup S is
Sigma-closed: sums of all-in-S summable families stay in S.  The
failure direction is constructive: an all-in-S family with sum x
outside S projects to the same coset family as its zero shadow, but
the two sums land in different cosets.

Everything here works on the bounded graph of the base system, so
closure verdicts for rule systems are bounds-qualified; for table
systems the scan is the whole table.  The endomorphism-ring side has
no finite coset carrier, so its closure questions run over the named
ideal slice (zero ideal, finite-rank matrices, full ring) and the
catalog families, with the diagonal-unit family as the standing
witness against the finite-rank ideal.
"""

import itertools

from . import carrier as carrier_mod
from . import endo as endo_mod
from . import models
from . import topo
from .axioms import check_axiom
from .endo import (F2, IdentityMatrix, MatrixFamily, SparseMatrix,
                   catalog_family, check_left_reorder, endo_sum,
                   endo_summable, in_j_fin, lazy_neg, lazy_sum,
                   psi_blocks, psi_diagonal, windows_equal)
from .families import (EMPTY, OMEGA, Block, ExplicitFinite,
                       MultisetFamily, Transfinite, count_add)
from .reports import Bounds, HypothesisNotMet, ReportTimer
from .systems import NotAFunction, RuleSystem, TableSystem, Traits
from .topo import mask_of


def _require_group(carrier, what):
    if not carrier.has_group():
        raise HypothesisNotMet(
            "%s needs a group carrier, and %r is not one" % (what, carrier))


def is_subgroup(carrier, sub):
    """Whether the subset is nonempty and closed under + and -."""
    sub = frozenset(sub)
    if not sub:
        return False
    for x in sub:
        if carrier.minus(x) not in sub:
            return False
        for y in sub:
            if carrier.plus(x, y) not in sub:
                return False
    return True


def coset_partition(carrier, sub):
    """(reps, coset_of): one minimal representative per coset, in
    increasing order, and the element -> coset index map."""
    reps = []
    coset_of = {}
    for x in carrier.elements():
        if x in coset_of:
            continue
        members = sorted(carrier.plus(x, s) for s in sub)
        idx = len(reps)
        reps.append(members[0])
        for y in members:
            coset_of[y] = idx
    return reps, coset_of


def quotient_carrier(carrier, sub):
    """(carrier on the cosets, reps, coset_of).

    Cosets are numbered by their minimal representative, so factoring
    the cyclic group of order n by the multiples of d reproduces the
    cyclic carrier of order d on the nose.  Multiplication is carried
    over only when it is constant on cosets."""
    _require_group(carrier, "a coset carrier")
    sub = frozenset(sub)
    if not is_subgroup(carrier, sub):
        raise HypothesisNotMet("%r is not a subgroup of %r"
                               % (sorted(sub), carrier))
    reps, coset_of = coset_partition(carrier, sub)
    k = len(reps)
    add = [[coset_of[carrier.plus(reps[i], reps[j])] for j in range(k)]
           for i in range(k)]
    neg = [coset_of[carrier.minus(reps[i])] for i in range(k)]
    mul = None
    one = None
    if carrier.mul is not None:
        mul = [[None] * k for _ in range(k)]
        fine = True
        for x in carrier.elements():
            for y in carrier.elements():
                i, j = coset_of[x], coset_of[y]
                p = coset_of[carrier.times(x, y)]
                if mul[i][j] is None:
                    mul[i][j] = p
                elif mul[i][j] != p:
                    fine = False
        if fine and carrier.one is not None:
            one = coset_of[carrier.one]
        if not fine:
            mul = None
    qcar = carrier_mod.Carrier(k, zero=coset_of[carrier.zero], add=add,
                               neg=neg, mul=mul, one=one, laws="group")
    return qcar, reps, coset_of


# -- pushing families through the projection -----------------------------


def project_family(f, coset_of):
    """The family of cosets, same shape.  Multiset counts whose
    elements fall into one coset are merged."""
    if f.kind == "finite":
        return ExplicitFinite((l, coset_of[x]) for l, x in f.entries)
    if f.kind == "transfinite":
        blocks = [Block([coset_of[x] for x in blk.prefix],
                        [coset_of[x] for x in blk.cycle])
                  for blk in f.blocks]
        return Transfinite(blocks, tuple(coset_of[x] for x in f.final))
    merged = {}
    for e, c in f.counts:
        k = coset_of[e]
        merged[k] = count_add(merged.get(k, 0), c)
    return MultisetFamily(merged)


def zero_shadow(f, zero):
    """The constant-zero family with the same shape as f."""
    if f.kind == "finite":
        return ExplicitFinite((l, zero) for l, _ in f.entries)
    if f.kind == "transfinite":
        blocks = [Block([zero] * len(blk.prefix), [zero] * len(blk.cycle))
                  for blk in f.blocks]
        return Transfinite(blocks, (zero,) * len(f.final))
    return MultisetFamily({zero: f.size()})


# -- Sigma-closure -------------------------------------------------------


class SigmaClosedCertificate(object):
    """Outcome of a closure scan for one subset.

    When not closed, the witness is a summable family whose members all
    lie in the subset but whose sum escapes it; revalidate() replays
    that claim against the system."""

    def __init__(self, label, closed, members=None, witness_family=None,
                 witness_sum=None, note=""):
        self.label = label
        self.closed = closed
        self.members = None if members is None else frozenset(members)
        self.witness_family = witness_family
        self.witness_sum = witness_sum
        self.note = note

    def revalidate(self, system):
        if self.closed:
            return True
        f = self.witness_family
        s = system.query(f)
        if s is None or s != self.witness_sum:
            return False
        inside = set(f.as_multiset().keys()) <= self.members
        return inside and s not in self.members

    def to_json(self):
        out = {"subset": self.label, "closed": self.closed}
        if self.witness_family is not None:
            out["witness"] = repr(self.witness_family)
            out["witness-sum"] = repr(self.witness_sum)
        if self.note:
            out["note"] = self.note
        return out

    def __repr__(self):
        tag = "closed" if self.closed else "not closed"
        return "SigmaClosedCertificate(%s: %s)" % (self.label, tag)


def is_sigma_closed(system, sub, bounds=None, kinds=None):
    """Scan the bounded graph of the system for an all-in-sub summable
    family whose sum leaves sub.  Exhaustive for table systems; for
    rule systems the verdict is qualified by the bounds."""
    b = bounds or Bounds()
    sub = frozenset(sub)
    label = ",".join(str(x) for x in sorted(sub))
    for f, s in system.enumerate_summable(b, kinds):
        if set(f.as_multiset().keys()) <= sub and s not in sub:
            return SigmaClosedCertificate(label, False, sub, f, s)
    return SigmaClosedCertificate(label, True, sub,
                                  note="no witness within bounds")


IDEAL_SLICE = ("zero", "j-fin", "full")


def _ideal_member(ideal, window):
    if ideal == "zero":
        # window-bounded so that lazy sums can be tested too
        return lambda m: windows_equal(m, SparseMatrix.zero(m.field),
                                       window)
    if ideal == "j-fin":
        return lambda m: in_j_fin(m, window)
    if ideal == "full":
        return lambda m: True
    raise KeyError("unknown ideal %r; the slice is %r"
                   % (ideal, IDEAL_SLICE))


def _endo_nonzero_count(f):
    """Nonzero members of a matrix family: a count, or OMEGA.

    Generated families are counted as infinite; every catalog rule
    really does have infinitely many nonzero members, and a finite
    support is what the finite kind is for."""
    if f.kind == "finite":
        return sum(1 for m in f.mats if not m.is_zero)
    return OMEGA


def endo_restricted_summable(f, m):
    """Summable with fewer than m nonzero members (m an int, or OMEGA
    for the restriction to essentially finite families)."""
    c = _endo_nonzero_count(f)
    if m is OMEGA:
        if c is OMEGA:
            return False
    elif c is OMEGA or c >= m:
        return False
    return endo_summable(f)


def endo_sigma_closed(ideal, m=None, field=F2, window=32):
    """Closure of one named ideal under matrix summation, scanned over
    the catalog plus small finite samples.  With m set, the scan only
    admits families that the fewer-than-m restriction keeps.

    Members of catalog families are honest sparse matrices, so every
    one of them sits inside the finite-rank ideal; what varies is
    whether the sums stay put."""
    member = _ideal_member(ideal, window)
    pool = list(endo_mod.omega_catalog_families(field))
    mats = endo_mod.sample_matrices(field)
    pool.append(MatrixFamily.finite(mats[:3], name="finite sample"))
    pool.append(MatrixFamily.finite(
        [SparseMatrix.zero(field)] * 2, name="finite zeros"))
    for f in pool:
        if m is not None and not endo_restricted_summable(f, m):
            continue
        if not endo_summable(f):
            continue
        probe = range(len(f.mats)) if f.kind == "finite" else range(window)
        if not all(member(f.member(i)) for i in probe):
            continue
        s = endo_sum(f)
        if not member(s):
            return SigmaClosedCertificate(
                ideal, False, witness_family=f, witness_sum=s,
                note="members checked through index %d" % (probe[-1],))
    note = "catalog scan"
    if m is not None:
        note += ", restricted to fewer than %s nonzero members" % (
            "w" if m is OMEGA else m)
    return SigmaClosedCertificate(ideal, True, note=note)


# -- the quotient system itself ------------------------------------------


class QuotientSystem(TableSystem):
    """The bounded graph of the base system, pushed to the cosets.

    Construction raises NotAFunction when two projected pairs collide
    with different coset sums, which is exactly the situation a
    non-closed subgroup produces."""

    def __init__(self, base, sub, bounds=None, kinds=None):
        self.base = base
        self.subgroup = frozenset(sub)
        qcar, reps, coset_of = quotient_carrier(base.carrier, sub)
        self.reps = reps
        self.coset_of = coset_of
        b = bounds or Bounds()
        pairs = []
        for f, s in base.enumerate_summable(b, kinds):
            pairs.append((project_family(f, coset_of), coset_of[s]))
        traits = Traits(
            reindex_invariant=base.traits.reindex_invariant)
        label = ",".join(str(x) for x in sorted(self.subgroup))
        TableSystem.__init__(self, qcar, pairs, traits,
                             name="%s mod {%s}" % (base.name or "system",
                                                   label))

    def project(self, x):
        return self.coset_of[x]

    def lift(self, coset):
        """The minimal representative of a coset."""
        return self.reps[coset]


def quotient_system(system, sub, bounds=None, kinds=None):
    """Factor the system by a subgroup.

    Checks the two functoriality hypotheses within bounds first, then
    the closure of the subgroup.  A non-closed subgroup yields the
    constructive conflict: the closure witness and its zero shadow
    project to the same coset family with different coset sums, raised
    as NotAFunction.  Otherwise the projected graph is returned as a
    table system on the coset carrier."""
    b = bounds or Bounds()
    car = system.carrier
    _require_group(car, "a quotient system")
    sub = frozenset(sub)
    if not is_subgroup(car, sub):
        raise HypothesisNotMet("%r is not a subgroup" % (sorted(sub),))
    for ax in ("addition-functoriality", "negation-functoriality"):
        rep = check_axiom(system, ax, b)
        if not rep.passed:
            raise HypothesisNotMet(
                "quotients presume %s, and %r fails it within bounds"
                % (ax, system))
    cert = is_sigma_closed(system, sub, b, kinds)
    if not cert.closed:
        _, coset_of = coset_partition(car, sub)
        w = cert.witness_family
        shadow = zero_shadow(w, car.zero)
        raise NotAFunction(project_family(w, coset_of),
                           project_family(shadow, coset_of),
                           coset_of[cert.witness_sum],
                           coset_of[car.zero])
    return QuotientSystem(system, sub, b, kinds)


def endo_quotient_conflict(ideal="j-fin", field=F2, window=32):
    """The matrix-ring analogue of the failed quotient: modulo the
    finite-rank ideal the diagonal-unit family and the zero family
    become the same coset family, yet their sums sit in different
    cosets.  Raises NotAFunction carrying that pair."""
    member = _ideal_member(ideal, window)
    du = catalog_family("diagonal-units", field)
    zeros = MatrixFamily.generated(field, lambda i: SparseMatrix.zero(field),
                                   lambda c: (), name="zeros")
    for i in range(window):
        diff = du.member(i) - zeros.member(i)
        if not member(diff):
            raise HypothesisNotMet(
                "member %d of the witness pair does not agree mod %s"
                % (i, ideal))
    s, z = endo_sum(du), endo_sum(zeros)
    gap = lazy_sum(field, [s, lazy_neg(field, z)])
    if member(gap):
        raise HypothesisNotMet(
            "the sums agree mod %s; no conflict to exhibit" % (ideal,))
    raise NotAFunction(du, zeros, s, z)


# -- restriction by the number of nonzero members -------------------------


def nonzero_member_count(f, zero):
    """How many members of the family differ from zero: int or OMEGA."""
    total = 0
    for e, c in f.as_multiset().items():
        if e != zero:
            total = count_add(total, c)
    return total


def restricted_system(system, m):
    """The same sums, kept only for families with fewer than m nonzero
    members.  m is an int of at least 1, or OMEGA for the restriction
    to essentially finite families."""
    if m is not OMEGA and (not isinstance(m, int) or m < 1):
        raise ValueError("the cutoff must be a positive int or OMEGA")
    zero = system.carrier.zero
    if zero is None:
        raise HypothesisNotMet("counting nonzero members needs a zero")

    def rule(f):
        c = nonzero_member_count(f, zero)
        if m is OMEGA:
            if c is OMEGA:
                return None
        elif c is OMEGA or c >= m:
            return None
        return system.query(f)

    tag = "w" if m is OMEGA else str(m)
    return RuleSystem(system.carrier, rule, traits=system.traits,
                      name="%s[<%s]" % (system.name or "system", tag))


# -- scope plumbing for the checks ----------------------------------------


def _scope_bicond_carriers(scope):
    if scope.get("carriers") is not None:
        return list(scope["carriers"])
    return [carrier_mod.cyclic(2), carrier_mod.cyclic(3),
            carrier_mod.cyclic(4), carrier_mod.klein()]


def _scope_field(scope):
    return scope.get("field", F2)


def _scope_window(scope):
    return scope.get("window", 32)


def _vector_subgroups(car, width, cap):
    """Subgroups of the componentwise power group, of order at most
    cap, generated by one or two vectors.  Abelian groups of order at
    most six never need a third generator."""
    n = car.size
    vecs = list(itertools.product(range(n), repeat=width))
    zero = (car.zero,) * width

    def vadd(u, v):
        return tuple(car.plus(a, b) for a, b in zip(u, v))

    found = set()
    for g1, g2 in itertools.combinations_with_replacement(vecs, 2):
        group = {zero, g1, g2}
        while True:
            fresh = set()
            for u in group:
                for v in group:
                    w = vadd(u, v)
                    if w not in group:
                        fresh.add(w)
            if not fresh:
                break
            group |= fresh
            if len(group) > cap:
                break
        if len(group) <= cap:
            found.add(frozenset(group))
    return sorted(found, key=lambda g: sorted(g))


def _graph_tables(car, width, cap=6):
    """Every table of at-most-cap pairs over fixed labels 0..width-1
    that is closed under entrywise negation and entrywise addition of
    stored pairs.  Such tables are exactly the function graphs among
    the subgroups of the power group, read off as summation tables."""
    tables = []
    k = width
    zero_head = (car.zero,) * k
    for group in _vector_subgroups(car, k + 1, cap):
        if any(t[:k] == zero_head and t[k] != car.zero for t in group):
            continue
        pairs = [(ExplicitFinite(enumerate(t[:k])), t[k])
                 for t in sorted(group)]
        tables.append(TableSystem(car, pairs,
                                  name="graph table %dx%d" % (len(group),
                                                              k)))
    return tables


def _members_within(f, sub):
    return set(f.as_multiset().keys()) <= sub


def _limit_closed(system, sub, bounds):
    """Whether every in-bounds ordered family with members inside the
    subgroup keeps its limit (when it has one) inside the subgroup."""
    for f in system.candidate_families(bounds, ["finite", "transfinite"]):
        if f.is_empty() or not _members_within(f, sub):
            continue
        try:
            x = topo.sigma_limit(system, f, bounds)
        except topo.WindowExhausted:
            continue
        if x is not None and x not in sub:
            return False, f
    return True, None


# -- the checks -----------------------------------------------------------


def _chk_closed_examples(scope, bounds, timer):
    z4 = carrier_mod.cyclic(4)
    fin4 = models.finitary(z4)
    cert = is_sigma_closed(fin4, {0, 2}, bounds)
    if not cert.closed:
        return {"which": "finitary mod {0,2}", "cert": cert.to_json()}
    for sub in ({0}, {0, 1, 2, 3}):
        if not is_sigma_closed(fin4, sub, bounds).closed:
            return {"which": "finitary mod %r" % (sorted(sub),)}
    # every subgroup is closed under finitary sums; a lawless system
    # is the cheapest source of failures
    cst = models.constant(z4, 1)
    cert = is_sigma_closed(cst, {0, 2}, bounds)
    if cert.closed:
        return {"which": "constant system should leak out of {0,2}"}
    if not cert.revalidate(cst):
        return {"which": "constant witness failed revalidation",
                "cert": cert.to_json()}
    timer.note("constant-witness", repr(cert.witness_family))
    z8 = carrier_mod.cyclic(8)
    fin8 = models.finitary(z8)
    lean = bounds.replace(max_prefix=1, max_cycle=1)
    for sub in z8.subgroups():
        if not is_sigma_closed(fin8, sub, lean).closed:
            return {"which": "finitary z8 mod %r" % (sorted(sub),)}
    return None


def _chk_biconditional(scope, bounds, timer):
    """Function quotient exactly when the subgroup is closed, swept
    over every small functoriality-respecting table."""
    tables = 0
    instances = 0
    conflicts = 0
    for car in _scope_bicond_carriers(scope):
        subs = car.subgroups()
        for width in (1, 2):
            for table in _graph_tables(car, width):
                tables += 1
                for sub in subs:
                    instances += 1
                    closed = is_sigma_closed(table, sub, bounds).closed
                    try:
                        q = quotient_system(table, sub, bounds)
                        became = True
                    except NotAFunction as e:
                        became = False
                        conflicts += 1
                        if e.family_a != e.family_b:
                            return {"carrier": repr(car),
                                    "sub": sorted(sub),
                                    "reason": "conflict pair should be "
                                              "one coset family twice"}
                        if e.sum_a == e.sum_b:
                            return {"carrier": repr(car),
                                    "sub": sorted(sub),
                                    "reason": "conflicting sums agree"}
                    if became != closed:
                        return {"carrier": repr(car), "sub": sorted(sub),
                                "closed": closed, "function": became,
                                "table": table.name}
                    if became and len(q.pairs()) > len(table.pairs()):
                        return {"carrier": repr(car), "sub": sorted(sub),
                                "reason": "quotient grew new pairs"}
    timer.note("tables", tables)
    timer.note("instances", instances)
    timer.note("non-function-instances", conflicts)
    if not conflicts:
        return {"reason": "the sweep never exercised the failure side"}
    return None


def _chk_finitary_matches(scope, bounds, timer):
    """Finitary summation factored by a subgroup of z8 is finitary
    summation on the quotient cyclic group, pair for pair."""
    z8 = carrier_mod.cyclic(8)
    base = models.finitary(z8)
    checked = 0
    # the functoriality precheck samples pairs of summables, and the
    # stock transfinite window floods the sweep with slow
    # canonicalizations; both trims are recorded here
    lean = bounds.replace(pair_cap=1200, max_prefix=1, max_cycle=1)
    timer.note("trim", "pair_cap=1200 max_prefix=1 max_cycle=1")
    for sub in z8.subgroups():
        q = quotient_system(base, sub, lean)
        d = q.carrier.size
        ref = models.finitary(carrier_mod.cyclic(d))
        for i in range(d):
            if q.carrier.minus(i) != ref.carrier.minus(i):
                return {"sub": sorted(sub), "reason": "negation differs"}
            for j in range(d):
                if q.carrier.plus(i, j) != ref.carrier.plus(i, j):
                    return {"sub": sorted(sub),
                            "reason": "addition differs at %d,%d" % (i, j)}
        for f in ref.candidate_families(lean):
            if q.query(f) != ref.query(f):
                return {"sub": sorted(sub), "family": repr(f),
                        "quotient": q.query(f), "reference": ref.query(f)}
            checked += 1
    timer.note("families-compared", checked)
    return None


def _chk_zero_subgroup(scope, bounds, timer):
    """Factoring by the zero subgroup changes nothing."""
    for base in (models.finitary(carrier_mod.cyclic(4)),
                 models.zero_only(carrier_mod.klein())):
        zero = base.carrier.zero
        q = quotient_system(base, {zero}, bounds)
        if q.carrier.size != base.carrier.size:
            return {"system": base.name, "reason": "carrier shrank"}
        for f in base.candidate_families(bounds):
            if q.query(f) != base.query(f):
                return {"system": base.name, "family": repr(f),
                        "quotient": q.query(f), "base": base.query(f)}
    return None


def _chk_limit_closure(scope, bounds, timer):
    """A subgroup is closed under sums exactly when it is closed under
    limits, and membership of a family in the subgroup matches
    membership of its partial sums."""
    z8 = carrier_mod.cyclic(8)
    z4 = carrier_mod.cyclic(4)
    systems = [models.finitary(z8), models.zero_only(z4),
               models.constant(z4, 1)]
    instances = 0
    psum_pairs = 0
    for system in systems:
        full = frozenset(system.carrier.elements())
        verdicts = {}
        for sub in system.carrier.subgroups():
            closed = is_sigma_closed(system, sub, bounds,
                                     ["finite", "transfinite"]).closed
            verdicts[sub] = closed
            if sub == full:
                # members and limits of anything live in the whole
                # carrier, so both sides are trivially true
                limitc, wit = True, None
            else:
                limitc, wit = _limit_closed(system, sub, bounds)
            if closed != limitc:
                return {"system": system.name, "sub": sorted(sub),
                        "sum-closed": closed, "limit-closed": limitc,
                        "witness": repr(wit)}
            instances += 1
        proper = [sub for sub, ok in verdicts.items()
                  if ok and sub != full]
        if not proper:
            continue
        # one partial-sum sweep per system, reused for every subgroup
        staged = []
        for f, _ in system.enumerate_summable(
                bounds, ["finite", "transfinite"]):
            try:
                staged.append((f, topo.partial_sum_family(system, f,
                                                          bounds)))
            except (topo.NotInDomain, topo.WindowExhausted):
                continue
        for sub in proper:
            for f, p in staged:
                if _members_within(f, sub) != _members_within(p, sub):
                    return {"system": system.name, "sub": sorted(sub),
                            "family": repr(f), "partial-sums": repr(p)}
                psum_pairs += 1
    timer.note("subgroup-instances", instances)
    timer.note("partial-sum-pairs", psum_pairs)
    return None


def _chk_induced_topology(scope, bounds, timer):
    """For summation induced by a separated topology, closure under
    sums is closure in the summation topology.  At this scale the only
    separated topologies are discrete, so the content is consistency
    of the two computations."""
    for n in (2, 3, 4):
        t = topo.FiniteTopology.discrete(n)
        car = carrier_mod.cyclic(n)
        system = topo.induced_summation(t, car)
        tau = topo.sigma_topology(system, bounds)
        for sub in car.subgroups():
            closed = is_sigma_closed(system, sub, bounds,
                                     ["finite", "transfinite"]).closed
            complement = tau.full ^ mask_of(sub)
            tclosed = tau.is_open(complement)
            if closed != tclosed:
                return {"n": n, "sub": sorted(sub),
                        "sum-closed": closed, "topology-closed": tclosed}
    timer.note("scope", "discrete topologies only")
    return None


def _chk_ideal_slice(scope, bounds, timer):
    """Of the three ideals in the slice, only the ends are closed; the
    diagonal units push the finite-rank ideal up to the identity."""
    field = _scope_field(scope)
    window = _scope_window(scope)
    verdicts = {}
    for ideal in IDEAL_SLICE:
        verdicts[ideal] = endo_sigma_closed(ideal, field=field,
                                            window=window)
    if not verdicts["zero"].closed or not verdicts["full"].closed:
        return {"reason": "trivial ideals must be closed"}
    cert = verdicts["j-fin"]
    if cert.closed:
        return {"reason": "finite-rank ideal reported closed"}
    w = cert.witness_family
    if w.name != "diagonal-units":
        timer.note("witness", w.name)
    s = endo_sum(w)
    if not windows_equal(s, IdentityMatrix(field), window):
        return {"reason": "witness sum is not the identity"}
    if in_j_fin(s, window):
        return {"reason": "witness sum was placed inside the ideal"}
    return None


def _chk_reorderable_quotient(scope, bounds, timer):
    """Left reordering survives factoring by a closed ideal.  The zero
    ideal gives the literal instance; the finite-rank conflict shows
    why the closure hypothesis is needed; and re-lifting the multiplier
    family member by member, with ideal-sized drift, moves both sides
    of a reorder instance by the same coset."""
    field = _scope_field(scope)
    window = _scope_window(scope)
    # modulo the zero ideal the quotient instance is the plain one
    for aname, psi in (("diagonal-units", psi_diagonal()),
                       ("up-shift", psi_blocks(2))):
        a = catalog_family(aname, field)
        rep = check_left_reorder(a, lambda k: IdentityMatrix(field), psi,
                                 window, name="quotient by zero ideal")
        if not rep.passed:
            return {"config": aname, "report": rep.to_json()}
    # the non-closed ideal really does break the quotient
    try:
        endo_quotient_conflict("j-fin", field, window)
        return {"reason": "no conflict raised modulo finite rank"}
    except NotAFunction as e:
        if in_j_fin(lazy_sum(field, [e.sum_a, lazy_neg(field, e.sum_b)]),
                    window):
            return {"reason": "conflict sums agree modulo the ideal"}
    # member-by-member lifts: r gets a finite-rank drift that depends
    # on the outer index, as in the lifting argument; the two sides
    # then differ in the ring but agree modulo the ideal
    one = field.one
    a_ms = [SparseMatrix.unit(field, i, i) for i in range(6)]
    r_ms = [SparseMatrix.unit(field, j, j + 1) for j in range(3)]
    psi = {k: (2 * k, 2 * k + 1) for k in range(3)}
    dual = {i: [k for k in psi if i in psi[k]] for i in range(6)}
    rhs = SparseMatrix.zero(field)
    for k in psi:
        inner = SparseMatrix.zero(field)
        for i in psi[k]:
            inner = inner + a_ms[i]
        rhs = rhs + _sparse_product(r_ms[k], inner)
    lhs = SparseMatrix.zero(field)
    for i in range(6):
        lifted = SparseMatrix.zero(field)
        for k in dual[i]:
            drift = SparseMatrix.unit(field, 0, i, one)
            lifted = lifted + r_ms[k] + drift
        lhs = lhs + _sparse_product(lifted, a_ms[i])
    gap = lhs - rhs
    if gap.is_zero:
        return {"reason": "drifted lift left no gap to absorb"}
    if not in_j_fin(gap, window):
        return {"reason": "lift drift escaped the ideal",
                "gap": repr(gap)}
    timer.note("drift-gap-rank", gap.rank())
    return None


def _sparse_product(left, right):
    """Product of two sparse matrices, materialized sparse."""
    entries = {}
    for (r, c), v in left.entries.items():
        for (r2, c2), w in right.entries.items():
            if c == r2:
                key = (r, c2)
                cur = entries.get(key, left.field.zero)
                entries[key] = left.field.add(cur,
                                              left.field.mul(v, w))
    return SparseMatrix(left.field, entries)


def _chk_restricted(scope, bounds, timer):
    """Keeping only families with few nonzero members: the boundary is
    strict, the essentially-finite restriction closes the finite-rank
    ideal, and on carriers it only bites systems that sum infinite
    cores."""
    field = _scope_field(scope)
    window = _scope_window(scope)
    # the finite-rank ideal becomes closed once infinite families go
    before = endo_sigma_closed("j-fin", field=field, window=window)
    after = endo_sigma_closed("j-fin", m=OMEGA, field=field, window=window)
    if before.closed or not after.closed:
        return {"unrestricted": before.closed, "restricted": after.closed}
    # strict boundary on a three-member family
    units = [SparseMatrix.unit(field, i, i) for i in range(3)]
    three = MatrixFamily.finite(units, name="three units")
    if endo_restricted_summable(three, 3):
        return {"reason": "three nonzero members passed the <3 gate"}
    if not endo_restricted_summable(three, 4):
        return {"reason": "three nonzero members failed the <4 gate"}
    zeros = MatrixFamily.finite([SparseMatrix.zero(field)] * 2,
                                name="two zeros")
    if not endo_restricted_summable(zeros, 1):
        return {"reason": "an all-zero family failed the <1 gate"}
    if endo_restricted_summable(three, 1):
        return {"reason": "the <1 gate admitted nonzero members"}
    # carrier side
    z4 = carrier_mod.cyclic(4)
    fin = models.finitary(z4)
    r1 = restricted_system(fin, 1)
    if r1.query(ExplicitFinite(((0, 1),))) is not None:
        return {"reason": "<1 restriction kept a nonzero singleton"}
    if r1.query(EMPTY) != 0:
        return {"reason": "<1 restriction lost the empty sum"}
    if r1.query(MultisetFamily({0: 3})) != 0:
        return {"reason": "<1 restriction lost an all-zero family"}
    rw = restricted_system(fin, OMEGA)
    for f in fin.candidate_families(bounds):
        if rw.query(f) != fin.query(f):
            return {"reason": "essentially finite restriction moved a "
                              "finitary sum", "family": repr(f)}
    cst = models.constant(z4, 1)
    rcw = restricted_system(cst, OMEGA)
    wide = MultisetFamily({1: OMEGA})
    if cst.query(wide) != 1 or rcw.query(wide) is not None:
        return {"reason": "restriction should drop the infinite core"}
    timer.note("finitary-restriction", "invisible within bounds")
    return None


QUOTIENT_CHECKS = [
    ("sigma-closed-examples", _chk_closed_examples),
    ("quotient-function-biconditional", _chk_biconditional),
    ("quotient-finitary-matches", _chk_finitary_matches),
    ("quotient-zero-subgroup", _chk_zero_subgroup),
    ("limit-closure-biconditional", _chk_limit_closure),
    ("closure-induced-topology", _chk_induced_topology),
    ("endo-ideal-slice", _chk_ideal_slice),
    ("reorderable-quotient", _chk_reorderable_quotient),
    ("restricted-families", _chk_restricted),
]

QUOTIENT_CHECK_IDS = [name for name, _ in QUOTIENT_CHECKS]
_QUOTIENT = dict(QUOTIENT_CHECKS)


def check_quotient_theorem(check_id, bounds=None, **scope):
    """Run one quotient-side check; returns a CheckReport."""
    if check_id not in _QUOTIENT:
        raise KeyError("unknown quotient check %r" % (check_id,))
    b = bounds or Bounds()
    timer = ReportTimer(check_id, b)
    witness = _QUOTIENT[check_id](scope, b, timer)
    if witness is None:
        return timer.passed()
    return timer.failed(witness)


def run_quotient_suite(check_ids=None, bounds=None, **scope):
    reports = []
    skipped = []
    for cid in check_ids or QUOTIENT_CHECK_IDS:
        try:
            reports.append(check_quotient_theorem(cid, bounds, **scope))
        except HypothesisNotMet as e:
            skipped.append((cid, str(e)))
    return reports, skipped
