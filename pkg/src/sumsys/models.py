"""A zoo of concrete summation systems.

Most are tiny on purpose: they exist to separate the axioms from each
other, to seed the closure constructions, and to give the theorem-level
checks something real to chew on.  The finitary system (sum the finitely
many nonzero entries) is the reference model; the others each break or
keep a specific property.
"""

from . import carrier as car
from . import families as fam
from .families import OMEGA
from .systems import RuleSystem, Traits


def finitary(carrier):
    """Summable iff only finitely many entries are nonzero; the sum adds
    them up.  Needs a commutative monoid at least."""
    if carrier.add is None or carrier.zero is None:
        raise car.CarrierError("finitary summation needs zero and addition")
    zero = carrier.zero

    def rule(f):
        total = zero
        for e, c in f.as_multiset().items():
            if e == zero:
                continue
            if c is OMEGA:
                return None
            total = carrier.plus(total, carrier.scale(c, e))
        return total

    return RuleSystem(carrier, rule, Traits(reindex_invariant=True,
                                            zero_drop=True),
                      name="finitary")


def zero_only(carrier):
    """Only families of zeros are summable (and sum to zero)."""
    zero = carrier.zero

    def rule(f):
        for e in f.as_multiset():
            if e != zero:
                return None
        return zero

    return RuleSystem(carrier, rule, Traits(reindex_invariant=True,
                                            zero_drop=True),
                      name="zero-only")


def constant(carrier, value):
    """Every family sums to the same element.  Deliberately lawless."""

    def rule(f):
        return value

    return RuleSystem(carrier, rule, Traits(reindex_invariant=True),
                      name="constant-%s" % carrier.name(value))


def choice(carrier):
    """The sum of a family is its first entry; the empty sum is zero.

    Total and closed under subfamilies, but a relabelling changes which
    entry comes first, so reindexing invariance fails.
    """
    zero = carrier.zero
    if zero is None:
        raise car.CarrierError("the choice system returns zero on the "
                               "empty family, so the carrier needs one")

    def rule(f):
        if f.kind == "finite":
            if f.is_empty():
                return zero
            return f.entries[0][1]
        return f.entry(0)

    return RuleSystem(carrier, rule, Traits(), name="choice",
                      kinds=("finite", "transfinite"))


LEFT_PROJECTION = car.magma([[0, 0], [1, 1]], zero=None,
                            names=["p", "q"])


def magma_pairs(carrier=None):
    """Families of at most two entries over a noncommutative magma.

    Singletons sum to themselves, a pair sums in label order, the empty
    family sums to element 0.  Every subfamily of a summable family is
    summable, yet swapping the two labels of a pair changes the sum.
    """
    carrier = carrier or LEFT_PROJECTION

    def rule(f):
        if f.kind != "finite" or f.size() > 2:
            return None
        if f.is_empty():
            return 0
        if f.size() == 1:
            return f.entries[0][1]
        (_, x), (_, y) = f.entries
        return carrier.plus(x, y)

    return RuleSystem(carrier, rule, Traits(), name="magma-pairs",
                      kinds=("finite",))


def pairs_only(carrier=None):
    """Exactly the two-label families over labels 0 and 1 are summable,
    with sum the entry at label 0.  Neither reindexing invariance nor
    subfamily summability survives."""
    carrier = carrier or car.bare(2)

    def rule(f):
        if f.kind != "finite" or f.labels() != (0, 1):
            return None
        return f.entries[0][1]

    return RuleSystem(carrier, rule, Traits(), name="pairs-only",
                      kinds=("finite",))


def size2_only(carrier):
    """Exactly the two-entry families are summable (any labels).

    Over an abelian group the sum is label-independent, so reindexing
    invariance holds, but subfamilies of summable families are not
    summable.
    """
    if carrier.add is None:
        raise car.CarrierError("size2_only needs an addition")

    def rule(f):
        if f.kind == "finite":
            if f.size() != 2:
                return None
            (_, x), (_, y) = f.entries
            return carrier.plus(x, y)
        if f.kind == "multiset":
            if f.size() != 2:
                return None
            els = []
            for e, c in f.counts:
                els.extend([e] * c)
            return carrier.plus(els[0], els[1])
        return None

    return RuleSystem(carrier, rule, Traits(reindex_invariant=True),
                      name="size2-only")


# ---------------------------------------------------------------------
# the saturating multiset monoid
# ---------------------------------------------------------------------

def saturating_counts(alphabet=3, cap=2):
    """The commutative monoid of multisets over ``alphabet`` symbols with
    per-symbol counts in {0, ..., cap, many}.

    Counts add; any count beyond ``cap`` collapses to the absorbing value
    "many" (collapsing a count is a monoid congruence, so the quotient is
    still a commutative monoid).  Elements are encoded as integers in
    base cap+2, one digit per symbol, the top digit value standing for
    "many".
    """
    base = cap + 2
    many = base - 1
    size = base ** alphabet
    letters = "abcdefghij"[:alphabet]

    def digits(e):
        out = []
        for _ in range(alphabet):
            out.append(e % base)
            e //= base
        return out

    def encode(ds):
        e = 0
        for d in reversed(ds):
            e = e * base + d
        return e

    def sat_add(d1, d2):
        if d1 == many or d2 == many:
            return many
        s = d1 + d2
        return s if s <= cap else many

    add = [[encode([sat_add(a, b) for a, b in zip(digits(x), digits(y))])
            for y in range(size)] for x in range(size)]
    names = []
    for e in range(size):
        parts = []
        for sym, d in zip(letters, digits(e)):
            if d == 0:
                continue
            parts.append("%s%s" % (sym, "w" if d == many else d))
        names.append("".join(parts) or "0")
    c = car.Carrier(size, zero=0, add=add, names=names, laws="monoid")
    c.sat_digits = digits
    c.sat_encode = encode
    c.sat_cap = cap
    c.sat_many = many
    c.sat_alphabet = alphabet
    return c


def multiset_monoid(alphabet=3, cap=2):
    """A total summation system on the saturating count monoid.

    Any family at all is summable: per symbol, the total count of that
    symbol over all entries is computed in {0, ..., cap, many}, with an
    entry repeated infinitely often contributing "many" of each of its
    symbols.
    """
    carrier = saturating_counts(alphabet, cap)
    many = carrier.sat_many
    cap_ = carrier.sat_cap

    def rule(f):
        totals = [0] * alphabet
        for e, c in f.as_multiset().items():
            for s, d in enumerate(carrier.sat_digits(e)):
                if d == 0:
                    continue
                if c is OMEGA:
                    contrib = many
                elif d == many:
                    contrib = many
                else:
                    contrib = d * c
                    if contrib > cap_:
                        contrib = many
                t = totals[s] + contrib
                totals[s] = t if (t <= cap_ and contrib != many
                                  and totals[s] != many) else many
        return carrier.sat_encode(totals)

    return RuleSystem(carrier, rule, Traits(reindex_invariant=True,
                                            zero_drop=True),
                      name="multiset-monoid")


# ---------------------------------------------------------------------
# what each model claims about the two headline axioms
# ---------------------------------------------------------------------

# (reindexing invariance, subfamilies summable) as the model intends
# them; the axioms module re-derives these verdicts independently, and
# a test holds the two tables against each other.
DECLARED_AXIOMS = {
    "finitary-group": (True, True),
    "zero-only": (True, True),
    "constant": (True, True),
    "choice": (False, True),
    "magma-pairs": (False, True),
    "pairs-only": (False, False),
    "size2-only": (True, False),
    "multiset-monoid": (True, True),
}


def independence_fixtures():
    """The four systems realizing every (A1, A2) combination."""
    return [
        ("finitary-group", finitary(car.cyclic(4)), (True, True)),
        ("pairs-only", pairs_only(), (False, False)),
        ("size2-only", size2_only(car.cyclic(4)), (True, False)),
        ("choice", choice(car.cyclic(4)), (False, True)),
    ]


def independence_table(bounds=None):
    """One report per fixture: the checked verdicts for reindexing
    invariance and subfamily summability must match the declared cell."""
    from .axioms import check_axiom
    from .reports import Bounds, ReportTimer
    b = bounds or Bounds()
    reports = []
    for name, system, declared in independence_fixtures():
        timer = ReportTimer("independence[%s]" % name, b)
        got = (check_axiom(system, "reindex-invariance", b).passed,
               check_axiom(system, "subfamilies-summable", b).passed)
        timer.note("declared", list(declared))
        timer.note("checked", list(got))
        if got == declared:
            reports.append(timer.passed())
        else:
            reports.append(timer.failed({"declared": list(declared),
                                         "checked": list(got)}))
    return reports
