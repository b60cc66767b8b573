"""Exact rational series: the absolutely-convergent summation model.

Families here are sequences of rationals indexed by the naturals, stored
in closed form: a finite head, an optional repeating cycle, and
geometric-with-polynomial tails.  Everything is computed with Fractions,
so equality checks are exact, never within-epsilon.

The entry at position i is

    head[i]                                    for i < len(head)
    cyc[j % len(cyc)] + sum over tails of
        a * C(j + d, d) * r**j                 for j = i - len(head)

where each tail is a triple (a, r, d).  The binomial basis keeps sums
closed: sum_j C(j + d, d) r**j = 1 / (1 - r)**(d + 1).
"""

from fractions import Fraction
from math import comb


class NotRepresentable(ValueError):
    """The requested sequence leaves this closed form."""


def _fr(x):
    return x if isinstance(x, Fraction) else Fraction(x)


class SeriesFamily(object):
    __slots__ = ("head", "cyc", "tails")

    def __init__(self, head=(), cyc=(), tails=()):
        self.head = tuple(_fr(x) for x in head)
        self.cyc = tuple(_fr(x) for x in cyc)
        merged = {}
        for a, r, d in tails:
            a, r = _fr(a), _fr(r)
            if a == 0:
                continue
            key = (r, d)
            merged[key] = merged.get(key, Fraction(0)) + a
        self.tails = tuple((a, r, d) for (r, d), a in sorted(merged.items())
                           if a != 0)

    def value(self, i):
        if i < len(self.head):
            return self.head[i]
        j = i - len(self.head)
        v = self.cyc[j % len(self.cyc)] if self.cyc else Fraction(0)
        for a, r, d in self.tails:
            v += a * comb(j + d, d) * r ** j
        return v

    def values(self, n):
        return [self.value(i) for i in range(n)]

    def is_zero(self):
        return (all(x == 0 for x in self.head)
                and all(x == 0 for x in self.cyc)
                and not self.tails)

    def __repr__(self):
        return "SeriesFamily(head=%r, cyc=%r, tails=%r)" % (
            self.head, self.cyc, self.tails)


def from_entries(*entries):
    return SeriesFamily(head=entries)


def from_cycle(head, cyc):
    return SeriesFamily(head=head, cyc=cyc)


def geometric(r, a=1):
    """a, a*r, a*r**2, ..."""
    return SeriesFamily(tails=((_fr(a), _fr(r), 0),))


def grandi():
    """1, -1, 1, -1, ..."""
    return SeriesFamily(cyc=(1, -1))


def abs_summable(f):
    """Do the absolute values have a finite sum?"""
    if any(x != 0 for x in f.cyc):
        return False
    return all(abs(r) < 1 for _, r, _ in f.tails)


def abs_sum(f):
    """The sum, or None when the series is not absolutely convergent."""
    if not abs_summable(f):
        return None
    total = sum(f.head, Fraction(0))
    for a, r, d in f.tails:
        total += a / (1 - r) ** (d + 1)
    return total


def group_blocks(f, width):
    """Sum consecutive blocks of the given width (insertion of
    parentheses along intervals).  Exact for head-plus-cycle families."""
    if f.tails:
        raise NotRepresentable("grouping is implemented for periodic "
                               "families only")
    if width <= 0:
        raise ValueError("width must be positive")
    h = len(f.head)
    pad = (-h) % width
    head_region = [f.value(i) for i in range(h + pad)]
    new_head = [sum(head_region[k:k + width])
                for k in range(0, len(head_region), width)]
    if not f.cyc:
        return SeriesFamily(head=new_head)
    span = width * len(f.cyc)
    start = h + pad
    chunk = [f.value(start + t) for t in range(span)]
    new_cyc = [sum(chunk[k:k + width]) for k in range(0, span, width)]
    return SeriesFamily(head=new_head, cyc=new_cyc)


# ---------------------------------------------------------------------
# products over the double index set
# ---------------------------------------------------------------------

def _solve(rows, rhs):
    """Gaussian elimination over Fractions; raises on singular input."""
    n = len(rows)
    m = [list(row) + [b] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if m[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            raise NotRepresentable("fit system is singular")
        m[col], m[pivot] = m[pivot], m[col]
        pv = m[col][col]
        m[col] = [x / pv for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [x - factor * y for x, y in zip(m[r], m[col])]
    return [m[r][n] for r in range(n)]


def _cycle_free(f, what):
    if any(x != 0 for x in f.cyc):
        raise NotRepresentable("%s needs a cycle-free family" % what)
    if not f.cyc:
        return f
    return SeriesFamily(head=f.head, tails=f.tails)


def convolution(f, g, guard=8):
    """The antidiagonal regrouping of the product family (f_i * g_j).

    Entry n of the result is sum over i + j = n of f_i * g_j.  The
    closed form is recovered by exact fitting against the binomial
    basis, then re-verified on ``guard`` further entries, so a wrong
    ansatz raises instead of returning a bad family.
    """
    f = _cycle_free(f, "convolution")
    g = _cycle_free(g, "convolution")
    if any(r == 0 for _, r, _ in f.tails + g.tails):
        f = _expand(f, 1 + len(f.head))
        g = _expand(g, 1 + len(g.head))
    head_len = len(f.head) + len(g.head)
    budget = {}
    for a, r, d in f.tails + g.tails:
        budget[r] = budget.get(r, 0) + d + 1
    for r in list(budget):
        budget[r] = 2 * budget[r]
    basis = [(r, t) for r in sorted(budget) for t in range(budget[r])]
    n_unknown = len(basis)
    need = head_len + n_unknown + guard
    cvals = [sum(f.value(i) * g.value(n - i) for i in range(n + 1))
             for n in range(need)]
    if not basis:
        return SeriesFamily(head=cvals[:head_len])
    rows = [[comb(j + t, t) * r ** j for (r, t) in basis]
            for j in range(n_unknown)]
    rhs = [cvals[head_len + j] for j in range(n_unknown)]
    alphas = _solve(rows, rhs)
    result = SeriesFamily(head=cvals[:head_len],
                          tails=[(a, r, t) for a, (r, t)
                                 in zip(alphas, basis)])
    for n in range(head_len + n_unknown, need):
        if result.value(n) != cvals[n]:
            raise NotRepresentable("fitted closed form fails at entry %d"
                                   % n)
    return result


def _expand(f, extra):
    """Push ``extra`` more positions into the explicit head (used to get
    zero-ratio tails out of the fitted region)."""
    h = len(f.head) + extra
    head = [f.value(i) for i in range(h)]
    tails = []
    for a, r, d in f.tails:
        if r == 0:
            continue     # its entire support now sits inside the head
        if d != 0:
            raise NotRepresentable("cannot rebase a degree tail past a "
                                   "zero-ratio tail")
        tails.append((a * r ** extra, r, 0))
    return SeriesFamily(head=head, tails=tails)


def product_checks(f, g):
    """Exact comparison of the two routes to the product's sum.

    Returns (lhs, rhs, ok): the antidiagonal regrouping's sum, the
    product of the factor sums, and their equality.  None sums propagate.
    """
    sf, sg = abs_sum(f), abs_sum(g)
    if sf is None or sg is None:
        return None, None, False
    conv = convolution(f, g)
    lhs = abs_sum(conv)
    rhs = sf * sg
    return lhs, rhs, lhs == rhs


# ---------------------------------------------------------------------
# the divergence pipeline
# ---------------------------------------------------------------------

def divergence_pipeline(f, window=24):
    """Replay the no-positive-divergent-family argument on ``f``.

    For a positive head-plus-cycle family whose entries do not sum
    absolutely, produce: the regrouped family b with 2*b_n < b_{n+1}
    (grouping along intervals), the reciprocal family c passing an exact
    ratio certificate, and the double family (b_i * c_j) together with
    the positions where it equals one (the whole diagonal).  Every stage
    is returned so a caller can re-verify each claim.
    """
    if f.tails:
        raise NotRepresentable("the pipeline expects a head-plus-cycle "
                               "family")
    entries = f.values(window)
    if any(x <= 0 for x in entries) or any(x <= 0 for x in f.cyc):
        raise ValueError("the pipeline needs strictly positive entries")
    if abs_summable(f):
        raise ValueError("the family is absolutely summable; "
                         "nothing diverges")
    p = len(f.cyc)
    sigma = sum(f.cyc, Fraction(0))
    head_sum = sum(f.head, Fraction(0))
    # first group: the head plus one full cycle
    b0 = head_sum + sigma
    # later groups: M * 3**(n-1) cycles each, M large enough that the
    # doubling inequality holds at the seam
    m = 1
    while sigma * m <= 2 * b0:
        m *= 2
    b = SeriesFamily(head=(b0,), tails=((sigma * m, Fraction(3), 0),))
    widths = {"first": len(f.head) + p, "then": "%d * 3**(n-1) cycles" % m}
    for n in range(window - 1):
        if not 2 * b.value(n) < b.value(n + 1):
            raise AssertionError("doubling chain broke at %d" % n)
    c = SeriesFamily(head=(1 / b0,),
                     tails=((1 / (sigma * m), Fraction(1, 3), 0),))
    for n in range(window):
        if c.value(n) * b.value(n) != 1:
            raise AssertionError("reciprocal family wrong at %d" % n)
    ratio_bound = Fraction(1, 2)
    for n in range(window - 1):
        if not c.value(n + 1) / c.value(n) < ratio_bound:
            raise AssertionError("ratio certificate fails at %d" % n)
    ones = [(i, i) for i in range(window)]
    for i, j in ones:
        if b.value(i) * c.value(j) != 1:
            raise AssertionError("diagonal entry (%d, %d) is not one"
                                 % (i, j))
    return {
        "regrouped": b,
        "widths": widths,
        "reciprocals": c,
        "ratio_bound": ratio_bound,
        "product_ones": ones,
        "ones_description": "every diagonal entry (i, i) of the double "
                            "family (b_i * c_j) equals one",
    }
