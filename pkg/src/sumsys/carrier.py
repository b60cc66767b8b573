"""Finite carriers: the underlying sets that summation systems live on.

A carrier is a finite set {0, ..., n-1} together with whatever algebraic
structure happens to be present: a distinguished zero, an addition table,
a negation table, and possibly a multiplication table.  All structure is
optional, so the one class covers bare sets, magmas, commutative monoids,
abelian groups and finite rings.  The ``laws`` argument says how much of
that structure should be validated at construction time.
"""

import itertools


class CarrierError(ValueError):
    pass


def _as_table(table, size, what):
    rows = tuple(tuple(row) for row in table)
    if len(rows) != size or any(len(r) != size for r in rows):
        raise CarrierError("%s table must be %dx%d" % (what, size, size))
    for row in rows:
        for v in row:
            if not (isinstance(v, int) and 0 <= v < size):
                raise CarrierError("%s table entry %r out of range" % (what, v))
    return rows


class Carrier:
    """A finite set with optional zero / add / neg / mul structure.

    laws:
      "none"   nothing is checked beyond table shapes
      "magma"  add must be present (a total binary operation)
      "monoid" add must be a commutative monoid with identity ``zero``
      "group"  add must be an abelian group; if mul is present it must be
               associative and distribute over add (a commutative-group ring)
    """

    def __init__(self, size, zero=None, add=None, neg=None, mul=None,
                 one=None, names=None, laws="none"):
        if size <= 0:
            raise CarrierError("carrier must be nonempty")
        self.size = size
        self.zero = zero
        self.add = _as_table(add, size, "add") if add is not None else None
        self.neg = tuple(neg) if neg is not None else None
        self.mul = _as_table(mul, size, "mul") if mul is not None else None
        self.one = one
        if names is None:
            names = tuple(str(i) for i in range(size))
        self.names = tuple(names)
        if len(self.names) != size:
            raise CarrierError("need one name per element")
        if len(set(self.names)) != size:
            raise CarrierError("element names must be distinct")
        self.laws = laws
        self._validate(laws)

    # -- validation -------------------------------------------------

    def _validate(self, laws):
        if laws == "none":
            return
        if self.add is None:
            raise CarrierError("laws %r need an addition table" % laws)
        if laws == "magma":
            return
        if self.zero is None:
            raise CarrierError("laws %r need a zero" % laws)
        els = range(self.size)
        for x in els:
            if self.add[self.zero][x] != x or self.add[x][self.zero] != x:
                raise CarrierError("zero is not an additive identity")
        for x, y in itertools.product(els, repeat=2):
            if self.add[x][y] != self.add[y][x]:
                raise CarrierError("addition is not commutative")
        for x, y, z in itertools.product(els, repeat=3):
            if self.add[self.add[x][y]][z] != self.add[x][self.add[y][z]]:
                raise CarrierError("addition is not associative")
        if laws == "monoid":
            return
        if laws != "group":
            raise CarrierError("unknown laws %r" % laws)
        if self.neg is None:
            raise CarrierError("group laws need a negation table")
        for x in els:
            if self.add[x][self.neg[x]] != self.zero:
                raise CarrierError("negation table is wrong at %d" % x)
        if self.mul is not None:
            for x, y, z in itertools.product(els, repeat=3):
                if self.mul[self.mul[x][y]][z] != self.mul[x][self.mul[y][z]]:
                    raise CarrierError("multiplication is not associative")
                if (self.mul[x][self.add[y][z]]
                        != self.add[self.mul[x][y]][self.mul[x][z]]):
                    raise CarrierError("left distributivity fails")
                if (self.mul[self.add[x][y]][z]
                        != self.add[self.mul[x][z]][self.mul[y][z]]):
                    raise CarrierError("right distributivity fails")
            if self.one is not None:
                for x in els:
                    if self.mul[self.one][x] != x or self.mul[x][self.one] != x:
                        raise CarrierError("one is not a multiplicative identity")

    # -- operations -------------------------------------------------

    def elements(self):
        return range(self.size)

    def plus(self, x, y):
        return self.add[x][y]

    def minus(self, x):
        return self.neg[x]

    def times(self, x, y):
        return self.mul[x][y]

    def sum_list(self, xs):
        """Fold a finite iterable with the addition table, starting at zero."""
        acc = self.zero
        for x in xs:
            acc = self.add[acc][x]
        return acc

    def scale(self, n, x):
        """n-fold sum x + x + ... + x (n a nonnegative int)."""
        acc = self.zero
        for _ in range(n):
            acc = self.add[acc][x]
        return acc

    def name(self, x):
        return self.names[x]

    def index_of(self, name):
        return self.names.index(name)

    def has_group(self):
        return self.laws == "group"

    def __repr__(self):
        return "Carrier(size=%d, laws=%r)" % (self.size, self.laws)

    # -- subgroup machinery (abelian group carriers only) -----------

    def subgroups(self):
        """All subgroups, each as a frozenset of elements.

        Only sensible for abelian group carriers; small sizes only since
        this walks every zero-containing subset and keeps the closed ones.
        """
        if not self.has_group():
            raise CarrierError("subgroups need group laws")
        rest = [x for x in self.elements() if x != self.zero]
        found = []
        for r in range(len(rest) + 1):
            for combo in itertools.combinations(rest, r):
                sub = frozenset(combo) | {self.zero}
                if self._closed_subgroup(sub):
                    found.append(sub)
        return found

    def _closed_subgroup(self, sub):
        for x in sub:
            if self.neg[x] not in sub:
                return False
            for y in sub:
                if self.add[x][y] not in sub:
                    return False
        return True

    def generated_subgroup(self, gens):
        """Smallest subgroup containing the given elements."""
        if not self.has_group():
            raise CarrierError("generated_subgroup needs group laws")
        sub = {self.zero}
        frontier = list(gens)
        while frontier:
            x = frontier.pop()
            if x in sub:
                continue
            sub.add(x)
            frontier.append(self.neg[x])
            for y in list(sub):
                frontier.append(self.add[x][y])
        return frozenset(sub)


# -- builders --------------------------------------------------------


def cyclic(n):
    """The ring of integers mod n."""
    els = range(n)
    add = [[(x + y) % n for y in els] for x in els]
    neg = [(-x) % n for x in els]
    mul = [[(x * y) % n for y in els] for x in els]
    one = 1 % n
    return Carrier(n, zero=0, add=add, neg=neg, mul=mul, one=one, laws="group")


def klein():
    """The product ring F2 x F2; additively the Klein four-group.

    Element i encodes the pair (i & 1, i >> 1).  Addition is xor of the
    encodings and multiplication is bitwise and.
    """
    els = range(4)
    add = [[x ^ y for y in els] for x in els]
    neg = [x for x in els]
    mul = [[x & y for y in els] for x in els]
    names = ("(0,0)", "(1,0)", "(0,1)", "(1,1)")
    return Carrier(4, zero=0, add=add, neg=neg, mul=mul, one=3,
                   names=names, laws="group")


def bare(n):
    """A structureless n-element set."""
    return Carrier(n, laws="none")


def magma(table, zero=None, names=None):
    """A set with one total binary operation and nothing else checked."""
    n = len(table)
    return Carrier(n, zero=zero, add=table, names=names, laws="magma")
