"""Summation of column-finite matrices, at desk scale.

Endomorphisms of a free module of countable rank are column-finite
matrices: each column holds finitely many nonzero entries.  A family of
them is summable exactly when each column is touched by only finitely
many members, and the sum is computed columnwise.  Everything infinite
here is kept lazy: matrices answer entry and column queries, families
carry per-column certificates naming which member indices can touch a
column, and equality between lazy matrices is checked on a finite
window (default 32 x 32).

The module provides the reordering machinery for such rings: the
two-sided rearrangement identity over an index-splitting map psi (with
its dual psi'), its single-sum form, the prefix-difference criterion
for recovering a countable sum, and the agreement between the
annihilator-neighborhood route and the recursive partial-sum route.
Scalars default to the two-element field, with exact rationals
available to keep characteristic-2 artifacts out of the evidence.
"""

import itertools
from fractions import Fraction

from .families import OMEGA
from .reports import Bounds, HypothesisNotMet, ReportTimer


class MissingCertificate(ValueError):
    """A generated family was built without a column certificate."""


class IndexMismatch(ValueError):
    """Left multipliers do not line up with the family's index set."""


class NotSummable(ValueError):
    """A sum was requested for a family with an infinite column."""


# -- scalars ---------------------------------------------------------------


class PrimeField(object):
    def __init__(self, p):
        self.p = p
        self.name = "f%d" % p
        self.zero = 0
        self.one = 1 % p

    def from_int(self, n):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("no inverse of 0")
        return pow(a, self.p - 2, self.p)

    def __repr__(self):
        return "PrimeField(%d)" % self.p


class RationalField(object):
    name = "q"
    zero = Fraction(0)
    one = Fraction(1)

    def from_int(self, n):
        return Fraction(n)

    def add(self, a, b):
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def inv(self, a):
        return 1 / Fraction(a)

    def __repr__(self):
        return "RationalField()"


F2 = PrimeField(2)
QQ = RationalField()

_FIELDS = {"f2": F2, "q": QQ}


def field_by_name(name):
    name = name.lower()
    if name in _FIELDS:
        return _FIELDS[name]
    if name.startswith("f") and name[1:].isdigit():
        p = int(name[1:])
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError("not a prime field: %r" % (name,))
        return PrimeField(p)
    raise ValueError("unknown scalar field %r" % (name,))


# -- matrices --------------------------------------------------------------


class SparseMatrix(object):
    """A matrix with finitely many nonzero entries (hence
    column-finite), stored as a map (row, col) -> nonzero scalar."""

    def __init__(self, field, entries):
        self.field = field
        cleaned = {}
        for (r, c), v in (entries.items() if isinstance(entries, dict)
                          else entries):
            if r < 0 or c < 0:
                raise ValueError("negative matrix index (%d, %d)" % (r, c))
            if v != field.zero:
                cleaned[(r, c)] = v
        self.entries = cleaned

    @classmethod
    def unit(cls, field, i, j, value=None):
        """e_{i,j}: the matrix with a single entry at (i, j)."""
        return cls(field, {(i, j): field.one if value is None else value})

    @classmethod
    def zero(cls, field):
        return cls(field, {})

    @classmethod
    def from_rows(cls, field, rows):
        out = {}
        for r, row in enumerate(rows):
            for c, v in enumerate(row):
                out[(r, c)] = field.from_int(v) if isinstance(v, int) else v
        return cls(field, out)

    def entry(self, r, c):
        return self.entries.get((r, c), self.field.zero)

    def column(self, c):
        return {r: v for (r, c2), v in self.entries.items() if c2 == c}

    def columns(self):
        return sorted({c for (_, c) in self.entries})

    def rows(self):
        return sorted({r for (r, _) in self.entries})

    @property
    def is_zero(self):
        return not self.entries

    def __add__(self, other):
        f = self.field
        out = dict(self.entries)
        for k, v in other.entries.items():
            s = f.add(out.get(k, f.zero), v)
            if s == f.zero:
                out.pop(k, None)
            else:
                out[k] = s
        return SparseMatrix(f, out)

    def __neg__(self):
        f = self.field
        return SparseMatrix(f, {k: f.neg(v) for k, v in self.entries.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        f = self.field
        return SparseMatrix(f, {k: f.mul(s, v)
                                for k, v in self.entries.items()})

    def key(self):
        return tuple(sorted(self.entries.items()))

    def __eq__(self, other):
        return (isinstance(other, SparseMatrix)
                and self.field.name == other.field.name
                and self.entries == other.entries)

    def __hash__(self):
        return hash((self.field.name, self.key()))

    def rank(self):
        """Exact rank by sparse row reduction over the scalar field."""
        f = self.field
        by_row = {}
        for (r, c), v in self.entries.items():
            by_row.setdefault(r, {})[c] = v
        pivots = []
        rank = 0
        for vec in by_row.values():
            vec = dict(vec)
            for col, pvec in pivots:
                if col in vec:
                    factor = vec[col]
                    for c2, v2 in pvec.items():
                        nv = f.add(vec.get(c2, f.zero),
                                   f.neg(f.mul(factor, v2)))
                        if nv == f.zero:
                            vec.pop(c2, None)
                        else:
                            vec[c2] = nv
            if vec:
                col = min(vec)
                inv = f.inv(vec[col])
                pivots.append((col, {c2: f.mul(inv, v2)
                                     for c2, v2 in vec.items()}))
                rank += 1
        return rank

    def __repr__(self):
        return "SparseMatrix(%s, %d entries)" % (self.field.name,
                                                 len(self.entries))


class IdentityMatrix(object):
    """The identity, too wide to be sparse but easy to answer for."""

    def __init__(self, field):
        self.field = field

    def entry(self, r, c):
        return self.field.one if r == c else self.field.zero

    def column(self, c):
        return {c: self.field.one}

    def __repr__(self):
        return "IdentityMatrix(%s)" % self.field.name


class LazyMatrix(object):
    """A matrix known only through entry and column queries; used for
    sums of infinite families and other window-checked values."""

    def __init__(self, field, entry_fn, column_fn, note=""):
        self.field = field
        self._entry = entry_fn
        self._column = column_fn
        self.note = note

    def entry(self, r, c):
        return self._entry(r, c)

    def column(self, c):
        return self._column(c)

    def __repr__(self):
        return "LazyMatrix(%s%s)" % (self.field.name,
                                     ", " + self.note if self.note else "")


def lazy_sum(field, mats, note=""):
    """Pointwise sum of finitely many column-accessible matrices,
    collapsing to a SparseMatrix when every part is one."""
    mats = list(mats)
    if all(isinstance(m, SparseMatrix) for m in mats):
        out = SparseMatrix.zero(field)
        for m in mats:
            out = out + m
        return out

    def entry(r, c):
        v = field.zero
        for m in mats:
            v = field.add(v, m.entry(r, c))
        return v

    def column(c):
        return _combine_columns(field, [m.column(c) for m in mats])

    return LazyMatrix(field, entry, column, note or "sum of %d" % len(mats))


def lazy_neg(field, m):
    if isinstance(m, SparseMatrix):
        return -m
    return LazyMatrix(field, lambda r, c: field.neg(m.entry(r, c)),
                      lambda c: {r: field.neg(v)
                                 for r, v in m.column(c).items()},
                      "negated")


def _combine_columns(field, cols):
    out = {}
    for col in cols:
        for r, v in col.items():
            s = field.add(out.get(r, field.zero), v)
            if s == field.zero:
                out.pop(r, None)
            else:
                out[r] = s
    return out


def mat_mul(left, right):
    """left * right where right is sparse and left answers column
    queries; column q of the product is the left image of right's
    column q, so the work stays finite."""
    f = right.field
    out = {}
    for q in right.columns():
        col = _combine_columns(
            f, [{r: f.mul(v, w) for r, w in left.column(m).items()}
                for m, v in right.column(q).items()])
        for r, v in col.items():
            out[(r, q)] = v
    return SparseMatrix(f, out)


def _window_column(m, c, window):
    """Column c cut to the window's rows; one column query per call,
    which keeps lazy comparisons linear instead of quadratic."""
    return {r: v for r, v in m.column(c).items() if r < window}


def window_of(m, window):
    cols = [_window_column(m, c, window) for c in range(window)]
    return tuple(tuple(cols[c].get(r, m.field.zero)
                       for c in range(window))
                 for r in range(window))


def windows_equal(a, b, window):
    """Agreement on the top-left window x window corner."""
    for c in range(window):
        if _window_column(a, c, window) != _window_column(b, c, window):
            return False
    return True


def first_window_difference(a, b, window):
    for c in range(window):
        ca = _window_column(a, c, window)
        cb = _window_column(b, c, window)
        if ca != cb:
            r = min(set(ca) ^ set(cb)
                    or {rr for rr in ca if ca[rr] != cb.get(rr)})
            return {"row": r, "col": c,
                    "left": str(ca.get(r, a.field.zero)),
                    "right": str(cb.get(r, b.field.zero))}
    return None


def window_rank(m, window):
    f = m.field
    ent = {}
    for c in range(window):
        for r, v in _window_column(m, c, window).items():
            ent[(r, c)] = v
    return SparseMatrix(f, ent).rank()


def in_j_fin(m, window=32):
    """Whether the matrix has finite rank.  Exact for sparse matrices;
    for lazy ones the verdict is window-bounded: the rank is read on a
    half window and a full window and called finite when it has
    stabilized."""
    if isinstance(m, SparseMatrix):
        return True
    return window_rank(m, window) == window_rank(m, max(1, window // 2))


# -- families --------------------------------------------------------------


class MatrixFamily(object):
    """A family of column-finite matrices with a column certificate:
    for each column, the finite set of member indices allowed to touch
    it (or OMEGA, declaring the column infinitely busy).  An index
    outside the certificate must have a zero column there; that
    soundness is spot-checked, not proven."""

    def __init__(self, field, kind, mats=None, rule=None, cert=None,
                 bad_columns=frozenset(), name=""):
        self.field = field
        self.kind = kind
        self.mats = mats
        self.rule = rule
        self._cert = cert
        self.bad_columns = frozenset(bad_columns)
        self.name = name
        if kind == "generated" and cert is None:
            raise MissingCertificate(
                "generated family %r needs a column certificate" % (name,))

    @classmethod
    def finite(cls, mats, name=""):
        mats = list(mats)
        if not mats:
            raise ValueError("use a nonempty list; the empty sum is "
                             "the zero matrix")
        return cls(mats[0].field, "finite", mats=mats, name=name)

    @classmethod
    def generated(cls, field, rule, cert, bad_columns=frozenset(), name=""):
        return cls(field, "generated", rule=rule, cert=cert,
                   bad_columns=bad_columns, name=name)

    def member(self, i):
        if self.kind == "finite":
            return self.mats[i]
        return self.rule(i)

    def __len__(self):
        if self.kind == "finite":
            return len(self.mats)
        raise TypeError("generated families are indexed by all of N")

    def certificate(self, col):
        """Indices allowed to touch the column (tuple), or OMEGA."""
        if self.kind == "finite":
            return tuple(i for i, m in enumerate(self.mats)
                         if m.column(col))
        if col in self.bad_columns:
            return OMEGA
        return tuple(self._cert(col))

    @property
    def summable(self):
        return self.kind == "finite" or not self.bad_columns

    def indices_through(self, cols):
        out = set()
        for c in cols:
            cert = self.certificate(c)
            if cert is not OMEGA:
                out.update(cert)
        return sorted(out)

    def __repr__(self):
        return "MatrixFamily(%s, %s%s)" % (
            self.kind, self.field.name,
            ", " + self.name if self.name else "")


def endo_summable(f):
    """Summable exactly when every column certificate is finite."""
    return f.summable


def endo_sum(f):
    """The columnwise sum, as a lazy matrix touching only
    certificate-listed members per query."""
    if not f.summable:
        raise NotSummable("family %r has an infinitely busy column"
                          % (f.name,))
    field = f.field

    def column(c):
        cert = f.certificate(c)
        return _combine_columns(field,
                                [f.member(i).column(c) for i in cert])

    def entry(r, c):
        return column(c).get(r, field.zero)

    return LazyMatrix(field, entry, column, "sum of %s" % (f.name or f.kind))


def spot_check_certificate(f, window=32, samples=40, seed=0):
    """Sample (index, column) pairs outside the certificate and verify
    the member's column is zero there.  Returns a witness dict or
    None."""
    import random
    rng = random.Random(seed)
    for _ in range(samples):
        col = rng.randrange(window)
        cert = f.certificate(col)
        if cert is OMEGA:
            continue
        i = rng.randrange(window)
        if i in cert:
            continue
        stray = f.member(i).column(col)
        if stray:
            return {"index": i, "col": col, "stray-rows": sorted(stray)}
    return None


def left_multiply_family(r, a):
    """The family (r_i a_i).  Since column q of r_i a_i is the r_i
    image of a_i's column q, a zero column stays zero, so a's
    certificate is still sound for the product family; in particular
    the product of a summable family is again summable."""
    if a.kind == "finite":
        if not callable(r):
            r = list(r)
            if len(r) != len(a.mats):
                raise IndexMismatch("%d multipliers for %d members"
                                    % (len(r), len(a.mats)))
            mults = r
        else:
            mults = [r(i) for i in range(len(a.mats))]
        return MatrixFamily.finite(
            [mat_mul(m, x) for m, x in zip(mults, a.mats)],
            name="left multiple of %s" % (a.name or "finite"))
    if not callable(r):
        raise IndexMismatch("a generated family needs a rule for its "
                            "multipliers")
    return MatrixFamily.generated(
        a.field, lambda i: mat_mul(r(i), a.rule(i)), a.certificate,
        bad_columns=a.bad_columns,
        name="left multiple of %s" % (a.name or "generated"))


# -- the splitting maps for reordering -------------------------------------


class PsiMap(object):
    """An index-splitting map psi: K -> P(I), held through its dual
    psi': I -> P(K), i -> {k : i in psi(k)}.  Desk-scale reordering
    only ever needs the dual pointwise (and finite), since psi(k) is
    recovered inside any fixed column's certificate by membership."""

    def __init__(self, dual, name):
        self._dual = dual
        self.name = name

    def dual(self, i):
        return tuple(self._dual(i))

    def __repr__(self):
        return "PsiMap(%s)" % self.name


def psi_diagonal():
    """psi(k) = {k}; the left-multiple-summable specialization."""
    return PsiMap(lambda i: (i,), "diagonal")


def psi_constant():
    """psi(0) = I; a single block holding everything."""
    return PsiMap(lambda i: (0,), "constant")


def psi_blocks(m):
    """Partition into consecutive blocks of m indices."""
    return PsiMap(lambda i: (i // m,), "blocks-%d" % m)


def psi_overlap():
    """psi(k) = {k, k+1}; blocks overlap, so this is not a partition."""
    return PsiMap(lambda i: (i,) if i == 0 else (i - 1, i), "overlap")


def psi_tails():
    """psi(k) = {k, k+1, ...}; the dual is the initial segment {0..i},
    the splitting behind the prefix-difference criterion."""
    return PsiMap(lambda i: tuple(range(i + 1)), "tails")


def _r_at(r, k):
    if callable(r):
        return r(k)
    return r[k]


def check_left_reorder(a, r, psi, window=32, name=""):
    """Window-verify the rearrangement identity

        Sigma([Sigma(r_k)_{k in psi'(i)}] a_i)_i
            = Sigma(r_k [Sigma(a_i)_{i in psi(k)}])_k .

    The left side is evaluated as an honest family sum (its certificate
    is a's).  The right side is evaluated columnwise: within column q
    only members certified for q matter, and psi(k) is consulted only
    through the dual.  Both sides' intermediate sums are defined by
    construction once a is summable and each psi'(i) is finite, which
    is the axiom's hypothesis."""
    b = Bounds().replace(window=window)
    timer = ReportTimer("left-reorder[%s]" % (name or psi.name), b)
    if not a.summable:
        raise HypothesisNotMet("the base family must be summable")
    field = a.field

    def s_of(i):
        return lazy_sum(field, [_r_at(r, k) for k in psi.dual(i)])

    if a.kind == "finite":
        lhs_fam = MatrixFamily.finite(
            [mat_mul(s_of(i), m) for i, m in enumerate(a.mats)])
    else:
        lhs_fam = MatrixFamily.generated(
            field, lambda i: mat_mul(s_of(i), a.rule(i)), a.certificate,
            name="reordered lhs")
    lhs = endo_sum(lhs_fam)

    def rhs_column(q):
        cert = a.certificate(q)
        by_k = {}
        for i in cert:
            for k in psi.dual(i):
                by_k.setdefault(k, []).append(i)
        cols = []
        for k, members in sorted(by_k.items()):
            inner = _combine_columns(
                field, [a.member(i).column(q) for i in members])
            rk = _r_at(r, k)
            cols.append(_combine_columns(
                field, [{rr: field.mul(v, w)
                         for rr, w in rk.column(m).items()}
                        for m, v in inner.items()]))
        return _combine_columns(field, cols)

    rhs = LazyMatrix(field, lambda rr, c: rhs_column(c).get(rr, field.zero),
                     rhs_column, "reordered rhs")
    diff = first_window_difference(lhs, rhs, window)
    timer.note("window", window)
    if diff is None:
        return timer.passed()
    return timer.failed({"check": "left-reorder", "psi": psi.name,
                         "family": a.name, "difference": diff})


def reorder_single_sum(a, r, psi):
    """The single-sum form of the rearrangement: with
    L = {(j, k) : j in psi(k)}, both nested orders equal
    Sigma(r_k a_j)_{(j,k) in L}.  Returned as a lazy matrix."""
    field = a.field

    def column(q):
        cert = a.certificate(q)
        cols = []
        for j in cert:
            aj_col = a.member(j).column(q)
            for k in psi.dual(j):
                rk = _r_at(r, k)
                cols.append(_combine_columns(
                    field, [{rr: field.mul(v, w)
                             for rr, w in rk.column(m).items()}
                            for m, v in aj_col.items()]))
        return _combine_columns(field, cols)

    return LazyMatrix(field, lambda rr, c: column(c).get(rr, field.zero),
                      column, "single-sum form")


# -- countable reconstruction and the two summation routes -----------------


def count_im_check(a, t, window=32, name=""):
    """Window-verify the biconditional: a (over N) is summable with sum
    t exactly when the prefix-difference family
    (t - (a_0 + ... + a_{k-1}))_k is summable.

    The left side reads the family's certificates and compares the sum
    against t on the window.  The right side walks the prefix
    differences column by column: within a column, once the prefix has
    absorbed every certified member the difference freezes, and the
    frozen value must be the zero column for the difference family to
    have a finite certificate there."""
    b = Bounds().replace(window=window)
    timer = ReportTimer("count-im[%s]" % (name or a.name or a.kind), b)
    field = a.field

    lhs = a.summable
    if lhs:
        total = endo_sum(a)
        for c in range(window):
            if total.column(c) != dict(t.column(c)):
                lhs = False
                break

    rhs = True
    for c in range(window):
        cert = a.certificate(c)
        if cert is OMEGA:
            rhs = False   # the difference column never freezes
            break
        summed = _combine_columns(field,
                                  [a.member(i).column(c) for i in cert])
        frozen = _combine_columns(
            field, [t.column(c),
                    {rr: field.neg(v) for rr, v in summed.items()}])
        if frozen:
            rhs = False
            break

    timer.note("summable-with-sum-t", lhs)
    timer.note("difference-family-summable", rhs)
    timer.note("window", window)
    if lhs == rhs:
        return timer.passed()
    return timer.failed({"check": "count-im", "family": a.name,
                         "summable-with-sum-t": lhs,
                         "difference-family-summable": rhs})


def countable_criterion(f, window=32):
    """A family is summable exactly when all its countable subfamilies
    are.  At desk scale families are already countably indexed, so the
    content is the witness: when f is not summable, the members
    certified busy on a bad column form a countable subfamily that is
    itself not summable."""
    b = Bounds().replace(window=window)
    timer = ReportTimer("countable-criterion[%s]" % (f.name or f.kind), b)
    if f.summable:
        timer.note("summable", True)
        return timer.passed()
    bad = sorted(f.bad_columns)[0]
    # in the catalog, every member of a bad family is busy on the bad
    # column, so the witness subfamily is the family itself
    busy = [i for i in range(window) if f.member(i).column(bad)]
    witness = MatrixFamily.generated(
        f.field, f.rule, f.certificate, bad_columns=f.bad_columns,
        name="members busy on column %d" % bad)
    if witness.summable:
        return timer.failed({"check": "countable-criterion",
                             "note": "witness subfamily unexpectedly "
                                     "summable", "family": f.name})
    timer.note("witness-bad-column", bad)
    timer.note("witness-busy-prefix", len(busy))
    return timer.passed()


def szele_topology_check(f, window=32):
    """Two routes to the same sums.  Route one sums unconditionally:
    a column is acceptable when only certificate-listed members touch
    it (the annihilator-neighborhood condition on the window's basis
    vectors).  Route two runs partial sums in index order and asks each
    window column to stop changing.  The routes must agree on
    summability and, when both accept, on every window column."""
    b = Bounds().replace(window=window)
    timer = ReportTimer("szele[%s]" % (f.name or f.kind), b)
    field = f.field

    uncond_ok = f.summable
    uncond_cols = {}
    if uncond_ok:
        total = endo_sum(f)
        uncond_cols = {c: total.column(c) for c in range(window)}

    if f.kind == "finite":
        horizon = len(f.mats)
    else:
        listed = f.indices_through(range(window))
        horizon = max(listed + [0]) + window // 2 + 2
    partial = {c: {} for c in range(window)}
    last_change = {c: -1 for c in range(window)}
    for i in range(horizon):
        m = f.member(i)
        for c in range(window):
            col = m.column(c)
            if col:
                partial[c] = _combine_columns(field, [partial[c], col])
                last_change[c] = i
    if f.kind == "finite":
        partial_ok = True
    else:
        # a column still moving near the horizon is called divergent
        partial_ok = all(last_change[c] < horizon - window // 2
                         for c in range(window))

    timer.note("unconditional", uncond_ok)
    timer.note("partial-sums", partial_ok)
    timer.note("window", window)
    if uncond_ok != partial_ok:
        return timer.failed({"check": "szele", "family": f.name,
                             "unconditional": uncond_ok,
                             "partial-sums": partial_ok})
    if uncond_ok:
        for c in range(window):
            if uncond_cols[c] != partial[c]:
                return timer.failed({"check": "szele", "family": f.name,
                                     "col": c,
                                     "note": "routes disagree on a "
                                             "window column"})
    return timer.passed()


# -- the built-in family catalog -------------------------------------------


def diagonal_units(field):
    """(e_{i,i})_i; summable with sum the identity."""
    return MatrixFamily.generated(
        field, lambda i: SparseMatrix.unit(field, i, i),
        lambda c: (c,), name="diagonal-units")


def up_shift(field):
    """(e_{i,i+1})_i; summable with sum the upward shift."""
    return MatrixFamily.generated(
        field, lambda i: SparseMatrix.unit(field, i, i + 1),
        lambda c: (c - 1,) if c > 0 else (), name="up-shift")


def down_shift(field):
    """(e_{i+1,i})_i; summable with sum the downward shift."""
    return MatrixFamily.generated(
        field, lambda i: SparseMatrix.unit(field, i + 1, i),
        lambda c: (c,), name="down-shift")


def row_concentration(field):
    """(e_{0,i})_i; summable, the sum's first row is all ones."""
    return MatrixFamily.generated(
        field, lambda i: SparseMatrix.unit(field, 0, i),
        lambda c: (c,), name="row-concentration")


def column_concentration(field):
    """(e_{i,0})_i; every member is busy on column 0, so not
    summable."""
    return MatrixFamily.generated(
        field, lambda i: SparseMatrix.unit(field, i, 0),
        lambda c: (), bad_columns=frozenset([0]),
        name="column-concentration")


def staircase(field, width=64):
    """The strictly-upper staircase: member i holds ones at (i, j) for
    j > i.  Rows are infinite in the source example; members here stop
    at ``width`` columns to stay finitely supported, which leaves every
    window up to that width faithful.  Illustrative only."""
    def rule(i):
        return SparseMatrix(field, {(i, j): field.one
                                    for j in range(i + 1, width)})

    def cert(c):
        return tuple(range(c)) if c < width else ()

    return MatrixFamily.generated(field, rule, cert,
                                  name="staircase-%d" % width)


def scaled_diagonal(field):
    """(c_i e_{i,i}) with c_i = i+1 read into the field; over the
    rationals this keeps all entries distinct."""
    return MatrixFamily.generated(
        field, lambda i: SparseMatrix.unit(field, i, i,
                                           field.from_int(i + 1)),
        lambda c: (c,), name="scaled-diagonal")


CATALOG = {
    "diagonal-units": diagonal_units,
    "up-shift": up_shift,
    "down-shift": down_shift,
    "row-concentration": row_concentration,
    "column-concentration": column_concentration,
    "staircase": staircase,
    "scaled-diagonal": scaled_diagonal,
}


def catalog_family(name, field=F2, **params):
    if name not in CATALOG:
        raise KeyError("unknown catalog family %r" % (name,))
    return CATALOG[name](field, **params)


def omega_catalog_families(field=F2):
    return [make(field) for make in CATALOG.values()]


def sample_matrices(field):
    """Small sparse matrices used wherever the checks need concrete
    ring elements."""
    u = SparseMatrix.unit
    return [SparseMatrix.zero(field),
            u(field, 0, 0),
            u(field, 1, 3),
            u(field, 0, 0) + u(field, 1, 1) + u(field, 0, 2),
            u(field, 2, 0, field.from_int(1)) + u(field, 0, 1),
            SparseMatrix.from_rows(field, [[1, 1], [0, 1]])]


# -- checks -----------------------------------------------------------------


def _scope_fields(scope):
    fields = scope.get("fields")
    if fields is None:
        fields = [F2, QQ]
    return list(fields)


def _scope_window(scope):
    return scope.get("window", 32)


def _chk_diagonal_identity(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        diag = diagonal_units(field)
        if not endo_summable(diag):
            return {"check": "endo-note",
                    "note": "diagonal units must be summable"}
        if not windows_equal(endo_sum(diag), IdentityMatrix(field), window):
            return {"check": "endo-note", "field": field.name,
                    "note": "diagonal units must sum to the identity"}
        if endo_summable(column_concentration(field)):
            return {"check": "endo-note", "field": field.name,
                    "note": "the column concentration must be rejected"}
        for mats in ([SparseMatrix.unit(field, 0, 0)],
                     sample_matrices(field)[1:3]):
            if not endo_summable(MatrixFamily.finite(mats)):
                return {"check": "endo-note", "field": field.name,
                        "note": "finite lists are always summable"}
    timer.note("window", window)
    return None


def _chk_certificates(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        for f in omega_catalog_families(field):
            bad = spot_check_certificate(f, window=window,
                                         samples=scope.get("samples", 60),
                                         seed=scope.get("seed", 0))
            if bad is not None:
                bad["family"] = f.name
                bad["check"] = "endo-note"
                return bad
    timer.note("families", len(CATALOG))
    return None


def _chk_left_multiple(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        diag = diagonal_units(field)
        moved = left_multiply_family(
            lambda i: SparseMatrix.unit(field, 0, i), diag)
        if not endo_summable(moved):
            return {"check": "endo-note", "field": field.name,
                    "note": "left multiples of a summable family must "
                            "stay summable"}
        top = endo_sum(moved)
        if any(top.entry(0, c) != field.one for c in range(window)) or \
                any(top.entry(1, c) != field.zero for c in range(window)):
            return {"check": "endo-note", "field": field.name,
                    "note": "e_{0,i} e_{i,i} must sum to the all-ones "
                            "first row"}
        zeroed = left_multiply_family(
            lambda i: SparseMatrix.zero(field), diag)
        if not windows_equal(endo_sum(zeroed), SparseMatrix.zero(field),
                             window):
            return {"check": "endo-note", "field": field.name,
                    "note": "zero multipliers must give the zero sum"}
        kept = left_multiply_family(lambda i: IdentityMatrix(field), diag)
        if not windows_equal(endo_sum(kept), endo_sum(diag), window):
            return {"check": "endo-note", "field": field.name,
                    "note": "identity multipliers must change nothing"}
        try:
            left_multiply_family([SparseMatrix.zero(field)],
                                 MatrixFamily.finite(sample_matrices(field)[1:3]))
            return {"check": "endo-note",
                    "note": "misaligned multipliers must raise"}
        except IndexMismatch:
            pass
    timer.note("window", window)
    return None


def _reorder_configs(field):
    """Catalog configurations for the rearrangement identity: pairs of
    (family, multipliers, psi)."""
    u = SparseMatrix.unit
    one = IdentityMatrix(field)
    m = SparseMatrix.from_rows(field, [[1, 0, 1], [0, 1, 0]])
    return [
        (diagonal_units(field), lambda k: one, psi_diagonal(), "diag/one"),
        (diagonal_units(field), lambda k: u(field, 0, k), psi_diagonal(),
         "diag/row"),
        (diagonal_units(field), lambda k: m, psi_constant(),
         "diag/constant"),
        (diagonal_units(field), lambda k: one, psi_blocks(2),
         "diag/pairs"),
        (diagonal_units(field), lambda k: u(field, k, k), psi_blocks(3),
         "diag/triples"),
        (up_shift(field), lambda k: one, psi_blocks(2), "shift/pairs"),
        (up_shift(field), lambda k: u(field, k, k), psi_diagonal(),
         "shift/diag"),
        (down_shift(field), lambda k: u(field, 0, k), psi_overlap(),
         "downshift/overlap"),
        (row_concentration(field), lambda k: one, psi_blocks(2),
         "rowconc/pairs"),
        (staircase(field), lambda k: one, psi_blocks(2),
         "staircase/pairs"),
        (staircase(field), lambda k: u(field, k, k), psi_diagonal(),
         "staircase/diag"),
        (scaled_diagonal(field), lambda k: u(field, k, k,
                                             field.from_int(2)),
         psi_overlap(), "scaled/overlap"),
    ]


def _chk_reorder_catalog(scope, bounds, timer):
    window = _scope_window(scope)
    total = 0
    for field in _scope_fields(scope):
        for fam, r, psi, name in _reorder_configs(field):
            rep = check_left_reorder(fam, r, psi, window=window,
                                     name="%s/%s" % (field.name, name))
            total += 1
            if not rep.passed:
                return rep.witness
    timer.note("configurations", total)
    timer.note("window", window)
    return None


def _chk_reorder_single_sum(scope, bounds, timer):
    window = _scope_window(scope)
    checked = 0
    for field in _scope_fields(scope):
        for fam, r, psi, name in _reorder_configs(field)[:6]:
            lhs_fam = MatrixFamily.generated(
                field,
                lambda i, fam=fam, r=r, psi=psi: mat_mul(
                    lazy_sum(field, [_r_at(r, k) for k in psi.dual(i)]),
                    fam.member(i)),
                fam.certificate, name="lhs")
            lhs = endo_sum(lhs_fam)
            flat = reorder_single_sum(fam, r, psi)
            diff = first_window_difference(lhs, flat, window)
            checked += 1
            if diff is not None:
                return {"check": "endo-note", "config": name,
                        "field": field.name, "difference": diff,
                        "note": "nested and single-sum forms must agree"}
    timer.note("configurations", checked)
    return None


def _chk_partition_regroup(scope, bounds, timer):
    """Summing blockwise through any partition must reproduce the plain
    family sum; this is the window-consistency of entry queries."""
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        one = IdentityMatrix(field)
        for fam in [diagonal_units(field), up_shift(field),
                    staircase(field)]:
            base = endo_sum(fam)
            for psi in [psi_blocks(2), psi_blocks(5), psi_constant()]:
                rep = check_left_reorder(fam, lambda k: one, psi,
                                         window=window,
                                         name="regroup/" + fam.name)
                if not rep.passed:
                    return rep.witness
                flat = reorder_single_sum(fam, lambda k: one, psi)
                diff = first_window_difference(base, flat, window)
                if diff is not None:
                    return {"check": "endo-note", "family": fam.name,
                            "psi": psi.name, "difference": diff,
                            "note": "regrouped sum must match the "
                                    "family sum"}
    timer.note("window", window)
    return None


def _chk_count_im(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        ident = IdentityMatrix(field)
        offset = lazy_sum(field, [ident, SparseMatrix.unit(field, 0, 0)],
                          note="identity plus unit")
        mats = sample_matrices(field)[3:5]
        fixtures = [
            (diagonal_units(field), ident, True, "diag=identity"),
            (diagonal_units(field), offset, False, "diag=offset"),
            (MatrixFamily.finite(mats, name="pair"), mats[0] + mats[1],
             True, "finite=own-sum"),
            (column_concentration(field), ident, False, "colconc"),
        ]
        for fam, target, want, name in fixtures:
            rep = count_im_check(fam, target, window=window, name=name)
            if not rep.passed:
                return rep.witness
            got = rep.bounds.get("summable-with-sum-t")
            if got != want:
                return {"check": "endo-note", "fixture": name,
                        "field": field.name,
                        "note": "fixture verdict flipped",
                        "expected": want, "got": got}
    timer.note("fixtures", 4)
    return None


def _chk_countable(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        for fam in omega_catalog_families(field):
            rep = countable_criterion(fam, window=window)
            if not rep.passed:
                return rep.witness
        finite = MatrixFamily.finite(sample_matrices(field)[1:4])
        if not countable_criterion(finite, window=window).passed:
            return {"check": "endo-note",
                    "note": "finite families must pass vacuously"}
    timer.note("families", len(CATALOG) + 1)
    return None


def _chk_szele(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        for fam in omega_catalog_families(field):
            rep = szele_topology_check(fam, window=window)
            if not rep.passed:
                return rep.witness
        finite = MatrixFamily.finite(sample_matrices(field)[1:4])
        rep = szele_topology_check(finite, window=window)
        if not rep.passed:
            return rep.witness
    timer.note("families", len(CATALOG) + 1)
    return None


def _chk_reorderable_ring(scope, bounds, timer):
    """The four reorderable-ring hypotheses, then the ring structure
    they are supposed to buy: induced addition is matrix addition,
    multiplication distributes, negation passes through sums."""
    window = _scope_window(scope)
    ring_window = scope.get("ring_window", 16)
    for field in _scope_fields(scope):
        one = IdentityMatrix(field)
        rep = check_left_reorder(diagonal_units(field), lambda k: one,
                                 psi_blocks(2), window=window,
                                 name="hypothesis")
        if not rep.passed:
            return rep.witness
        # surjectivity: sampled elements are sums (of their singletons)
        for m in sample_matrices(field):
            if not windows_equal(endo_sum(MatrixFamily.finite([m])), m,
                                 window):
                return {"check": "endo-note", "field": field.name,
                        "note": "a singleton must sum to its member"}
        if not windows_equal(endo_sum(MatrixFamily.finite([one])), one,
                             window):
            return {"check": "endo-note", "field": field.name,
                    "note": "the singleton identity must sum to 1"}
        minus_one = lazy_neg(field, one)
        pair = endo_sum(MatrixFamily.finite([one, minus_one]))
        if not windows_equal(pair, SparseMatrix.zero(field), window):
            return {"check": "endo-note", "field": field.name,
                    "note": "(1, -1) must sum to the empty sum"}
        # induced addition = matrix addition
        mats = sample_matrices(field)
        for x, y in itertools.combinations(mats, 2):
            induced = endo_sum(MatrixFamily.finite([x, y]))
            if not windows_equal(induced, x + y, ring_window):
                return {"check": "endo-note", "field": field.name,
                        "note": "induced addition must be matrix "
                                "addition"}
        # distributivity instances, both sides
        for r0, x, y in itertools.islice(
                itertools.permutations(mats[1:], 3), 8):
            if mat_mul(r0, x + y) != mat_mul(r0, x) + mat_mul(r0, y):
                return {"check": "endo-note", "field": field.name,
                        "note": "left distributivity failed"}
            if mat_mul(x + y, r0) != mat_mul(x, r0) + mat_mul(y, r0):
                return {"check": "endo-note", "field": field.name,
                        "note": "right distributivity failed"}
        # negation functoriality on a catalog family
        diag = diagonal_units(field)
        negged = MatrixFamily.generated(
            field, lambda i: -diag.rule(i), diag.certificate,
            name="negated diagonal")
        if not windows_equal(endo_sum(negged),
                             lazy_neg(field, endo_sum(diag)), ring_window):
            return {"check": "endo-note", "field": field.name,
                    "note": "negating members must negate the sum"}
    timer.note("window", window)
    return None


def _chk_rank_j_fin(scope, bounds, timer):
    window = _scope_window(scope)
    for field in _scope_fields(scope):
        u = SparseMatrix.unit
        if u(field, 3, 5).rank() != 1:
            return {"check": "endo-note", "note": "a unit has rank 1"}
        block = u(field, 0, 0) + u(field, 1, 1) + u(field, 2, 2)
        if block.rank() != 3:
            return {"check": "endo-note",
                    "note": "independent units add rank"}
        dep = u(field, 0, 0) + u(field, 0, 1) + u(field, 1, 0) \
            + u(field, 1, 1)
        if dep.rank() != 1:
            return {"check": "endo-note",
                    "note": "the all-ones 2x2 block has rank 1"}
        if not in_j_fin(u(field, 7, 7)):
            return {"check": "endo-note",
                    "note": "sparse matrices always have finite rank"}
        if in_j_fin(endo_sum(diagonal_units(field)), window):
            return {"check": "endo-note", "field": field.name,
                    "note": "the identity must fall outside the "
                            "finite-rank ideal"}
        if not in_j_fin(endo_sum(row_concentration(field)), window):
            return {"check": "endo-note", "field": field.name,
                    "note": "a single-row sum has rank 1"}
        if in_j_fin(endo_sum(staircase(field, width=2 * window)), window):
            return {"check": "endo-note", "field": field.name,
                    "note": "the staircase sum must have growing rank"}
    timer.note("window", window)
    return None


ENDO_CHECKS = [
    ("endo-diagonal-identity", _chk_diagonal_identity),
    ("endo-certificate-soundness", _chk_certificates),
    ("endo-left-multiple", _chk_left_multiple),
    ("endo-reorder-catalog", _chk_reorder_catalog),
    ("endo-reorder-single-sum", _chk_reorder_single_sum),
    ("endo-partition-regroup", _chk_partition_regroup),
    ("endo-count-im", _chk_count_im),
    ("endo-countable-criterion", _chk_countable),
    ("endo-szele-agreement", _chk_szele),
    ("endo-reorderable-ring", _chk_reorderable_ring),
    ("endo-rank-j-fin", _chk_rank_j_fin),
]

ENDO_CHECK_IDS = [name for name, _ in ENDO_CHECKS]
_ENDO = dict(ENDO_CHECKS)


def check_endo_prop(check_id, bounds=None, **scope):
    if check_id not in _ENDO:
        raise KeyError("unknown endomorphism check %r" % (check_id,))
    b = bounds or Bounds()
    timer = ReportTimer(check_id, b)
    witness = _ENDO[check_id](scope, b, timer)
    if witness is None:
        return timer.passed()
    return timer.failed(witness)


def run_endo_suite(check_ids=None, bounds=None, **scope):
    reports = []
    skipped = []
    for cid in check_ids or ENDO_CHECK_IDS:
        try:
            reports.append(check_endo_prop(cid, bounds, **scope))
        except HypothesisNotMet as e:
            skipped.append((cid, str(e)))
    return reports, skipped
