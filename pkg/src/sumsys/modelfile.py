"""Reading and writing model descriptions.

A model file is a handful of "key: value" lines: one "model:" line
naming the kind, then whatever parameters that kind needs.  Blank
lines and "#" comments are ignored.  The same structure exists in
memory as a ModelSpec, and render_model writes it back out in a
canonical form, so specs round-trip through text.

    model: finitary-group
    group: z4

    model: induced
    group: z2
    opens: {}, {1}, {0,1}

    model: uncond
    group: z4
    A: {0}, {0,2}

    model: table
    group: z4
    pair: [] -> 0
    pair: [1, 3] -> 0

Built-in specs cover the zoo under "builtin:" names, so command lines
do not need files for the stock systems.
"""

import os
import re
from fractions import Fraction

from . import carrier as carrier_mod
from . import models
from . import topo
from . import uncond as uncond_mod
from .endo import catalog_family, field_by_name
from .families import ExplicitFinite, MultisetFamily, OMEGA
from .series import SeriesFamily
from .systems import TableSystem, Traits


class InvalidSpec(ValueError):
    """The description does not name a buildable model."""


MODEL_KINDS = ("finitary-group", "zero-only", "constant", "choice",
               "magma-pairs", "pairs-only", "size2-only",
               "multiset-monoid", "induced", "uncond", "table",
               "endo-family", "rational-series")

# which parameter keys each kind accepts; pair and tail may repeat
_KIND_KEYS = {
    "finitary-group": ("group",),
    "zero-only": ("group",),
    "constant": ("group", "value"),
    "choice": ("group",),
    "magma-pairs": (),
    "pairs-only": (),
    "size2-only": ("group",),
    "multiset-monoid": ("alphabet", "cap"),
    "induced": ("group", "opens"),
    "uncond": ("group", "A"),
    "table": ("group", "traits", "pair"),
    "endo-family": ("family", "field", "width"),
    "rational-series": ("head", "cyc", "tail"),
}

_BRACE_GROUP = re.compile(r"\{[^{}]*\}")


class ModelSpec(object):
    """A model kind plus its normalized parameters."""

    def __init__(self, kind, **params):
        if kind not in MODEL_KINDS:
            raise InvalidSpec("unknown model kind %r (one of %s)"
                              % (kind, ", ".join(MODEL_KINDS)))
        allowed = set(_KIND_KEYS[kind])
        for key in params:
            if key not in allowed:
                raise InvalidSpec("model %r does not take %r"
                                  % (kind, key))
        self.kind = kind
        self.params = dict(params)

    def key(self):
        return (self.kind, tuple(sorted(self.params.items())))

    def __eq__(self, other):
        return isinstance(other, ModelSpec) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        inner = ", ".join("%s=%r" % kv
                          for kv in sorted(self.params.items()))
        return "ModelSpec(%s%s)" % (self.kind,
                                    ", " + inner if inner else "")


# -- small literal parsers -------------------------------------------------


def parse_carrier(ref):
    ref = ref.strip()
    if ref == "klein":
        return carrier_mod.klein()
    if re.match(r"^z\d+$", ref):
        n = int(ref[1:])
        if n < 1:
            raise InvalidSpec("cyclic carrier needs a positive order")
        return carrier_mod.cyclic(n)
    m = re.match(r"^bare:(\d+)$", ref)
    if m:
        return carrier_mod.bare(int(m.group(1)))
    raise InvalidSpec("unknown carrier %r (want z<n>, klein or bare:<n>)"
                      % (ref,))


def _parse_set_list(text, what):
    """Brace groups separated by commas: {}, {1}, {0,1}."""
    groups = _BRACE_GROUP.findall(text)
    leftover = _BRACE_GROUP.sub("", text).replace(",", "").strip()
    if leftover or not groups and text.strip():
        raise InvalidSpec("bad %s literal %r" % (what, text))
    out = []
    for g in groups:
        inner = g[1:-1].strip()
        if not inner:
            out.append(())
            continue
        try:
            members = sorted({int(x) for x in inner.split(",")})
        except ValueError:
            raise InvalidSpec("bad set %r in %s" % (g, what))
        out.append(tuple(members))
    return tuple(out)


def _render_set_list(sets):
    return ", ".join("{%s}" % ",".join(str(x) for x in s) for s in sets)


def parse_family(text):
    """[a, b], [a@0, b@3], or {a:2, b:w}."""
    t = text.strip()
    if t.startswith("[") and t.endswith("]"):
        inner = t[1:-1].strip()
        if not inner:
            return ExplicitFinite(())
        parts = [p.strip() for p in inner.split(",")]
        if any("@" in p for p in parts):
            if not all("@" in p for p in parts):
                raise InvalidSpec("mix of labelled and plain entries "
                                  "in %r" % (text,))
            entries = []
            for p in parts:
                e, l = p.split("@", 1)
                entries.append((int(l), int(e)))
            return ExplicitFinite(entries)
        return ExplicitFinite(enumerate(int(p) for p in parts))
    if t.startswith("{") and t.endswith("}"):
        counts = {}
        inner = t[1:-1].strip()
        for p in inner.split(",") if inner else []:
            if ":" not in p:
                raise InvalidSpec("bad multiset entry %r" % (p,))
            e, c = p.split(":", 1)
            c = c.strip()
            counts[int(e)] = OMEGA if c == "w" else int(c)
        return MultisetFamily(counts)
    raise InvalidSpec("bad family literal %r" % (text,))


def render_family(f):
    if f.kind == "multiset":
        return "{%s}" % ", ".join(
            "%d:%s" % (e, "w" if c is OMEGA else c) for e, c in f.counts)
    if f.kind != "finite":
        raise InvalidSpec("only finite and multiset families have "
                          "literals")
    labels = f.labels()
    if labels == tuple(range(f.size())):
        return "[%s]" % ", ".join(str(x) for x in f.elements())
    return "[%s]" % ", ".join("%d@%d" % (x, l) for l, x in f.entries)


def _parse_tail(text):
    """a=1/12 r=1/2 [d=0]"""
    fields = {"d": 0}
    for part in text.split():
        if "=" not in part:
            raise InvalidSpec("bad tail field %r" % (part,))
        k, v = part.split("=", 1)
        if k == "d":
            fields[k] = int(v)
        elif k in ("a", "r"):
            fields[k] = Fraction(v)
        else:
            raise InvalidSpec("unknown tail field %r" % (k,))
    if "a" not in fields or "r" not in fields:
        raise InvalidSpec("a tail needs a= and r=")
    return (fields["a"], fields["r"], fields["d"])


def _render_tail(tail):
    a, r, d = tail
    out = "a=%s r=%s" % (a, r)
    if d:
        out += " d=%d" % (d,)
    return out


def _parse_fractions(text):
    text = text.strip()
    if not text:
        return ()
    return tuple(Fraction(p.strip()) for p in text.split(","))


# -- the file grammar ------------------------------------------------------


def parse_model(text, name=""):
    """Text of a model file -> ModelSpec."""
    kind = None
    params = {}
    where = " in %s" % name if name else ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if ":" not in line:
            raise InvalidSpec("line %d%s is not key: value"
                              % (lineno, where))
        key, value = line.split(":", 1)
        key = key.strip()
        value = value.strip()
        if key == "model":
            if kind is not None:
                raise InvalidSpec("second model line at %d%s"
                                  % (lineno, where))
            kind = value
            continue
        if key in ("pair", "tail"):
            params.setdefault(key, []).append(value)
        elif key in params:
            raise InvalidSpec("repeated key %r at line %d%s"
                              % (key, lineno, where))
        else:
            params[key] = value
    if kind is None:
        raise InvalidSpec("no model line%s" % (where,))
    return _normalize(kind, params)


def _normalize(kind, raw):
    """String parameters -> typed ModelSpec fields."""
    out = {}
    for key, value in raw.items():
        if key == "group":
            parse_carrier(value)      # validate now, build later
            out[key] = value
        elif key in ("value", "alphabet", "cap", "width"):
            try:
                out[key] = int(value)
            except ValueError:
                raise InvalidSpec("%s wants an integer, got %r"
                                  % (key, value))
        elif key == "opens":
            out[key] = _parse_set_list(value, "opens")
        elif key == "A":
            out[key] = _parse_set_list(value, "A")
        elif key == "traits":
            if value != "reindex":
                raise InvalidSpec("the only traits flag is 'reindex'")
            out[key] = value
        elif key == "pair":
            pairs = []
            for item in value:
                if "->" not in item:
                    raise InvalidSpec("pair %r needs family -> sum"
                                      % (item,))
                left, right = item.rsplit("->", 1)
                pairs.append((parse_family(left), int(right)))
            out[key] = tuple(pairs)
        elif key in ("family", "field"):
            out[key] = value
        elif key in ("head", "cyc"):
            out[key] = _parse_fractions(value)
        elif key == "tail":
            out[key] = tuple(_parse_tail(item) for item in value)
        else:
            out[key] = value
    return ModelSpec(kind, **out)


def render_model(spec):
    """ModelSpec -> canonical file text (parse_model inverts this)."""
    lines = ["model: %s" % spec.kind]
    for key in _KIND_KEYS[spec.kind]:
        if key not in spec.params:
            continue
        value = spec.params[key]
        if key in ("opens", "A"):
            lines.append("%s: %s" % (key, _render_set_list(value)))
        elif key == "pair":
            for f, s in value:
                lines.append("pair: %s -> %d" % (render_family(f), s))
        elif key == "tail":
            for t in value:
                lines.append("tail: %s" % (_render_tail(t),))
        elif key in ("head", "cyc"):
            lines.append("%s: %s" % (key,
                                     ", ".join(str(x) for x in value)))
        else:
            lines.append("%s: %s" % (key, value))
    return "\n".join(lines) + "\n"


# -- building --------------------------------------------------------------


def _need(spec, key):
    if key not in spec.params:
        raise InvalidSpec("model %r needs a %s line" % (spec.kind, key))
    return spec.params[key]


def build_model(spec):
    """ModelSpec -> the object it describes.

    Most kinds give a summation system.  endo-family gives a matrix
    family from the catalog, and rational-series gives a series
    family; both are inputs to their own toolings rather than carrier
    systems, and the command line refuses to run carrier suites on
    them."""
    kind = spec.kind
    p = spec.params
    if kind == "finitary-group":
        return models.finitary(parse_carrier(_need(spec, "group")))
    if kind == "zero-only":
        return models.zero_only(parse_carrier(_need(spec, "group")))
    if kind == "constant":
        carrier = parse_carrier(_need(spec, "group"))
        value = _need(spec, "value")
        if not 0 <= value < carrier.size:
            raise InvalidSpec("constant value %r outside the carrier"
                              % (value,))
        return models.constant(carrier, value)
    if kind == "choice":
        return models.choice(parse_carrier(_need(spec, "group")))
    if kind == "magma-pairs":
        return models.magma_pairs()
    if kind == "pairs-only":
        return models.pairs_only()
    if kind == "size2-only":
        return models.size2_only(parse_carrier(_need(spec, "group")))
    if kind == "multiset-monoid":
        return models.multiset_monoid(p.get("alphabet", 3),
                                      p.get("cap", 2))
    if kind == "induced":
        carrier = parse_carrier(_need(spec, "group"))
        masks = [topo.mask_of(s) for s in _need(spec, "opens")]
        for s in _need(spec, "opens"):
            if any(x < 0 or x >= carrier.size for x in s):
                raise InvalidSpec("open set %r leaves the carrier"
                                  % (list(s),))
        try:
            t = topo.FiniteTopology(carrier.size, masks)
        except ValueError as e:
            raise InvalidSpec("bad opens: %s" % (e,))
        return topo.induced_summation(t, carrier)
    if kind == "uncond":
        carrier = parse_carrier(_need(spec, "group"))
        sets = _need(spec, "A")
        for s in sets:
            if any(x < 0 or x >= carrier.size for x in s):
                raise InvalidSpec("set %r leaves the carrier"
                                  % (list(s),))
        return uncond_mod.uncond_system(
            uncond_mod.SetSystem(carrier, [set(s) for s in sets]))
    if kind == "table":
        carrier = parse_carrier(_need(spec, "group"))
        traits = Traits(reindex_invariant=p.get("traits") == "reindex")
        pairs = _need(spec, "pair")
        for f, s in pairs:
            for x in f.as_multiset():
                if not 0 <= x < carrier.size:
                    raise InvalidSpec("entry %r leaves the carrier" % (x,))
            if not 0 <= s < carrier.size:
                raise InvalidSpec("sum %r leaves the carrier" % (s,))
        return TableSystem(carrier, pairs, traits, name="table model")
    if kind == "endo-family":
        name = _need(spec, "family")
        field = field_by_name(p.get("field", "f2"))
        extra = {}
        if "width" in p:
            extra["width"] = p["width"]
        try:
            return catalog_family(name, field, **extra)
        except (KeyError, TypeError) as e:
            raise InvalidSpec("bad catalog family: %s" % (e,))
    if kind == "rational-series":
        return SeriesFamily(head=p.get("head", ()), cyc=p.get("cyc", ()),
                            tails=p.get("tail", ()))
    raise InvalidSpec("unhandled kind %r" % (kind,))


# -- built-in specs and command-line references ----------------------------


def _spec(kind, **params):
    return ModelSpec(kind, **params)


BUILTINS = {
    "finitary-z2": _spec("finitary-group", group="z2"),
    "finitary-z3": _spec("finitary-group", group="z3"),
    "finitary-z4": _spec("finitary-group", group="z4"),
    "finitary-z6": _spec("finitary-group", group="z6"),
    "finitary-z8": _spec("finitary-group", group="z8"),
    "finitary-klein": _spec("finitary-group", group="klein"),
    "zero-only-z2": _spec("zero-only", group="z2"),
    "zero-only-z4": _spec("zero-only", group="z4"),
    "constant-z4": _spec("constant", group="z4", value=1),
    "choice-z4": _spec("choice", group="z4"),
    "magma-pairs": _spec("magma-pairs"),
    "pairs-only": _spec("pairs-only"),
    "size2-only-z4": _spec("size2-only", group="z4"),
    "multiset-monoid": _spec("multiset-monoid", alphabet=3, cap=2),
    "uncond-z4": _spec("uncond", group="z4", A=((0,),)),
    "uncond-punctured": _spec("uncond", group="z8",
                              A=((4,), (2, 4, 6), (1, 2, 3, 4, 5, 6, 7))),
    "induced-discrete-z2": _spec("induced", group="z2",
                                 opens=((), (0,), (1,), (0, 1))),
    "induced-trivial-z2": _spec("induced", group="z2",
                                opens=((), (0, 1))),
    "endo-diagonal-units": _spec("endo-family", family="diagonal-units"),
}


def resolve_model(ref):
    """A command-line model reference -> (spec, built object).

    "builtin:<name>" looks the spec up; anything else is read as a
    file path."""
    if ref.startswith("builtin:"):
        name = ref[len("builtin:"):]
        if name not in BUILTINS:
            raise InvalidSpec("no builtin %r; have %s"
                              % (name, ", ".join(sorted(BUILTINS))))
        spec = BUILTINS[name]
        return spec, build_model(spec)
    if not os.path.exists(ref):
        raise InvalidSpec("no model file %r (use builtin:<name> for "
                          "stock models)" % (ref,))
    with open(ref) as fh:
        spec = parse_model(fh.read(), name=ref)
    return spec, build_model(spec)
