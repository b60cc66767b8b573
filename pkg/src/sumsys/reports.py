"""Check reports and enumeration bounds.

Every check in this package runs over a finite slice of an in-principle
infinite search space.  A Bounds object pins down that slice; the
resulting CheckReport records the verdict together with the bounds that
were actually used, so a "pass" is always a pass *within bounds* and a
failure always carries a witness that can be replayed independently.
"""

import json
import time


class HypothesisNotMet(Exception):
    """A check was asked about structure the model simply does not have
    (say, negation functoriality on a carrier with no negation).  This is
    different from a failing check: the question does not apply."""


PASS = "pass-within-bounds"
FAIL = "fail"

_BOUND_FIELDS = (
    ("max_size", 3),       # finite family size cap
    ("max_label", 4),      # finite labels drawn from 0..max_label-1
    ("max_prefix", 2),     # transfinite block prefix cap
    ("max_cycle", 2),      # transfinite block cycle cap
    ("max_final", 1),      # entries after the last block
    ("max_blocks", 1),     # limit blocks per transfinite family
    ("max_support", 2),    # multiset support cap
    ("max_mult", 2),       # finite multiset count cap
    ("max_k", 2),          # outer index sets for merger/reorder checks
    ("window", 24),        # expansion window for transfinite probing
    ("samples", 60),       # cap on sampled (rather than exhausted) choices
    ("pair_cap", 20000),   # cap on enumerated pairs of families
    ("seed", 0),           # seed for any sampled choices
)


class Bounds(object):
    def __init__(self, **kw):
        for name, default in _BOUND_FIELDS:
            setattr(self, name, kw.pop(name, default))
        if kw:
            raise ValueError("unknown bound(s): %s" % ", ".join(sorted(kw)))

    def replace(self, **kw):
        d = self.to_dict()
        d.update(kw)
        return Bounds(**d)

    def to_dict(self):
        return {name: getattr(self, name) for name, _ in _BOUND_FIELDS}

    @classmethod
    def from_string(cls, text):
        """Parse "k=v,k=v" pairs, as given on a command line."""
        kw = {}
        text = text.strip()
        if text:
            for part in text.split(","):
                if "=" not in part:
                    raise ValueError("bad bound %r (want key=value)" % part)
                k, v = part.split("=", 1)
                kw[k.strip()] = int(v.strip())
        return cls(**kw)

    def __repr__(self):
        return "Bounds(%s)" % ", ".join(
            "%s=%r" % (n, getattr(self, n)) for n, _ in _BOUND_FIELDS)


class CheckReport(object):
    """Outcome of one check.

    check_id  stable string naming the check
    verdict   "pass-within-bounds" or "fail"
    witness   JSON-ready payload describing a failing instance (or None);
              witnesses are self-contained and replayable via
              axioms.verify_witness
    bounds    the enumeration bounds in force, plus any per-check notes
    millis    wall-clock duration; the only nondeterministic field
    """

    def __init__(self, check_id, verdict, witness, bounds, millis):
        self.check_id = check_id
        self.verdict = verdict
        self.witness = witness
        self.bounds = bounds
        self.millis = millis

    @property
    def passed(self):
        return self.verdict == PASS

    def to_dict(self):
        return {"check-id": self.check_id,
                "verdict": self.verdict,
                "witness": self.witness,
                "bounds": self.bounds,
                "millis": self.millis}

    def __repr__(self):
        return "CheckReport(%r, %r)" % (self.check_id, self.verdict)


class ReportTimer(object):
    """Builds CheckReports with consistent timing and bounds payloads."""

    def __init__(self, check_id, bounds, notes=None):
        self.check_id = check_id
        self.bounds = bounds
        self.notes = dict(notes or {})
        self.start = time.perf_counter()

    def note(self, key, value):
        self.notes[key] = value

    def _bounds_payload(self):
        payload = self.bounds.to_dict()
        payload.update(self.notes)
        return payload

    def _millis(self):
        return int((time.perf_counter() - self.start) * 1000)

    def passed(self):
        return CheckReport(self.check_id, PASS, None,
                           self._bounds_payload(), self._millis())

    def failed(self, witness):
        return CheckReport(self.check_id, FAIL, witness,
                           self._bounds_payload(), self._millis())


def render_reports(reports, fmt="text"):
    """One line per report (text) or a JSON array, sorted by check id."""
    reports = sorted(reports, key=lambda r: r.check_id)
    if fmt == "json":
        return json.dumps([r.to_dict() for r in reports], indent=2,
                          sort_keys=True)
    lines = []
    for r in reports:
        mark = "PASS" if r.passed else "FAIL"
        line = "%-4s %s (%dms)" % (mark, r.check_id, r.millis)
        if r.witness is not None:
            line += "\n     witness: %s" % json.dumps(r.witness,
                                                      sort_keys=True)
        lines.append(line)
    return "\n".join(lines)
