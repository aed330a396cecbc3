"""JSON witness documents for collapse-induced contractions.

A witness stores the facets, the ordered collapse pairs and a sampled track
table. Rationals are ``"p/q"`` strings in lowest terms. Verification rebuilds
the contraction, recomputes every stored position exactly and re-runs the
coalescence audit.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .coalesce import (
    PLContraction,
    PLPoint,
    TrackTable,
    audit_table,
    check_coalescent,
    opening_time,
    random_point,
    sample_times,
    track,
    witness_from_collapse,
)
from .collapse import CollapsePair, CollapseSequence, replay, validate_sequence
from .complex import from_maximal
from .errors import ParseError, TopologyError

FORMAT = "coalescent-witness/1"


def format_rational(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text) -> Fraction:
    try:
        return Fraction(str(text))
    except (ValueError, ZeroDivisionError) as err:
        raise ParseError(f"bad rational {text!r}") from err


def _point_doc(c, p) -> dict:
    return {c.label(v): format_rational(x) for v, x in p.coords}


def witness_document(h: PLContraction, n_points: int = 20, n_times: int = 10,
                     seed: int = 0) -> dict:
    c = h.start
    rng = random.Random(seed)
    points = [random_point(rng, c) for _ in range(n_points)]
    times = sample_times(rng, h, n_times)
    rows = [track(h, p, times) for p in points]
    return {
        "format": FORMAT,
        "name": c.name,
        "facets": [[c.label(v) for v in f] for f in c.facets()],
        "pairs": [{"free_face": [c.label(v) for v in p.free_face],
                   "coface": [c.label(v) for v in p.coface]} for p in (s.pair for s in h.stages)],
        "terminal": c.label(h.terminal),
        "opening_time": format_rational(opening_time(h)),
        "samples": {
            "times": [format_rational(t) for t in times],
            "points": [_point_doc(c, p) for p in points],
            "positions": [[_point_doc(c, q) for q in row] for row in rows],
        },
    }


@dataclass
class WitnessCheck:
    ok: bool
    problems: list = field(default_factory=list)
    stages: int = 0
    audit: object = None


def _load(doc: dict):
    if doc.get("format") != FORMAT:
        raise ParseError(f"unknown witness format {doc.get('format')!r}")
    try:
        facets = doc["facets"]
        pairs_doc = doc["pairs"]
        samples = doc["samples"]
    except KeyError as err:
        raise ParseError(f"witness is missing {err}") from err
    ids = {}
    for f in facets:
        for lab in f:
            ids.setdefault(str(lab), len(ids))
    c = from_maximal([[ids[str(lab)] for lab in f] for f in facets],
                     {i: lab for lab, i in ids.items()}, doc.get("name", ""))
    return c, ids, pairs_doc, samples


def verify_witness(doc: dict, pairs: int = 100, times: int = 20, seed: int = 0) -> WitnessCheck:
    """Check a witness document. Raises ParseError only on malformed input."""
    c, ids, pairs_doc, samples = _load(doc)
    problems = []

    def vid(lab):
        if str(lab) not in ids:
            raise ParseError(f"unknown vertex label {lab!r}")
        return ids[str(lab)]

    try:
        seq_pairs = tuple(CollapsePair(tuple(sorted(vid(x) for x in p["free_face"])),
                                       tuple(sorted(vid(x) for x in p["coface"])))
                          for p in pairs_doc)
    except TopologyError as err:
        return WitnessCheck(False, [f"bad collapse pair: {err}"])
    except (KeyError, TypeError) as err:
        raise ParseError(f"malformed collapse pair: {err}") from err

    state = c
    try:
        state = replay(c, seq_pairs)[-1]
    except TopologyError as err:
        return WitnessCheck(False, [f"collapse sequence does not replay: {err}"])
    seq = CollapseSequence(seq_pairs, state)
    if not validate_sequence(c, seq) or len(state) != 1:
        return WitnessCheck(False, ["collapse sequence does not end at a single vertex"])
    h = witness_from_collapse(c, seq)
    if doc.get("terminal") != c.label(h.terminal):
        problems.append(f"terminal {doc.get('terminal')!r} != {c.label(h.terminal)!r}")
    if parse_rational(doc.get("opening_time", "")) != opening_time(h):
        problems.append("stored opening time does not match")

    try:
        ts = [parse_rational(t) for t in samples["times"]]
        raw_points = [{vid(k): parse_rational(x) for k, x in p.items()} for p in samples["points"]]
        stored = [[{vid(k): parse_rational(x) for k, x in q.items()} for q in row]
                  for row in samples["positions"]]
    except (KeyError, AttributeError, TypeError) as err:
        raise ParseError(f"malformed samples: {err}") from err
    if len(stored) != len(raw_points) or any(len(row) != len(ts) for row in stored):
        return WitnessCheck(False, ["sample grid shape does not match"], h.m)
    if any(b < a for a, b in zip(ts, ts[1:])):
        return WitnessCheck(False, ["sample times are not sorted"], h.m)

    frozen_rows = []
    for i, (coords, row) in enumerate(zip(raw_points, stored)):
        try:
            p = PLPoint.of(coords)
            if p.carrier not in c:
                raise TopologyError("carrier not in complex")
        except TopologyError as err:
            problems.append(f"sample point {i} is invalid: {err}")
            frozen_rows.append(tuple(tuple(sorted(q.items())) for q in row))
            continue
        expected = track(h, p, ts)
        for k, (q, e) in enumerate(zip(row, expected)):
            clean = {v: x for v, x in q.items() if x != 0}
            if clean != e.as_dict():
                problems.append(f"position of point {i} at t={format_rational(ts[k])} "
                                "does not match the contraction")
        frozen_rows.append(tuple(tuple(sorted((v, x) for v, x in q.items() if x != 0))
                                 for q in row))

    table = TrackTable(tuple(range(len(frozen_rows))), tuple(ts), tuple(frozen_rows))
    stored_audit = audit_table(table)
    if not stored_audit.passed:
        i, j, t0, t1 = stored_audit.violation
        problems.append(f"stored tracks of points {i} and {j} meet at t={format_rational(t0)} "
                        f"and separate at t={format_rational(t1)}")
    fresh = check_coalescent(h, pairs, times, seed)
    if not fresh.passed:
        problems.append("fresh coalescence audit failed")
    return WitnessCheck(not problems, problems, h.m, fresh)
