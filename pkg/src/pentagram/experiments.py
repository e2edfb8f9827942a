"""Batch experiments: finite-field orbit census, fiber periods, height growth.

The census runs the coordinate formula on raw field values (ints for prime
fields, table codes for small extension fields) instead of element objects;
:func:`fast_map` is checked against :func:`map_coords` in the tests.
"""

import json
import math
import random
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import (
    IndeterminatePoint, LeavesModuli, NormalizationDegenerate, OrbitDegenerated,
    PopulationTooLarge,
)
from .fields import ExtensionField, GF, PrimeField, QQ
from .lax import invariants_H
from .pentagram import OrbitRecord, map_coords, orbit
from .polygon import CornerCoords

__all__ = [
    "census", "CensusReport", "fiber_periods", "height_growth", "HeightSeries",
    "weil_height", "fast_map", "RawKernel", "OrbitRecord", "DEFAULT_POPULATION_BOUND",
]

DEFAULT_POPULATION_BOUND = 2 * 10 ** 6


class RawKernel:
    """Field operations on raw element values of a finite field."""

    def __init__(self, fld):
        self.field = fld
        if isinstance(fld, PrimeField):
            p = fld.p
            self.add = lambda a, b: (a + b) % p
            self.sub = lambda a, b: (a - b) % p
            self.mul = lambda a, b: a * b % p
            self.inv = lambda a: pow(a, -1, p)
            self.zero, self.one = 0, 1
        elif isinstance(fld, ExtensionField):
            self.add = fld._add
            self.sub = lambda a, b: fld._add(a, fld._neg(b))
            self.mul = fld._mul
            self.inv = fld._inv
            self.zero, self.one = fld.zero.value, fld.one.value
        else:
            raise TypeError("raw kernel needs a finite field")
        self.values = [e.value for e in fld.elements()]

    def wrap(self, raw):
        n = len(raw) // 2
        mk = self.field.element_from_raw
        return CornerCoords([mk(v) for v in raw[:n]], [mk(v) for v in raw[n:]])

    @staticmethod
    def unwrap(coords):
        return tuple(v.value for v in coords.x + coords.y)


def fast_map(k, raw):
    """map_coords on a raw (x_0..x_{n-1}, y_0..y_{n-1}) tuple; None if undefined."""
    n = len(raw) // 2
    xs, ys = raw[:n], raw[n:]
    one, zero = k.one, k.zero
    w = [k.sub(one, k.mul(xs[j], ys[j])) for j in range(n)]
    if zero in w:
        return None
    winv = [k.inv(v) for v in w]
    nx = [k.mul(k.mul(xs[(i + 1) % n], w[i]), winv[(i + 2) % n]) for i in range(n)]
    ny = [k.mul(k.mul(ys[(i + 2) % n], w[(i + 3) % n]), winv[(i + 1) % n]) for i in range(n)]
    out = tuple(nx + ny)
    if one in out:
        return None
    return out


# ---------------------------------------------------------------------------
# census

@dataclass
class CensusReport:
    n: int
    field: str
    mode: str
    population: int
    counts: dict
    dyndom_fraction: Fraction
    fibers: dict = dc_field(default_factory=dict)
    seed: int = None
    sample_size: int = None
    horizon: int = None
    conservation_checked: int = 0
    conservation_failures: int = 0
    audit_checked: int = 0
    audit_failures: int = 0
    sampling_note: str = ""

    def to_dict(self):
        return {
            "n": self.n, "field": self.field, "mode": self.mode,
            "population": self.population, "seed": self.seed,
            "sample_size": self.sample_size, "horizon": self.horizon,
            "counts": dict(self.counts),
            "dyndom_fraction": str(self.dyndom_fraction),
            "dyndom_fraction_float": float(self.dyndom_fraction),
            "fibers": [{"invariant_vector": key, "periods": {str(p): c for p, c in sorted(per.items())}}
                       for key, per in sorted(self.fibers.items())],
            "conservation_checked": self.conservation_checked,
            "conservation_failures": self.conservation_failures,
            "audit_checked": self.audit_checked,
            "audit_failures": self.audit_failures,
            "sampling_note": self.sampling_note,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)


def _h_key(coords):
    try:
        return str(invariants_H(coords))
    except NormalizationDegenerate:
        return "undefined"


def _exhaustive_graph(k, n):
    """Successor index of every point of the population (-1 when undefined)."""
    vals = [v for v in k.values if v not in (k.zero, k.one)]
    base = len(vals)
    pos = {v: i for i, v in enumerate(vals)}
    size = base ** (2 * n)
    succ = [0] * size
    raw = [vals[0]] * (2 * n)
    digits = [0] * (2 * n)
    for idx in range(size):
        img = fast_map(k, tuple(raw))
        if img is None:
            succ[idx] = -1
        else:
            j = 0
            for v in reversed(img):
                j = j * base + pos[v]
            succ[idx] = j
        # increment little-endian digits
        for d in range(2 * n):
            digits[d] += 1
            if digits[d] < base:
                raw[d] = vals[digits[d]]
                break
            digits[d] = 0
            raw[d] = vals[0]
    return succ, vals


def _decode(idx, vals, n):
    base = len(vals)
    out = []
    for _ in range(2 * n):
        idx, d = divmod(idx, base)
        out.append(vals[d])
    return tuple(out)


def _classify(succ):
    """(status, preperiod, period, degenerate_step) for every node of a functional graph."""
    size = len(succ)
    result = [None] * size
    for start in range(size):
        if result[start] is not None:
            continue
        path, where = [], {}
        cur = start
        while cur != -1 and result[cur] is None and cur not in where:
            where[cur] = len(path)
            path.append(cur)
            cur = succ[cur]
        if cur == -1:
            # path[-1] is the last defined point
            for back, node in enumerate(reversed(path)):
                result[node] = ("Degenerate", 0, 0, back)
        elif cur in where:
            c0 = where[cur]
            period = len(path) - c0
            for node in path[c0:]:
                result[node] = ("Periodic", 0, period, None)
            for dist, node in enumerate(reversed(path[:c0]), 1):
                result[node] = ("Periodic", dist, period, None)
        else:
            st, pre, per, dstep = result[cur]
            for dist, node in enumerate(reversed(path), 1):
                if st == "Periodic":
                    result[node] = (st, pre + dist, per, None)
                else:
                    result[node] = (st, 0, 0, dstep + dist)
    return result


def census(n, fld, mode="exhaustive", horizon=None, seed=0, sample_size=1000,
           bound=DEFAULT_POPULATION_BOUND, threads=1, audit_fraction=0.1):
    """Classify every (or a seeded sample of) point(s) by forward-orbit behaviour."""
    if not fld.is_finite:
        raise ValueError("census needs a finite field")
    q = fld.order
    population = (q - 2) ** (2 * n)
    if mode == "exhaustive":
        if population > bound:
            raise PopulationTooLarge(f"(q-2)^(2n) = {population} exceeds the bound {bound}")
        return _census_exhaustive(n, fld, seed, audit_fraction)
    if mode != "sampled":
        raise ValueError(f"unknown census mode {mode!r}")
    return _census_sampled(n, fld, horizon or 1000, seed, sample_size, threads)


def _census_exhaustive(n, fld, seed, audit_fraction):
    k = RawKernel(fld)
    succ, vals = _exhaustive_graph(k, n)
    result = _classify(succ)
    counts = Counter({"Periodic": 0, "Degenerate": 0, "Undecided": 0})
    for st, *_ in result:
        counts[st] += 1
    # invariants on every periodic point; conservation checked along each edge
    keys = {}
    for idx, (st, *_rest) in enumerate(result):
        if st == "Periodic":
            keys[idx] = _h_key(k.wrap(_decode(idx, vals, n)))
    failures = sum(1 for idx, key in keys.items() if keys[succ[idx]] != key)
    fibers = defaultdict(Counter)
    for idx, key in keys.items():
        fibers[key][result[idx][2]] += 1
    # audit: recompute H at three orbit positions for a seeded sample of records
    rng = random.Random(seed)
    periodic = sorted(keys)
    audit = rng.sample(periodic, max(1, int(len(periodic) * audit_fraction))) if periodic else []
    audit_fail = 0
    for idx in audit:
        rec = orbit(k.wrap(_decode(idx, vals, n)), len(succ), invariants=True, keep_points=True)
        pts = rec.points
        for j in rng.sample(range(len(pts)), min(3, len(pts))):
            if str(invariants_H(pts[j])) != str(rec.invariant_vector):
                audit_fail += 1
                break
    pop = len(succ)
    return CensusReport(n, fld.describe(), "exhaustive", pop, dict(counts),
                        Fraction(counts["Periodic"], pop), dict(fibers), seed=seed,
                        horizon=pop, conservation_checked=len(keys),
                        conservation_failures=failures, audit_checked=len(audit),
                        audit_failures=audit_fail)


def _sample_points(n, fld, seed, sample_size):
    k = RawKernel(fld)
    vals = [v for v in k.values if v not in (k.zero, k.one)]
    rng = random.Random(seed)
    return [tuple(rng.choice(vals) for _ in range(2 * n)) for _ in range(sample_size)]


def _run_sampled_chunk(args):
    n, p, r, modulus, pts, horizon = args
    fld = GF(p) if r == 1 else GF(p, r, modulus)
    k = RawKernel(fld)
    out = []
    for raw in pts:
        seen = {raw: 0}
        cur = raw
        rec = ("Undecided", 0, 0, None)
        for step in range(horizon):
            nxt = fast_map(k, cur)
            if nxt is None:
                rec = ("Degenerate", 0, 0, step)
                break
            if nxt in seen:
                mu = seen[nxt]
                rec = ("Periodic", mu, step + 1 - mu, None)
                break
            seen[nxt] = step + 1
            cur = nxt
        out.append(rec)
    return out


def _census_sampled(n, fld, horizon, seed, sample_size, threads):
    pts = _sample_points(n, fld, seed, sample_size)
    p = fld.characteristic
    r = getattr(fld, "degree", 1)
    modulus = getattr(fld, "modulus", None)
    workers = max(1, int(threads))
    chunks = [pts[i::workers] for i in range(workers)]
    jobs = [(n, p, r, modulus, ch, horizon) for ch in chunks]
    if workers == 1:
        parts = [_run_sampled_chunk(jobs[0])]
    else:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            parts = list(ex.map(_run_sampled_chunk, jobs))
    # undo the round-robin split so results line up with the sample order
    results = [None] * len(pts)
    for w, part in enumerate(parts):
        for j, rec in enumerate(part):
            results[w + j * workers] = rec
    k = RawKernel(fld)
    counts = Counter({"Periodic": 0, "Degenerate": 0, "Undecided": 0})
    fibers = defaultdict(Counter)
    periodic = []
    for raw, (st, _pre, per, _d) in zip(pts, results):
        counts[st] += 1
        if st == "Periodic":
            fibers[_h_key(k.wrap(raw))][per] += 1
            periodic.append(raw)
    checked, audited, audit_fail = _audit_sampled(k, periodic, horizon, seed)
    population = (fld.order - 2) ** (2 * n)
    return CensusReport(n, fld.describe(), "sampled", population, dict(counts),
                        Fraction(counts["Periodic"], len(pts)), dict(fibers), seed=seed,
                        sample_size=len(pts), horizon=horizon,
                        conservation_checked=checked, conservation_failures=audit_fail,
                        audit_checked=audited, audit_failures=audit_fail,
                        sampling_note="sampled with replacement; collisions not removed")


def _audit_sampled(k, periodic, horizon, seed, fraction=0.1):
    """Recompute H at up to 3 orbit positions for a seeded tenth of the periodic starts."""
    if not periodic:
        return 0, 0, 0
    rng = random.Random(seed)
    audit = rng.sample(periodic, max(1, int(len(periodic) * fraction)))
    fails = 0
    for raw in audit:
        rec = orbit(k.wrap(raw), horizon, invariants=True, keep_points=True)
        for j in rng.sample(range(len(rec.points)), min(3, len(rec.points))):
            if str(invariants_H(rec.points[j])) != str(rec.invariant_vector):
                fails += 1
                break
    return len(audit), len(audit), fails


def fiber_periods(report):
    """Per fiber with >= 2 periodic orbits: do all periods coincide?"""
    multi = single = 0
    exceptions = []
    for key, periods in sorted(report.fibers.items()):
        if sum(periods.values()) < 2:
            continue
        multi += 1
        if len(periods) == 1:
            single += 1
        else:
            exceptions.append({"invariant_vector": key,
                               "periods": {str(p): c for p, c in sorted(periods.items())}})
    frac = Fraction(single, multi) if multi else Fraction(1)
    return {"fibers": len(report.fibers), "multi_orbit_fibers": multi,
            "single_period_fibers": single, "single_period_fraction": str(frac),
            "single_period_fraction_float": float(frac), "exceptions": exceptions}


# ---------------------------------------------------------------------------
# heights

def _coord_height(v):
    return max(abs(int(v.numerator)), abs(int(v.denominator)))


def weil_height(coords):
    """(sum of bit lengths, sum of logs) of max(|num|, |den|) over all 2n coordinates."""
    hs = [_coord_height(v) for v in coords.x + coords.y]
    return sum(h.bit_length() for h in hs), math.fsum(math.log(h) for h in hs)


@dataclass
class HeightSeries:
    start: CornerCoords
    h_bits: list
    h_log: list
    alpha: float

    def to_csv(self):
        lines = ["t,h_bits,h_log"]
        lines += [f"{t},{b},{h!r}" for t, (b, h) in enumerate(zip(self.h_bits, self.h_log))]
        return "\n".join(lines) + "\n"

    def to_dict(self):
        return {"start": str(self.start), "h_bits": self.h_bits, "h_log": self.h_log,
                "alpha": self.alpha}


def _fit_exponent(h_log, tmin=3):
    pts = [(math.log(t), math.log(h)) for t, h in enumerate(h_log) if t >= tmin and h > 0]
    if len(pts) < 2:
        return 0.0
    mx = sum(a for a, _ in pts) / len(pts)
    my = sum(b for _, b in pts) / len(pts)
    sxx = sum((a - mx) ** 2 for a, _ in pts)
    sxy = sum((a - mx) * (b - my) for a, b in pts)
    return sxy / sxx


def height_growth(coords, steps):
    """Weil heights along f^0..f^steps and the fitted exponent of h(t) ~ t^alpha."""
    if coords.field is not QQ:
        raise ValueError("height_growth needs rational coordinates")
    bits, logs = [], []
    cur = coords
    for t in range(steps + 1):
        b, h = weil_height(cur)
        bits.append(b)
        logs.append(h)
        if t < steps:
            try:
                cur = map_coords(cur)
            except (IndeterminatePoint, LeavesModuli) as exc:
                raise OrbitDegenerated(t, str(exc)) from exc
    return HeightSeries(coords, bits, logs, _fit_exponent(logs))
