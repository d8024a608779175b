"""Exhaustive bounded-degree enumeration and the lower-bound harness.

Curves are enumerated in a fixed order: each coefficient slot runs over
the polynomials of degree <= its bound, written as coefficient tuples
(c0, c1, ..., cd) in lexicographic order of field elements, and the slots
are combined lexicographically.  Sharding keeps indices i with
i % total == index, so shards partition the stream.

Record field order (JSONL, one object per nonsingular curve)::

    field, coefficients, delta_min_factored, bad_places, infinity_bad,
    geometric_bad_count, j, j_constant, constant, constancy_reason

``bad_places`` entries are ``{generator, degree, v_delta}``; the place at
infinity has generator ``"inf"``.
"""

from __future__ import annotations

import heapq
import itertools
import json
import os
import tempfile
from dataclasses import dataclass, field, replace
from typing import Iterator, Optional

from .algebra.factor import factored
from .algebra.fields import field_from_tag
from .algebra.poly import Poly
from .algebra.ratfunc import RatFunc
from .moduli import DEFAULT_EXTENSION_BOUND, Constant, NonConstant, Undecided, is_constant
from .reduction import Chart, global_minimal, reduction_report
from .weierstrass import Example, WeierstrassEq, invariants, named_example

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_UNDECIDED = 3


# -- forms -------------------------------------------------------------------------


@dataclass(frozen=True)
class FormSpec:
    """Which coefficients vary and how they sit in [a1, a2, a3, a4, a6].

    ``layout`` gives, for each a_i, either the index of a slot or a fixed
    integer; ``multipliers`` scales each slot value before it is placed.
    """

    name: str
    slots: tuple
    layout: tuple
    multipliers: tuple
    characteristic: Optional[tuple] = None  # allowed characteristics; None = any

    def build(self, F, vals):
        """Coefficients [a1, ..., a6] from raw slot values."""
        return self.place(F, [m * v for m, v in zip(self.multipliers, vals)])

    def place(self, F, scaled):
        """Coefficients [a1, ..., a6] from slot values already multiplied."""
        return [scaled[self.slots.index(x)] if isinstance(x, str) else RatFunc.constant(F, x) for x in self.layout]


FORMS = {
    "general": FormSpec("general", ("a1", "a2", "a3", "a4", "a6"), ("a1", "a2", "a3", "a4", "a6"), (1,) * 5),
    "char2jnonzero": FormSpec("char2jnonzero", ("a2", "a6"), (1, "a2", 0, 0, "a6"), (1, 1), (2,)),
    "char2jzero": FormSpec("char2jzero", ("a3", "a4", "a6"), (0, 0, "a3", "a4", "a6"), (1, 1, 1), (2,)),
    "char3jnonzero": FormSpec("char3jnonzero", ("a2", "a6"), (0, "a2", 0, 0, "a6"), (1, 1), (3,)),
    "char3jzero": FormSpec("char3jzero", ("a4", "a6"), (0, 0, 0, "a4", "a6"), (1, 1), (3,)),
    # y^2 = x^3 - 3A x + 2B
    "short": FormSpec("short", ("A", "B"), (0, 0, 0, "A", "B"), (-3, 2)),
}
REDUCED_VARIANTS = {2: ("char2jnonzero", "char2jzero"), 3: ("char3jnonzero", "char3jzero")}


@dataclass(frozen=True)
class SearchConfig:
    """What to scan.

    ``degree_bound`` is one integer for every slot or a mapping slot -> bound
    (for the short form the slots are ``A`` and ``B``).  ``form`` is one of
    the FORMS keys or ``reduced`` for all reduced variants of the
    characteristic.
    """

    field: str
    form: str
    degree_bound: object = 1
    shard: tuple = (0, 1)
    output: Optional[str] = None
    extension_bound: int = DEFAULT_EXTENSION_BOUND
    check_structure: bool = False

    def field_obj(self):
        return field_from_tag(self.field)

    def variants(self):
        F = self.field_obj()
        p = F.characteristic
        if self.form == "reduced":
            if p not in REDUCED_VARIANTS:
                raise ValueError("reduced forms exist in characteristic 2 and 3 only")
            names = REDUCED_VARIANTS[p]
        elif self.form in FORMS:
            names = (self.form,)
        else:
            raise ValueError(f"unknown form {self.form!r}; choose from {sorted(FORMS) + ['reduced']}")
        out = []
        for n in names:
            spec = FORMS[n]
            if spec.characteristic and p not in spec.characteristic:
                raise ValueError(f"form {n} needs characteristic {spec.characteristic[0]}")
            if n == "short" and p in (2, 3):
                raise ValueError("the short form needs characteristic other than 2 and 3")
            out.append(spec)
        return out

    def bound_for(self, slot):
        b = self.degree_bound
        if isinstance(b, dict):
            return b[slot]
        return int(b)


def parse_degree_bound(text):
    """'3' -> 3; 'A=2,B=3' -> {'A': 2, 'B': 3}."""
    text = text.strip()
    if "=" not in text:
        return int(text)
    out = {}
    for part in text.split(","):
        k, v = part.split("=")
        out[k.strip()] = int(v)
    return out


def parse_shard(text):
    i, n = (int(x) for x in text.split("/"))
    if not (0 <= i < n):
        raise ValueError(f"bad shard {text!r}")
    return (i, n)


def polys_up_to(F, d):
    """Every polynomial of degree <= d, as (c0, ..., cd) tuples in lexicographic order."""
    elems = list(F.elements())
    one = Poly._make(F, (F.one,))
    out = []
    for tup in itertools.product(elems, repeat=d + 1):
        out.append(RatFunc._make(Poly(F, list(tup)), one))
    return out


@dataclass
class EnumStats:
    tuples: int = 0
    singular: int = 0


def enumerate_indexed(cfg, stats=None) -> Iterator[tuple]:
    """(index, WeierstrassEq) for the nonsingular curves of the configured shard."""
    F = cfg.field_obj()
    if not F.is_finite:
        raise ValueError("exhaustive enumeration needs a finite field")
    index, total = cfg.shard
    stats = stats if stats is not None else EnumStats()
    i = 0
    for spec in cfg.variants():
        spaces = [[m * x for x in polys_up_to(F, cfg.bound_for(s))] for s, m in zip(spec.slots, spec.multipliers)]
        fixed = [None if isinstance(x, str) else RatFunc.constant(F, x) for x in spec.layout]
        pos = [spec.slots.index(x) if isinstance(x, str) else None for x in spec.layout]
        for vals in itertools.product(*spaces):
            k = i
            i += 1
            if k % total != index:
                continue
            stats.tuples += 1
            W = WeierstrassEq(F, *[vals[j] if j is not None else c for j, c in zip(pos, fixed)])
            if invariants(W).delta.is_zero():
                stats.singular += 1
                continue
            yield k, W


def enumerate_curves(cfg, stats=None) -> Iterator[WeierstrassEq]:
    for _, W in enumerate_indexed(cfg, stats):
        yield W


# -- per-curve analysis ----------------------------------------------------------


def format_factored(poly):
    if poly.degree < 1:
        return str(poly.field.fmt(poly.lc)) if poly.coeffs else "0"
    parts = []
    lc = poly.lc
    if lc != poly.field.one:
        parts.append(poly.field.fmt(lc))
    for place, e in factored(poly):
        g = str(place.generator)
        g = g if place.generator.degree == 1 and len([c for c in place.generator.coeffs if c]) == 1 else f"({g})"
        parts.append(g if e == 1 else f"{g}^{e}")
    return "*".join(parts)


@dataclass(frozen=True)
class CurveAnalysis:
    W: WeierstrassEq
    report: object
    j_constant: bool
    verdict: object
    structure_issues: tuple = ()

    @property
    def count(self):
        return self.report.geometric_bad_count

    def record(self, field_tag):
        W = self.W
        rep = self.report
        v = self.verdict
        constant = True if isinstance(v, Constant) else (False if isinstance(v, NonConstant) else None)
        reason = None
        if isinstance(v, NonConstant):
            reason = str(v.reason)
        elif isinstance(v, Undecided):
            reason = v.reason
        return {
            "field": field_tag,
            "coefficients": [str(a) for a in W.coeffs],
            "delta_min_factored": format_factored(rep.delta_min_at_zero.num),
            "bad_places": [
                {"generator": str(b.place), "degree": b.residue_degree, "v_delta": b.v_delta_min}
                for b in rep.bad_places
            ],
            "infinity_bad": rep.infinity_bad,
            "geometric_bad_count": rep.geometric_bad_count,
            "j": str(invariants(W).j),
            "j_constant": self.j_constant,
            "constant": constant,
            "constancy_reason": reason,
        }


def _drop_t(f):
    """f divided by its largest power of T."""
    k = next(i for i, c in enumerate(f.coeffs) if c)
    return Poly._make(f.field, f.coeffs[k:])


def structure_issues(W, rep):
    """Idempotence of global_minimal on both charts and agreement of the charts away from 0 and inf."""
    issues = []
    for name, m in (("zero", rep.minimal_model_at_zero), ("infinity", rep.minimal_model_at_infinity)):
        m2, tr = global_minimal(m, Chart.AT_ZERO)
        if not tr.is_identity() or m2 != m:
            issues.append(f"global_minimal not idempotent on the {name} chart")
    d0 = invariants(rep.minimal_model_at_zero).delta.num
    dinf = invariants(rep.minimal_model_at_infinity).delta.num
    # away from T = 0 and T = inf the two discriminants differ by a unit of k[T, 1/T]
    if _drop_t(d0).reverse().monic() != _drop_t(dinf).monic():
        issues.append("minimal discriminants disagree between charts")
    return tuple(issues)


def analyze_curve(W, extension_bound=DEFAULT_EXTENSION_BOUND, check_structure=False):
    rep = reduction_report(W)
    jc = invariants(W).j_is_constant()
    verdict = is_constant(W, extension_bound, report=rep)
    issues = structure_issues(W, rep) if check_structure else ()
    return CurveAnalysis(W, rep, jc, verdict, issues)


# -- bounds ----------------------------------------------------------------------------


def lower_bounds(p):
    """(bound for non-constant curves, bound for curves with j not in k)."""
    return (1, 2) if p in (2, 3) else (2, 3)


def _coeff_key(W):
    return tuple(str(a) for a in W.coeffs)


@dataclass
class BoundsSummary:
    field: str
    form: str
    curves_scanned: int = 0
    singular_skipped: int = 0
    min_bad_nonconstant: Optional[int] = None
    min_bad_j_nonconstant: Optional[int] = None
    witnesses_nonconstant: list = field(default_factory=list)
    witnesses_j_nonconstant: list = field(default_factory=list)
    violations: list = field(default_factory=list)
    undecided: list = field(default_factory=list)
    good_everywhere: int = 0
    good_everywhere_constant: int = 0
    constant_count: int = 0
    structure_failures: list = field(default_factory=list)

    @property
    def bounds(self):
        return lower_bounds(field_from_tag(self.field).characteristic)

    def exit_code(self):
        if self.violations:
            return EXIT_VIOLATION
        if self.undecided:
            return EXIT_UNDECIDED
        return EXIT_OK

    def add(self, index, a):
        nc_bound, j_bound = self.bounds
        n = a.count

        def key():
            return (index, _coeff_key(a.W))

        self.curves_scanned += 1
        if a.structure_issues:
            self.structure_failures.append(key() + (a.structure_issues,))
        if n == 0:
            self.good_everywhere += 1
        if isinstance(a.verdict, Undecided):
            self.undecided.append(key())
            return
        if isinstance(a.verdict, Constant):
            self.constant_count += 1
            if n == 0:
                self.good_everywhere_constant += 1
            return
        self._track("nonconstant", n, key)
        if n < nc_bound:
            self.violations.append(key() + (f"non-constant with {n} bad places",))
        if not a.j_constant:
            self._track("j_nonconstant", n, key)
            if n < j_bound:
                self.violations.append(key() + (f"j not in k with {n} bad places",))

    def _track(self, which, n, key):
        cur = getattr(self, f"min_bad_{which}")
        wit = getattr(self, f"witnesses_{which}")
        if cur is None or n < cur:
            setattr(self, f"min_bad_{which}", n)
            wit.clear()
            wit.append(key())
        elif n == cur:
            wit.append(key())

    @classmethod
    def merge(cls, parts):
        """Deterministic fold of shard summaries; equals the unsharded summary."""
        parts = list(parts)
        out = cls(parts[0].field, parts[0].form)
        for s in parts:
            out.curves_scanned += s.curves_scanned
            out.singular_skipped += s.singular_skipped
            out.good_everywhere += s.good_everywhere
            out.good_everywhere_constant += s.good_everywhere_constant
            out.constant_count += s.constant_count
            for name in ("violations", "undecided", "structure_failures"):
                getattr(out, name).extend(getattr(s, name))
        for which in ("nonconstant", "j_nonconstant"):
            vals = [getattr(s, f"min_bad_{which}") for s in parts if getattr(s, f"min_bad_{which}") is not None]
            m = min(vals) if vals else None
            setattr(out, f"min_bad_{which}", m)
            wit = []
            for s in parts:
                if getattr(s, f"min_bad_{which}") == m:
                    wit.extend(getattr(s, f"witnesses_{which}"))
            setattr(out, f"witnesses_{which}", wit)
        for name in ("witnesses_nonconstant", "witnesses_j_nonconstant", "violations", "undecided",
                     "structure_failures"):
            getattr(out, name).sort(key=lambda k: k[0])
        return out

    def to_json(self):
        def keys(xs):
            return [list(k[1]) if len(k) == 2 else [list(k[1])] + list(k[2:]) for k in xs]

        return {
            "field": self.field,
            "form": self.form,
            "curves_scanned": self.curves_scanned,
            "singular_skipped": self.singular_skipped,
            "bounds": {"nonconstant": self.bounds[0], "j_nonconstant": self.bounds[1]},
            "min_bad_nonconstant": self.min_bad_nonconstant,
            "min_bad_j_nonconstant": self.min_bad_j_nonconstant,
            "witnesses_nonconstant": keys(self.witnesses_nonconstant),
            "witnesses_j_nonconstant": keys(self.witnesses_j_nonconstant),
            "violations": keys(self.violations),
            "undecided": keys(self.undecided),
            "good_everywhere": self.good_everywhere,
            "good_everywhere_constant": self.good_everywhere_constant,
            "constant": self.constant_count,
            "structure_failures": keys(self.structure_failures),
            "exit_code": self.exit_code(),
        }

    def table(self):
        nc, jb = self.bounds
        rows = [
            ("field", self.field),
            ("form", self.form),
            ("curves scanned", self.curves_scanned),
            ("singular skipped", self.singular_skipped),
            (f"min bad, non-constant (bound {nc})", self.min_bad_nonconstant),
            ("  witnesses", len(self.witnesses_nonconstant)),
            (f"min bad, j not in k (bound {jb})", self.min_bad_j_nonconstant),
            ("  witnesses", len(self.witnesses_j_nonconstant)),
            ("good everywhere", self.good_everywhere),
            ("  of which constant", self.good_everywhere_constant),
            ("undecided", len(self.undecided)),
            ("violations", len(self.violations)),
            ("structure failures", len(self.structure_failures)),
        ]
        w = max(len(r[0]) for r in rows)
        return "\n".join(f"{k.ljust(w)}  {v}" for k, v in rows)


def _scan(cfg, record_path=None):
    stats = EnumStats()
    summary = BoundsSummary(cfg.field, cfg.form)
    fh = open(record_path, "w") if record_path else None
    try:
        for idx, W in enumerate_indexed(cfg, stats):
            a = analyze_curve(W, cfg.extension_bound, cfg.check_structure)
            summary.add(idx, a)
            if fh:
                fh.write(f"{idx}\t{json.dumps(a.record(cfg.field))}\n")
    finally:
        if fh:
            fh.close()
    summary.singular_skipped = stats.singular
    return summary


def _scan_worker(args):
    cfg, path = args
    return _scan(cfg, path)


def _merge_records(paths, output):
    def lines(p):
        with open(p) as fh:
            for line in fh:
                idx, rec = line.rstrip("\n").split("\t", 1)
                yield int(idx), rec

    with open(output, "w") as out:
        for _, rec in heapq.merge(*(lines(p) for p in paths), key=lambda t: t[0]):
            out.write(rec + "\n")


def verify_bounds(cfg, workers=1):
    """Scan every curve of the configuration and check the lower bounds.

    With ``workers > 1`` the configured shard is split further into
    independent sub-shards whose summaries and records are merged by
    enumeration index, so the result does not depend on the worker count.
    """
    index, total = cfg.shard
    subs = [replace(cfg, shard=(index + k * total, total * workers)) for k in range(workers)]
    tmpdir = tempfile.mkdtemp(prefix="ellfun-") if cfg.output else None
    paths = [os.path.join(tmpdir, f"shard-{k}.tsv") for k in range(workers)] if tmpdir else [None] * workers
    jobs = list(zip(subs, paths))
    if workers == 1:
        parts = [_scan_worker(jobs[0])]
    else:
        import multiprocessing

        with multiprocessing.get_context("spawn").Pool(workers) as pool:
            parts = pool.map(_scan_worker, jobs)
    summary = BoundsSummary.merge(parts)
    if tmpdir:
        _merge_records(paths, cfg.output)
        for p in paths:
            os.remove(p)
        os.rmdir(tmpdir)
    return summary


# -- named examples -------------------------------------------------------------


def _expected_examples():
    """(example, delta, j, bad set) with the bad set as place strings."""
    from .parser import parse_ratfunc

    table = [
        (Example.LEGENDRE, "Q", "16*T^2*(T-1)^2", "2^8*(T^2-T+1)^3/(T^2*(T-1)^2)", ["T - 1", "T", "inf"]),
        (Example.J1728_TWO_BAD, "Q", "1728*T^6", "1728", ["T", "inf"]),
        (Example.CHAR2_TWO_BAD, "GF(2)", "T", "1/T", ["T", "inf"]),
        (Example.CHAR3_TWO_BAD, "GF(3)", "T^4", "T^2", ["T", "inf"]),
        (Example.CHAR2_GOOD_A1, "GF(2)", "1", "1", ["inf"]),
        (Example.CHAR3_GOOD_EVERYWHERE_A1, "GF(3)", "1", "0", ["inf"]),
    ]
    return [(ex, parse_ratfunc(d, tag), parse_ratfunc(j, tag), bad) for ex, tag, d, j, bad in table]


@dataclass
class ExampleCheck:
    name: str
    field: str
    equation: str
    delta: str
    j: str
    bad_places: list
    minimal_on_affine_line: bool
    constancy: str
    mismatches: list

    @property
    def ok(self):
        return not self.mismatches


def run_examples():
    """Analyze the named examples and compare with their known invariants."""
    out = []
    for ex, delta, j, bad in _expected_examples():
        W = named_example(ex)
        inv = invariants(W)
        rep = reduction_report(W)
        verdict = is_constant(W, report=rep)
        got_bad = sorted(str(p) for p in rep.bad_set())
        minimal = rep.delta_min_at_zero.num.monic() == inv.delta.num.monic()
        mism = []
        if inv.delta != delta:
            mism.append(f"delta {inv.delta} != {delta}")
        if inv.j != j:
            mism.append(f"j {inv.j} != {j}")
        if got_bad != sorted(bad):
            mism.append(f"bad places {got_bad} != {sorted(bad)}")
        if not minimal:
            mism.append("equation is not minimal on the affine line")
        text = "Constant" if isinstance(verdict, Constant) else f"{verdict.kind}: {verdict.reason}"
        out.append(ExampleCheck(ex.value, W.field.tag, str(W), str(inv.delta), str(inv.j),
                                [str(p) for p in rep.bad_set()], minimal, text, mism))
    return out
