import itertools
import json

import pytest

from ellfun.algebra import GF
from ellfun.search import (
    EXIT_OK,
    BoundsSummary,
    EnumStats,
    SearchConfig,
    enumerate_curves,
    enumerate_indexed,
    parse_degree_bound,
    parse_shard,
    polys_up_to,
    run_examples,
    verify_bounds,
)

RECORD_KEYS = [
    "field", "coefficients", "delta_min_factored", "bad_places", "infinity_bad",
    "geometric_bad_count", "j", "j_constant", "constant", "constancy_reason",
]


def test_polys_up_to_count():
    assert len(polys_up_to(GF(3), 2)) == 27
    assert len(set(map(str, polys_up_to(GF(2), 3)))) == 16


def test_char2_counts_match_discriminant_formula():
    # y^2 + xy = x^3 + a2 x^2 + a6 has delta = a6: singular exactly when a6 = 0
    stats = EnumStats()
    curves = list(enumerate_curves(SearchConfig("GF(2)", "char2jnonzero", 1), stats))
    assert stats.tuples == 16 and stats.singular == 4 and len(curves) == 12
    assert all(not W.a6.is_zero() for W in curves)


def test_char3_counts_match_discriminant_formula():
    # y^2 = x^3 + a2 x^2 + a6 has delta = -a2^3 a6
    stats = EnumStats()
    curves = list(enumerate_curves(SearchConfig("GF(3)", "char3jnonzero", 0), stats))
    assert len(curves) == 4 and stats.singular == 5


def test_short_form_counts_match_direct_filter():
    F = GF(5)
    cfg = SearchConfig("GF(5)", "short", {"A": 0, "B": 1})
    # delta = -16 * 108 * (B^2 - A^3): nonsingular iff B^2 != A^3 as polynomials
    expect = sum(1 for a, b0, b1 in itertools.product(range(5), repeat=3)
                 if (b0 * b0 - a**3) % 5 or (2 * b0 * b1) % 5 or (b1 * b1) % 5)
    assert len(list(enumerate_curves(cfg))) == expect
    assert all(W.field == F for W in enumerate_curves(cfg))


def test_shards_partition_the_stream():
    cfg = SearchConfig("GF(3)", "reduced", 1)
    full = [i for i, _ in enumerate_indexed(cfg)]
    parts = [[i for i, _ in enumerate_indexed(SearchConfig("GF(3)", "reduced", 1, shard=(k, 3)))] for k in range(3)]
    assert sorted(itertools.chain(*parts)) == full
    assert all(i % 3 == k for k, p in enumerate(parts) for i in p)


def test_merge_equals_unsharded():
    cfg = SearchConfig("GF(3)", "reduced", 1)
    whole = verify_bounds(cfg)
    parts = [verify_bounds(SearchConfig("GF(3)", "reduced", 1, shard=(k, 4))) for k in range(4)]
    merged = BoundsSummary.merge(parts)
    merged.singular_skipped = sum(p.singular_skipped for p in parts)
    assert merged.to_json() == whole.to_json()
    assert whole.exit_code() == EXIT_OK


def test_records_independent_of_workers(tmp_path):
    outs = []
    for w in (1, 2):
        path = tmp_path / f"w{w}.jsonl"
        verify_bounds(SearchConfig("GF(2)", "char2jnonzero", 1, output=str(path)), workers=w)
        outs.append(path.read_text())
    assert outs[0] == outs[1]
    recs = [json.loads(line) for line in outs[0].splitlines()]
    assert len(recs) == 12
    assert all(list(r) == RECORD_KEYS for r in recs)


def test_summary_fields():
    s = verify_bounds(SearchConfig("GF(2)", "char2jnonzero", 1))
    assert s.curves_scanned == 12 and s.singular_skipped == 4
    assert s.bounds == (1, 2)
    assert not s.violations and not s.undecided
    assert "violations" in s.table()


def test_parse_degree_bound():
    assert parse_degree_bound(" 3 ") == 3
    assert parse_degree_bound("A=2,B=3") == {"A": 2, "B": 3}


@pytest.mark.parametrize("text,ok", [("0/1", (0, 1)), ("2/3", (2, 3)), ("3/3", None), ("-1/2", None)])
def test_parse_shard(text, ok):
    if ok is None:
        with pytest.raises(ValueError):
            parse_shard(text)
    else:
        assert parse_shard(text) == ok


@pytest.mark.parametrize(
    "field,form",
    [("GF(5)", "reduced"), ("GF(3)", "short"), ("GF(5)", "char2jzero"), ("GF(5)", "nope"), ("Q", "short")],
)
def test_config_validation(field, form):
    with pytest.raises(ValueError):
        list(enumerate_curves(SearchConfig(field, form, 0)))


def test_examples_all_ok():
    checks = run_examples()
    assert len(checks) == 6
    assert all(c.ok for c in checks), [c.mismatches for c in checks]
