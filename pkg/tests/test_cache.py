import logging
from fractions import Fraction

import pytest

from nodalcount.cache import (
    CACHE_VERSION,
    CacheLockError,
    CacheRecord,
    ExactCache,
    format_rational,
    parse_rational,
)
from nodalcount.pipeline import cr1_eta
from nodalcount.problem import ProblemSpec
from nodalcount.vbar import clear_memo, eta_tilde_number


def test_rational_format():
    assert format_rational(Fraction(3)) == "3"
    assert format_rational(Fraction(-7, 6)) == "-7/6"
    assert parse_rational("-7/6") == Fraction(-7, 6)
    with pytest.raises(ValueError):
        parse_rational(1.5)


def test_record_line_is_byte_stable():
    record = CacheRecord("v1|rational|2|3|2,2,2,2,2,2,2,2|", Fraction(12))
    line = record.to_line()
    assert CacheRecord.from_line(line) == record
    assert CacheRecord.from_line(line).to_line() == line


def test_put_get(tmp_path):
    with ExactCache(tmp_path / "c.jsonl") as cache:
        assert cache.get("absent") is None
        cache.put(CacheRecord("k", Fraction(1, 3)))
        assert cache.get("k") == Fraction(1, 3)
        cache.put(CacheRecord("k", Fraction(5)))
        assert cache.get("k") == 5
        assert cache.stats() == {"hits": 2, "misses": 1}
    with ExactCache(tmp_path / "c.jsonl") as cache:
        assert cache.get("k") == 5
        assert len(cache) == 1


def test_corrupt_trailing_line_is_skipped(tmp_path, caplog):
    path = tmp_path / "c.jsonl"
    path.write_text(CacheRecord("a", Fraction(2)).to_line() + "\n" + '{"key": "b", "val')
    with caplog.at_level(logging.WARNING):
        with ExactCache(path) as cache:
            assert cache.get("a") == 2
            assert cache.get("b") is None
            cache.put(CacheRecord("c", Fraction(3)))
    assert "corrupt" in caplog.text
    with ExactCache(path) as cache:
        assert cache.get("c") == 3


def test_version_mismatch_invalidates(tmp_path):
    path = tmp_path / "c.jsonl"
    path.write_text(CacheRecord("a", Fraction(2), version=CACHE_VERSION + 1).to_line() + "\n")
    with ExactCache(path) as cache:
        assert cache.get("a") is None


def test_second_holder_fails_fast(tmp_path):
    path = tmp_path / "c.jsonl"
    with ExactCache(path):
        with pytest.raises(CacheLockError):
            ExactCache(path)
    ExactCache(path).close()


def test_io_error_surfaces(tmp_path):
    with pytest.raises(OSError):
        ExactCache(tmp_path / "missing-dir" / "c.jsonl")


def test_cache_hits_do_not_change_values(tmp_path):
    specs = [ProblemSpec(3, 2, [2] * 7), ProblemSpec(4, 2, [4, 3, 2, 2, 2, 2]), ProblemSpec(3, 3, [3] * 5 + [2])]
    clear_memo()
    fresh = [cr1_eta(s) for s in specs]
    path = tmp_path / "c.jsonl"
    with ExactCache(path) as cache:
        clear_memo()
        assert [cr1_eta(s, cache) for s in specs] == fresh
        assert cache.misses > 0
    with ExactCache(path) as cache:
        clear_memo()
        assert [cr1_eta(s, cache) for s in specs] == fresh
        assert cache.misses == 0 and cache.hits > 0
    clear_memo()
    assert eta_tilde_number(specs[0], 2, 0, 0, 0) == 140
