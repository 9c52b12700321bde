import io
import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, strategies as st

from zerogaps.errors import DomainError, EmptyTableError, MonotonicityError, ZeroTableError, ZeroTableParseError
from zerogaps.zeros import (
    ZeroTable,
    counting_check,
    gap_report,
    load_zeros,
    load_zeros_file,
    normalized_gap,
    normalized_gaps,
)


class TestLoad:
    def test_three_ordinates(self):
        t = load_zeros(b"14.134725\n21.022040\n25.010858\n")
        assert len(t) == 3
        assert t.ordinates.tolist() == [14.134725, 21.022040, 25.010858]
        assert t.line_numbers == (1, 2, 3)

    def test_str_and_stream(self):
        text = "# h\n\n14.1\n21.0\n"
        a = load_zeros(text)
        b = load_zeros(io.BytesIO(text.encode()))
        assert a == b
        assert a.line_numbers == (3, 4)

    def test_monotonicity_line(self):
        with pytest.raises(MonotonicityError) as err:
            load_zeros(b"# header\n14.1\n13.9\n")
        assert err.value.line == 3

    def test_ties_allowed(self):
        assert len(load_zeros("14.1\n14.1\n")) == 2

    def test_empty(self):
        with pytest.raises(EmptyTableError):
            load_zeros(b"")
        with pytest.raises(EmptyTableError):
            load_zeros("# only a comment\n\n")

    def test_parse_error_line(self):
        with pytest.raises(ZeroTableParseError) as err:
            load_zeros("14.1\n\nabc\n")
        assert err.value.line == 3

    @pytest.mark.parametrize("bad", ["nan", "inf"])
    def test_nonfinite(self, bad):
        with pytest.raises(ZeroTableParseError):
            load_zeros(f"1.5\n{bad}\n")

    def test_nonpositive_is_domain_error(self):
        with pytest.raises(ZeroTableError) as err:
            load_zeros("0\n1\n")
        assert isinstance(err.value, DomainError)
        assert err.value.line == 1

    def test_not_utf8(self):
        with pytest.raises(ZeroTableParseError):
            load_zeros(b"\xff\xfe1.0\n")

    def test_many_digits(self):
        t = load_zeros("14.134725141734693790457251983562470270784257115699\n")
        assert t.ordinates[0] == pytest.approx(14.134725141734694, abs=0)

    def test_immutable(self):
        t = load_zeros("14.1\n21.0\n")
        with pytest.raises(ValueError):
            t.ordinates[0] = 1.0

    def test_file(self, tmp_path):
        p = tmp_path / "z.txt"
        p.write_text("14.134725\n21.022040\n")
        t = load_zeros_file(p)
        assert t.source == str(p)
        assert len(t) == 2


class TestNormalizedGap:
    def test_first_gap(self):
        t = load_zeros("14.134725\n21.022040\n25.010858\n")
        expected = 6.887315 * math.log(14.134725) / (2 * math.pi)
        assert normalized_gap(t, 1, 1) == pytest.approx(expected, rel=1e-14)
        assert normalized_gap(t, 1, 1) == pytest.approx(2.9030, abs=5e-4)

    def test_integers(self):
        t = ZeroTable.from_values(range(1, 201))
        assert normalized_gap(t, 100, 1) == pytest.approx(math.log(100) / (2 * math.pi), rel=1e-15)
        assert normalized_gap(t, 100, 1) == pytest.approx(0.7330, abs=1e-4)

    def test_repeat(self):
        t = ZeroTable.from_values([14.1, 21.0, 21.0, 25.0])
        assert normalized_gap(t, 2, 1) == 0.0

    def test_index_range(self):
        t = ZeroTable.from_values([14.1, 21.0, 25.0])
        with pytest.raises(DomainError):
            normalized_gap(t, 0, 1)
        with pytest.raises(DomainError):
            normalized_gap(t, 2, 2)
        with pytest.raises(DomainError):
            normalized_gap(t, 1, 3)

    def test_log_domain(self):
        t = ZeroTable.from_values([0.5, 2.0, 3.0])
        with pytest.raises(DomainError):
            normalized_gap(t, 1, 1)
        with pytest.raises(DomainError):
            normalized_gaps(t, 1)
        assert normalized_gap(t, 2, 1) > 0

    def test_vector_matches_scalar(self, jittered_table):
        for r in (1, 3, 10):
            vec = normalized_gaps(jittered_table, r)
            assert len(vec) == len(jittered_table) - r
            for n in (1, 17, len(vec)):
                assert vec[n - 1] == pytest.approx(normalized_gap(jittered_table, n, r), rel=1e-13)

    @given(st.integers(1, 1900), st.integers(1, 50))
    def test_additivity(self, n, r):
        rng = np.random.default_rng(1)
        g = 20.0 + np.cumsum(rng.uniform(0.0, 1.0, 2000))
        t = ZeroTable.from_values(g)
        if n + r > len(t):
            return
        scale = 2 * math.pi / math.log(g[n - 1])
        whole = normalized_gap(t, n, r) * r * scale
        parts = math.fsum(
            normalized_gap(t, n + j, 1) * 2 * math.pi / math.log(g[n + j - 1]) for j in range(r)
        )
        assert whole == pytest.approx(parts, rel=1e-12, abs=1e-12)
        assert math.fsum(np.diff(g[n - 1 : n + r])) == pytest.approx(g[n + r - 1] - g[n - 1], rel=1e-15)


class TestGapReport:
    def test_unit_gaps(self, unit_gap_table):
        rep = gap_report(unit_gap_table, 1)
        assert rep.count_above == rep.count_below == 0
        assert rep.max_norm == pytest.approx(1.0, abs=1e-12)
        assert rep.min_norm == pytest.approx(1.0, abs=1e-12)
        assert rep.theta_used == 0.574271
        assert rep.vartheta_used == 0.299856

    def test_r_too_large(self):
        t = ZeroTable.from_values([14.1, 21.0, 25.0])
        with pytest.raises(DomainError):
            gap_report(t, 3)
        assert gap_report(t, 2).n_gaps == 1

    @pytest.mark.parametrize("r", [1, 2, 5, 30])
    def test_consistency(self, jittered_table, r):
        rep = gap_report(jittered_table, r)
        gaps = normalized_gaps(jittered_table, r)
        upper = 1 + rep.theta_used / math.sqrt(r)
        lower = 1 - rep.vartheta_used / math.sqrt(r)
        assert rep.n_gaps == len(jittered_table) - r
        assert rep.count_above + rep.count_below <= rep.n_gaps
        assert rep.max_norm >= rep.min_norm
        assert (rep.max_norm > upper) == (rep.count_above >= 1)
        assert (rep.min_norm < lower) == (rep.count_below >= 1)
        assert gaps[rep.argmax - 1] == rep.max_norm
        assert gaps[rep.argmin - 1] == rep.min_norm

    def test_partitioned_scan_merges(self, jittered_table):
        # the report is an associative merge over index blocks
        r = 3
        gaps = normalized_gaps(jittered_table, r)
        full = gap_report(jittered_table, r)
        upper = 1 + full.theta_used / math.sqrt(r)
        blocks = np.array_split(gaps, 7)
        assert sum(int(np.count_nonzero(b > upper)) for b in blocks) == full.count_above
        assert max(float(b.max()) for b in blocks) == full.max_norm

    def test_custom_thresholds(self, jittered_table):
        loose = gap_report(jittered_table, 1, theta=100.0, vartheta=100.0)
        assert loose.count_above == loose.count_below == 0

    def test_determinism(self):
        data = "\n".join(f"{x:.12f}" for x in 14 + np.cumsum(np.linspace(0.3, 2.0, 400))).encode()
        assert gap_report(load_zeros(data), 2) == gap_report(load_zeros(data), 2)

    def test_genuine_first_60(self, genuine_zeros_path):
        t = load_zeros_file(genuine_zeros_path)
        assert normalized_gap(t, 1, 1) == pytest.approx(2.9030, abs=5e-4)
        rep = gap_report(t, 1)
        assert rep.argmax == 1
        assert rep.count_above >= 1
        assert rep.count_below >= 1


class TestCounting:
    def test_integers(self):
        t = ZeroTable.from_values(range(1, 11))
        assert counting_check(t, 5).empirical == 5
        assert counting_check(t, 0.5).empirical == 0

    def test_main_term(self):
        t = ZeroTable.from_values([14.1, 200.0])
        chk = counting_check(t, 100.0)
        assert chk.main_term == pytest.approx(100 / (2 * math.pi) * math.log(100), rel=1e-15)
        assert chk.main_term == pytest.approx(73.29, abs=5e-3)
        x = 100 / (2 * math.pi)
        assert chk.refined_term == pytest.approx(x * math.log(x) - x, rel=1e-15)

    def test_range(self):
        t = ZeroTable.from_values([14.1, 21.0])
        with pytest.raises(DomainError):
            counting_check(t, 22.0)
        with pytest.raises(DomainError):
            counting_check(t, 0.0)

    def test_genuine(self, genuine_zeros_path):
        t = load_zeros_file(genuine_zeros_path)
        chk = counting_check(t, 100.0)
        assert chk.empirical == 29
        # the refined form is much closer at this height
        assert abs(chk.refined_term - 29) < abs(chk.main_term - 29)


def _window_mean(ordinates, N):
    g = np.asarray(ordinates[N - 1 : 2 * N + 1])
    return float(np.mean(np.diff(g) * np.log(g[:-1]) / (2 * math.pi)))


def test_mean_normalization_gram_points():
    # Gram points share the zeros' average density; the window mean telescopes,
    # so it matches the genuine value to O(1/N)
    N = 1000
    g = [0.0] * (N - 1) + [float(mpmath.grampoint(n)) for n in range(N - 1, 2 * N + 1)]
    mean = _window_mean(g, N)
    g = g[N - 1 :]
    mid = math.sqrt(g[0] * g[-1])
    assert mean == pytest.approx(math.log(mid) / math.log(mid / (2 * math.pi)), rel=0.01)


def test_mean_normalization_genuine(user_zero_table):
    if user_zero_table is None or len(user_zero_table) < 2001:
        pytest.skip("needs ZEROGAPS_ZEROS_FILE with at least 2001 ordinates")
    assert 0.85 <= _window_mean(user_zero_table.ordinates, 1000) <= 1.15
