"""Rotation codings, word machinery, and refinement atoms."""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracle
from gehman.coding import (
    CutPointCollision,
    PeriodicStream,
    RotationCoding,
    WordStream,
    atom_diameter,
    atom_profile,
    dist,
    factor_count_profile,
    factors,
    itinerary,
    lcp,
    recurrent_factors,
    shift,
    sturmian_A,
    sturmian_stream,
)
from gehman.exactnum import QuadSurd, circle_distance, mod1

SQRT2_4 = QuadSurd(0, Fraction(1, 4), 2)
SQRT3_8 = QuadSurd(0, Fraction(1, 8), 3)


class TestRotationCoding:
    def test_sturmian_frozen_prefix(self):
        assert sturmian_A(SQRT2_4, 5) == "10110"

    def test_against_interval_oracle(self):
        got = sturmian_A(SQRT2_4, 400)
        want = oracle.oracle_sturmian_A(Fraction(0), Fraction(1, 4), 2, 400)
        assert got == want

    def test_generic_start_against_oracle(self):
        rc = RotationCoding(Fraction(1, 3), SQRT3_8)
        want = oracle.oracle_orbit_word(
            Fraction(1, 3), Fraction(0), Fraction(0), Fraction(1, 8), 3, 300
        )
        assert itinerary(rc, 300) == want

    def test_shift_rotation_equivariance(self):
        # dropping n symbols equals starting n steps later
        rc = RotationCoding(Fraction(1, 8), SQRT3_8)
        for n in (1, 7, 40):
            moved = RotationCoding(mod1(rc.start + n * rc.alpha), rc.alpha)
            assert shift(rc, n).word(1000) == moved.word(1000)

    def test_symbol_is_one_based(self):
        rc = sturmian_stream(SQRT2_4)
        assert [rc.symbol(i) for i in (1, 2, 3)] == [1, 0, 1]
        with pytest.raises(ValueError):
            rc.symbol(0)

    def test_rational_angle_rejected(self):
        with pytest.raises(ValueError):
            RotationCoding(0, Fraction(1, 3))

    def test_cut_collision_start(self):
        rc = RotationCoding(Fraction(1, 4), SQRT3_8)
        with pytest.raises(CutPointCollision) as ei:
            rc.symbol(1)
        assert ei.value.index == 1

    def test_cut_collision_mid_orbit(self):
        # Chunked evaluation may surface the collision before the colliding
        # symbol is itself requested; only the reported index is contractual.
        rc = RotationCoding(mod1(-SQRT3_8), SQRT3_8)
        with pytest.raises(CutPointCollision) as ei:
            rc.word(2)
        assert ei.value.index == 2


class TestStreams:
    def test_periodic(self):
        p = PeriodicStream("011")
        assert p.word(8) == "01101101"
        assert p.label == "per:011"

    def test_word_stream_finite(self):
        w = WordStream("0101")
        assert w.word(4) == "0101"
        with pytest.raises(ValueError):
            w.word(5)

    def test_shift_composes_and_labels(self):
        p = PeriodicStream("0110")
        s = shift(shift(p, 1), 2)
        assert s.word(5) == p.word(8)[3:]
        assert s.label == "shift(per:0110,3)"
        assert shift(p, 0) is p


class TestWordMachinery:
    def test_lcp_and_cap(self):
        # Plain strings are the finite-word carrier; they clamp at their
        # own length while WordStream stays strict about over-reads.
        assert lcp("0110111", "0110001", 10) == 4
        assert lcp("0110111", "0110001", 3) == 3
        assert lcp("011", "0110001", 10) == 3

    def test_dist_duality_examples(self):
        x = PeriodicStream("01")
        y = PeriodicStream("00")
        assert dist(x, y, 16) == (Fraction(1, 4), True)
        assert dist("1", "0", 8) == (Fraction(1, 2), True)
        assert dist(x, x, 16) == (Fraction(1, 2**16), False)

    @given(st.integers(1, 12))
    def test_metric_lcp_duality(self, k):
        x = PeriodicStream("0110100110010110")  # Thue-Morse period chunk
        y = PeriodicStream("0110100110010111")
        value, exact = dist(x, y, 40)
        assert exact
        assert value == Fraction(1, 2 ** (lcp(x, y, 40) + 1))
        # Strict-form duality: dist < 2^-k exactly when the first k
        # symbols agree.
        assert (value < Fraction(1, 2**k)) == (lcp(x, y, 40) >= k)

    @given(st.text(alphabet="01", min_size=1, max_size=9), st.integers(1, 5))
    def test_factors_against_windows(self, word, n):
        stream = PeriodicStream(word)
        horizon = 6 * len(word)
        text = stream.word(horizon)
        want = {text[i : i + n] for i in range(horizon - n + 1)}
        assert factors(stream, n, horizon) == want

    def test_factor_monotone_in_horizon(self):
        a = sturmian_stream(SQRT2_4)
        assert factors(a, 6, 300) <= factors(a, 6, 3000)

    def test_recurrent_discards_transient(self):
        x = WordStream("0" * 10 + "1" * 500)
        assert recurrent_factors(x, 2, 500, tail_start=100) == {"11"}

    def test_recurrent_periodic(self):
        assert recurrent_factors(PeriodicStream("01"), 2, 1000) == {"01", "10"}

    def test_count_profile_bound(self):
        profile = factor_count_profile(sturmian_A(SQRT2_4, 10_000), 12, 10_000)
        assert len(profile) == 12
        assert all(p <= 2 * n for n, p in enumerate(profile, start=1))


class TestAtoms:
    def test_depth_one_gap(self):
        assert atom_diameter(SQRT3_8, 1) == QuadSurd(Fraction(3, 4))

    def test_gap_nonincreasing(self):
        prof = atom_profile(SQRT3_8)
        diams = [prof.diameter(k) for k in range(1, 40)]
        assert all(b <= a for a, b in zip(diams, diams[1:]))

    def test_depth_32_below_ninth(self):
        assert atom_diameter(SQRT3_8, 32) < QuadSurd(Fraction(1, 9))

    def test_word_region_exceeds_gap(self):
        # at sqrt(2)/4 three separate depth-3 arcs share the word 111,
        # so the region diameter is far above the largest single gap
        prof = atom_profile(SQRT2_4)
        assert prof.diameter(3) == QuadSurd(Fraction(1, 4))
        assert prof.cylinder_diameter(3) == QuadSurd(Fraction(-1, 4), Fraction(1, 2), 2)
        assert prof.depth_for(SQRT2_4) == 7

    def test_region_diameter_nonincreasing(self):
        prof = atom_profile(SQRT2_4)
        diams = [prof.cylinder_diameter(k) for k in range(1, 16)]
        assert all(b <= a for a, b in zip(diams, diams[1:]))

    def test_depth_for_rejects(self):
        prof = atom_profile(SQRT3_8)
        with pytest.raises(ValueError):
            prof.depth_for(0)
        with pytest.raises(TypeError):
            prof.depth_for("x")

    @given(
        st.fractions(min_value=0, max_value=1, max_denominator=40).filter(
            lambda r: r not in (0, Fraction(1, 4), 1)
        ),
        st.fractions(min_value=0, max_value=1, max_denominator=40).filter(
            lambda r: r not in (0, Fraction(1, 4), 1)
        ),
    )
    def test_separation_property(self, r, rp):
        # certified depth forces itineraries of separated starts apart
        if r == rp:
            return
        delta = circle_distance(r, rp)
        k = atom_profile(SQRT3_8).depth_for(delta)
        u = RotationCoding(r, SQRT3_8)
        v = RotationCoding(rp, SQRT3_8)
        assert lcp(u, v, k + 5) < k
