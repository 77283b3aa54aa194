import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypervlc.mapping import Modulation, demap_symbols, map_bits

ALL_SCHEMES = list(Modulation)


def _all_words_bits(scheme):
    bps = scheme.bits_per_symbol
    words = np.arange(2 ** bps)
    return ((words[:, None] >> np.arange(bps - 1, -1, -1)) & 1).reshape(-1)


def test_bpsk_antipodal():
    assert np.array_equal(map_bits([0, 1], Modulation.BPSK), [1.0, -1.0])


def test_qpsk_zero_word():
    sym = map_bits([0, 0], Modulation.QPSK)[0]
    assert sym == pytest.approx((1 + 1j) / np.sqrt(2))


def test_qam16_distinct_and_unit_energy():
    pts = map_bits(_all_words_bits(Modulation.QAM16), Modulation.QAM16)
    assert len(set(np.round(pts, 12))) == 16
    assert np.mean(np.abs(pts) ** 2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("scheme", ALL_SCHEMES)
def test_unit_average_energy(scheme):
    pts = scheme.points
    assert pts.size == 2 ** scheme.bits_per_symbol
    assert np.mean(np.abs(pts) ** 2) == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("scheme", ALL_SCHEMES)
def test_round_trip_all_words(scheme):
    bits = _all_words_bits(scheme)
    assert np.array_equal(demap_symbols(map_bits(bits, scheme), scheme), bits)


@pytest.mark.parametrize("scheme", ALL_SCHEMES)
def test_gray_property_exhaustive(scheme):
    # every nearest neighbour differs in exactly one bit
    pts = scheme.points
    bps = scheme.bits_per_symbol
    for w, p in enumerate(pts):
        d = np.abs(pts - p)
        d[w] = np.inf
        dmin = d.min()
        for v in np.nonzero(np.isclose(d, dmin, rtol=1e-9))[0]:
            assert bin(w ^ int(v)).count("1") == 1, (scheme, w, int(v))


def test_bpsk_nearest_neighbor():
    assert demap_symbols(np.array([-0.2 + 0j]), Modulation.BPSK).tolist() == [1]


def test_qpsk_boundary_tie_break():
    # 0+1j is equidistant from the words 00 and 10; lower index wins
    assert demap_symbols(np.array([0 + 1j]), Modulation.QPSK).tolist() == [0, 0]


def test_psk8_reflection_balance():
    # wrong-key sign descrambling reflects the constellation about the I
    # axis, the Q axis, or both; each reflection must flip 2 of 3 bits on
    # average or blind descrambling would leak structure
    pts = Modulation.PSK8.points
    for reflect in (np.conj, lambda z: -np.conj(z), lambda z: -z):
        total = 0
        for w, p in enumerate(pts):
            v = int(np.argmin(np.abs(pts - reflect(p))))
            total += bin(w ^ v).count("1")
        assert total / 8 == pytest.approx(2.0)


def test_length_mismatch_rejected():
    with pytest.raises(ValueError):
        map_bits([0, 1, 0], Modulation.QPSK)
    with pytest.raises(ValueError):
        map_bits([0, 1, 2, 1], Modulation.QPSK)


def test_parse_names():
    assert Modulation.parse("BPSK") is Modulation.BPSK
    assert Modulation.parse(" 8psk ") is Modulation.PSK8
    with pytest.raises(ValueError):
        Modulation.parse("64qam")


@settings(max_examples=50)
@given(st.integers(0, 3), st.lists(st.integers(0, 1), min_size=0, max_size=96))
def test_round_trip_random_bits(scheme_idx, raw_bits):
    scheme = ALL_SCHEMES[scheme_idx]
    bps = scheme.bits_per_symbol
    bits = np.array(raw_bits[:len(raw_bits) - len(raw_bits) % bps], np.uint8)
    assert np.array_equal(demap_symbols(map_bits(bits, scheme), scheme), bits)
