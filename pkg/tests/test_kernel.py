"""Matrix entries, finite sections, endpoint decomposition."""

import math

import numpy as np
import pytest

from genhilbert import (
    Atom,
    JacobiTerm,
    LEBESGUE,
    Measure,
    ResourceLimitError,
    decompose,
    entry,
    entry_block,
    finite_section,
    log_binomial,
    section_from_csv,
    section_from_json,
    section_to_csv,
    section_to_json,
)
from conftest import MIXED_CORPUS

# ------------------------------------------------------------- log_binomial


@pytest.mark.parametrize("n,k", [(0, 0), (1, 0), (0, 5), (1, 1), (20, 20)])
def test_log_binomial_small_exact(n, k):
    # oracle: exact integer binomials
    assert log_binomial(n, k) == pytest.approx(math.log(math.comb(n + k, k)), rel=1e-14, abs=1e-14)


@pytest.mark.parametrize(
    "n,k",
    [(1, 999_999), (3, 500_000), (2048, 997_952), (2049, 997_951), (4000, 996_000)],
)
def test_log_binomial_huge_arguments(n, k):
    """1e-12 relative accuracy up to n+k = 1e6, straddling the exact-sum cutoff."""
    # oracle: exact integer binomial; its log taken via bit-length scaling
    # because the int far exceeds float range
    ref = math.comb(n + k, k)
    shift = max(0, ref.bit_length() - 900)
    ref_log = math.log(ref >> shift) + shift * math.log(2.0)
    assert log_binomial(n, k) == pytest.approx(ref_log, rel=1e-12)


def test_log_binomial_symmetric():
    assert log_binomial(37, 1021) == log_binomial(1021, 37)


# ------------------------------------------------------------------- entries


@pytest.mark.parametrize("n,k", [(0, 0), (0, 1), (1, 2), (7, 5), (63, 63), (400, 100)])
def test_classical_entries(n, k):
    assert entry(LEBESGUE, n, k) == pytest.approx(1.0 / (n + k + 1), rel=1e-15)


def test_first_rows_of_classical_matrix():
    section = finite_section(LEBESGUE, 3).entries
    expected = np.array([[1, 1 / 2, 1 / 3], [1 / 2, 1 / 3, 1 / 4], [1 / 3, 1 / 4, 1 / 5]])
    np.testing.assert_allclose(section, expected, rtol=1e-15)


def test_atom_at_zero_gives_first_column(lebesgue):
    mu = Measure((), (Atom(0.0, 2.5),))
    for n in range(5):
        assert entry(mu, n, 0) == 2.5
        assert entry(mu, n, 3) == 0.0


def test_atom_at_one_gives_first_row():
    mu = Measure((), (Atom(1.0, 1.5),))
    section = finite_section(mu, 3).entries
    np.testing.assert_array_equal(section[0], [1.5, 1.5, 1.5])
    np.testing.assert_array_equal(section[1:], 0.0)


@pytest.mark.parametrize("n,k", [(0, 0), (1, 1), (3, 2), (10, 4), (40, 40)])
def test_interior_atom_entry_formula(delta_half, n, k):
    # direct formula with exact integer binomial
    ref = math.comb(n + k, k) * 0.5 ** (n + k)
    assert entry(delta_half, n, k) == pytest.approx(ref, rel=1e-12)


def test_zero_measure_section(zero_measure):
    np.testing.assert_array_equal(finite_section(zero_measure, 2).entries, 0.0)


def test_entries_nonnegative_everywhere():
    rows = np.arange(24.0)[:, None]
    cols = np.arange(24.0)[None, :]
    for mu in MIXED_CORPUS:
        assert entry_block(mu, rows, cols).min() >= 0.0


def test_entry_block_matches_scalar_entry():
    mu = Measure((JacobiTerm(0.7, -0.5, 0.25),), (Atom(0.5, 1.0),))
    block = entry_block(mu, np.arange(6.0)[:, None], np.arange(6.0)[None, :])
    for n in range(6):
        for k in range(6):
            assert block[n, k] == entry(mu, n, k)


def test_section_is_bit_identical_to_entries():
    # the same array code path serves both, so equality is exact
    for mu in MIXED_CORPUS[:5]:
        section = finite_section(mu, 9).entries
        for n, k in [(0, 0), (3, 7), (8, 1), (5, 5)]:
            assert section[n, k] == entry(mu, n, k)


def test_symmetric_measure_gives_symmetric_entries():
    symmetric = Measure((JacobiTerm(1.0, 0.75, 0.75),), (Atom(0.5, 0.3),))
    section = finite_section(symmetric, 12).entries
    np.testing.assert_allclose(section, section.T, rtol=1e-12)


def test_biased_coin_bound_for_interior_atoms():
    # entries of a point mass are mass * binomial pmf value, hence <= mass
    for s, mass in [(0.2, 1.0), (0.5, 2.0), (0.9, 0.7)]:
        mu = Measure((), (Atom(s, mass),))
        block = entry_block(mu, np.arange(50.0)[:, None], np.arange(50.0)[None, :])
        assert block.max() <= mass + 1e-15


def test_row_sums_of_point_mass_increase_to_geometric_limit():
    # sum_k binom(n+k,k) s^k (1-s)^n -> 1/(1-s), monotonically from below
    for s in (0.1, 0.5, 0.9):
        mu = Measure((), (Atom(s, 1.0),))
        limit = 1.0 / (1.0 - s)
        for n in (0, 1, 4):
            row = entry_block(mu, float(n), np.arange(4000.0))
            partial = np.cumsum(row)
            assert np.all(np.diff(partial) >= 0.0)
            assert partial[-1] <= limit + 1e-12
            assert partial[-1] == pytest.approx(limit, rel=1e-8)


def test_section_cap_enforced():
    with pytest.raises(ResourceLimitError):
        finite_section(LEBESGUE, 100, cap=64)
    with pytest.raises(ValueError):
        finite_section(LEBESGUE, 0)


# ------------------------------------------------------------- decomposition


def test_decompose_splits_endpoint_masses():
    mu = Measure((JacobiTerm(1.0, 0.0, 0.0),), (Atom(0.0, 2.0), Atom(0.5, 9.0), Atom(1.0, 3.0)))
    dec = decompose(mu)
    assert (dec.c0, dec.c1) == (2.0, 3.0)
    assert dec.smooth.jacobi_terms == mu.jacobi_terms
    assert dec.smooth.atom_at(0.5) == 9.0
    assert dec.smooth.atom_at(0.0) == 0.0


def test_decompose_interior_atom_stays_smooth(delta_half):
    dec = decompose(delta_half)
    assert (dec.c0, dec.c1) == (0.0, 0.0)
    assert dec.smooth == delta_half


def test_entry_reconstruction_from_decomposition():
    corpus = [
        Measure((JacobiTerm(1.0, 0.0, 0.0),), (Atom(0.0, 2.0), Atom(1.0, 3.0))),
        Measure((JacobiTerm(0.5, 1.0, -0.5),), (Atom(1.0, 1.0),)),
        Measure((), (Atom(0.0, 1.0), Atom(0.25, 1.0))),
    ]
    for mu in corpus:
        dec = decompose(mu)
        for n in range(8):
            for k in range(8):
                recon = entry(dec.smooth, n, k) + dec.atomic_entry(n, k)
                assert entry(mu, n, k) == pytest.approx(recon, abs=1e-12)


def test_atomic_corner_is_sum_of_masses():
    dec = decompose(Measure((), (Atom(0.0, 2.0), Atom(1.0, 3.0))))
    assert dec.atomic_entry(0, 0) == 5.0
    assert dec.atomic_entry(4, 0) == 2.0
    assert dec.atomic_entry(0, 4) == 3.0
    assert dec.atomic_entry(2, 2) == 0.0


# ------------------------------------------------------------------ export


def test_section_csv_round_trip_is_bitwise():
    mu = Measure((JacobiTerm(1.0, -0.5, 1.5),), (Atom(0.5, 0.25),))
    section = finite_section(mu, 8)
    again = section_from_csv(section_to_csv(section))
    assert again.size == 8
    np.testing.assert_array_equal(again.entries, section.entries)


def test_section_json_round_trip_is_bitwise():
    section = finite_section(LEBESGUE, 5)
    again = section_from_json(section_to_json(section))
    np.testing.assert_array_equal(again.entries, section.entries)


def test_section_csv_rejects_ragged_input():
    with pytest.raises(ValueError):
        section_from_csv("1,2\n3\n")
