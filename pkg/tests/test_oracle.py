"""Brute-force oracles: exact code sizes, duals, transforms, word-tuple LP."""

import itertools
import json
from math import inf

import pytest

from krawlp.configs import WordTuple, config_of_tuple
from krawlp.errors import CapacityError, NotLinearError
from krawlp.lp import build_hierarchy_lp, profile_of_code
from krawlp.oracle import (
    CodeSet,
    build_fourier_lp,
    dual_code,
    iter_linear_codes,
    max_code,
    max_linear_code,
    verify_macwilliams,
)
from krawlp.simplex import root_value, solve_exact


# ---------------------------------------------------------------------------
# CodeSet
# ---------------------------------------------------------------------------


def test_codeset_linearity_flag():
    assert CodeSet(frozenset({0, 3}), 2).linear
    assert not CodeSet(frozenset({1, 3}), 2).linear
    assert CodeSet(frozenset({0}), 4).linear


def test_codeset_min_distance():
    assert CodeSet(frozenset({0b000, 0b111}), 3).min_distance() == 3
    assert CodeSet(frozenset({0}), 3).min_distance() == inf


def test_codeset_json_roundtrip():
    code = CodeSet(frozenset({0, 0b1011}), 4)
    data = json.loads(code.to_json())
    assert data["words"] == ["0", "b"]
    assert CodeSet.from_json(code.to_json()) == code


# ---------------------------------------------------------------------------
# max_code
# ---------------------------------------------------------------------------


def test_max_code_known_values():
    assert max_code(4, 3)[0] == 2
    assert max_code(5, 3)[0] == 4
    for n in range(1, 7):
        assert max_code(n, 1)[0] == 2**n
    assert max_code(5, 5)[0] == 2
    assert max_code(6, 3)[0] == 8


def test_max_code_witness_has_distance():
    for n, d in [(4, 3), (5, 3), (5, 4), (6, 5)]:
        size, witness = max_code(n, d)
        assert witness.size == size
        assert witness.min_distance() >= d


def test_max_code_capacity():
    with pytest.raises(CapacityError):
        max_code(8, 3)


def test_max_code_matches_exhaustive_tiny():
    # independent oracle at n = 3: scan all subsets
    for d in (2, 3):
        best = 0
        for size in range(1, 9):
            for words in itertools.combinations(range(8), size):
                if all(
                    (a ^ b).bit_count() >= d
                    for a, b in itertools.combinations(words, 2)
                ):
                    best = max(best, size)
        assert max_code(3, d)[0] == best


# ---------------------------------------------------------------------------
# max_linear_code
# ---------------------------------------------------------------------------


def test_max_linear_known_values():
    assert max_linear_code(4, 3)[0] == 2
    assert max_linear_code(7, 3)[0] == 16  # [7,4,3] code
    for n in range(2, 7):
        assert max_linear_code(n, n)[0] == 2  # repetition code
    assert max_linear_code(3, 2)[0] == 4


def test_max_linear_witness_is_linear_with_distance():
    for n, d in [(4, 3), (5, 3), (6, 3), (7, 3)]:
        size, witness = max_linear_code(n, d)
        assert witness.linear and witness.size == size
        assert witness.min_distance() >= d


def test_max_linear_at_most_general():
    for n in range(1, 6):
        for d in range(1, n + 1):
            assert max_linear_code(n, d)[0] <= max_code(n, d)[0]


def test_max_linear_capacity():
    with pytest.raises(CapacityError):
        max_linear_code(11, 3)


# ---------------------------------------------------------------------------
# dual_code
# ---------------------------------------------------------------------------


def test_dual_examples():
    assert sorted(dual_code(CodeSet(frozenset({0b00, 0b11}), 2)).words) == [0, 3]
    assert dual_code(CodeSet(frozenset({0}), 3)).size == 8
    even = CodeSet(frozenset({0b000, 0b011, 0b101, 0b110}), 3)
    assert sorted(dual_code(even).words) == [0, 7]


def test_dual_rejects_nonlinear():
    with pytest.raises(NotLinearError):
        dual_code(CodeSet(frozenset({1, 2}), 2))


def test_dual_involution_and_size():
    for n in range(1, 7):
        for code in iter_linear_codes(n):
            dual = dual_code(code)
            assert code.size * dual.size == 1 << n
            assert dual_code(dual) == code


# ---------------------------------------------------------------------------
# verify_macwilliams
# ---------------------------------------------------------------------------


def test_macwilliams_repetition_code():
    report = verify_macwilliams(CodeSet(frozenset({0b00, 0b11}), 2), 1)
    assert report.passed
    assert report.identity_checked == 3  # one per weight 0..2


def test_macwilliams_transform_value_by_hand():
    # transform of (a_0, a_2) = (1, 1) at n = 2 gives the dual profile (1, 0, 1)
    code = CodeSet(frozenset({0b00, 0b11}), 2)
    from krawlp.krawtchouk import cached_table

    table = cached_table(2, 1)
    prof = [1, 0, 1]  # weight counts of the code itself
    transform = [
        sum(table.values[h][g] * prof[g] for g in range(3)) for h in range(3)
    ]
    assert transform == [2, 0, 2]  # |C| times the dual profile


def test_macwilliams_zero_code_dual_is_full_space():
    for n in (2, 3):
        code = CodeSet(frozenset({0}), n)
        assert verify_macwilliams(code, 1).passed
        assert verify_macwilliams(code, 2).passed
        assert dual_code(code).size == 1 << n


def test_macwilliams_inequality_all_small_codes():
    for n in (2, 3):
        for size in range(1, 5):
            for words in itertools.combinations(range(1 << n), size):
                report = verify_macwilliams(CodeSet(frozenset(words), n), 2)
                assert report.passed, words


def test_macwilliams_identity_skipped_for_nonlinear():
    report = verify_macwilliams(CodeSet(frozenset({1, 2}), 2), 1)
    assert report.identity_checked == 0
    assert report.inequality_checked > 0


# ---------------------------------------------------------------------------
# word-tuple LP
# ---------------------------------------------------------------------------


def test_fourier_tiny_value():
    lp = build_fourier_lp(1, 1, 1, linear=False)
    assert lp.num_vars == 2
    assert solve_exact(lp).value == 2


def test_fourier_row_and_variable_counts():
    lp = build_fourier_lp(2, 2, 1, linear=False)
    # variables: words with weight not in {1}; rows: NORM + one per word
    assert lp.num_vars == 2
    assert len(lp.rows) == 1 + 4


def test_fourier_capacity():
    with pytest.raises(CapacityError):
        build_fourier_lp(7, 3, 2, linear=False)


@pytest.mark.parametrize("n", [1, 2, 3])
def test_fourier_matches_hierarchy_values(n):
    for d in range(1, n + 1):
        for ell in (1, 2):
            for linear in (False, True):
                vf = solve_exact(build_fourier_lp(n, d, ell, linear)).value
                vk = solve_exact(build_hierarchy_lp(n, d, ell, linear)).value
                assert vf == vk, (n, d, ell, linear)


def test_fourier_indicator_solution_feasible():
    # the product indicator of a linear distance-d code satisfies every row
    n, d, ell = 3, 2, 2
    size, code = max_linear_code(n, d)
    lp = build_fourier_lp(n, d, ell, linear=True)
    words = code.words
    x = []
    for p in lp.var_indices:
        parts = tuple((p >> (n * j)) & ((1 << n) - 1) for j in range(ell))
        x.append(1 if all(w in words for w in parts) else 0)
    assert sum(x) == size**ell
    for row in lp.rows:
        lhs = sum(c * v for c, v in zip(row.coeffs, x))
        assert lhs == row.rhs if row.relation == "=" else lhs >= row.rhs


def test_fourier_orbit_sums_reproduce_profile():
    # summing the indicator solution over configuration classes gives the
    # span-formula profile of the code
    n, ell = 3, 2
    _, code = max_linear_code(n, 2)
    words = code.words
    sums: dict = {}
    for parts in itertools.product(range(1 << n), repeat=ell):
        if all(w in words for w in parts):
            g = config_of_tuple(WordTuple(parts, n))
            sums[g] = sums.get(g, 0) + 1
    prof = profile_of_code(sorted(words), n, ell, linear=True)
    assert sums == {g: int(v) for g, v in prof.entries.items()}


def test_oracle_lp_soundness_via_root():
    for n in range(1, 5):
        for d in range(1, n + 1):
            for ell in (1, 2):
                v_lin = solve_exact(build_hierarchy_lp(n, d, ell, True)).value
                v_gen = solve_exact(build_hierarchy_lp(n, d, ell, False)).value
                assert root_value(v_lin, ell) >= max_linear_code(n, d)[0] - 1e-9
                assert root_value(v_gen, ell) >= max_code(n, d)[0] - 1e-9
