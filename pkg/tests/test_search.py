import itertools

import pytest

from brownlab.checker import has_large_homogeneous_bruteforce, verify_certificate
from brownlab.core import Coloring, GrowthFn, monotone_closure
from brownlab.constructions import ardal_bound, upper_bound_seq
from brownlab.errors import InvalidArgumentError, PreconditionError
from brownlab.progressions import ap_partition_check
from brownlab.search import (SearchBudget, brown_number,
                             brown_number_bruteforce, confirm_no_ap_witness,
                             confirm_no_witness, formula_upper_bound,
                             vdw_number, vdw_number_bruteforce, _run_tree)

LIN1 = GrowthFn.linear(1)
LIN2 = GrowthFn.linear(2)
EXP2 = GrowthFn.exp2()


# ---------------------------------------------------------------------------
# brown_number, exact values
# ---------------------------------------------------------------------------


def test_single_color_thresholds():
    assert brown_number(LIN1, 1).value == 2
    assert brown_number(LIN2, 1).value == 3


def test_two_color_values_match_full_enumeration():
    for f in (LIN1, LIN2):
        outcome = brown_number(f, 2)
        assert outcome.kind == "exact"
        assert outcome.value == brown_number_bruteforce(f, 2)
    assert brown_number(LIN1, 2).value <= ardal_bound(1, 2)


def test_exact_outcomes_ship_sound_witnesses():
    for f, r in [(LIN1, 1), (LIN1, 2), (LIN2, 1), (LIN2, 2), (EXP2, 1), (EXP2, 2)]:
        outcome = brown_number(f, r)
        assert outcome.kind == "exact"
        assert outcome.witness.length == outcome.value - 1
        assert outcome.certificate is not None
        assert verify_certificate(outcome.certificate)
        confirmation = confirm_no_witness(outcome.value, f, r)
        assert confirmation.result is True


def test_rejects_zero_colors():
    with pytest.raises(InvalidArgumentError):
        brown_number(LIN1, 0)


def test_values_stay_below_closed_form_bounds():
    for f, m, r in [(LIN1, 1, 1), (LIN1, 1, 2), (LIN2, 2, 1), (LIN2, 2, 2)]:
        value = brown_number(f, r).value
        assert value <= ardal_bound(m, r)
        assert value <= upper_bound_seq(f, r)


def test_monotonicity_over_computed_values():
    grid = {}
    for name, f in (("lin1", LIN1), ("lin2", LIN2), ("exp2", EXP2)):
        for r in (1, 2):
            grid[name, r] = brown_number(f, r).value
    # nondecreasing in the number of colors
    for name in ("lin1", "lin2", "exp2"):
        assert grid[name, 1] <= grid[name, 2]
    # pointwise-dominated growth gives a threshold no smaller
    for r in (1, 2):
        assert grid["lin1", r] <= grid["lin2", r]
        assert grid["lin2", r] <= grid["exp2", r]


def test_non_monotone_growth_uses_closure():
    bumpy = GrowthFn.from_table((3, 1, 2))
    outcome = brown_number(bumpy, 1)
    assert outcome.used_closure
    direct = brown_number(monotone_closure(bumpy), 1)
    assert outcome.value == direct.value
    assert not direct.used_closure


# ---------------------------------------------------------------------------
# budgets and brackets
# ---------------------------------------------------------------------------


def test_budget_exhaustion_brackets_the_value():
    exact = brown_number(LIN2, 2).value
    outcome = brown_number(LIN2, 2, budget=SearchBudget(max_nodes=20))
    assert outcome.kind == "bracketed"
    assert outcome.value is None
    assert outcome.lower <= exact <= outcome.upper
    assert outcome.certificate is not None
    assert verify_certificate(outcome.certificate)


def test_length_cap_brackets_with_witness_at_cap():
    outcome = brown_number(EXP2, 2, n_cap=16)
    assert outcome.kind == "bracketed"
    assert outcome.lower == 17
    assert outcome.upper == upper_bound_seq(EXP2, 2) == 33
    assert outcome.witness.length == 16


def test_exponential_two_color_threshold_is_exact():
    outcome = brown_number(EXP2, 2)
    assert outcome.kind == "exact"
    assert outcome.value == 17


def test_formula_upper_bound_picks_the_best():
    assert formula_upper_bound(LIN1, 2) == min(ardal_bound(1, 2), upper_bound_seq(LIN1, 2))
    assert formula_upper_bound(EXP2, 2) == 33


# ---------------------------------------------------------------------------
# confirm_no_witness
# ---------------------------------------------------------------------------


def test_confirm_examples():
    assert confirm_no_witness(2, LIN1, 1).result is True
    assert confirm_no_witness(16, EXP2, 2).result is False
    assert confirm_no_witness(1, LIN1, 1).result is False


def test_confirm_requires_nondecreasing():
    with pytest.raises(PreconditionError):
        confirm_no_witness(2, GrowthFn.from_table((3, 1, 2)), 1)


def test_confirm_budget_exhaustion_is_indeterminate():
    outcome = confirm_no_witness(17, EXP2, 2, budget=SearchBudget(max_nodes=5))
    assert outcome.result is None


def test_wall_clock_budget_brackets():
    outcome = brown_number(LIN2, 2, budget=SearchBudget(max_seconds=0.0))
    assert outcome.kind == "bracketed"
    assert outcome.lower <= 13 <= outcome.upper


# ---------------------------------------------------------------------------
# van der Waerden numbers
# ---------------------------------------------------------------------------


def test_vdw_degenerate_families():
    for l in (1, 2, 3, 5, 8):
        assert vdw_number(1, l).value == l
    for r in (1, 2, 3, 4):
        assert vdw_number(r, 1).value == 1


def test_vdw_two_colors_three_terms():
    outcome = vdw_number(2, 3)
    assert outcome.kind == "exact"
    assert outcome.value == vdw_number_bruteforce(2, 3) == 9
    assert ap_partition_check(outcome.witness, 3) is None
    assert outcome.witness.length == 8
    assert confirm_no_ap_witness(outcome.value, 2, 3).result is True
    assert confirm_no_ap_witness(outcome.value - 1, 2, 3).result is False


def test_vdw_two_two():
    # two colors, pairs: any 2 equal positions give a 2-term progression
    assert vdw_number(2, 2).value == vdw_number_bruteforce(2, 2)


def test_vdw_bracket_has_no_upper():
    outcome = vdw_number(2, 3, budget=SearchBudget(max_nodes=5))
    assert outcome.kind == "bracketed"
    assert outcome.upper is None
    assert outcome.lower <= 9


# ---------------------------------------------------------------------------
# engine cross-checks
# ---------------------------------------------------------------------------


def test_canonicalization_preserves_outcomes():
    for f, r in [(LIN1, 2), (LIN2, 2)]:
        on = brown_number(f, r, canonical=True)
        off = brown_number(f, r, canonical=False)
        assert on.value == off.value
        assert on.witness.values == off.witness.values
        assert on.nodes_explored != off.nodes_explored
    on = vdw_number(2, 3, canonical=True)
    off = vdw_number(2, 3, canonical=False)
    assert on.value == off.value
    assert on.nodes_explored != off.nodes_explored


def test_parallel_split_matches_sequential():
    seq = brown_number(LIN2, 2)
    par = brown_number(LIN2, 2, jobs=2)
    assert (seq.value, seq.witness.values) == (par.value, par.witness.values)
    seq = vdw_number(2, 3)
    par = vdw_number(2, 3, jobs=2)
    assert (seq.value, seq.witness.values) == (par.value, par.witness.values)


@pytest.mark.parametrize("f,r", [(LIN1, 2), (LIN2, 2), (EXP2, 2), (LIN1, 3)])
def test_tree_nodes_are_exactly_the_valid_colorings(f, r):
    # without canonicalization, the depth-k frontier must equal the set of
    # length-k colorings whose classes all pass the subset oracle
    for k in (1, 2, 3, 5):
        collected = []
        _run_tree(("star", f, r), r, k, SearchBudget(), canonical=False,
                  stop_at_cap=False, collect=collected)
        expected = set()
        for values in itertools.product(range(r), repeat=k):
            coloring = Coloring(r, values)
            if has_large_homogeneous_bruteforce(coloring, f) is None:
                expected.add(values)
        assert set(collected) == expected


def test_deepest_witness_is_lexicographically_least():
    outcome = brown_number(LIN1, 2)
    collected = []
    _run_tree(("star", LIN1, 2), 2, outcome.value - 1, SearchBudget(),
              canonical=False, stop_at_cap=False, collect=collected)
    assert outcome.witness.values == min(collected)
