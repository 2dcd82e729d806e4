import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from brownlab.core import (Coloring, GrowthFn, finite_set, gap_size,
                           gap_spectrum, max_run_size, monotone_closure,
                           parse_growth_spec, windows)
from brownlab.errors import GrowthSpecError, InvalidArgumentError

small_sets = st.lists(st.integers(min_value=0, max_value=40),
                      max_size=10).map(finite_set)


# ---------------------------------------------------------------------------
# gap_size / windows
# ---------------------------------------------------------------------------


def test_gap_size_degenerate_sets_score_one():
    assert gap_size(()) == 1
    assert gap_size((7,)) == 1


def test_gap_size_is_max_consecutive_difference():
    assert gap_size((0, 1, 4)) == 3
    assert gap_size((0, 3, 6, 9)) == 3
    assert gap_size((0, 1)) == 1


def test_windows_enumerates_every_run_once():
    got = list(windows((0, 1, 5)))
    assert got == [(0,), (0, 1), (0, 1, 5), (1,), (1, 5), (5,)]
    assert list(windows(())) == []
    assert list(windows((2, 9))) == [(2,), (2, 9), (9,)]


@given(small_sets)
def test_windows_count_is_triangular(h):
    ws = list(windows(h))
    n = len(h)
    assert len(ws) == n * (n + 1) // 2
    assert len(set(ws)) == len(ws)


@given(small_sets)
def test_max_window_gap_size_recovers_gap_size(h):
    # over windows of size >= 2, the max gap size equals the set's gap size
    sizes = [gap_size(w) for w in windows(h) if len(w) >= 2]
    if sizes:
        assert max(sizes) == gap_size(h)


# ---------------------------------------------------------------------------
# color classes
# ---------------------------------------------------------------------------


def test_color_class_splits_reference_coloring():
    c1 = Coloring(2, tuple(int(ch) for ch in "0011001100110011"))
    assert c1.color_class(0) == (0, 1, 4, 5, 8, 9, 12, 13)
    assert c1.color_class(1) == (2, 3, 6, 7, 10, 11, 14, 15)
    assert Coloring(1, (0, 0, 0)).color_class(0) == (0, 1, 2)


def test_color_class_rejects_out_of_palette():
    c = Coloring(2, (0, 1))
    with pytest.raises(InvalidArgumentError):
        c.color_class(2)


def test_coloring_invariants():
    with pytest.raises(InvalidArgumentError):
        Coloring(2, (0, 2))
    with pytest.raises(InvalidArgumentError):
        Coloring(0, (0,))
    assert Coloring(0, ()).length == 0


def test_classes_matches_color_class():
    c = Coloring(3, (0, 2, 1, 2, 0, 0))
    assert c.classes() == [c.color_class(i) for i in range(3)]


# ---------------------------------------------------------------------------
# max_run_size
# ---------------------------------------------------------------------------


def test_max_run_size_examples():
    assert max_run_size((0, 1, 2, 10, 11), 1) == 3
    assert max_run_size((0, 3, 6, 9), 2) == 1
    assert max_run_size((0, 1, 4, 5, 8, 9, 12, 13), 3) == 8
    assert max_run_size((), 5) == 0


def test_max_run_size_rejects_zero_bound():
    with pytest.raises(InvalidArgumentError):
        max_run_size((0, 1), 0)


def _max_subset_size_bruteforce(h, d):
    """Independent oracle: largest subset with gap size <= d, all 2^|h| masks."""
    best = 0
    for mask in range(1, 1 << len(h)):
        subset = [h[i] for i in range(len(h)) if mask >> i & 1]
        if gap_size(subset) <= d and len(subset) > best:
            best = len(subset)
    return best


@settings(max_examples=60)
@given(st.lists(st.integers(min_value=0, max_value=30), max_size=9).map(finite_set),
       st.integers(min_value=1, max_value=6))
def test_max_run_size_equals_subset_bruteforce(h, d):
    expected = _max_subset_size_bruteforce(h, d) if h else 0
    assert max_run_size(h, d) == expected


@given(small_sets)
def test_max_run_size_monotone_and_saturating(h):
    if not h:
        return
    gs = gap_size(h)
    previous = 0
    for d in range(1, gs + 2):
        cur = max_run_size(h, d)
        assert cur >= previous
        previous = cur
    assert max_run_size(h, gs) == len(h)


# ---------------------------------------------------------------------------
# gap_spectrum
# ---------------------------------------------------------------------------


def _spectrum_bruteforce(h, d_max):
    """Oracle over the explicit window enumeration."""
    entries = {}
    ws = list(windows(h))
    for d in range(1, d_max + 1):
        le = max((len(w) for w in ws if gap_size(w) <= d), default=0)
        eq = max((len(w) for w in ws if gap_size(w) == d), default=0)
        entries[d] = (le, eq)
    return entries


def test_gap_spectrum_examples():
    assert gap_spectrum((0, 1, 2), 2).entries == {1: (3, 3), 2: (3, 0)}
    assert gap_spectrum((), 3).entries == {1: (0, 0), 2: (0, 0), 3: (0, 0)}
    # checked by hand against the 10-window enumeration
    assert gap_spectrum((0, 2, 4, 5), 2).entries == {1: (2, 2), 2: (4, 4)}
    assert _spectrum_bruteforce((0, 2, 4, 5), 2) == {1: (2, 2), 2: (4, 4)}


@settings(max_examples=60)
@given(small_sets, st.integers(min_value=1, max_value=8))
def test_gap_spectrum_matches_window_enumeration(h, d_max):
    spectrum = gap_spectrum(h, d_max)
    assert spectrum.entries == _spectrum_bruteforce(h, d_max)
    for d in range(1, d_max + 1):
        expected = max_run_size(h, d) if h else 0
        assert spectrum.bounded(d) == expected


@given(small_sets)
def test_gap_spectrum_invariants(h):
    d_max = gap_size(h) + 2
    spectrum = gap_spectrum(h, d_max)
    previous = 0
    for d in range(1, d_max + 1):
        le, eq = spectrum.entries[d]
        assert eq <= le
        assert le >= previous
        previous = le
    if h:
        assert spectrum.bounded(d_max) == len(h)


# ---------------------------------------------------------------------------
# growth functions
# ---------------------------------------------------------------------------


def test_growth_evaluation():
    assert [GrowthFn.identity()(n) for n in (0, 1, 5)] == [0, 1, 5]
    assert [GrowthFn.linear(3)(n) for n in (0, 1, 4)] == [0, 3, 12]
    assert [GrowthFn.exp2()(n) for n in (0, 1, 5)] == [1, 2, 32]
    t = GrowthFn.from_table((5, 7, 7))
    assert [t(n) for n in (0, 2, 9)] == [5, 7, 7]
    lin_tail = GrowthFn.from_table((1, 3), tail="linear")
    assert [lin_tail(n) for n in (0, 1, 2, 5)] == [1, 3, 5, 11]


def test_growth_nondecreasing_flags():
    assert GrowthFn.identity().nondecreasing
    assert GrowthFn.linear(2).nondecreasing
    assert GrowthFn.exp2().nondecreasing
    assert GrowthFn.from_table((1, 2, 2)).nondecreasing
    assert not GrowthFn.from_table((3, 1, 2)).nondecreasing
    assert GrowthFn.closure(GrowthFn.from_table((3, 1, 2))).nondecreasing


def test_growth_construction_errors():
    with pytest.raises(InvalidArgumentError):
        GrowthFn.linear(0)
    with pytest.raises(InvalidArgumentError):
        GrowthFn.from_table(())
    with pytest.raises(InvalidArgumentError):
        GrowthFn.from_table((5,), tail="linear")
    with pytest.raises(InvalidArgumentError):
        GrowthFn.from_table((5, 3), tail="linear")
    with pytest.raises(InvalidArgumentError):
        GrowthFn.exp2()(-1)


def test_monotone_closure_examples():
    assert monotone_closure(GrowthFn.exp2())(2) == 7
    assert monotone_closure(GrowthFn.linear(1))(3) == 6


@given(st.sampled_from([GrowthFn.exp2(), GrowthFn.linear(2),
                        GrowthFn.from_table((3, 1, 2)),
                        GrowthFn.from_table((0, 5), tail="linear")]),
       st.integers(min_value=0, max_value=12))
def test_monotone_closure_dominates_pointwise(f, n):
    g = monotone_closure(f)
    assert g.nondecreasing
    assert g(n) >= f(n)
    assert g(n) == sum(f(i) for i in range(n + 1))


CANONICAL_SPECS = [
    "id", "exp2", "linear:1", "linear:7",
    "table:1,2,3", "table:0,4;tail=linear", "table:9",
    "closure:exp2", "closure:table:3,1,2", "closure:closure:linear:2",
]


@pytest.mark.parametrize("spec", CANONICAL_SPECS)
def test_growth_spec_round_trip(spec):
    f = parse_growth_spec(spec)
    assert f.spec_string() == spec
    assert parse_growth_spec(f.spec_string()) == f


@pytest.mark.parametrize("bad,position", [
    ("", 0),
    ("linear:", 7),
    ("linear:0", 7),
    ("linear:x", 7),
    ("table:", 6),
    ("table:1,a", 8),
    ("table:1;tail=quadratic", 13),
    ("closure:nope", 8),
    ("exp3", 0),
])
def test_growth_spec_parse_errors_carry_position(bad, position):
    with pytest.raises(GrowthSpecError) as err:
        parse_growth_spec(bad)
    assert err.value.position == position


def test_growth_spec_explicit_const_tail_accepted():
    f = parse_growth_spec("table:1,2;tail=const")
    assert f == GrowthFn.from_table((1, 2))
    assert f.spec_string() == "table:1,2"
