from fractions import Fraction as Q

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fractotal.intervals import (
    IntervalSet,
    PiecewiseIsometry,
    build_level_partition,
    extend_swap,
    matching_isometry,
)

GRID = 4  # endpoints are multiples of 1/4 inside [0, 8)
CELLS = 8 * GRID


def cells(s: IntervalSet) -> frozenset[int]:
    out = set()
    for a, b in s.spans:
        out.update(range(int(a * GRID), int(b * GRID)))
    return frozenset(out)


spans = st.lists(
    st.tuples(st.integers(0, CELLS), st.integers(0, CELLS)).map(
        lambda t: (Q(min(t), GRID), Q(max(t), GRID))
    ),
    max_size=5,
)
sets = spans.map(IntervalSet)


@given(sets, sets)
def test_set_operations_match_cell_oracle(a, b):
    assert cells(a | b) == cells(a) | cells(b)
    assert cells(a & b) == cells(a) & cells(b)
    assert cells(a - b) == cells(a) - cells(b)
    assert (a & b).measure() == Q(len(cells(a) & cells(b)), GRID)
    assert a.issubset(b) == (cells(a) <= cells(b))
    assert a.isdisjoint(b) == (not cells(a) & cells(b))


@given(spans)
def test_canonical_form_is_unique(sp):
    a = IntervalSet(sp)
    b = IntervalSet(reversed(sp))
    assert a == b and hash(a) == hash(b)
    for (x1, y1), (x2, y2) in zip(a.spans, a.spans[1:]):
        assert x1 < y1 < x2 < y2


def test_abutting_intervals_merge():
    assert IntervalSet([(0, 1), (1, 2)]) == IntervalSet.span(0, 2)
    assert len(IntervalSet([(0, 1), (Q(3, 2), 2)])) == 2


def test_empty_and_degenerate():
    assert not IntervalSet([(1, 1)])
    assert IntervalSet().measure() == 0
    with pytest.raises(ValueError):
        IntervalSet([(2, 1)])
    with pytest.raises(TypeError):
        IntervalSet([(0.5, 1)])


@given(sets, st.integers(0, 8 * GRID))
def test_prefix_and_suffix(a, k):
    m = min(Q(k, GRID), a.measure())
    p, s = a.prefix(m), a.suffix(m)
    assert p.measure() == m and s.measure() == m
    assert p.issubset(a) and s.issubset(a)
    rest = a - p
    assert not rest or not p or p.sup() <= rest.inf()
    rest = a - s
    assert not rest or not s or rest.sup() <= s.inf()


def test_prefix_too_large():
    with pytest.raises(ValueError):
        IntervalSet.span(0, 1).prefix(2)


def test_level_partition():
    parts = build_level_partition(Q(13, 2), 7, Q(1, 2))
    assert parts[0] == IntervalSet.span(Q(13, 2), 7)
    assert len(parts) == 14
    assert all(p.measure() == Q(1, 2) for p in parts)
    parts = build_level_partition(Q(11, 2), 6, Q(2, 3))
    assert parts[-1].measure() == Q(11, 2) - 8 * Q(2, 3)
    union = IntervalSet()
    for p in parts:
        assert union.isdisjoint(p)
        union = union | p
    assert union == IntervalSet.span(0, 6)


def random_isometry_strategy(length=8):
    @st.composite
    def build(draw):
        cuts = sorted(set(draw(st.lists(st.integers(1, length * GRID - 1), max_size=5))))
        bounds = [0] + cuts + [length * GRID]
        blocks = list(zip(bounds, bounds[1:]))
        perm = draw(st.permutations(blocks))
        pieces, pos = [], 0
        for a, b in perm:
            pieces.append((Q(a, GRID), Q(b, GRID), Q(pos - a, GRID)))
            pos += b - a
        return PiecewiseIsometry(length, pieces)

    return build()


@given(random_isometry_strategy(), random_isometry_strategy(), sets)
def test_isometry_algebra(f, g, a):
    a = a & IntervalSet.span(0, 8)
    assert f.is_total()
    assert f.apply(a).measure() == a.measure()
    assert f.inverse().apply(f.apply(a)) == a
    fg = f.compose(g)
    assert fg.apply(a) == f.apply(g.apply(a))
    for t in g.breakpoints():
        assert fg(t) == f(g(t))


@given(random_isometry_strategy(), sets, sets)
def test_isometry_preserves_disjointness(f, a, b):
    a, b = a & IntervalSet.span(0, 8), b & IntervalSet.span(0, 8)
    assert (f.apply(a) & f.apply(b)).measure() == (a & b).measure()


def test_partial_isometry_rejects_overlap():
    with pytest.raises(ValueError):
        PiecewiseIsometry(4, [(0, 1, 1), (1, 2, 0)])
    with pytest.raises(ValueError):
        PiecewiseIsometry(4, [(0, 2, 3)])


@given(sets, sets)
@settings(max_examples=200)
def test_matching_isometry(a, b):
    a = a & IntervalSet.span(0, 4)
    b = (b & IntervalSet.span(0, 4)).shift(4)
    m = min(a.measure(), b.measure())
    src, dst = a.prefix(m), b.prefix(m)
    sigma = matching_isometry(src, dst, True, 8)
    assert sigma.domain() == src and sigma.image() == dst
    assert sigma.apply(src) == dst


def test_matching_isometry_fixes_overlap():
    src = IntervalSet([(0, 2)])
    dst = IntervalSet([(1, 3)])
    sigma = matching_isometry(src, dst, True, 4)
    assert sigma.restrict(IntervalSet.span(1, 2)) == PiecewiseIsometry.identity(4, IntervalSet.span(1, 2))
    assert sigma(Q(1, 2)) == Q(5, 2)
    with pytest.raises(ValueError):
        matching_isometry(src, IntervalSet.span(0, 1))


@given(random_isometry_strategy(), sets, sets)
@settings(max_examples=200)
def test_extend_swap_is_bijection(base, a, b):
    a = a & IntervalSet.span(0, 8)
    b = b & IntervalSet.span(0, 8)
    m = min(a.measure(), b.measure())
    src, dst = a.prefix(m), b.prefix(m)
    sigma = matching_isometry(src, dst, True, 8)
    out = extend_swap(base, sigma)
    assert out.is_total()
    assert out.image() == IntervalSet.span(0, 8)
    # points sent by base into src now land in dst
    pre = base.inverse().apply(src)
    assert out.apply(pre) == dst
    # points untouched by the swap keep their image
    keep = base.inverse().apply(IntervalSet.span(0, 8) - (src | dst))
    assert out.restrict(keep) == base.restrict(keep)
