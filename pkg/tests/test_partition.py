import itertools

import pytest

from eqlr.partition import (
    Partition,
    Rect,
    all_partitions,
    diag_closed_form,
    f_form,
    format_partition,
    parse_partition,
    pieri_diag_coeff,
)
from eqlr.poly import Polynomial


def P(rect, text):
    return parse_partition(text, rect)


def small_rects(max_area):
    return [
        Rect(p, m)
        for m in range(2, 8)
        for p in range(1, m)
        if p * (m - p) <= max_area
    ]


def traced_i_set(lam):
    """Literal walk along the diagram boundary from the NE corner of the rectangle."""
    p, cols = lam.rect.p, lam.rect.cols
    row, col = 0, cols
    vertical = set()
    for step in range(1, lam.rect.m + 1):
        if row < p and lam.parts[row] == col:
            vertical.add(step)
            row += 1
        else:
            col -= 1
    return frozenset(vertical)


def rim_removed(lam):
    """Literal border-rim removal: drop every box with no box to its southeast."""
    rows = [x for x in lam.parts if x > 0]
    kept = []
    removed = 0
    for i, width in enumerate(rows):
        below = rows[i + 1] if i + 1 < len(rows) else 0
        keep = min(width, below - 1) if below else 0
        kept.append(keep)
        removed += width - keep
    return tuple(kept), removed


def test_rect_validation():
    with pytest.raises(ValueError):
        Rect(0, 4)
    with pytest.raises(ValueError):
        Rect(4, 4)
    assert Rect(2, 4).cols == 2


def test_partition_validation():
    rect = Rect(2, 4)
    with pytest.raises(ValueError):
        Partition(rect, (1, 2))
    with pytest.raises(ValueError):
        Partition(rect, (3, 0))
    with pytest.raises(ValueError):
        Partition(rect, (2, 2, 1))
    assert Partition(rect, (2, 1, 0)).parts == (2, 1)
    assert Partition(rect, (1,)).parts == (1, 0)


def test_weight():
    rect = Rect(2, 5)
    assert P(rect, "3,2").weight == 5
    assert P(rect, "0").weight == 0
    assert P(Rect(2, 4), "2,2").weight == 4


def test_covers_above():
    rect = Rect(2, 4)
    assert {x.parts for x in P(rect, "1").covers_above()} == {(2, 0), (1, 1)}
    assert P(rect, "2,2").covers_above() == []
    assert {x.parts for x in P(rect, "2,1").covers_above()} == {(2, 2)}


def test_covers_below():
    rect = Rect(2, 4)
    assert {x.parts for x in P(rect, "1,1").covers_below()} == {(1, 0)}
    assert P(rect, "0").covers_below() == []
    assert {x.parts for x in P(rect, "2,1").covers_below()} == {(1, 1), (2, 0)}


def test_covers_are_mutually_inverse():
    for rect in small_rects(9):
        for lam in all_partitions(rect):
            for delta in lam.covers_above():
                assert lam in delta.covers_below()
                assert delta.weight == lam.weight + 1 and delta.contains(lam)
            assert 0 <= len(lam.covers_above()) <= rect.p


def test_contains():
    rect = Rect(2, 4)
    assert P(rect, "2,1").contains(P(rect, "1,1"))
    assert not P(rect, "2").contains(P(rect, "1,1"))
    lam = P(rect, "2,1")
    assert lam.contains(lam)


def test_dual():
    rect = Rect(2, 4)
    assert P(rect, "0").dual().parts == (2, 2)
    assert P(rect, "1").dual().parts == (2, 1)
    for r in small_rects(9):
        for lam in all_partitions(r):
            assert lam.dual().dual() == lam
            for mu in all_partitions(r):
                assert lam.contains(mu) == mu.dual().contains(lam.dual())


def test_conjugate():
    rect = Rect(2, 6)
    assert P(rect, "3,1").conjugate().parts == (2, 1, 1, 0)
    assert P(rect, "0").conjugate().is_zero
    for r in small_rects(9):
        for lam in all_partitions(r):
            assert lam.conjugate().conjugate() == lam


def test_rim_minus_examples():
    rect = Rect(2, 4)
    assert P(rect, "2,2").rim_minus().parts == (1, 0)
    assert P(rect, "2,1").rim_minus().parts == (0, 0)
    assert P(rect, "1,1").rim_minus() is None


def test_rim_plus_examples():
    rect = Rect(2, 4)
    assert P(rect, "1").rim_plus().parts == (2, 2)
    assert P(rect, "0").rim_plus().parts == (2, 1)
    assert P(rect, "1,1").rim_plus() is None


def test_rim_ops_against_literal_rim_removal():
    for rect in small_rects(12):
        m = rect.m
        for lam in all_partitions(rect):
            kept, removed = rim_removed(lam)
            expect = None
            if removed == m - 1 and lam.parts[0] == rect.cols and lam.parts[-1] > 0:
                expect = Partition(rect, kept)
            assert lam.rim_minus() == expect
            if expect is not None:
                assert expect.weight == lam.weight - (m - 1)
            plus = lam.rim_plus()
            if plus is not None:
                assert plus.rim_minus() == lam
                assert plus.weight == lam.weight + (m - 1)
            else:
                # nothing maps down to lam under the rim removal
                assert all(
                    big.rim_minus() != lam
                    for big in all_partitions(rect)
                    if big.rim_minus() is not None
                )


def test_remove_rows_and_cols():
    rect = Rect(2, 6)
    lam = P(rect, "4,3")
    assert lam.remove_rows(1).parts == (3,)
    assert lam.remove_cols(1).parts == (3, 2, 0)
    rect3 = Rect(3, 6)
    lam3 = P(rect3, "2,2,2")
    assert lam3.remove_rows(2).parts == (2,)
    assert lam3.remove_cols(2).parts == (0, 0, 0, 0, 0)
    with pytest.raises(ValueError):
        lam.remove_rows(2)


def test_remove_rows_cols_conjugation_identity():
    for rect in small_rects(12):
        for lam in all_partitions(rect):
            for d in range(0, rect.cols):
                via_conj = lam.conjugate().remove_rows(d).conjugate()
                assert via_conj == lam.remove_cols(d)


def test_i_set_examples():
    rect = Rect(2, 4)
    assert P(rect, "1,1").i_set() == frozenset({2, 3})
    assert P(rect, "1,1").j_set() == frozenset({1, 4})
    assert P(rect, "0").i_set() == frozenset({3, 4})
    assert P(rect, "2,2").i_set() == frozenset({1, 2})


def test_i_set_matches_path_tracing():
    for rect in small_rects(12):
        for lam in all_partitions(rect):
            assert lam.i_set() == traced_i_set(lam)
            assert len(lam.i_set()) == rect.p
            assert lam.i_set() | lam.j_set() == frozenset(range(1, rect.m + 1))
            assert not (lam.i_set() & lam.j_set())


def test_f_form_examples():
    rect = Rect(2, 4)
    assert f_form(P(rect, "1,1"), P(rect, "1")).coeffs == (0, 0, 1, -1)
    assert f_form(P(rect, "2,2"), P(rect, "1,1")).coeffs == (1, 0, -1, 0)
    for lam in all_partitions(rect):
        for nu in all_partitions(rect):
            assert f_form(nu, lam).coeffs == (-f_form(lam, nu)).coeffs
    assert f_form(P(rect, "1"), P(rect, "1")).is_zero


def test_pieri_diag_coeff():
    rect = Rect(2, 4)
    t = lambda i: Polynomial.variable(4, i - 1)
    assert pieri_diag_coeff(P(rect, "1,1")) == t(2) - t(4)
    assert pieri_diag_coeff(P(rect, "2")) == t(1) - t(3)
    assert pieri_diag_coeff(P(rect, "0")).is_zero


def test_diag_closed_form():
    rect = Rect(2, 4)
    t = lambda i: Polynomial.variable(4, i - 1)
    assert diag_closed_form(P(rect, "1,1")) == (t(2) - t(4)) * (t(3) - t(4))
    assert diag_closed_form(P(rect, "2,1")) == (t(1) - t(2)) * (t(1) - t(4)) * (t(3) - t(4))
    assert diag_closed_form(P(rect, "0")) == Polynomial.const(4, 1)


def test_parse_and_format():
    rect = Rect(3, 6)
    assert parse_partition("", rect).is_zero
    assert parse_partition("0", rect).is_zero
    assert parse_partition("3,2", rect).parts == (3, 2, 0)
    assert parse_partition("3,2,0", rect).parts == (3, 2, 0)
    assert format_partition(parse_partition("3,2", rect)) == "3,2"
    assert format_partition(rect.zero()) == "0"
    with pytest.raises(ValueError):
        parse_partition("4,2", rect)
    with pytest.raises(ValueError):
        parse_partition("2,x", rect)


def test_all_partitions_counts():
    import math

    for rect in (Rect(2, 4), Rect(2, 5), Rect(3, 6)):
        parts = all_partitions(rect)
        assert len(parts) == math.comb(rect.m, rect.p)
        assert len(set(parts)) == len(parts)
        weights = [lam.weight for lam in parts]
        assert weights == sorted(weights)


def test_special_partitions():
    rect = Rect(3, 6)
    assert rect.zero().is_zero
    assert rect.box().parts == (1, 0, 0) and rect.box().is_box
    assert rect.full().parts == (3, 3, 3) and rect.full().is_full
