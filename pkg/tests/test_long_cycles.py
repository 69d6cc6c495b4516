import pytest

from CyclicHWP.errors import SpecViolation
from CyclicHWP.functions.core import differences_of, is_transversal, make_params
from CyclicHWP.functions.long_cycles import (
    build_cd_cycle,
    build_long_set,
    build_pair,
    d_prime,
    long_pair_specs,
)
from CyclicHWP.functions.short_cycles import build_D


def integer_differences(cycle):
    """Edge differences over Z, normalized to a positive first component"""
    out = []
    for (a, b), (c, d) in zip(cycle, cycle[1:] + cycle[:1]):
        da, db = c - a, d - b
        out.append((da, db) if da > 0 else (-da, -db))
    return out


@pytest.mark.parametrize(
    "ell,n,expected",
    [(9, 5, (2, 5)), (9, 6, (49, 53)), (13, 7, (2, 5, 6, 9)), (9, 4, (4, 5))],
)
def test_excluded_differences(ell, n, expected):
    dset = build_D(make_params(ell, n))
    assert dset.d_values == expected
    assert len(dset.dbar) == make_params(ell, n).ln - 2 - len(expected)


def test_first_cycle_of_worked_pair():
    cycle = build_cd_cycle(1, 45, 3, 4)
    assert len(cycle) == 91
    assert cycle[:4] == [(0, 0), (90, 3), (1, 0), (89, 3)]
    assert sorted(a for a, _ in cycle) == list(range(91))


def test_differences_of_worked_pair_cycle():
    diffs = integer_differences(build_cd_cycle(1, 45, 3, 4))
    expected = {(d, 4) for d in range(1, 46)} | {(d, 3) for d in range(46, 91)} | {(1, -1)}
    assert len(diffs) == len(set(diffs)) == 91
    assert set(diffs) == expected


@pytest.mark.parametrize("t", [6, 7, 10, 11])
def test_cd_cycles_for_every_valid_d(t):
    for d in range(1, t):
        if d % 2 != t % 2 or d == (t + 1) // 2:
            continue
        diffs = integer_differences(build_cd_cycle(d, t, 1, 2))
        assert len(set(diffs)) == 2 * t + 1
        assert (d, -1) in diffs
        assert {da for da, _ in diffs} == set(range(1, 2 * t + 1))


@pytest.mark.parametrize("d,t", [(23, 45), (2, 45), (0, 45), (45, 45), (1, 1)])
def test_cd_cycle_rejects_bad_d(d, t):
    with pytest.raises(SpecViolation):
        build_cd_cycle(d, t, 3, 4)


def test_pair_specs_9_5(params95, dset95):
    (spec,) = long_pair_specs(params95, dset95)
    assert (spec.d1, spec.d2, spec.t, spec.x, spec.y) == (1, 43, 45, 3, 4)
    assert sorted(2 * d for d in (spec.d1, spec.d2)) == [2, 86]
    assert d_prime(5, 45) == 86 and d_prime(2, 45) == 2


def test_pair_covers_both_labels(params95, dset95):
    (spec,) = long_pair_specs(params95, dset95)
    first, second = build_pair(spec)
    diffs = integer_differences(first) + integer_differences(second)
    assert len(set(diffs)) == len(diffs) == 182
    assert (1, -1) in diffs and (43, 1) in diffs


def test_long_set_9_5(params95, dset95):
    cycles, f = build_long_set(params95, dset95)
    assert len(cycles) == 2
    assert all(is_transversal(c, "long", params95) for c in cycles)
    assert f[2] == -1 and f[5] == -1
    assert f[-2] == 1 and f.is_odd()


@pytest.mark.parametrize("ell,n", [(13, 6), (13, 9), (17, 8), (17, 10)])
def test_long_set_differences_are_disjoint(ell, n):
    params = make_params(ell, n)
    dset = build_D(params)
    cycles, f = build_long_set(params, dset)
    assert len(cycles) == (ell - 5) // 2
    multiset = differences_of(cycles, params)
    assert not multiset.duplicated()
    assert multiset.total() == 2 * params.M * len(cycles)
    assert set(f.domain()) == {d % params.M for d in dset} | {-d % params.M for d in dset}


def test_long_set_differences_9_5(params95, dset95):
    cycles, _ = build_long_set(params95, dset95)
    found = differences_of(cycles, params95)
    expected = {(a, b) for a in range(1, 91) for b in (3, 4, 5, 6)}
    expected |= {(2, 8), (89, 1), (5, 8), (86, 1)}
    assert found.support_set() == expected
    assert found.total() == len(expected)
