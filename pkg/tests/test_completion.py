import pytest

from CyclicHWP.classes.classes import SignMap
from CyclicHWP.errors import DomainGap, DomainOverlap
from CyclicHWP.functions.completion import (
    RHO,
    alternating_total,
    assemble,
    build_completion_cycles,
    build_G,
    completion_seconds,
    expected_subpath_differences,
    flip_set,
    glue_F,
    subpath_differences,
    z_minus,
)
from CyclicHWP.functions.core import is_transversal, make_params

Y_LOWER = (0, 1, 2, 3, 2, 1, 2, 1, 0, 8, 7, 6, 5, 6, 7, 0, 8, 0, 8, 7, 6, 5, 3, 4, 6, 7, 8, 7, 5, 4,
           6, 8, 7, 6, 5, 4, 3, 4, 5, 4, 3, 2, 1)
Y_UPPER = (8, 6, 4, 2, 4, 6, 4, 2, 0, 7, 5, 6, 7, 5, 4, 2, 4, 6, 7, 0, 8, 6, 4, 6, 8, 1, 3, 4, 6, 8,
           1, 3, 5, 7, 0, 7, 0, 7, 5, 7, 0, 2, 0)


@pytest.fixture(scope="module")
def maps95(base95):
    provenance = base95.provenance
    return provenance["f"], provenance["phi"], provenance["F"], provenance["G"]


def test_z_minus(params95):
    residues = z_minus(params95)
    assert len(residues) == params95.M - 5
    assert 0 not in residues and 45 not in residues and 46 not in residues


def test_F_glues_f_and_phi(params95, maps95):
    f, phi, F, _ = maps95
    assert set(F.domain()) == set(z_minus(params95))
    assert F[2] == -1 and F[5] == -1
    assert F[10] == -1 and F[17] == -2 and F[26] == 2
    assert F.is_odd()


def test_glue_rejects_overlap_and_gap(params95, maps95):
    f, phi, _, _ = maps95
    with pytest.raises(DomainOverlap):
        glue_F(f, f.copy("phi"), params95)
    with pytest.raises(DomainGap):
        glue_F(f, SignMap(params95.M, name="phi"), params95)


def test_flip_set_9_5(params95, dset95, maps95):
    _, _, F, _ = maps95
    t, X, g = flip_set(F, RHO, params95, dset95)
    assert t == 8
    assert X == [10, 11, 12, 13, 14, 18, 20, 21]
    assert all(abs(g[x]) == 3 - abs(F[x]) for x in g.domain())


@pytest.mark.parametrize("ell,n", [(9, 5), (9, 6), (13, 6)])
def test_G_properties_for_every_rho(ell, n):
    params = make_params(ell, n)
    F = assemble(params).provenance["F"]
    for rho in range(ell):
        G = build_G(F, rho, params)
        assert G.is_odd()
        assert set(G.domain()) == set(F.domain())
        assert all(abs(G[x]) == 3 - abs(F[x]) for x in G.domain())
        assert (alternating_total(G, params) - rho) % ell == 0


def test_completion_seconds_9_5(params95, maps95):
    _, _, F, G = maps95
    y = completion_seconds(params95, F, G)
    assert (y[0], y[1]) == (0, 1)
    assert tuple(y[2:45]) == Y_LOWER
    assert (y[45], y[46]) == (2, 1)
    assert tuple(y[47:90]) == Y_UPPER
    assert y[90] == 7


def test_completion_cycles_9_5(params95, maps95):
    _, _, F, G = maps95
    C, Cprime = build_completion_cycles(params95, F, G)
    assert len(C) == len(Cprime) == params95.M
    assert is_transversal(C, "long", params95)
    assert is_transversal(Cprime, "long", params95)
    assert list(Cprime.seconds()[:45]) == [0] * 45
    assert Cprime[45].b == 1
    assert C[1] == (1, 1) and C[2] == (90, 0)


@pytest.mark.parametrize("ell,n", [(9, 5), (9, 6), (13, 7), (13, 8)])
def test_subpath_differences_match_closed_forms(ell, n):
    params = make_params(ell, n)
    base = assemble(params)
    F, G = base.provenance["F"], base.provenance["G"]
    C, Cprime = base.longs[-2], base.longs[-1]
    found = subpath_differences(C, Cprime, params)
    expected = expected_subpath_differences(F, G, params)
    assert set(found) == set(expected)
    for key in expected:
        assert found[key] == expected[key], key


def test_assemble_provenance(base95):
    provenance = base95.provenance
    assert provenance["mu"] == 6
    assert provenance["s"] == 0
    assert provenance["t"] == 8
    assert provenance["skolem"].entries == (1,)
    assert provenance["D"].d_values == (2, 5)
    assert len(base95.shorts) == 5 and len(base95.longs) == 4


def test_assemble_without_skolem_sequence():
    base = assemble(make_params(9, 4))
    assert base.provenance["skolem"] is None
    assert len(base.shorts) == 4
