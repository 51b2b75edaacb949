import random
from fractions import Fraction

from hypothesis import given, settings, strategies as st
import pytest

from vkparity.gauss import GaussError, half_cycle, parse_gauss_code, random_diagram
from vkparity.groups import Z, make_group
from vkparity.parity import index_parity_direct
from vkparity.surface import (Chain, core_cycle, decompose, genus, intersect,
                              intersect_via_basis, is_cycle, lift, pairing_matrix, recompose)

knots = st.builds(lambda s, n: random_diagram(random.Random(s), n),
                  st.integers(0, 10**6), st.integers(1, 6))
links = st.builds(lambda s, n: random_diagram(random.Random(s), n, components=2),
                  st.integers(0, 10**6), st.integers(1, 5))


def _rank(rows):
    m = [[Fraction(x) for x in r] for r in rows]
    rank = 0
    for c in range(len(m[0]) if m else 0):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for i in range(len(m)):
            if i != rank and m[i][c]:
                f = m[i][c] / m[rank][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[rank])]
        rank += 1
    return rank


def _random_cycle(d, rng, group=Z):
    pi = {v: group(rng.randint(-3, 3)) if d.is_self(v) else group.zero() for v in d.labels}
    rho = [group(rng.randint(-3, 3)) for _ in d.components]
    return pi, rho, recompose(d, pi, rho, group)


@settings(max_examples=60, deadline=None)
@given(st.one_of(knots, links))
def test_pairing_matrix_antisymmetric_and_rank(d):
    pm = pairing_matrix(d)
    n = len(pm.basis)
    for i in range(n):
        for j in range(n):
            assert pm.entries[i][j] == -pm.entries[j][i]
    # halves of self-crossings and the cores span H_1 of the surface for knots only
    if len(d.components) == 1:
        assert _rank(pm.entries) == 2 * genus(d)
    else:
        assert _rank(pm.entries) <= 2 * genus(d)


@settings(max_examples=60, deadline=None)
@given(knots)
def test_half_against_core_is_index(d):
    D = core_cycle(d)
    assert intersect(d, D, D) == Z(0)
    for v in d.labels:
        assert intersect(d, half_cycle(d, v, "right"), D) == index_parity_direct(d, v)


@settings(max_examples=50, deadline=None)
@given(st.one_of(knots, links), st.integers(0, 10**6))
def test_decompose_recompose(d, seed):
    rng = random.Random(seed)
    pi, rho, c = _random_cycle(d, rng)
    assert is_cycle(d, c)
    pi2, rho2 = decompose(d, c)
    assert pi2 == pi and rho2 == rho
    assert decompose(d, c.arcs_only()) == (pi, rho)
    assert lift(d, c.arcs_only()) == c


@settings(max_examples=50, deadline=None)
@given(st.one_of(knots, links), st.integers(0, 10**6))
def test_intersection_matches_basis_form(d, seed):
    rng = random.Random(seed)
    _, _, c1 = _random_cycle(d, rng)
    _, _, c2 = _random_cycle(d, rng)
    assert intersect(d, c1, c2) == intersect_via_basis(d, c1, c2)
    assert intersect(d, c1, c2) == -intersect(d, c2, c1)


def test_torsion_coefficients():
    d = parse_gauss_code("O1-O2-U1-U2-")
    g = make_group(0, [4])
    rng = random.Random(3)
    _, _, c2 = _random_cycle(d, rng, g)
    c1 = half_cycle(d, 1, "right")
    assert intersect(d, c1, c2) == intersect_via_basis(d, c1, c2)


def test_genus_examples():
    assert genus(parse_gauss_code("O1-U2-O3-U1-O2-U3-")) == 0
    assert genus(parse_gauss_code("O1-O2-U1-U2-")) == 1
    assert genus(parse_gauss_code("")) == 0


def test_non_cycles_rejected():
    d = parse_gauss_code("O1-O2-U1-U2-")
    c = Chain(Z, {0: Z(1)})
    assert not is_cycle(d, c)
    with pytest.raises(GaussError):
        intersect(d, c, core_cycle(d))
    h = parse_gauss_code("O1+U2+/U1+O2+")
    with pytest.raises(GaussError):
        decompose(h, Chain(Z, {}, {1: Z(1)}))
