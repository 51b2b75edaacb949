import random

from hypothesis import given, settings, strategies as st
import pytest

from vkparity.functors import (TribalFunctor, check_quasi_index, check_tribal_system,
                               extended_group_view, index_tribal_system, lambda_of_r3,
                               monodromy_search, one_tribe_system, phratries,
                               quasiindex_functor, remainder_delta, tribal_functor,
                               verify_functor, walk_deltas)
from vkparity.gauss import parse_gauss_code, random_diagram, unknot
from vkparity.groups import Z, Z2
from vkparity.moves import r1_insert, random_walk
from vkparity.parity import GP, IP, parity_cycle_of_rule, quasi_index_of_cycle, sign_product
from vkparity.surface import decompose


def one(d):
    return {v: Z(1) for v in d.labels}


def gp_qi(d):
    return quasi_index_of_cycle(d, parity_cycle_of_rule(GP, d)).values


def ip_qi(d):
    return quasi_index_of_cycle(d, parity_cycle_of_rule(IP, d)).values


def _no_violations(rep):
    return not any(rep.values())


@settings(max_examples=10, deadline=None)
@given(st.integers(0, 10**6))
def test_remainder_transport(seed):
    d = random_diagram(random.Random(seed), 4)
    walk = random_walk(d, 40, seed=seed, cap=8)
    for rule in (GP, IP):
        rhos = [decompose(e, parity_cycle_of_rule(rule, e))[1][0] for e in walk.diagrams]
        qi = lambda e: quasi_index_of_cycle(e, parity_cycle_of_rule(rule, e)).values
        for i, dl in enumerate(walk_deltas(qi, walk)):
            assert rhos[i + 1] - rhos[i] == dl


def test_quasi_index_laws():
    walk = random_walk(parse_gauss_code("O1-O2-U1-U2-"), 80, seed=4, cap=9)
    assert check_quasi_index(one, walk) == []
    assert check_quasi_index(gp_qi, walk) == []
    # a parity is not a quasi-index: R2 pairs carry opposite values
    assert any(b[0] == "Q2" for b in check_quasi_index(IP.values, walk))
    with pytest.raises(ValueError):
        quasiindex_functor(IP.values, walk.start, Z, probe=walk)


def test_lambda_needs_third_move():
    _, rec = r1_insert(unknot(), 0, "l+")
    with pytest.raises(ValueError):
        lambda_of_r3({}, one(rec.after), rec)
    assert remainder_delta({}, one(rec.after), rec) == Z(-1)


@pytest.mark.parametrize("pi,group", [(one, Z), (gp_qi, Z2), (ip_qi, Z)])
@pytest.mark.parametrize("code", ["O1-O2-U1-U2-", "O1-U2-O3-U1-O2-U3-"])
def test_quasi_index_functor_axioms(pi, group, code):
    d = parse_gauss_code(code)
    walk = random_walk(d, 80, seed=11, cap=9)
    F = quasiindex_functor(pi, d, group, probe=walk)
    assert _no_violations(verify_functor(F, walk))
    view = extended_group_view(F, d)
    assert all(view["checks"].values()), view["checks"]


def test_functor_split_and_parity():
    d = parse_gauss_code("O1-O2-U1-U2-")
    F = quasiindex_functor(one, d, Z)
    for v, z in F.values(d).items():
        x, y = F.split(z)
        assert y == int(IP(d, v))
        assert F.parity(z, Z(0)) == x


def test_monodromy_of_constant_quasi_index():
    found = monodromy_search(one, unknot(), Z, depth=3, seed=0, width=60)
    assert Z(0) in found
    assert Z(1) in found or Z(-1) in found


def test_tribal_systems():
    d = parse_gauss_code("O1-O2-U3+U1-U2-O3+")
    walk = random_walk(d, 80, seed=6, cap=9)
    levels = index_tribal_system(sign_product(IP))
    assert check_tribal_system(levels, walk) == []
    assert check_tribal_system(one_tribe_system(), walk) == []
    assert check_tribal_system(phratries(levels), walk, phratry=True) == []
    # phratries are not tribal systems on their own
    with pytest.raises(ValueError):
        tribal_functor(phratries(levels), probe=walk)
    for ts in (levels, one_tribe_system()):
        F = tribal_functor(ts, probe=walk)
        assert _no_violations(verify_functor(F, walk))
        assert all(F.sigma_transported(rec) for rec in walk.records)


def test_tribal_equality_modulo_sigma():
    d = parse_gauss_code("O1-O2-U1-U2-")
    F = TribalFunctor(one_tribe_system())
    s = F.sigma(d)
    x = ({0: 3}, 1)
    assert F.equal(d, x, F.add(x, (s, 0)))
    assert not F.equal(d, x, ({0: 3}, 2))
