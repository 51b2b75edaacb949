import random
from collections import Counter

from hypothesis import given, settings, strategies as st
import pytest

from vkparity.biquandle import (B3, B3_THETA, B3_TYPO, Z3, FiniteBiquandle, boltzmann_phi,
                                check_axioms, cocycle_parity_rule, colorings, format_biquandle,
                                index_conditions_check, induced_cycle, is_biquandle,
                                is_one_cocycle, is_two_cocycle, lifted_coloring, read_biquandle,
                                read_cocycle, signature_set, transport_coloring,
                                two_cocycle_from_one, z3_biquandle)
from vkparity.gauss import parse_gauss_code, random_diagram, unknot
from vkparity.groups import Z
from vkparity.moves import random_walk
from vkparity.parity import signature, verify_parity_axioms, violations
from vkparity.surface import is_cycle


def test_bundled_tables():
    assert is_biquandle(B3)
    assert is_biquandle(z3_biquandle())
    rep = check_axioms(B3_TYPO)
    assert rep["bijective"] and rep["exchange"]


@given(st.permutations([1, 2, 3]))
def test_relabel_keeps_axioms(perm):
    p = dict(zip([1, 2, 3], perm))
    assert is_biquandle(B3.relabel(p))
    assert is_one_cocycle(B3.relabel(p), {p[x]: Z3(t) for x, t in zip([1, 2, 3], B3_THETA)})


def test_table_validation():
    with pytest.raises(ValueError):
        FiniteBiquandle([[1, 2]], [[1]])
    with pytest.raises(ValueError):
        FiniteBiquandle([[4]], [[1]])


def test_read_format_roundtrip():
    assert read_biquandle(format_biquandle(B3)) == B3
    with pytest.raises(ValueError):
        read_biquandle("3\n1 1 1\n")
    assert read_cocycle("0 1 -1", Z3) == (Z3(0), Z3(1), Z3(2))


def test_theta_needs_z3():
    assert is_one_cocycle(B3, B3_THETA, Z3)
    assert not is_one_cocycle(B3, B3_THETA, Z)
    # a 1-cocycle, but not an index
    assert index_conditions_check(B3, B3_THETA, Z3)
    with pytest.raises(ValueError):
        induced_cycle(unknot(), B3, B3_THETA, (1,), group=Z)


def test_unknot_colourings():
    assert sorted(colorings(unknot(), B3)) == [(1,), (2,), (3,)]


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 10**6))
def test_colouring_count_and_transport(seed):
    d = random_diagram(random.Random(seed), 3)
    walk = random_walk(d, 25, seed=seed, cap=7)
    n = len(colorings(d, B3))
    sigs = signature_set(d, B3, B3_THETA, Z3)
    for rec in walk.records:
        before, after = colorings(rec.before, B3), colorings(rec.after, B3)
        assert len(after) == n
        images = {transport_coloring(rec, c, B3) for c in before}
        assert images == set(after)
    assert signature_set(walk.end, B3, B3_THETA, Z3) == sigs


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_induced_cycles(seed):
    d = random_diagram(random.Random(seed), 4)
    for c in colorings(d, B3):
        assert is_cycle(d, induced_cycle(d, B3, B3_THETA, c, group=Z3))
    assert is_cycle(d, induced_cycle(d, B3, B3_THETA, mode="full", group=Z3))


def test_two_cocycle_window():
    phi = two_cocycle_from_one(B3, B3_THETA, Z3)
    assert is_two_cocycle(B3, phi, window=3) == []
    assert phi.group == Z3


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6))
def test_signature_is_boltzmann_weight(seed):
    d = random_diagram(random.Random(seed), 4)
    phi = two_cocycle_from_one(B3, B3_THETA, Z3)
    for c in colorings(d, B3):
        sig = signature(d, induced_cycle(d, B3, B3_THETA, c, group=Z3))
        assert sig == boltzmann_phi(d, lifted_coloring(d, c), phi)


def test_boltzmann_on_unknot_is_zero():
    phi = two_cocycle_from_one(B3, B3_THETA, Z3)
    assert boltzmann_phi(unknot(), lifted_coloring(unknot(), (1,)), phi) == Z3(0)


def test_cocycle_parity_rule_axioms():
    d = parse_gauss_code("O1-O2-U1-U2-")
    rule = cocycle_parity_rule(B3, B3_THETA, d, Z3)
    walk = random_walk(d, 60, seed=2, cap=8)
    assert violations(verify_parity_axioms(rule, walk)) == 0
    counts = Counter(len(colorings(e, B3)) for e in walk.diagrams)
    assert len(counts) == 1
