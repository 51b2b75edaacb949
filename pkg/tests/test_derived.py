import random

from hypothesis import given, settings, strategies as st
import pytest

from vkparity.derived import DerivedStep, classify, derived_rules, derived_series
from vkparity.gauss import random_diagram
from vkparity.groups import GroupRingElem, Z, make_group
from vkparity.moves import random_walk
from vkparity.parity import verify_parity_axioms, violations

knots = st.builds(lambda s, n: random_diagram(random.Random(s), n),
                  st.integers(0, 10**6), st.integers(1, 6))


@settings(max_examples=40, deadline=None)
@given(knots)
def test_rules_agree_with_matrix_series(d):
    steps = derived_series(d, max_n=3).steps
    rules = derived_rules(d, 3)
    for step, rule in zip(steps, rules):
        assert rule.group == step.group
        assert rule.values(d) == step.vector


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 10**6))
def test_derived_parities_along_walks(seed):
    d = random_diagram(random.Random(seed), 4)
    walk = random_walk(d, 40, seed=seed, cap=8)
    for rule in derived_rules(d, 2)[1:]:
        assert violations(verify_parity_axioms(rule, walk)) == 0
    sig = [s.sigma for s in derived_series(d, max_n=2).steps]
    for e in walk.diagrams[::5]:
        assert [s.sigma for s in derived_series(e, max_n=2).steps] == sig


def _steps(vectors, group=Z):
    out = []
    for n, vec in enumerate(vectors):
        vals = {i + 1: group(x) for i, x in enumerate(vec)}
        out.append(DerivedStep(n, group, vals, group.zero(), GroupRingElem(group)))
    return out


def test_classify_synthetic():
    assert classify(_steps([[1, 2], [0, 0], [0, 0]]))[0] == "degeneration"
    assert classify(_steps([[1, 2], [3, 1], [3, 1], [3, 1]])) == ("stabilization", {"from": 1})
    per = classify(_steps([[1, 2], [2, 1], [1, 2], [2, 1], [1, 2]]))
    assert per == ("periodicity", {"period": 2, "from": 0})
    grow = classify(_steps([[1, -1], [2, -2], [4, -4], [8, -8], [16, -16], [32, -32],
                            [64, -64]]))
    assert grow == ("growth", {"period": 1, "ratio": 2})
    assert classify(_steps([[1, 2], [3, 5], [7, 1]]))[0] == "unresolved"
    with pytest.raises(ValueError):
        classify(_steps([[1], [1]]))


def test_classify_torsion_stabilization():
    z4 = make_group(0, [4])
    assert classify(_steps([[1, 3], [2, 2], [2, 2], [2, 2]], z4))[0] == "stabilization"


def test_fixture_classes(corpus):
    want = {"2.1": "stabilization", "3.1": "degeneration", "4.1": "periodicity",
            "4.75": "growth", "5.2012": "degeneration"}
    for name, cls in want.items():
        assert derived_series(corpus[name], max_n=12).classification == cls
