import random

from hypothesis import given, settings, strategies as st
import pytest

from vkparity.gauss import (GaussDiagram, GaussError, emit_gauss_code, flatten, half_cycle,
                            is_almost_classical, load_corpus_text, parse_gauss_code,
                            random_diagram, unknot)
from vkparity.surface import is_cycle

diagrams = st.builds(
    lambda seed, n, comps, long: random_diagram(random.Random(seed), n,
                                                1 if long else min(comps, 2 * n) or 1, long),
    st.integers(0, 10**6), st.integers(1, 6), st.integers(1, 3), st.booleans())


@settings(max_examples=80)
@given(diagrams)
def test_emit_parse_roundtrip(d):
    assert parse_gauss_code(emit_gauss_code(d)) == d


def test_parse_basic():
    d = parse_gauss_code("O1-U2-O3-U1-O2-U3-")
    assert d.n == 3 and d.writhe == -3
    assert d.over(1) != d.under(1)
    assert d.tails[1] == d.under(1)
    assert parse_gauss_code("O1+ U1+") == parse_gauss_code("O1+U1+")
    assert parse_gauss_code("O1−U1−").signs == {1: -1}


def test_parse_long_and_links():
    d = parse_gauss_code("L:O1+U1+")
    assert d.long and d.n == 1
    h = parse_gauss_code("O1+U2+/U1+O2+")
    assert len(h.components) == 2 and not h.is_self(1)


@pytest.mark.parametrize("bad", ["O1+", "O1+O1+", "O1+U1-", "O1U1", "O1+U1+/", "Q1+U1+",
                                 "X1+O2+U2+X1+"])
def test_parse_errors(bad):
    with pytest.raises(GaussError):
        parse_gauss_code(bad)


def test_validation():
    with pytest.raises(GaussError):
        GaussDiagram([[(1, "O"), (1, "U")]], {1: 2})
    with pytest.raises(GaussError):
        GaussDiagram([[(1, "O"), (1, "U")]], {})
    with pytest.raises(GaussError):
        GaussDiagram([[(1, "O")], [(1, "U")]], {1: 1}, long=True)


def test_flatten():
    d = parse_gauss_code("O1-U2-O3-U1-O2-U3-")
    f = flatten(d)
    assert f.flat and f.n == 3
    assert flatten(f) is f
    assert emit_gauss_code(f).startswith("X")


@settings(max_examples=40)
@given(diagrams.filter(lambda d: not d.long))
def test_half_cycles_are_cycles(d):
    for v in d.labels:
        if not d.is_self(v):
            with pytest.raises(GaussError):
                half_cycle(d, v, "right")
            continue
        for which in ("right", "left", "plus", "minus"):
            assert is_cycle(d, half_cycle(d, v, which))


@settings(max_examples=40)
@given(diagrams.filter(lambda d: not d.long))
def test_relabel_preserves_identity(d):
    m = {v: v + 100 for v in d.labels}
    e = d.relabel(m)
    assert e != d or d.n == 0
    assert e.normalized_labels() == d.normalized_labels()


def test_unknot_and_classical():
    assert unknot().n == 0
    assert is_almost_classical(unknot())
    assert is_almost_classical(parse_gauss_code("O1-U2-O3-U1-O2-U3-"))
    assert not is_almost_classical(parse_gauss_code("O1-O2-U1-U2-"))


def test_corpus_loader():
    assert load_corpus_text("") == {}
    c = load_corpus_text("# comment\n\n2.1\tO1-O2-U1-U2-\n")
    assert list(c) == ["2.1"]
    with pytest.raises(GaussError):
        load_corpus_text("a\tO1+U1+\na\tO1-U1-\n")
    with pytest.raises(GaussError):
        load_corpus_text("no tab here\n")


def test_random_diagram_limits():
    with pytest.raises(GaussError):
        random_diagram(random.Random(0), 1, components=3)
    d = random_diagram(random.Random(1), 4, components=3)
    assert len(d.components) == 3 and all(d.components)
