"""
The abstract knot diagram as a ribbon graph, and intersections of cycles on it.

Vertices are the chords (classical crossings), edges are the arcs.  At a
chord with tail endpoint A and head endpoint B the half-edges are ordered
counterclockwise as

    (A in, B in, A out, B out)

which for an ordinary chord is (over-in, under-in, over-out, under-out) when
positive and (over-in, under-out, over-out, under-in) when negative.

Intersection numbers come from pushing a closed walk off to its right.  A
passage through a vertex from half-edge h to half-edge h' crosses every
half-edge strictly between h and h' in the counterclockwise order; the
crossing counts +1 against an incoming edge and -1 against an outgoing one.
Splitting the flow of an integer 1-cycle into passages at each vertex and
summing gives the closed formula used by :func:`intersect`::

    c1 . c2 = sum over chords of  c1(A in) c2(B in) - c1(B out) c2(A out)
"""
from __future__ import annotations

from collections import namedtuple
from functools import lru_cache
from typing import Dict, Mapping

from .gauss import GaussDiagram, GaussError, half_cycle
from .groups import AbElem, AbGroup, Z


class Chain:
    """Formal sum of arcs and chords with coefficients in one group."""

    __slots__ = ("group", "arcs", "chords")

    def __init__(self, group: AbGroup, arcs: Mapping = None, chords: Mapping = None):
        self.group = group
        self.arcs = {k: group(v) if not isinstance(v, AbElem) else v
                     for k, v in (arcs or {}).items()}
        self.chords = {k: group(v) if not isinstance(v, AbElem) else v
                       for k, v in (chords or {}).items()}
        self.arcs = {k: v for k, v in self.arcs.items() if not v.is_zero()}
        self.chords = {k: v for k, v in self.chords.items() if not v.is_zero()}
        for v in list(self.arcs.values()) + list(self.chords.values()):
            if v.group != group:
                raise ValueError("coefficient outside the chain's group")

    @property
    def arc_coeffs(self):
        return self.arcs

    @property
    def chord_coeffs(self):
        return self.chords

    def arc(self, a) -> AbElem:
        return self.arcs.get(a, self.group.zero())

    def chord(self, v) -> AbElem:
        return self.chords.get(v, self.group.zero())

    def __add__(self, other: "Chain"):
        if other.group != self.group:
            raise ValueError("group mismatch")
        arcs = dict(self.arcs)
        for k, v in other.arcs.items():
            arcs[k] = arcs[k] + v if k in arcs else v
        chords = dict(self.chords)
        for k, v in other.chords.items():
            chords[k] = chords[k] + v if k in chords else v
        return Chain(self.group, arcs, chords)

    def __neg__(self):
        return Chain(self.group, {k: -v for k, v in self.arcs.items()},
                     {k: -v for k, v in self.chords.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k: int):
        return Chain(self.group, {a: v * k for a, v in self.arcs.items()},
                     {a: v * k for a, v in self.chords.items()})

    def tensor(self, x: AbElem) -> "Chain":
        """Integer chain times a group element."""
        if self.group != Z:
            raise ValueError("tensor needs an integer chain")
        return Chain(x.group, {a: x * int(v) for a, v in self.arcs.items()},
                     {a: x * int(v) for a, v in self.chords.items()})

    def map(self, f) -> "Chain":
        """Apply a group homomorphism (e.g. a Projection) to the coefficients."""
        return Chain(f.target, {a: f(v) for a, v in self.arcs.items()},
                     {a: f(v) for a, v in self.chords.items()})

    def arcs_only(self) -> "Chain":
        return Chain(self.group, self.arcs, {})

    def __eq__(self, other):
        return (isinstance(other, Chain) and self.group == other.group
                and self.arcs == other.arcs and self.chords == other.chords)

    def __repr__(self):
        a = {k: str(v) for k, v in sorted(self.arcs.items())}
        c = {k: str(v) for k, v in sorted(self.chords.items())}
        return f"Chain({self.group}, arcs={a}, chords={c})"

    def is_zero(self):
        return not self.arcs and not self.chords


def constant_chain(d: GaussDiagram, x: AbElem, component=None) -> Chain:
    arcs = [a.id for a in d.arcs if component is None or a.component == component]
    return Chain(x.group, {a: x for a in arcs})


def core_cycle(d: GaussDiagram, component=None) -> Chain:
    """The cycle D (or the component D_i)."""
    return constant_chain(d, Z(1), component)


# -- cycle conditions ---------------------------------------------------------

def gauss_boundary(d: GaussDiagram, c: Chain) -> Dict[int, AbElem]:
    """Boundary on the Gauss graph (vertices = chord endpoints).

    Chords run from head to tail.  Long-knot ends at infinity are ignored.
    """
    out = {}

    def add(g, x):
        if g is not None:
            out[g] = out[g] + x if g in out else x

    for a, x in c.arcs.items():
        arc = d.arcs[a]
        add(arc.to_endpoint, x)
        add(arc.from_endpoint, -x)
    for v, x in c.chords.items():
        add(d.tails[v], x)
        add(d.heads[v], -x)
    return {g: x for g, x in out.items() if not x.is_zero()}


def crossing_boundary(d: GaussDiagram, c: Chain) -> Dict[int, AbElem]:
    """Boundary of the arc part on the crossing graph (vertices = chords)."""
    out = {}
    for v in d.labels:
        t, h = d.tails[v], d.heads[v]
        x = c.arc(d.arc_in(t)) + c.arc(d.arc_in(h)) - c.arc(d.arc_out(t)) - c.arc(d.arc_out(h))
        if not x.is_zero():
            out[v] = x
    return out


def is_cycle(d: GaussDiagram, c: Chain) -> bool:
    if c.chords:
        return not gauss_boundary(d, c)
    return not crossing_boundary(d, c)


def lift(d: GaussDiagram, c: Chain) -> Chain:
    """Add the chord coefficients that make an arc cycle a Gauss-graph cycle."""
    if crossing_boundary(d, c):
        raise GaussError("not a cycle on the crossing graph")
    chords = {v: c.arc(d.arc_out(d.tails[v])) - c.arc(d.arc_in(d.tails[v])) for v in d.labels}
    return Chain(c.group, c.arcs, chords)


# -- rotation system ----------------------------------------------------------

RotationSystem = namedtuple("RotationSystem", ["rotation", "faces", "vertices", "edges"])


def _half_edges(d: GaussDiagram, v):
    t, h = d.tails[v], d.heads[v]
    return [(t, "in"), (h, "in"), (t, "out"), (h, "out")]


def half_edge_arc(d: GaussDiagram, he):
    g, io = he
    return d.arc_in(g) if io == "in" else d.arc_out(g)


@lru_cache(maxsize=4096)
def rotation_system(d: GaussDiagram) -> RotationSystem:
    """Counterclockwise rotations and the faces of the ribbon graph.

    A face is listed as a cyclic sequence of darts (half-edge it leaves from).
    """
    if d.long:
        d = d.closure()
    rotation = {v: _half_edges(d, v) for v in d.labels}
    pos = {}
    for v, hs in rotation.items():
        for i, he in enumerate(hs):
            pos[he] = (v, i)
    # the other end of each half-edge
    other = {}
    for a in d.arcs:
        if a.from_endpoint is None:
            continue
        x, y = (a.from_endpoint, "out"), (a.to_endpoint, "in")
        other[x], other[y] = y, x
    faces, seen = [], set()
    for start in pos:
        if start in seen:
            continue
        face, he = [], start
        while he not in seen:
            seen.add(he)
            face.append(he)
            far = other[he]
            v, i = pos[far]
            he = rotation[v][(i - 1) % 4]
        if he != start:
            raise GaussError("face tracing did not close")
        faces.append(tuple(face))
    edges = sum(1 for a in d.arcs if a.from_endpoint is not None)
    return RotationSystem(rotation, tuple(faces), len(rotation), edges)


def face_arcs(d: GaussDiagram, face) -> list:
    return [half_edge_arc(d, he) for he in face]


def euler_characteristic(d: GaussDiagram) -> int:
    rs = rotation_system(d)
    free = sum(1 for c in d.components if not c)
    # a crossing-free circle bounds two discs on its own sphere
    return rs.vertices - rs.edges + len(rs.faces) + 2 * free


def graph_components(d: GaussDiagram) -> int:
    """Connected components of the diagram (core circles joined by chords)."""
    parent = list(range(len(d.components)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in d.labels:
        a, b = d.component_of(v)
        parent[find(a)] = find(b)
    return len({find(i) for i in range(len(d.components))})


def genus(d: GaussDiagram) -> int:
    chi = euler_characteristic(d)
    if chi % 2:
        raise GaussError("odd Euler characteristic")
    return (2 * graph_components(d) - chi) // 2


# -- intersections ------------------------------------------------------------

def _check_integer_cycle(d, c1):
    if c1.group != Z:
        raise ValueError("first argument must have integer coefficients")
    if crossing_boundary(d, c1):
        raise GaussError("first argument is not a cycle")


def _closed(d: GaussDiagram, c: Chain):
    """Move a long-knot chain onto the closure (first and last arcs merge)."""
    if not d.long:
        return d, c
    cl = d.closure()
    m = len(d.components[0])
    arcs = {}
    for a, x in c.arcs.items():
        b = a % m if m else 0
        if a == m and m:
            continue  # the last arc carries the same value as the first
        arcs[b] = x
    return cl, Chain(c.group, arcs, c.chords)


def intersect(d: GaussDiagram, c1: Chain, c2: Chain) -> AbElem:
    """Intersection number of an integer cycle with a cycle in any group."""
    if d.long:
        c2 = _closed(d, c2)[1]
    d, c1 = _closed(d, c1)
    _check_integer_cycle(d, c1)
    if crossing_boundary(d, c2):
        raise GaussError("second argument is not a cycle")
    total = c2.group.zero()
    for v in d.labels:
        t, h = d.tails[v], d.heads[v]
        a = int(c1.arc(d.arc_in(t)))
        b = int(c1.arc(d.arc_out(h)))
        if a:
            total = total + c2.arc(d.arc_in(h)) * a
        if b:
            total = total - c2.arc(d.arc_out(t)) * b
    return total


# passages (h_in, h_out) as indices in the rotation (0 A-in, 1 B-in, 2 A-out, 3 B-out)
_STRAIGHT = {"A": (0, 2), "B": (1, 3)}


def _passage_sides(i_in, i_out, side):
    if side == "right":
        k, out = (i_in + 1) % 4, []
        while k != i_out:
            out.append(k)
            k = (k + 1) % 4
        return out, 1
    k, out = (i_out + 1) % 4, []
    while k != i_in:
        out.append(k)
        k = (k + 1) % 4
    return out, -1


def intersect_walks(d: GaussDiagram, c1: Chain, c2: Chain, side: str = "right",
                    split: str = "straight") -> AbElem:
    """Intersection by explicit passages; used to calibrate :func:`intersect`.

    ``split`` chooses how the flow of c1 at each chord is divided into
    passages ("straight" keeps strands together where possible, "turn" routes
    the A-strand inflow to the B-strand); ``side`` chooses the push-off.
    For cycles every choice gives the same number.
    """
    _check_integer_cycle(d, c1)
    total = c2.group.zero()
    for v in d.labels:
        hs = _half_edges(d, v)
        f = [int(c1.arc(half_edge_arc(d, he))) for he in hs]
        ai, bi, ao, bo = f
        if split == "straight":
            passages = {(0, 2): ai, (0, 3): 0, (1, 2): ao - ai, (1, 3): bo}
        else:
            passages = {(0, 3): ai, (0, 2): 0, (1, 3): bo - ai, (1, 2): ao}
        for (i, o), mult in passages.items():
            if not mult:
                continue
            crossed, orient = _passage_sides(i, o, side)
            for k in crossed:
                x = c2.arc(half_edge_arc(d, hs[k]))
                s = 1 if hs[k][1] == "in" else -1
                total = total + x * (mult * s * orient)
    return total


PairingMatrix = namedtuple("PairingMatrix", ["basis", "entries"])


@lru_cache(maxsize=4096)
def pairing_matrix(d: GaussDiagram) -> PairingMatrix:
    """Intersections of the basis [D^r_v for chords v] + [D_k for components].

    For links only self-crossings contribute a half.
    """
    if d.long:
        d = d.closure()
    basis = [("half", v) for v in d.labels if d.is_self(v)]
    basis += [("core", k) for k in range(len(d.components))]
    cycles = [basis_cycle(d, b) for b in basis]
    for c in cycles:
        _check_integer_cycle(d, c)
    flows = [{a: int(x) for a, x in c.arcs.items()} for c in cycles]
    rows = [[_walk_pairing_int(d, x, y) for y in flows] for x in flows]
    return PairingMatrix(tuple(basis), tuple(tuple(r) for r in rows))


def _walk_pairing_int(d: GaussDiagram, f1: dict, f2: dict) -> int:
    """Integer version of intersect_walks (right push, straight split)."""
    total = 0
    for v in d.labels:
        hs = _half_edges(d, v)
        arcs = [half_edge_arc(d, he) for he in hs]
        ai, bi, ao, bo = (f1.get(a, 0) for a in arcs)
        for (i, o), mult in (((0, 2), ai), ((1, 2), ao - ai), ((1, 3), bo)):
            if not mult:
                continue
            crossed, orient = _passage_sides(i, o, "right")
            for k in crossed:
                y = f2.get(arcs[k], 0)
                if y:
                    total += y * mult * orient * (1 if hs[k][1] == "in" else -1)
    return total


def basis_cycle(d: GaussDiagram, b) -> Chain:
    kind, x = b
    if kind == "half":
        return half_cycle(d, x, "right")
    return core_cycle(d, x)


@lru_cache(maxsize=4096)
def half_pairings(d: GaussDiagram):
    """Dict-of-dicts access to the pairing matrix: P[x][y] for basis keys."""
    pm = pairing_matrix(d)
    idx = {b: i for i, b in enumerate(pm.basis)}
    return idx, pm.entries


def pairing(d: GaussDiagram, x, y) -> int:
    idx, m = half_pairings(d.closure() if d.long else d)
    return m[idx[x]][idx[y]]


# -- decomposition ------------------------------------------------------------

def decompose(d: GaussDiagram, c: Chain):
    """Write a cycle as sum pi(v) D^r_v + sum rho_k D_k.

    Arc-only cycles are lifted first.  Returns (pi, rho) with pi over all
    chords and rho a list indexed by components.
    """
    if not c.chords:
        c = lift(d, c)
    elif gauss_boundary(d, c):
        raise GaussError("not a cycle on the Gauss graph")
    pi = {v: c.chord(v) for v in d.labels}
    rest = dict(c.arcs)
    for v, x in pi.items():
        if x.is_zero():
            continue
        if not d.is_self(v):
            raise GaussError(f"mixed chord {v} carries a coefficient; no half to subtract")
        for a in d.half_arcs(v, "right"):
            rest[a] = rest.get(a, c.group.zero()) - x
    rho = []
    for k, arcs in enumerate(d.component_arcs):
        vals = {rest.get(a, c.group.zero()) for a in arcs}
        if len(vals) != 1:
            raise GaussError(f"leftover is not constant on component {k}")
        rho.append(vals.pop())
    return pi, rho


def recompose(d: GaussDiagram, pi: Mapping, rho, group: AbGroup = None) -> Chain:
    if group is None:
        vals = list(pi.values()) + list(rho)
        group = vals[0].group if vals else Z
    total = Chain(group)
    for v, x in pi.items():
        if not x.is_zero():
            total = total + half_cycle(d, v, "right").tensor(x)
    for k, x in enumerate(rho):
        if not x.is_zero():
            total = total + core_cycle(d, k).tensor(x)
    return total


def intersect_via_basis(d: GaussDiagram, c1: Chain, c2: Chain) -> AbElem:
    """Bilinear extension of the pairing matrix over decompose coordinates."""
    pi1, rho1 = decompose(d, c1)
    pi2, rho2 = decompose(d, c2)
    pm = pairing_matrix(d)
    coords1 = [pi1[x] if k == "half" else rho1[x] for k, x in pm.basis]
    coords2 = [pi2[x] if k == "half" else rho2[x] for k, x in pm.basis]
    total = c2.group.zero()
    for i, a in enumerate(coords1):
        a = int(a)
        if not a:
            continue
        for j, b in enumerate(coords2):
            e = pm.entries[i][j]
            if e:
                total = total + b * (a * e)
    return total
