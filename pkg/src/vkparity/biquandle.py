"""
Finite biquandles, colourings and the cycles induced by 1-cocycles.

Colours are 1-based.  At every crossing the rule starts from two colours:
x on the over strand and y on the under strand, read on the outgoing arc of
the tail strand and the incoming arc of the head strand.  The remaining arcs
of the over and under strands get ``x o y`` and ``y * x``.  This is the
reading under which colouring counts are move invariant for every table
satisfying the axioms below, theta o c is a cycle for every 1-cocycle, and
the linear biquandle x o y = x * y = x + 1 reproduces the constant
quasi-index -1 on long knots.

File format: a line with m, then m rows of the ``o`` table and m rows of
the ``*`` table.  A cocycle is one line of m group literals.
"""
from __future__ import annotations

from functools import lru_cache

import itertools
from dataclasses import dataclass

from .gauss import GaussDiagram
from .groups import AbElem, AbGroup, Z, make_group, parse_elem
from .moves import closed_walks, identify_arcs
from .surface import Chain, crossing_boundary

__all__ = ["FiniteBiquandle", "check_axioms", "colorings", "crossing_colours",
           "is_one_cocycle", "induced_cycle", "transport_coloring", "colour_monodromy_search",
           "two_cocycle_from_one", "is_two_cocycle", "boltzmann_phi", "index_conditions_check",
           "B3", "B3_TYPO", "B3_THETA", "z3_biquandle", "read_biquandle", "format_biquandle",
           "read_cocycle", "lifted_coloring", "signature_set",
           "cocycle_parity_rule"]


@dataclass(frozen=True)
class FiniteBiquandle:
    circ: tuple
    star: tuple

    def __post_init__(self):
        object.__setattr__(self, "circ", tuple(tuple(r) for r in self.circ))
        object.__setattr__(self, "star", tuple(tuple(r) for r in self.star))
        m = len(self.circ)
        for t in (self.circ, self.star):
            if len(t) != m or any(len(r) != m for r in t):
                raise ValueError("tables must be m x m")
            if any(not 1 <= x <= m for r in t for x in r):
                raise ValueError("table entries must lie in 1..m")

    @property
    def m(self) -> int:
        return len(self.circ)

    @property
    def elements(self):
        return range(1, self.m + 1)

    def o(self, x, y):
        return self.circ[x - 1][y - 1]

    def s(self, x, y):
        return self.star[x - 1][y - 1]

    def relabel(self, perm: dict) -> "FiniteBiquandle":
        """Isomorphic copy with element x renamed perm[x]."""
        inv = {perm[x]: x for x in self.elements}
        circ = [[perm[self.o(inv[x], inv[y])] for y in self.elements] for x in self.elements]
        star = [[perm[self.s(inv[x], inv[y])] for y in self.elements] for x in self.elements]
        return FiniteBiquandle(circ, star)


B3 = FiniteBiquandle([[1, 1, 1], [3, 3, 3], [2, 2, 2]], [[1, 2, 3], [2, 3, 1], [3, 1, 2]])
# the same tables with 2 o 3 = 2: breaks bijectivity and exchange
B3_TYPO = FiniteBiquandle([[1, 1, 1], [3, 3, 2], [2, 2, 2]], [[1, 2, 3], [2, 3, 1], [3, 1, 2]])
B3_THETA = (0, 1, -1)


def z3_biquandle() -> FiniteBiquandle:
    """Z_3 with x o y = -x, x * y = x + y; element k is colour k + 1."""
    circ = [[(-x) % 3 + 1 for y in range(3)] for x in range(3)]
    star = [[(x + y) % 3 + 1 for y in range(3)] for x in range(3)]
    return FiniteBiquandle(circ, star)


def check_axioms(b: FiniteBiquandle) -> dict:
    """Violations of the diagonal, bijectivity and exchange laws."""
    E = list(b.elements)
    rep = {"diagonal": [x for x in E if b.o(x, x) != b.s(x, x)], "bijective": [], "exchange": []}
    maps = {
        "(x,y)->(y,xoy)": lambda x, y: (y, b.o(x, y)),
        "(x,y)->(x,y*x)": lambda x, y: (x, b.s(y, x)),
        "(x,y)->(xoy,y*x)": lambda x, y: (b.o(x, y), b.s(y, x)),
    }
    for name, f in maps.items():
        if len({f(x, y) for x in E for y in E}) != len(E) ** 2:
            rep["bijective"].append(name)
    o, s = b.o, b.s
    for x, y, z in itertools.product(E, repeat=3):
        if o(o(x, y), o(z, y)) != o(o(x, z), s(y, z)):
            rep["exchange"].append(("oo", x, y, z))
        if s(o(x, y), o(z, y)) != o(s(x, z), s(y, z)):
            rep["exchange"].append(("*o", x, y, z))
        if s(s(x, y), s(z, y)) != s(s(x, z), o(y, z)):
            rep["exchange"].append(("**", x, y, z))
    return rep


def is_biquandle(b: FiniteBiquandle) -> bool:
    return not any(check_axioms(b).values())


# -- colourings ----------------------------------------------------------

def _constraints(d: GaussDiagram):
    """(known x, known y, x-side unknown, y-side unknown) arcs per crossing.

    The known arcs are the outgoing arc of the tail strand and the incoming
    arc of the head strand; x sits on the over strand.  The other arcs get
    ``x o y`` (over strand) and ``y * x`` (under strand).
    """
    out = []
    for v in d.labels:
        t, h = d.tails[v], d.heads[v]
        kt, kh, ut, uh = d.arc_out(t), d.arc_in(h), d.arc_in(t), d.arc_out(h)
        if d.signs[v] > 0:
            quad = (kt, kh, ut, uh)
        else:
            quad = (kh, kt, uh, ut)
        out.append(quad)
    return out


def colorings(d: GaussDiagram, b: FiniteBiquandle, pinned: dict | None = None) -> list:
    """All colourings as tuples indexed by arc id, in lexicographic order."""
    if d.flat:
        raise ValueError("colourings need over/under information")
    return list(_colorings(d, b, tuple(sorted((pinned or {}).items()))))


@lru_cache(maxsize=8192)
def _colorings(d, b, pinned):
    n_arcs = len(d.arcs)
    cons = _constraints(d)
    by_arc = {a: [] for a in range(n_arcs)}
    for k, quad in enumerate(cons):
        for a in set(quad):
            by_arc[a].append(k)
    # admissible colour tuples on (kx, ky, ux, uy)
    local = [(x, y, b.o(x, y), b.s(y, x)) for x in b.elements for y in b.elements]
    col = [0] * n_arcs
    for a, x in pinned:
        col[a] = x
    result = []

    def propagate(changed):
        """Force colours implied by single-option crossings; False on conflict."""
        stack = list(changed)
        assigned = []
        while stack:
            a = stack.pop()
            for k in by_arc[a]:
                quad = cons[k]
                opts = [t for t in local
                        if all(col[q] in (0, c) for q, c in zip(quad, t))]
                if not opts:
                    return False, assigned
                for pos, q in enumerate(quad):
                    if col[q] == 0 and len({t[pos] for t in opts}) == 1:
                        col[q] = opts[0][pos]
                        assigned.append(q)
                        stack.append(q)
        return True, assigned

    def rec():
        try:
            a = col.index(0)
        except ValueError:
            result.append(tuple(col))
            return
        for x in b.elements:
            col[a] = x
            ok, assigned = propagate([a])
            if ok:
                rec()
            for g in assigned:
                col[g] = 0
            col[a] = 0

    ok, _ = propagate([a for a in range(n_arcs) if col[a]] or list(range(n_arcs)))
    if ok:
        rec()
    return tuple(sorted(set(result)))


def crossing_colours(d: GaussDiagram, c, v):
    """(x, y): the two colours the rule starts from at v."""
    kx, ky, _, _ = _constraints_at(d, v)
    return c[kx], c[ky]


def _constraints_at(d, v):
    return _constraints(d)[d.labels.index(v)]


def transport_coloring(rec, c, b: FiniteBiquandle):
    """The colouring of ``rec.after`` that agrees with ``c`` away from the move."""
    pinned = {}
    for a, bs in rec.arc_correspondence.items():
        for x in bs:
            if pinned.get(x, c[a]) != c[a]:
                raise ValueError("inconsistent arc correspondence")
            pinned[x] = c[a]
    found = colorings(rec.after, b, pinned)
    if len(found) != 1:
        raise ValueError(f"colouring transport not unique ({len(found)})")
    return found[0]


# -- cocycles ------------------------------------------------------------

def _theta_map(b, theta, group=None):
    if isinstance(theta, dict):
        return theta
    group = group or Z
    return {x: group(t) if not isinstance(t, AbElem) else t for x, t in zip(b.elements, theta)}


def is_one_cocycle(b: FiniteBiquandle, theta, group: AbGroup = None) -> bool:
    th = _theta_map(b, theta, group)
    return all(th[x] - th[b.o(x, y)] == th[y] - th[b.s(y, x)] for x in b.elements for y in b.elements)


def induced_cycle(d: GaussDiagram, b: FiniteBiquandle, theta, c=None, mode: str = "single",
                  group: AbGroup = None, depth: int = 3, seed: int = 0) -> Chain:
    """sum theta(c(a)) a; ``orbit`` sums over the colour orbit found by a
    bounded monodromy search, ``full`` over all colourings."""
    th = _theta_map(b, theta, group)
    if not is_one_cocycle(b, th):
        raise ValueError("theta is not a 1-cocycle")
    g = next(iter(th.values())).group
    if mode == "single":
        cols = [c]
    elif mode == "full":
        cols = colorings(d, b)
    elif mode == "orbit":
        cols = sorted(_orbit(d, b, c, depth, seed))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    arcs = {}
    for col in cols:
        for a, x in enumerate(col):
            arcs[a] = arcs[a] + th[x] if a in arcs else th[x]
    chain = Chain(g, arcs)
    if crossing_boundary(d, chain):
        raise AssertionError("induced chain is not a cycle")
    return chain


def signature_set(d: GaussDiagram, b: FiniteBiquandle, theta, group: AbGroup = None) -> list:
    """Sorted multiset of sigma_{theta,c} over all colourings."""
    from .parity import signature
    return sorted((signature(d, induced_cycle(d, b, theta, c, group=group))
                   for c in colorings(d, b)), key=lambda x: x.coords)


# -- colour monodromy ------------------------------------------------------

def _walk_permutation(d, b, recs, cols):
    index = {c: i for i, c in enumerate(cols)}
    perm = []
    end = recs[-1].after
    amap = identify_arcs(end, d)
    for c in cols:
        cur = c
        for r in recs:
            cur = transport_coloring(r, cur, b)
        back = [0] * len(cur)
        for a, x in enumerate(cur):
            back[amap[a]] = x
        perm.append(index[tuple(back)])
    return tuple(perm)


def colour_monodromy_search(d: GaussDiagram, b: FiniteBiquandle, depth: int = 3, seed: int = 0,
                            width: int = 40) -> set:
    """Permutations of colorings(d, b) induced by closed walks found by a
    bounded randomized search.  The identity is always included."""
    cols = colorings(d, b)
    found = {tuple(range(len(cols)))}
    for recs in closed_walks(d, depth, seed, width):
        if identify_arcs(recs[-1].after, d) is None:
            continue
        found.add(_walk_permutation(d, b, recs, cols))
    return found


def colour_permutation(perm, cols) -> dict:
    """The colour relabelling x -> y realized by a permutation of colourings,
    if it acts colourwise; otherwise None."""
    sigma = {}
    for i, j in enumerate(perm):
        for x, y in zip(cols[i], cols[j]):
            if sigma.setdefault(x, y) != y:
                return None
    return sigma


def _orbit(d, b, c, depth, seed):
    cols = colorings(d, b)
    orbit = {tuple(c)}
    for perm in colour_monodromy_search(d, b, depth, seed):
        orbit.add(cols[perm[cols.index(tuple(c))]])
    return orbit


# -- 2-cocycles ------------------------------------------------------------
#
# The lift lives on B x Z with (x,i) o (y,j) = (x o y, i+1) and
# (x,i) * (y,j) = (x * y, i+1).  Every operation raises the index by one,
# so both cocycle conditions only see index differences, and phi_theta is
# linear in them.  A law linear in (j - i, k - i) holds for all integers once
# it holds for the index patterns drawn from {0, 1, 2}: the window of three
# indices is exhaustive.

def two_cocycle_from_one(b: FiniteBiquandle, theta, group: AbGroup = None):
    """phi((x,i),(y,j)) = (theta(y) - theta(y * x)) (j - i) as a function."""
    th = _theta_map(b, theta, group)

    def phi(xi, yj):
        (x, i), (y, j) = xi, yj
        return (th[y] - th[b.s(y, x)]) * (j - i)
    phi.group = next(iter(th.values())).group
    return phi


def is_two_cocycle(b: FiniteBiquandle, phi, window: int | None = None) -> list:
    """Violations of phi(x,x) = 0 and the three-term law.

    With ``window`` the law is checked on B x {0..window-1} with the index
    shifting operations of the lift; otherwise ``phi`` is a function on B.
    """
    if window is None:
        E = list(b.elements)
        o, s = b.o, b.s
    else:
        E = [(x, i) for x in b.elements for i in range(window)]

        def o(p, q):
            return (b.o(p[0], q[0]), p[1] + 1)

        def s(p, q):
            return (b.s(p[0], q[0]), p[1] + 1)
    bad = [("diag", x) for x in E if not phi(x, x).is_zero()]
    for x, y, z in itertools.product(E, repeat=3):
        lhs = phi(x, y) - phi(x, z) + phi(y, z)
        rhs = phi(o(x, z), o(y, z)) - phi(o(x, y), s(z, y)) + phi(s(y, x), s(z, x))
        if lhs != rhs:
            bad.append(("law", x, y, z))
    return bad


def lifted_coloring(d: GaussDiagram, c) -> tuple:
    """The B x Z colouring over c with index 0 on the first arc of each
    component; through a tail the index drops by one, through a head it
    rises by one (this is the colouring rule for x o y = x * y = x + 1)."""
    if d.long:
        comps = [list(range(len(d.arcs)))]
    else:
        comps = d.component_arcs
    idx = [0] * len(d.arcs)
    for comp in comps:
        k = 0
        for a in comp:
            idx[a] = k
            g = d.arcs[a].to_endpoint
            if g is not None:
                k += -1 if d.is_tail(g) else 1
        if not d.long and k != 0:
            raise ValueError("component has no lifted colouring")
    return tuple(zip(c, idx))


def boltzmann_phi(d: GaussDiagram, c, phi) -> AbElem:
    """sum of W(v, c) = sgn(v) phi(x, y) with x, y the rule's starting colours
    (x on the over strand).  On negative crossings this is the familiar
    -phi(y', x') once the picture's labels x', y' are read off the mirrored
    crossing."""
    group = getattr(phi, "group", None)
    total = group.zero() if group is not None else None
    for v in d.labels:
        x, y = crossing_colours(d, c, v)
        w = phi(x, y) * d.signs[v]
        total = w if total is None else total + w
    return total


def index_conditions_check(b: FiniteBiquandle, theta, group: AbGroup = None) -> list:
    """Triples (which, x, y, z) where the index conditions fail."""
    th = _theta_map(b, theta, group)
    o, s = b.o, b.s
    bad = []
    for x, y, z in itertools.product(b.elements, repeat=3):
        terms = (
            th[x] - th[o(x, y)] - th[o(x, z)] + th[o(o(x, y), o(z, y))],
            th[x] - th[o(x, y)] - th[s(x, z)] + th[s(o(x, y), o(z, y))],
            th[x] - th[s(x, y)] - th[s(x, z)] + th[s(s(x, y), s(z, y))],
        )
        for k, t in enumerate(terms):
            if not t.is_zero():
                bad.append((k + 1, x, y, z))
    return bad


def cocycle_parity_rule(b: FiniteBiquandle, theta, d0: GaussDiagram, group: AbGroup = None,
                        name: str = "theta"):
    """Parity of the full-sum cycle over all colourings, pushed to
    A / <sigma> so that it is normalized.  The signature is computed on
    ``d0``; it is the same on every diagram of the knot."""
    from .groups import quotient_by_cyclic
    from .parity import ParityRule, parities_from_cycle, signature

    th = _theta_map(b, theta, group)
    sig = signature(d0, induced_cycle(d0, b, th, mode="full"))
    target, proj = quotient_by_cyclic(next(iter(th.values())).group, sig)

    def fn(d):
        return parities_from_cycle(d, induced_cycle(d, b, th, mode="full").map(proj))
    return ParityRule(name, target, fn)


# -- files ----------------------------------------------------------------

def read_biquandle(text: str) -> FiniteBiquandle:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not rows or len(rows[0]) != 1:
        raise ValueError("first line must hold the size")
    m = int(rows[0][0])
    if len(rows) != 1 + 2 * m:
        raise ValueError(f"expected {2 * m} table rows")
    t = [[int(x) for x in r] for r in rows[1:]]
    return FiniteBiquandle(t[:m], t[m:])


def format_biquandle(b: FiniteBiquandle) -> str:
    lines = [str(b.m)]
    lines += [" ".join(map(str, r)) for r in b.circ]
    lines += [" ".join(map(str, r)) for r in b.star]
    return "\n".join(lines) + "\n"


def read_cocycle(line: str, group: AbGroup) -> tuple:
    return tuple(parse_elem(tok, group) for tok in line.split())


Z3 = make_group(0, [3])


# -- quasi-index of a single colouring -------------------------------------------

def colouring_quasi_index(d: GaussDiagram, b: FiniteBiquandle, theta, c, group: AbGroup = None):
    from .parity import quasi_index_of_cycle
    return quasi_index_of_cycle(d, induced_cycle(d, b, theta, c, group=group))


def lambda_search(b: FiniteBiquandle, theta, group: AbGroup = None, seeds: int = 100,
                  steps: int = 8, cap: int = 5, start: GaussDiagram = None) -> list:
    """Third moves on small diagrams reached from ``start`` (the unknot) by
    random walks, with their lambda for every colouring.

    Returns (chords, code, colouring, chords of the move, pi before, pi after,
    lambda, epsilon) sorted by size; raises if Q3 fails somewhere.
    """
    from .functors import lambda_of_r3
    from .gauss import emit_gauss_code, unknot
    from .moves import r3_apply, r3_sites, random_walk
    start = start or unknot()
    seen, hits = set(), []
    for seed in range(seeds):
        for d in random_walk(start, steps, seed=seed, cap=cap).diagrams:
            if d in seen:
                continue
            seen.add(d)
            for site in r3_sites(d):
                new, rec = r3_apply(d, site)
                for c in colorings(d, b):
                    c2 = transport_coloring(rec, c, b)
                    p1 = colouring_quasi_index(d, b, theta, c, group).values
                    p2 = colouring_quasi_index(new, b, theta, c2, group).values
                    lam = lambda_of_r3(p1, p2, rec)
                    ch = tuple(site.chords)
                    hits.append((d.n, emit_gauss_code(d), c, ch, tuple(p1[v] for v in ch),
                                 tuple(p2[v] for v in ch), lam, dict(rec.epsilon)))
    hits.sort(key=lambda h: (h[0], h[1], h[2]))
    return hits
