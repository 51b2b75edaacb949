"""
Parity functors: values in per-diagram groups, moved along Reidemeister
moves by partial isomorphisms.

A quasi-index is passed around as a function ``pi(d) -> {chord: AbElem}``
(for a rule ``r`` use ``r.values``).  The remainder rho of the cycle
``sum pi(v) D^r_v + rho D`` changes along moves by ``remainder_delta``; the
functors below absorb that change in their transitions instead of fixing
rho on every diagram.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .gauss import GaussDiagram, half_cycle
from .groups import AbElem, AbGroup, quotient_by_cyclic
from .moves import MoveRecord, MoveWalk, closed_walks, extend_diagram, identify_arcs
from .parity import index_parity_direct, lr_matrix, signature
from .surface import Chain, core_cycle, crossing_boundary, intersect

__all__ = ["remainder_delta", "lambda_of_r3", "check_quasi_index", "walk_deltas", "monodromy_search",
           "ParityFunctor", "QuasiIndexFunctor", "quasiindex_functor", "TribalSystem",
           "index_tribal_system", "one_tribe_system", "phratries", "check_tribal_system",
           "TribalFunctor", "tribal_functor", "verify_functor", "extended_group_view"]


# -- remainder transport -----------------------------------------------------------

def lambda_of_r3(pi_before: dict, pi_after: dict, rec: MoveRecord) -> AbElem:
    """lambda(f) with pi'(v) = pi(v) + eps(v) lambda on the three crossings."""
    if rec.kind != "R3":
        raise ValueError("lambda is defined for third moves")
    lams = set()
    for v, e in rec.epsilon.items():
        lams.add((pi_after[rec.crossing_map[v]] - pi_before[v]) * e)
    if len(lams) != 1:
        raise ValueError(f"quasi-index law fails on this move: {lams}")
    return lams.pop()


def remainder_delta(pi_before: dict, pi_after: dict, rec: MoveRecord):
    """rho(D') - rho(D) for one move."""
    if rec.kind == "R1+":
        (v,) = rec.new_chords
        return -pi_after[v] * rec.k
    if rec.kind == "R1-":
        (v,) = rec.removed_chords
        return pi_before[v] * rec.k
    if rec.kind == "R2+":
        return -pi_after[rec.new_chords[0]]
    if rec.kind == "R2-":
        return pi_before[rec.removed_chords[0]]
    if rec.kind == "R3":
        return -lambda_of_r3(pi_before, pi_after, rec) * rec.k
    raise ValueError(f"unknown move {rec.kind}")


def check_quasi_index(pi: Callable, walk: MoveWalk) -> list:
    """Violations of Q0, Q2 and Q3 along a walk."""
    bad = []
    for i, rec in enumerate(walk.records):
        a, b = pi(rec.before), pi(rec.after)
        moving = set(rec.epsilon) if rec.kind == "R3" else set()
        for v, w in rec.crossing_map.items():
            if v not in moving and a[v] != b[w]:
                bad.append(("Q0", i, v))
        if rec.kind in ("R2+", "R2-"):
            u1, u2 = rec.new_chords or rec.removed_chords
            vals = b if rec.kind == "R2+" else a
            if vals[u1] != vals[u2]:
                bad.append(("Q2", i, (u1, u2)))
        if rec.kind == "R3":
            try:
                lambda_of_r3(a, b, rec)
            except ValueError:
                bad.append(("Q3", i, tuple(moving)))
    return bad


def walk_deltas(pi: Callable, walk: MoveWalk) -> list:
    vals = [pi(d) for d in walk.diagrams]
    return [remainder_delta(vals[i], vals[i + 1], rec) for i, rec in enumerate(walk.records)]


def monodromy_search(pi: Callable, d: GaussDiagram, group: AbGroup, depth: int = 3,
                     seed: int = 0, width: int = 40) -> set:
    """Total remainder shifts of closed walks d -> d found by a bounded
    randomized search; always contains 0."""
    found = {group.zero()}
    for recs in closed_walks(d, depth, seed, width):
        if identify_arcs(recs[-1].after, d) is None:
            continue
        walk = MoveWalk(d, list(recs))
        total = group.zero()
        for x in walk_deltas(pi, walk):
            total = total + x
        found.add(total)
    return found


# -- functors ----------------------------------------------------------------------

class ParityFunctor:
    """Values in A(D) with transitions A(D) -> A(D') along moves.

    Subclasses provide ``values``, ``transition`` and ``equal``.
    """
    name = "functor"

    def values(self, d: GaussDiagram) -> dict:
        raise NotImplementedError

    def transition(self, rec: MoveRecord) -> Callable:
        raise NotImplementedError

    def equal(self, d: GaussDiagram, x, y) -> bool:
        return x == y

    def is_zero(self, d, x) -> bool:
        return self.equal(d, x, self.zero(d))

    def zero(self, d):
        raise NotImplementedError

    def add(self, x, y):
        return x + y

    def scale(self, x, k: int):
        return x * k


def _direct_sum_z(g: AbGroup) -> AbGroup:
    return AbGroup(g.free_rank + 1, g.torsion)


def _pair(h: AbGroup, x: AbElem, y: int) -> AbElem:
    """(x, y) in g + Z, laid out as free part of g, then Z, then torsion of g."""
    g = x.group
    c = x.coords
    return AbElem(h, c[:g.free_rank] + (y,) + c[g.free_rank:])


def _split(h: AbGroup, g: AbGroup, z: AbElem):
    c = z.coords
    return AbElem(g, c[:g.free_rank] + c[g.free_rank + 1:]), c[g.free_rank]


class QuasiIndexFunctor(ParityFunctor):
    """P_D(v) = (sum_w pi(w) D^l_v . D^r_w, ip(v)) in A/<sigma(pi)> + Z.

    Along a move with remainder shift Delta the transition is
    (x, y) -> (x + Delta y, y).
    """

    def __init__(self, pi: Callable, d0: GaussDiagram, group: AbGroup, name: str = "P_pi",
                 probe: MoveWalk = None):
        if probe is not None:
            bad = check_quasi_index(pi, probe)
            if bad:
                raise ValueError(f"not a quasi-index: {bad[:3]}")
        self.pi = pi
        self.name = name
        self.base = group
        sig = signature(d0, pi(d0)) if d0.n else group.zero()
        self.sigma = sig
        self.abar, self.proj = quotient_by_cyclic(group, sig)
        self.group = _direct_sum_z(self.abar)

    def zero(self, d):
        return self.group.zero()

    def values(self, d: GaussDiagram) -> dict:
        vals = self.pi(d)
        labels = d.labels
        L = lr_matrix(d) if labels else []
        out = {}
        for i, v in enumerate(labels):
            x = self.base.zero()
            for j, w in enumerate(labels):
                if L[i][j]:
                    x = x + vals[w] * L[i][j]
            out[v] = _pair(self.group, self.proj(x), int(index_parity_direct(d, v)))
        return out

    def delta(self, rec: MoveRecord) -> AbElem:
        return self.proj(remainder_delta(self.pi(rec.before), self.pi(rec.after), rec))

    def transition(self, rec: MoveRecord) -> Callable:
        dl = self.delta(rec)

        def f(z):
            x, y = _split(self.group, self.abar, z)
            return _pair(self.group, x + dl * y, y)
        return f

    def split(self, z: AbElem):
        """(x, y) with x in A/<sigma> and y the integer part."""
        return _split(self.group, self.abar, z)

    def parity(self, z: AbElem, rho: AbElem) -> AbElem:
        """x - rho y: the plain parity once a remainder is fixed."""
        x, y = _split(self.group, self.abar, z)
        return x - self.proj(rho) * y


def quasiindex_functor(pi: Callable, d0: GaussDiagram, group: AbGroup,
                       name: str = "P_pi", probe: MoveWalk = None) -> QuasiIndexFunctor:
    return QuasiIndexFunctor(pi, d0, group, name, probe)


# -- tribal systems ------------------------------------------------------------------

@dataclass
class TribalSystem:
    """A tribe label for every crossing of every diagram; labels are global
    so corresponding crossings can be compared across moves."""
    name: str
    tribe: Callable  # d -> {chord: hashable label}

    def partition_of(self, d: GaussDiagram) -> list:
        groups = {}
        for v, t in self.tribe(d).items():
            groups.setdefault(t, set()).add(v)
        return [frozenset(s) for _, s in sorted(groups.items(), key=lambda kv: repr(kv[0]))]


def index_tribal_system(rule) -> TribalSystem:
    """Level sets of an index."""
    return TribalSystem(f"levels({rule.name})", rule.values)


def one_tribe_system() -> TribalSystem:
    return TribalSystem("one", lambda d: {v: 0 for v in d.labels})


def phratries(ts: TribalSystem) -> TribalSystem:
    """Tribes split by crossing sign."""
    return TribalSystem(f"phr({ts.name})",
                        lambda d: {v: (t, d.signs[v]) for v, t in ts.tribe(d).items()})


def check_tribal_system(ts: TribalSystem, walk: MoveWalk, phratry: bool = False) -> list:
    """(T0) labels survive moves; (T2) R2 pairs share a tribe, or for
    phratries sit in the two halves of one tribe."""
    bad = []
    for i, rec in enumerate(walk.records):
        a, b = ts.tribe(rec.before), ts.tribe(rec.after)
        for v, w in rec.crossing_map.items():
            if a[v] != b[w]:
                bad.append(("T0", i, v))
        if rec.kind.startswith("R2"):
            u1, u2 = rec.new_chords or rec.removed_chords
            vals = b if rec.kind == "R2+" else a
            t1, t2 = vals[u1], vals[u2]
            ok = (t1[0] == t2[0] and t1[1] != t2[1]) if phratry else t1 == t2
            if not ok:
                bad.append(("T2", i, (u1, u2)))
    return bad


def _sparse_add(x: dict, y: dict, k: int = 1) -> dict:
    out = dict(x)
    for t, c in y.items():
        out[t] = out.get(t, 0) + k * c
        if not out[t]:
            del out[t]
    return out


def _is_multiple(x: dict, s: dict) -> bool:
    """x in Z s."""
    if not x:
        return True
    if not s or set(x) != set(s):
        return False
    t = next(iter(s))
    if x[t] % s[t]:
        return False
    q = x[t] // s[t]
    return all(x[u] == q * s[u] for u in s)


class TribalFunctor(ParityFunctor):
    """P(v) = (sum_w [t(w)] D^l_v . D^r_w, -ip(v)) in Z[tribes]/<sigma> + Z.

    Values are pairs (sparse dict over tribe labels, int).  Transitions are
    (x, y) -> (x - Delta y, y) with Delta the remainder shift of the tribe
    quasi-index: -k [t(v0')] (first moves), -[t(v1')] (second moves), 0
    (third moves), negated for decreasing moves.
    """

    def __init__(self, ts: TribalSystem):
        self.ts = ts
        self.name = f"P_{ts.name}"

    def sigma(self, d: GaussDiagram) -> dict:
        out = {}
        for v, t in self.ts.tribe(d).items():
            out = _sparse_add(out, {t: 1}, -int(index_parity_direct(d, v)))
        return out

    def zero(self, d):
        return ({}, 0)

    def add(self, x, y):
        return (_sparse_add(x[0], y[0]), x[1] + y[1])

    def scale(self, x, k):
        return ({t: c * k for t, c in x[0].items() if c * k}, x[1] * k)

    def equal(self, d, x, y) -> bool:
        return x[1] == y[1] and _is_multiple(_sparse_add(x[0], y[0], -1), self.sigma(d))

    def values(self, d: GaussDiagram) -> dict:
        tribe = self.ts.tribe(d)
        labels = d.labels
        L = lr_matrix(d) if labels else []
        out = {}
        for i, v in enumerate(labels):
            x = {}
            for j, w in enumerate(labels):
                if L[i][j]:
                    x = _sparse_add(x, {tribe[w]: L[i][j]})
            out[v] = (x, -int(index_parity_direct(d, v)))
        return out

    def delta(self, rec: MoveRecord) -> dict:
        if rec.kind == "R3":
            return {}
        if rec.kind.endswith("+"):
            t = self.ts.tribe(rec.after)[rec.new_chords[0]]
            k = rec.k if rec.kind == "R1+" else 1
            return {t: -k} if k else {}
        t = self.ts.tribe(rec.before)[rec.removed_chords[0]]
        k = rec.k if rec.kind == "R1-" else 1
        return {t: k} if k else {}

    def transition(self, rec: MoveRecord) -> Callable:
        dl = self.delta(rec)

        def f(z):
            x, y = z
            return (_sparse_add(x, dl, -y), y)
        return f

    def sigma_transported(self, rec: MoveRecord) -> bool:
        """A(f) sigma_D = sigma_D' up to the relation itself."""
        s0, s1 = self.sigma(rec.before), self.sigma(rec.after)
        return _is_multiple(_sparse_add(s0, s1, -1), s1) or _is_multiple(_sparse_add(s0, s1, -1), s0)


def tribal_functor(ts: TribalSystem, probe: MoveWalk = None) -> TribalFunctor:
    if probe is not None:
        bad = check_tribal_system(ts, probe)
        if bad:
            raise ValueError(f"not a tribal system: {bad[:3]}")
    return TribalFunctor(ts)


# -- verification --------------------------------------------------------------------

def verify_functor(F: ParityFunctor, walk: MoveWalk, static: bool = True) -> dict:
    """(P0) with transported values, (P1), (P2), (P3+) in A(D)."""
    from .moves import corner_incidence, triangle_faces
    rep = {"P0": [], "P1": [], "P2": [], "P3": [], "triangle": []}
    for i, rec in enumerate(walk.records):
        a, b = F.values(rec.before), F.values(rec.after)
        f = F.transition(rec)
        for v, w in rec.crossing_map.items():
            if not F.equal(rec.after, f(a[v]), b[w]):
                rep["P0"].append((i, rec.kind, v))
        if rec.kind.startswith("R1"):
            (u,) = rec.new_chords or rec.removed_chords
            dd, vals = (rec.after, b) if rec.kind == "R1+" else (rec.before, a)
            if not F.is_zero(dd, vals[u]):
                rep["P1"].append((i, u))
        if rec.kind.startswith("R2"):
            u1, u2 = rec.new_chords or rec.removed_chords
            dd, vals = (rec.after, b) if rec.kind == "R2+" else (rec.before, a)
            if not F.is_zero(dd, F.add(vals[u1], vals[u2])):
                rep["P2"].append((i, (u1, u2)))
        if rec.kind == "R3":
            s = F.zero(rec.before)
            for v, e in rec.epsilon.items():
                s = F.add(s, F.scale(a[v], e))
            if not F.is_zero(rec.before, s):
                rep["P3"].append((i, rec.sites["chords"]))
    if static:
        for j, dd in enumerate(walk.diagrams):
            vals = F.values(dd)
            for site in triangle_faces(dd):
                s = F.zero(dd)
                for v, e in corner_incidence(dd, site).items():
                    s = F.add(s, F.scale(vals[v], e))
                if not F.is_zero(dd, s):
                    rep["triangle"].append((j, site.chords))
    return rep


def _shear(F: QuasiIndexFunctor, records) -> AbElem:
    total = F.abar.zero()
    for rec in records:
        total = total + F.delta(rec)
    return total


def _ext_pi(F: QuasiIndexFunctor, d: GaussDiagram):
    ext, walk, marks = extend_diagram(d)
    ext_vals = F.values(ext)
    delta = Chain(F.group, {a: ext_vals[marks[a]] for a in marks})
    pi, same = {}, True
    for v in d.labels:
        t, h = d.tails[v], d.heads[v]
        x = delta.arc(d.arc_out(t)) - delta.arc(d.arc_in(t))
        y = delta.arc(d.arc_in(h)) - delta.arc(d.arc_out(h))
        same &= x == y
        pi[v] = x
    return delta, pi, walk, same


def extended_group_view(F: QuasiIndexFunctor, d: GaussDiagram, probes: bool = True) -> dict:
    """Potentials of a functor read on the extended diagram.

    delta_a is the value of the first crossing of the self second move on
    arc a; the values of the original crossings are moved to the extended
    diagram by the transitions.  Checks: cycle, normalized, the intersection
    formula, both quasi-index differences agreeing, and on probe moves of d
    the conditions Q2 and Q3 with differences.  Groups of extended diagrams
    are identified through the shear transitions of the walks D_ext -> D ->
    D' -> D'_ext.
    """
    delta, pi, walk, same = _ext_pi(F, d)
    moved = dict(F.values(d))
    for rec in walk.records:
        f = F.transition(rec)
        moved = {rec.crossing_map[v]: f(x) for v, x in moved.items() if v in rec.crossing_map}
    cycle = not crossing_boundary(d, delta)
    checks = {"cycle": cycle, "differences": same}
    if cycle:
        checks["normalized"] = intersect(d, core_cycle(d), delta).is_zero()
        checks["intersection"] = all(
            intersect(d, half_cycle(d, v, "left"), delta) == moved[v] for v in d.labels)
    if probes:
        from .moves import cancelable_pairs, r3_apply, r3_sites
        checks["Q2"] = all(pi[a] == pi[b] for a, b in cancelable_pairs(d))
        q3 = True
        s0 = _shear(F, walk.records)
        for site in r3_sites(d):
            d2, rec = r3_apply(d, site)
            _, pi2, walk2, _ = _ext_pi(F, d2)
            s = F.delta(rec) + _shear(F, walk2.records) - s0
            eps = rec.epsilon
            vs = list(eps)
            for i in vs:
                for j in vs:
                    z = pi[i] * eps[i] - pi[j] * eps[j]
                    x, y = _split(F.group, F.abar, z)
                    img = _pair(F.group, x + s * y, y)
                    w1, w2 = rec.crossing_map[i], rec.crossing_map[j]
                    q3 &= img == pi2[w1] * eps[i] - pi2[w2] * eps[j]
        checks["Q3"] = q3
    return {"delta": delta, "pi": pi, "values": moved, "checks": checks}
