"""
Parity and index rules on Gauss diagrams.

A rule is a total evaluator: given any diagram it returns a value for every
chord.  Three kinds are distinguished because they obey different second-move
laws: ``parity`` (opposite values on a cancelable pair, zero on kinks, third
move law with incidence indices), ``signed`` (opposite values on a pair) and
``index`` (equal values on a pair).

Parities and 1-cycles on the arcs determine each other::

    delta_a   = p(v1) for the new crossing v1 of a self second move on arc a
    p(v)      = D^l_v . delta

and an index pi gives a parity through the signed halves::

    delta^pi  = sum sgn(v) pi(v) D^-_v
    p^pi(v)   = sum sgn(v') pi(v') (D^l_v . D^-_v')   modulo the signature

Conventions (tails, heads, halves) are those of :mod:`vkparity.gauss`.
"""
from __future__ import annotations

from collections import Counter, namedtuple
from functools import lru_cache
from typing import Callable, Mapping

from .gauss import GaussDiagram, GaussError, half_cycle
from .groups import (AbElem, AbGroup, GroupRingElem, Projection, Z, Z2,
                     quotient_by_subgroup, tensor)
from .moves import R2Variant, r1_insert, r2_insert, bigon_faces, triangle_faces, corner_incidence
from .surface import (Chain, core_cycle, crossing_boundary, decompose, intersect,
                      pairing_matrix, recompose)


class ParityError(ValueError):
    pass


KINDS = ("parity", "signed", "index")


class Rule:
    """Evaluator ``d -> {chord: AbElem}`` with a per-diagram cache."""

    kind = "index"

    def __init__(self, name: str, group: AbGroup, fn: Callable, kind: str = None):
        self.name = name
        self.group = group
        self._fn = fn
        if kind is not None:
            if kind not in KINDS:
                raise ValueError(f"unknown rule kind {kind!r}")
            self.kind = kind
        self._cache = {}

    def values(self, d: GaussDiagram) -> dict:
        try:
            return self._cache[d]
        except KeyError:
            pass
        vals = self._fn(d)
        if len(self._cache) > 50000:
            self._cache.clear()
        self._cache[d] = vals
        return vals

    def __call__(self, d: GaussDiagram, v) -> AbElem:
        return self.values(d)[v]

    @property
    def signed(self) -> bool:
        return self.kind in ("parity", "signed")

    def __repr__(self):
        return f"{type(self).__name__}({self.name!r}, {self.group}, kind={self.kind})"


class ParityRule(Rule):
    kind = "parity"


class IndexRule(Rule):
    def __init__(self, name, group, fn, signed: bool = False):
        super().__init__(name, group, fn, "signed" if signed else "index")


# -- built-in rules -----------------------------------------------------------

def _closed_view(d: GaussDiagram) -> GaussDiagram:
    return d.closure() if d.long else d


def gaussian_parity(d: GaussDiagram, v) -> AbElem:
    """Number of endpoints strictly inside a half of v, mod 2."""
    d = _closed_view(d)
    if not d.is_self(v):
        raise ParityError("Gaussian parity is defined on self crossings")
    return Z2(len(d.endpoints_between(d.tails[v], d.heads[v])))


def index_parity_direct(d: GaussDiagram, v) -> AbElem:
    """Chord-linking count: each endpoint inside the right half of v
    contributes sgn(w) if it is an overcrossing and -sgn(w) if under.

    Equivalently, tails inside minus heads inside.
    """
    d = _closed_view(d)
    if not d.is_self(v):
        raise ParityError("index parity is defined on self crossings")
    total = 0
    for g in d.endpoints_between(d.tails[v], d.heads[v]):
        _, _, w, role = d.endpoints[g]
        if d.flat:
            total += 1 if d.is_tail(g) else -1
        else:
            total += d.signs[w] * (1 if role == "O" else -1)
    return Z(total)


def _sign_values(d):
    if d.flat:
        raise ParityError("flat diagrams carry no crossing signs")
    return {v: Z(d.signs[v]) for v in d.labels}


GP = ParityRule("gp", Z2, lambda d: {v: gaussian_parity(d, v) for v in d.labels})
IP = ParityRule("ip", Z, lambda d: {v: index_parity_direct(d, v) for v in d.labels})
SGN = IndexRule("sgn", Z, _sign_values, signed=True)


def constant_rule(x: AbElem, name: str = None) -> IndexRule:
    return IndexRule(name or f"const({x})", x.group, lambda d: {v: x for v in d.labels})


def table_rule(name: str, group: AbGroup, values: Mapping, kind="parity") -> Rule:
    """A rule known only on listed diagrams (for fault injection and tests)."""
    def fn(d):
        if d not in values:
            raise ParityError(f"{name} is not defined on {d!r}")
        return dict(values[d])
    return Rule(name, group, fn, kind)


# -- rule algebra -------------------------------------------------------------

def _sign_class(kind):
    return "index" if kind == "index" else "signed"


def add_rules(r1: Rule, r2: Rule) -> Rule:
    if r1.group != r2.group:
        raise ParityError("rules take values in different groups")
    if r1.kind == r2.kind:
        kind = r1.kind
    elif _sign_class(r1.kind) == _sign_class(r2.kind) == "signed":
        kind = "signed"
    else:
        raise ParityError(f"cannot add a {r1.kind} rule and a {r2.kind} rule")

    def fn(d):
        a, b = r1.values(d), r2.values(d)
        return {v: a[v] + b[v] for v in d.labels}
    return Rule(f"({r1.name}+{r2.name})", r1.group, fn, kind)


def scale_rule(r: Rule, k: int) -> Rule:
    return Rule(f"{k}*{r.name}", r.group, lambda d: {v: x * k for v, x in r.values(d).items()},
                r.kind)


def tensor_rules(r1: Rule, r2: Rule) -> Rule:
    """Pointwise tensor product; signed x signed and index x index are
    indices, signed x index is signed."""
    g, mult = tensor(r1.group, r2.group)
    kind = "index" if _sign_class(r1.kind) == _sign_class(r2.kind) else "signed"

    def fn(d):
        a, b = r1.values(d), r2.values(d)
        return {v: mult(a[v], b[v]) for v in d.labels}
    return Rule(f"({r1.name}*{r2.name})", g, fn, kind)


def sign_product(r: Rule) -> Rule:
    """sgn * r, valued in the group of r (Z (x) A is identified with A)."""
    kind = "index" if r.signed else "signed"

    def fn(d):
        vals = r.values(d)
        return {v: vals[v] * d.signs[v] for v in d.labels}
    return Rule(f"sgn*{r.name}", r.group, fn, kind)


def compose_rule(r: Rule, f: Callable, target: AbGroup, symmetry: str = None) -> Rule:
    """f applied to the values of r.

    ``symmetry`` is "odd" or "even" for a signed input (the kind of the
    result follows), and ignored for indices.
    """
    if r.kind == "index":
        kind = "index"
    elif symmetry == "odd":
        kind = "signed"
    elif symmetry == "even":
        kind = "index"
    else:
        raise ParityError("composition with a signed rule needs an odd or even map")

    def fn(d):
        return {v: f(x) for v, x in r.values(d).items()}
    return Rule(f"f({r.name})", target, fn, kind)


def abs_rule(r: Rule) -> Rule:
    if r.group != Z:
        raise ParityError("modulus needs integer values")
    return compose_rule(r, lambda x: Z(abs(int(x))), Z, "even")


def sign_of_rule(r: Rule) -> Rule:
    if r.group != Z:
        raise ParityError("sign needs integer values")
    return compose_rule(r, lambda x: Z((int(x) > 0) - (int(x) < 0)), Z, "odd")


def project_rule(r: Rule, proj: Projection) -> Rule:
    """Push the values of r through a homomorphism (kind is preserved)."""
    new = Rule(r.name, proj.target, lambda d: {v: proj(x) for v, x in r.values(d).items()},
               r.kind)
    return new


# -- potentials -----------------------------------------------------------------

def potential(rule: Rule, d: GaussDiagram, a: int, b="self", variant: str = "plain",
              over: str = "a") -> AbElem:
    """Value of ``rule`` on the first crossing of a second move between arcs.

    plain: delta_{a,b}, the strands run against each other;
    bar: delta_{a,b-bar}, the strands run alongside;
    b="self": delta_a = delta_{a,a-bar}.
    """
    if b == "self":
        b, variant = a, "bar"
    same = a == b
    if variant == "plain":
        v = R2Variant("nested" if same else "reversed", "a", over)
    elif variant == "bar":
        v = R2Variant("interleaved" if same else "parallel", "b", over)
    else:
        raise ValueError(f"unknown potential variant {variant!r}")
    new, rec = r2_insert(d, a, b, v)
    return rule(new, rec.new_chords[0])


def parity_cycle_of_rule(rule: Rule, d: GaussDiagram) -> Chain:
    """The 1-chain a -> delta_a; raises if it is not a cycle."""
    c = Chain(rule.group, {a.id: potential(rule, d, a.id) for a in d.arcs})
    if d.long:
        # the two ends of a long diagram are the same arc of the closure
        pass
    elif crossing_boundary(d, c):
        raise ParityError(f"{rule.name} does not give a cycle on {d!r}")
    return c


# -- cycles to parities ----------------------------------------------------------

def parity_from_cycle(d: GaussDiagram, delta: Chain, v) -> AbElem:
    """Intersection formula: D^l_v . delta (closed), -o(v) D^c_v . delta (long)."""
    if d.long:
        return -intersect(d, half_cycle(d, v, "closed"), delta) * d.long_order(v)
    if len(d.components) > 1 and not d.is_self(v):
        raise ParityError("mixed crossings need link constants; use link_potential_parity")
    return intersect(d, half_cycle(d, v, "left"), delta)


def parities_from_cycle(d: GaussDiagram, delta: Chain) -> dict:
    """All parities of a cycle; on closed knots via the half tables."""
    if d.long or len(d.components) > 1 or not d.n:
        return {v: parity_from_cycle(d, delta, v) for v in d.labels}
    if crossing_boundary(d, delta):
        raise GaussError("not a cycle")
    pi, (rho,) = decompose(d, delta)
    labels, _, ip = half_tables(d)
    # D^l_v . D = -ip(v), D^l_v . D^r_w = L[v][w]
    out = _apply(lr_matrix(d), labels, pi, delta.group)
    return {v: out[v] - rho * ip[i] for i, v in enumerate(labels)}


def cycle_rule(name: str, cycle_fn: Callable, group: AbGroup) -> ParityRule:
    """The parity p^delta of a cycle family ``cycle_fn(d) -> Chain``."""
    return ParityRule(name, group, lambda d: parities_from_cycle(d, cycle_fn(d)))


# -- quasi-indices -------------------------------------------------------------------

QuasiIndexData = namedtuple("QuasiIndexData", ["values", "rho", "lambdas"])
QuasiIndexData.__new__.__defaults__ = (None, ())


def quasi_index_of_cycle(d: GaussDiagram, delta: Chain) -> QuasiIndexData:
    """pi(v) = delta(A out) - delta(A in) = delta(B in) - delta(B out), plus the remainder."""
    vals = {}
    for v in d.labels:
        t, h = d.tails[v], d.heads[v]
        x = delta.arc(d.arc_out(t)) - delta.arc(d.arc_in(t))
        y = delta.arc(d.arc_in(h)) - delta.arc(d.arc_out(h))
        if x != y:
            raise ParityError(f"not a cycle at chord {v}")
        vals[v] = x
    if d.long:
        return QuasiIndexData(vals, delta.arc(0))
    try:
        pi, rho = decompose(d, delta)
    except GaussError:
        return QuasiIndexData(vals, None)
    assert pi == vals
    return QuasiIndexData(vals, rho[0] if len(rho) == 1 else tuple(rho))


def cycle_of_quasiindex(d: GaussDiagram, pi: Mapping, rho=None, mode: str = "plain",
                        group: AbGroup = None) -> Chain:
    """plain: sum pi D^r + rho D; signed_base: sum sgn pi D^-; long: sum o pi D^c + rho D."""
    if group is None:
        vals = list(pi.values()) + ([rho] if isinstance(rho, AbElem) else list(rho or ()))
        group = vals[0].group if vals else Z
    if rho is None:
        rho = group.zero()
    if mode == "plain":
        rhos = list(rho) if isinstance(rho, (list, tuple)) else [rho] * len(d.components)
        return recompose(d, pi, rhos, group)
    total = Chain(group)
    if mode == "signed_base":
        for v, x in pi.items():
            if not x.is_zero():
                total = total + half_cycle(d, v, "minus").tensor(x * d.signs[v])
        return total
    if mode == "long":
        if not d.long:
            raise ParityError("long mode needs a long diagram")
        for v, x in pi.items():
            if not x.is_zero():
                total = total + half_cycle(d, v, "closed").tensor(x * d.long_order(v))
        if not rho.is_zero():
            total = total + core_cycle(d).tensor(rho)
        return total
    raise ValueError(f"unknown mode {mode!r}")


# -- signatures and the half intersection tables -------------------------------------------

def _ip_values(d):
    return {v: index_parity_direct(d, v) for v in d.labels}


def signature(d: GaussDiagram, x):
    """D . delta for a chain (a list per component on links), and
    -sum pi(v) ip(v) for a quasi-index, a value map or a rule."""
    if isinstance(x, Chain):
        if len(d.components) > 1:
            return [intersect(d, core_cycle(d, k), x) for k in range(len(d.components))]
        return intersect(d, core_cycle(d), x)
    if isinstance(x, Rule):
        vals = x.values(d)
        group = x.group
    else:
        vals = x.values if isinstance(x, QuasiIndexData) else x
        group = next(iter(vals.values())).group if vals else Z
    ip = _ip_values(d)
    total = group.zero()
    for v, y in vals.items():
        total = total - y * int(ip[v])
    return total


@lru_cache(maxsize=4096)
def half_tables(d: GaussDiagram):
    """(labels, R, ip) with R[i][j] = D^r_vi . D^r_vj and ip[i] = D^r_vi . D."""
    cl = _closed_view(d)
    pm = pairing_matrix(cl)
    idx = {b: i for i, b in enumerate(pm.basis)}
    labels = cl.labels
    core = idx[("core", 0)]
    R = [[pm.entries[idx[("half", v)]][idx[("half", w)]] for w in labels] for v in labels]
    ip = [pm.entries[idx[("half", v)]][core] for v in labels]
    return labels, R, ip


def lr_matrix(d: GaussDiagram):
    """L[v][w] = D^l_v . D^r_w."""
    labels, R, ip = half_tables(d)
    n = len(labels)
    return [[-ip[j] - R[i][j] for j in range(n)] for i in range(n)]


def intersection_matrix(d: GaussDiagram):
    """M[v][w] = D^l_v . D^-_w over the chords of a closed knot."""
    if d.flat:
        raise ParityError("signed halves need crossing signs")
    labels, R, ip = half_tables(d)
    M = []
    for i, v in enumerate(labels):
        row = []
        for j, w in enumerate(labels):
            if d.signs[w] > 0:
                row.append(-ip[j] - R[i][j])
            else:
                row.append(ip[j] - ip[i] + R[i][j])
        M.append(row)
    return M


def match_based_matrix(d: GaussDiagram, block) -> list:
    """All (perm, sign) with R[perm[i]][perm[j]] = sign * block[i][j], R the
    half pairing table of ``d``; perm lists positions in ``d.labels``."""
    import itertools
    labels, R, _ = half_tables(d)
    n = len(labels)
    if len(block) != n:
        return []
    hits = []
    for perm in itertools.permutations(range(n)):
        for s in (1, -1):
            if all(R[perm[i]][perm[j]] == s * block[i][j] for i in range(n) for j in range(n)):
                hits.append((perm, s))
    return hits


def _apply(mat, labels, vals, group):
    out = {}
    for i, v in enumerate(labels):
        total = group.zero()
        for j, w in enumerate(labels):
            if mat[i][j] and not vals[w].is_zero():
                total = total + vals[w] * mat[i][j]
        out[v] = total
    return out


# -- loop values -----------------------------------------------------------------------------

def loop_values(rule: Rule, d: GaussDiagram = None) -> dict:
    """Values of ``rule`` on kinks of each type added to ``d``."""
    if d is None:
        d = GaussDiagram([()], {})
    out = {}
    for lt in ("l+", "l-", "r+", "r-"):
        new, rec = r1_insert(d, 0, lt)
        out[lt] = rule(new, rec.new_chords[0])
    return out


def loop_constants(rule: Rule, d: GaussDiagram = None):
    """(x_circ, x_bullet): values at l+ and r+ kinks; the Whitney identities
    for the other two types are checked."""
    lv = loop_values(rule, d)
    circ, bullet = lv["l+"], lv["r+"]
    if rule.kind == "index":
        ok = lv["r-"] == circ and lv["l-"] == bullet
    else:
        ok = lv["r-"] == -circ and lv["l-"] == -bullet
    if not ok:
        raise ParityError(f"{rule.name}: kink values {lv} break the Whitney identities")
    return circ, bullet


# -- index to parity -----------------------------------------------------------------------

IndexParity = namedtuple("IndexParity", ["values", "group", "projection", "sigma"])


def _quotient(group, gens):
    gens = [x for x in gens if not x.is_zero()]
    if not gens:
        return group, Projection.identity(group)
    return quotient_by_subgroup(group, gens)


def parity_from_index(d: GaussDiagram, rule: Rule, mode: str = "reduced", tau: int = None,
                      mon=(), circ: AbElem = None) -> IndexParity:
    """Parity values induced by an index on a closed knot diagram.

    reduced: l+-reduction, sum over pi(v') != pi_circ of sgn pi (D^l_v . D^-_v'),
      modulo the reduced signature;
    quotient: sum pi(v') (D^l_v . D^r_v') modulo the signature and ``mon``;
    almost_classical: the same sum over the full group (needs ip = 0);
    rotational: the signed-base sum plus (w + tau)/2 pi_circ ip(v), modulo the signature.

    ``circ`` may supply the kink value pi_circ when it is known in advance.
    """
    if d.long or len(d.components) != 1:
        raise ParityError("closed knot diagrams only")
    vals = dict(rule.values(d))
    group = rule.group
    labels = d.labels
    if mode == "reduced":
        if circ is None:
            circ, _ = loop_constants(rule, d)
        vals = {v: (group.zero() if x == circ else x) for v, x in vals.items()}
        weighted = {v: x * d.signs[v] for v, x in vals.items()}
        raw = _apply(intersection_matrix(d), labels, weighted, group)
        sigma = signature(d, vals)
        extra = []
    elif mode in ("quotient", "almost_classical"):
        raw = _apply(lr_matrix(d), labels, vals, group)
        sigma = signature(d, vals)
        if mode == "almost_classical":
            if any(not x.is_zero() for x in _ip_values(d).values()):
                raise ParityError("diagram is not almost classical")
            return IndexParity(raw, group, Projection.identity(group), sigma)
        extra = list(mon)
    elif mode == "rotational":
        if tau is None:
            raise ParityError("rotational mode needs the rotation number")
        w = d.writhe
        if (w + tau) % 2:
            raise ParityError("writhe + rotation number must be even")
        if circ is None:
            circ, _ = loop_constants(rule, d)
        weighted = {v: x * d.signs[v] for v, x in vals.items()}
        raw = _apply(intersection_matrix(d), labels, weighted, group)
        ip = _ip_values(d)
        raw = {v: raw[v] + circ * ((w + tau) // 2 * int(ip[v])) for v in labels}
        sigma = signature(d, vals)
        extra = []
    else:
        raise ValueError(f"unknown mode {mode!r}")
    target, proj = _quotient(group, [sigma] + extra)
    return IndexParity({v: proj(x) for v, x in raw.items()}, target, proj, sigma)


def index_parity_rule(rule: Rule, d0: GaussDiagram, mode: str = "reduced", mon=(),
                      name: str = None, circ: AbElem = None) -> ParityRule:
    """The induced parity as a total rule on diagrams of the knot of ``d0``.

    The coefficient group is computed on ``d0``; evaluating on a diagram that
    gives a different group raises (the signature is an invariant).
    """
    group = parity_from_index(d0, rule, mode, mon=mon, circ=circ).group

    def fn(d):
        res = parity_from_index(d, rule, mode, mon=mon, circ=circ)
        if res.group != group:
            raise ParityError("induced coefficient group changed between diagrams")
        return res.values
    return ParityRule(name or f"p[{rule.name}]", group, fn)


def _halve(x: AbElem) -> AbElem:
    g = x.group
    coords = []
    for c, m in zip(x.coords, g.moduli()):
        if m == 0:
            if c % 2:
                raise ParityError("free coordinate is not divisible by 2")
            coords.append(c // 2)
        else:
            coords.append(c * pow(2, -1, m) % m)
    return g.elem(coords)


def flat_parity_from_index(d: GaussDiagram, rule: Rule, mode: str = "floor") -> IndexParity:
    """Parity of a flat knot induced by an index (values at loops dropped).

    floor: sum pi(v') (D^l_v . D^r_v') + sum_x x floor(n_x / 2) ip(v);
    half: sum pi(v') (D^l_v . D^r_v') + (1/2) sum pi(v') ip(v), needing 1/2.
    """
    if not d.flat:
        raise ParityError("flat diagrams only")
    group = rule.group
    if mode == "half" and any(m % 2 == 0 and m for m in group.moduli()):
        raise ParityError("2 is not invertible in the coefficient group")
    lv = loop_values(rule, d)
    circ = lv["l+"]
    vals = {v: (group.zero() if x == circ else x) for v, x in rule.values(d).items()}
    labels = d.labels
    raw = _apply(lr_matrix(d), labels, vals, group)
    ip = _ip_values(d)
    if mode == "floor":
        counts = Counter(x for x in vals.values() if not x.is_zero())
        corr = group.zero()
        for x, n in counts.items():
            corr = corr + x * (n // 2)
    elif mode == "half":
        total = group.zero()
        for x in vals.values():
            total = total + x
        corr = _halve(total)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    raw = {v: raw[v] + corr * int(ip[v]) for v in labels}
    sigma = signature(d, vals)
    target, proj = _quotient(group, [sigma])
    return IndexParity({v: proj(x) for v, x in raw.items()}, target, proj, sigma)


# -- long knots ----------------------------------------------------------------------------

def long_order(d: GaussDiagram, v) -> int:
    return d.long_order(v)


def long_knot_parity(d: GaussDiagram, source, v=None):
    """-o(v) D^c_v . delta, with delta a chain or built from (pi, rho)."""
    if not d.long:
        raise ParityError("long diagrams only")
    if isinstance(source, Chain):
        delta = source
    else:
        pi, rho = source
        delta = cycle_of_quasiindex(d, pi, rho, mode="long")
    if v is None:
        return {u: parity_from_cycle(d, delta, u) for u in d.labels}
    return parity_from_cycle(d, delta, v)


# -- links ---------------------------------------------------------------------------------

def link_parity(d: GaussDiagram, l, v) -> AbElem:
    """lp^l(v) = l_i - l_j for a crossing whose tail lies on D_i and head on
    D_j; ``l`` lists the constants of all components but the last (which is 0)."""
    ls = _link_constants(d, l)
    return ls[d.endpoints[d.tails[v]][0]] - ls[d.endpoints[d.heads[v]][0]]


def _link_constants(d, l):
    l = list(l)
    n = len(d.components)
    if len(l) == n - 1:
        g = l[0].group if l else Z
        l.append(g.zero())
    if len(l) != n:
        raise ParityError(f"expected {n - 1} link constants")
    return l


def link_parity_rule(l) -> ParityRule:
    l = list(l)
    group = l[0].group

    def fn(d):
        return {v: link_parity(d, l, v) for v in d.labels}
    return ParityRule(f"lp{tuple(str(x) for x in l)}", group, fn)


def arc_potentials(d: GaussDiagram, delta: Chain, l=None) -> dict:
    """phi on arcs: phi jumps by delta(B out) through a tail and by
    -delta(A in) through a head; phi on the first arc of component k is l_k."""
    g = delta.group
    ls = _link_constants(d, l) if l is not None else [g.zero()] * len(d.components)
    phi = {}
    for k, comp in enumerate(d.components):
        arcs = d.component_arcs[k]
        phi[arcs[0]] = ls[k]
        off = d._comp_offset[k]
        cur = ls[k]
        for i in range(len(comp)):
            gpos = off + i
            v = d.endpoints[gpos][2]
            if d.is_tail(gpos):
                cur = cur + delta.arc(d.arc_out(d.heads[v]))
            else:
                cur = cur - delta.arc(d.arc_in(d.tails[v]))
            a = d.arc_out(gpos)
            if a in phi and phi[a] != cur:
                raise ParityError(f"cycle is not normalized on component {k}")
            phi[a] = cur
    return phi


def link_potential_parity(d: GaussDiagram, delta: Chain, l=None) -> dict:
    """p(v) = phi(A in) - phi(B out) for every chord (self crossings do not
    depend on the constants l)."""
    phi = arc_potentials(d, delta, l)
    return {v: phi[d.arc_in(d.tails[v])] - phi[d.arc_out(d.heads[v])] for v in d.labels}


def relative_path(d: GaussDiagram, v, w, ends=None):
    """The closed path gamma: from v along D_i to w, then along D_j back to v.

    ``ends`` = (e_i(v), e_j(v), e_i(w), e_j(w)) endpoint ids; by default the
    endpoints of v and w on the components of v's tail and head.
    Returns (chain, eta_v, eta_w) where eta = +1 when gamma turns from the
    tail strand onto the head strand.
    """
    if ends is None:
        ci = d.endpoints[d.tails[v]][0]
        cj = d.endpoints[d.heads[v]][0]
        ev_i, ev_j = d.tails[v], d.heads[v]
        ws = [d.tails[w], d.heads[w]]
        if ci != cj:
            ew_i = [g for g in ws if d.endpoints[g][0] == ci]
            ew_j = [g for g in ws if d.endpoints[g][0] == cj]
            if len(ew_i) != 1 or len(ew_j) != 1:
                raise ParityError("w is not a crossing of the same two components")
            ew_i, ew_j = ew_i[0], ew_j[0]
        else:
            if {d.endpoints[g][0] for g in ws} != {ci}:
                raise ParityError("w is not a self crossing of the same component")
            ew_i, ew_j = ws
        ends = (ev_i, ev_j, ew_i, ew_j)
    ev_i, ev_j, ew_i, ew_j = ends
    coeffs = Counter(d.arcs_between(ev_i, ew_i)) + Counter(d.arcs_between(ew_j, ev_j))
    chain = Chain(Z, {a: Z(k) for a, k in coeffs.items()})
    eta_v = 1 if d.is_tail(ev_j) else -1
    eta_w = 1 if d.is_tail(ew_i) else -1
    return chain, eta_v, eta_w


def relative_parity_check(d: GaussDiagram, delta: Chain, v, w, values=None, ends=None):
    """eta(v) p(v) + eta(w) p(w) == gamma . delta; returns (ok, lhs, rhs)."""
    if values is None:
        values = link_potential_parity(d, delta)
    gamma, ev, ew = relative_path(d, v, w, ends)
    lhs = values[v] * ev + values[w] * ew
    rhs = intersect(d, gamma, delta)
    return lhs == rhs, lhs, rhs


def mixed_indicator(d: GaussDiagram = None) -> IndexRule:
    """1 on mixed crossings, 0 on self crossings."""
    return IndexRule("mixed", Z, lambda d: {v: Z(0 if d.is_self(v) else 1) for v in d.labels})


# -- linking invariants and polynomials ----------------------------------------------------

def _signed_values(d, rule):
    """tau values: the rule itself if signed, sgn * rule for an index."""
    vals = rule.values(d)
    if rule.signed:
        return dict(vals)
    return {v: x * d.signs[v] for v, x in vals.items()}


def _signed_loop_constants(rule, d):
    circ, bullet = loop_constants(rule, d)
    # an l+ and an r+ kink are positive, so sgn * pi agrees with pi there
    return circ, bullet


def linking_invariant(d: GaussDiagram, rule: Rule, mode: str = "plain"):
    """sum tau(v) for a signed rule, sum sgn(v) pi(v) for an index.

    ring_reduced drops the values +-tau_circ, +-tau_bullet; quotient_reduced
    returns (value, group) in A/<tau_circ, tau_bullet>.
    """
    tau = _signed_values(d, rule)
    circ, bullet = _signed_loop_constants(rule, d)
    group = rule.group
    if mode == "plain":
        if not (circ.is_zero() and bullet.is_zero()):
            raise ParityError(f"{rule.name} is not R1-reduced")
        return sum(tau.values(), group.zero())
    if mode == "ring_reduced":
        bad = {circ, -circ, bullet, -bullet}
        return sum((x for x in tau.values() if x not in bad), group.zero())
    if mode == "quotient_reduced":
        target, proj = _quotient(group, [circ, bullet])
        return proj(sum(tau.values(), group.zero())), target
    raise ValueError(f"unknown mode {mode!r}")


def odd_index_polynomial(d: GaussDiagram, rule: Rule, projection: Projection = None) -> GroupRingElem:
    """sum of sgn(v) t^pi(v) over crossings whose index value is not a loop value.

    For a signed rule tau the index is sgn * tau.
    """
    group = rule.group if projection is None else projection.target
    vals = rule.values(d)
    if rule.signed:
        pi = {v: x * d.signs[v] for v, x in vals.items()}
    else:
        pi = dict(vals)
    if rule.kind == "parity":
        skip = {group.zero()}
        if projection is not None:
            pi = {v: projection(x) for v, x in pi.items()}
    else:
        circ, bullet = loop_constants(rule, d)
        if projection is not None:
            pi = {v: projection(x) for v, x in pi.items()}
            circ, bullet = projection(circ), projection(bullet)
        skip = {circ, bullet}
    terms = Counter()
    for v, x in pi.items():
        if x in skip:
            continue
        terms[x] += d.signs[v]
    return GroupRingElem(group, terms)


def inner_product(d: GaussDiagram, r1: Rule, r2: Rule) -> AbElem:
    """Linking invariant of r1 (x) r2 (with sgn when the product is an index)."""
    prod = tensor_rules(r1, r2)
    vals = prod.values(d)
    total = prod.group.zero()
    for v, x in vals.items():
        total = total + (x * d.signs[v] if prod.kind == "index" else x)
    return total


# -- axiom verification ------------------------------------------------------------------

def verify_parity_axioms(rule: Rule, d_or_walk, static: bool = True, kind: str = None) -> dict:
    """Check P0-P3+ along a move walk (or the static laws on one diagram).

    ``kind`` overrides the law set: "parity" (default for parity rules),
    "signed" or "index" (I0 and the second-move law only).  Returns a dict
    of violation lists keyed by law; empty lists mean no violations.
    """
    from .moves import MoveWalk
    kind = kind or rule.kind
    walk = d_or_walk if isinstance(d_or_walk, MoveWalk) else MoveWalk(d_or_walk)
    report = {"P0": [], "P1": [], "P2": [], "P3": [], "bigon": [], "triangle": []}
    for i, rec in enumerate(walk.records):
        a, b = rule.values(rec.before), rule.values(rec.after)
        for v, w in rec.crossing_map.items():
            if a[v] != b[w]:
                report["P0"].append((i, rec.kind, v, a[v], b[w]))
        if rec.kind.startswith("R1") and kind == "parity":
            (u,) = rec.new_chords or rec.removed_chords
            x = (b if rec.kind == "R1+" else a)[u]
            if not x.is_zero():
                report["P1"].append((i, rec.kind, u, x))
        if rec.kind.startswith("R2"):
            u1, u2 = rec.new_chords or rec.removed_chords
            vals = b if rec.kind == "R2+" else a
            bad = (vals[u1] != vals[u2]) if kind == "index" else not (vals[u1] + vals[u2]).is_zero()
            if bad:
                report["P2"].append((i, rec.kind, (u1, u2), vals[u1], vals[u2]))
        if rec.kind == "R3" and kind == "parity":
            terms = [a[v] * e for v, e in rec.epsilon.items()]
            if not sum(terms[1:], terms[0]).is_zero():
                report["P3"].append((i, dict(rec.epsilon), {v: a[v] for v in rec.epsilon}))
    if static and kind == "parity":
        for j, dd in enumerate(walk.diagrams):
            if len(dd.components) != 1 or dd.long:
                continue
            vals = rule.values(dd)
            for u1, u2 in bigon_faces(dd):
                if not (vals[u1] + vals[u2]).is_zero():
                    report["bigon"].append((j, (u1, u2)))
            for site in triangle_faces(dd):
                eps = corner_incidence(dd, site)
                s = None
                for v, e in eps.items():
                    s = vals[v] * e if s is None else s + vals[v] * e
                if not s.is_zero():
                    report["triangle"].append((j, site.chords, eps))
    return report


def violations(report: dict) -> int:
    return sum(len(x) for x in report.values())
