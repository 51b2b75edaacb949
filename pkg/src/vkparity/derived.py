"""
Derived parities.

For a parity p the product sgn.p is an index that vanishes on kinks, so it
induces a new parity p' over A' = A / <sigma(sgn.p)>.  On a fixed diagram
this is the linear map p' = M p with M[v][w] = D^l_v . D^-_w.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .gauss import GaussDiagram
from .groups import AbGroup, GroupRingElem, Z, quotient_by_cyclic
from .parity import IP, Rule, index_parity_rule, intersection_matrix, sign_product

__all__ = ["DerivedStep", "DerivedReport", "intersection_matrix", "derive_once",
           "derived_series", "classify", "derived_rules"]


@dataclass
class DerivedStep:
    n: int
    group: AbGroup
    vector: dict
    sigma: object
    lk_poly: GroupRingElem

    def values(self, labels=None):
        labels = labels or sorted(self.vector)
        return [self.vector[v] for v in labels]


@dataclass
class DerivedReport:
    steps: list
    classification: str
    evidence: dict = field(default_factory=dict)


def derive_once(d: GaussDiagram, p: Rule):
    """(p', A') as a total rule, computed on the knot of ``d``."""
    tau = sign_product(p)
    rule = index_parity_rule(tau, d, "reduced", name=p.name + "'", circ=p.group.zero())
    return rule, rule.group


def derived_rules(d: GaussDiagram, levels: int, p0: Rule = IP):
    """[p0, p1, ..., p_levels] as rules."""
    out = [p0]
    for _ in range(levels):
        out.append(derive_once(d, out[-1])[0])
    return out


def _sigma(d, vec, group):
    from .parity import index_parity_direct
    total = group.zero()
    for v, x in vec.items():
        total = total - x * (d.signs[v] * int(index_parity_direct(d, v)))
    return total


def _lk(d, vec, group):
    terms = {}
    for v, x in vec.items():
        y = x * d.signs[v]
        if y.is_zero():
            continue
        terms[y] = terms.get(y, 0) + d.signs[v]
    return GroupRingElem(group, terms)


def derived_series(d: GaussDiagram, p0: Rule = IP, max_n: int = 12) -> DerivedReport:
    """Levels 0..max_n of the series p_{n+1} = M p_n over A_{n+1} = A_n/<sigma_n>."""
    M = intersection_matrix(d)
    labels = d.labels
    group = p0.group
    vec = dict(p0.values(d))
    steps = []
    for n in range(max_n + 1):
        sigma = _sigma(d, vec, group)
        steps.append(DerivedStep(n, group, vec, sigma, _lk(d, vec, group)))
        if n == max_n:
            break
        nxt_group, proj = quotient_by_cyclic(group, sigma)
        new = {}
        for i, v in enumerate(labels):
            total = group.zero()
            for j, w in enumerate(labels):
                if M[i][j]:
                    total = total + vec[w] * M[i][j]
            new[v] = proj(total)
        group, vec = nxt_group, new
    cls, ev = classify(steps)
    return DerivedReport(steps, cls, ev)


def _norm(vec):
    return sum(abs(c) for x in vec.values() for c in x.signed())


def _key(step):
    return step.group, tuple(sorted(step.vector.items()))


def classify(steps, window: int = 4):
    """degeneration, stabilization, periodicity, growth or unresolved."""
    if len(steps) < 3:
        raise ValueError("need at least three levels")
    for s in steps:
        if s.group.is_trivial() or all(x.is_zero() for x in s.vector.values()):
            if s.vector:
                return "degeneration", {"level": s.n}
    keys = [_key(s) for s in steps]
    # eventual period: smallest P, then earliest start, with two full periods seen
    for period in range(1, len(keys) // 2 + 1):
        first = None
        for f in range(len(keys) - 2 * period, -1, -1):
            if keys[f] != keys[f + period]:
                break
            first = f
        if first is not None and len(keys) - first >= 2 * period + 1:
            if period == 1:
                return "stabilization", {"from": first}
            return "periodicity", {"period": period, "from": first}
    # growth: free group and p_{n+P} = r p_n exactly over the last window
    last = steps[-window - 2:]
    if all(s.group == Z for s in last):
        for period in (1, 2):
            ratios = set()
            ok = True
            for a, b in zip(last, last[period:]):
                labels = sorted(a.vector)
                va = [int(a.vector[v]) for v in labels]
                vb = [int(b.vector[v]) for v in labels]
                nz = [i for i, x in enumerate(va) if x]
                if not nz or any(vb[i] * va[nz[0]] != va[i] * vb[nz[0]] for i in range(len(va))):
                    ok = False
                    break
                if vb[nz[0]] % va[nz[0]]:
                    ok = False
                    break
                ratios.add(abs(vb[nz[0]] // va[nz[0]]))
            if ok and len(ratios) == 1:
                r = ratios.pop()
                norms = [_norm(s.vector) for s in last]
                if r > 1 and all(x < y for x, y in zip(norms, norms[period:])):
                    return "growth", {"period": period, "ratio": r}
    return "unresolved", {}
