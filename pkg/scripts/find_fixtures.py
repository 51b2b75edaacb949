"""Search small Gauss diagrams for ones matching printed derived-parity data.

Prints one line per target: name, number of matches, and a representative
code with chords relabelled so the parity vectors read in the printed order.
"""
import itertools
import sys

from vkparity.derived import derived_series
from vkparity.gauss import GaussDiagram, emit_gauss_code
from vkparity.groups import Z, parse_groupring, make_group
from vkparity.parity import index_parity_direct


def pairings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        rest = points[1:i] + points[i + 1:]
        for p in pairings(rest):
            yield [(a, points[i])] + p


def diagrams(n):
    for pr in pairings(list(range(2 * n))):
        for roles in itertools.product("OU", repeat=n):
            for signs in itertools.product((1, -1), repeat=n):
                seq = [None] * (2 * n)
                for k, (x, y) in enumerate(pr):
                    r = roles[k]
                    seq[x] = (k + 1, r)
                    seq[y] = (k + 1, "U" if r == "O" else "O")
                yield GaussDiagram([seq], {k + 1: signs[k] for k in range(n)})


def poly(text, group=Z):
    return parse_groupring(text, group)


def vec(step):
    return [step.vector[v] for v in sorted(step.vector)]


def as_ints(step):
    return [x.signed()[0] if x.signed() else 0 for x in vec(step)]


Z2, Z4 = make_group(0, [2]), make_group(0, [4])

TARGETS = {
    "2.1": (2, lambda r: r.steps[0].sigma == Z(2) and r.steps[0].lk_poly == poly("-t^-1 - t")
            and all(as_ints(s) == [1, 1] and s.group == Z2 for s in r.steps[1:])
            and all(s.lk_poly == poly("-2t^-1", Z2) for s in r.steps[1:]), None),
    "3.1": (3, lambda r: [s.sigma.signed()[0] for s in r.steps[:2]] == [4, 0]
            and r.steps[2].sigma.signed()[0] in (1, -1)
            and r.steps[0].lk_poly == poly("-t^-1 + t - t^2")
            and r.steps[1].lk_poly == poly("-t^-1", r.steps[1].group)
            and all(not s.lk_poly for s in r.steps[2:]), None),
    "3.5": (3, lambda r: r.steps[0].lk_poly == poly("-t^-2 - t^2")
            and r.steps[1].lk_poly == poly("-3t^4", r.steps[1].group)
            and r.steps[2].lk_poly == poly("-2t^4", r.steps[2].group)
            and all(x.is_zero() for x in r.steps[3].vector.values()), None),
    "4.1": (4, lambda r: r.steps[0].sigma == Z(4)
            and all(as_ints(r.steps[n]) == [[1, -1, 1, -1], [1, 1, 1, 1], [-1, 1, -1, 1],
                                            [-1, -1, -1, -1]][n % 4] for n in range(9)), "vec"),
    "4.4": (4, lambda r: r.steps[0].lk_poly == poly("-t^-1 - t") and not r.steps[1].lk_poly, None),
    "4.75": (4, lambda r: all(s.sigma.is_zero() and s.group == Z for s in r.steps)
             and all(as_ints(s) == [2 ** s.n, -2 ** s.n, -2 ** s.n, 2 ** s.n] for s in r.steps)
             and not any(s.lk_poly for s in r.steps), "vec"),
    "4.107": (4, lambda r: all(s.group == Z for s in r.steps)
              and all(as_ints(s) == ([2 * 3 ** (s.n // 2), -2 * 3 ** (s.n // 2), -2 * 3 ** (s.n // 2),
                                       2 * 3 ** (s.n // 2)] if s.n % 2 == 0 else
                                      [-2 * 3 ** (s.n // 2)] * 4) for s in r.steps), "vec"),
}


def relabel_report(r, mapping):
    from vkparity.derived import DerivedReport, DerivedStep
    steps = [DerivedStep(s.n, s.group, {mapping[v]: x for v, x in s.vector.items()},
                         s.sigma, s.lk_poly) for s in r.steps]
    return DerivedReport(steps, r.classification, r.evidence)


def search(name, max_n=8):
    n, pred, order_matters = TARGETS[name]
    hits = []
    seen = set()
    for d in diagrams(n):
        key = d.canonical()
        if key in seen:
            continue
        seen.add(key)
        r = derived_series(key, max_n=max_n)
        perms = itertools.permutations(key.labels) if order_matters else [key.labels]
        for perm in perms:
            mapping = dict(zip(key.labels, perm))
            try:
                ok = pred(relabel_report(r, mapping))
            except (IndexError, ValueError):
                ok = False
            if ok:
                hits.append(key.relabel(mapping).normalized_labels()
                            if not order_matters else key.relabel(mapping))
                break
    return hits


T_BLOCK = [[0, 1, -1, -1, 1], [-1, 0, -1, 1, 1], [1, 1, 0, -1, -1],
           [1, -1, 1, 0, -1], [-1, -1, 1, 1, 0]]


def oriented_diagrams(n):
    """Chord diagrams with tail/head orientation (all signs +)."""
    for pr in pairings(list(range(2 * n))):
        for roles in itertools.product("OU", repeat=n):
            seq = [None] * (2 * n)
            for k, (x, y) in enumerate(pr):
                seq[x] = (k + 1, roles[k])
                seq[y] = (k + 1, "U" if roles[k] == "O" else "O")
            yield GaussDiagram([seq], {k + 1: 1 for k in range(n)})


def search_based_matrix(block=T_BLOCK):
    from vkparity.parity import half_tables
    n = len(block)
    hits = []
    seen = set()
    for d in oriented_diagrams(n):
        if d.components[0][0] != (1, "O"):
            continue
        if any(index_parity_direct(d, v) != 0 for v in d.labels):
            continue
        key = d.canonical()
        if key in seen:
            continue
        seen.add(key)
        labels, R, _ = half_tables(key)
        for perm in itertools.permutations(range(n)):
            for s in (1, -1):
                if all(R[perm[i]][perm[j]] == s * block[i][j] for i in range(n) for j in range(n)):
                    hits.append((key, perm, s))
                    break
            else:
                continue
            break
    return hits


def long_diagrams(n):
    for pr in pairings(list(range(2 * n))):
        for roles in itertools.product("OU", repeat=n):
            for signs in itertools.product((1, -1), repeat=n):
                seq = [None] * (2 * n)
                for k, (x, y) in enumerate(pr):
                    seq[x] = (k + 1, roles[k])
                    seq[y] = (k + 1, "U" if roles[k] == "O" else "O")
                yield GaussDiagram([seq], {k + 1: signs[k] for k in range(n)}, long=True)


def search_long(orders=(-1, 1, 1), parities=(-1, 1, 0)):
    """Labels are numbered by first occurrence, i.e. left to right."""
    from vkparity.parity import long_knot_parity
    n = len(orders)
    hits = []
    for d in long_diagrams(n):
        if tuple(d.long_order(v) for v in (1, 2, 3)) != tuple(orders):
            continue
        pi = {v: Z(-1) for v in d.labels}
        try:
            vals = long_knot_parity(d, (pi, Z(0)))
        except Exception:
            continue
        if tuple(int(vals[v]) for v in (1, 2, 3)) != tuple(parities):
            continue
        ip = tuple(int(index_parity_direct(d, v)) for v in (1, 2, 3))
        hits.append((emit_gauss_code(d), ip))
    return hits


if __name__ == "__main__":
    if sys.argv[1:] == ["5.2012"]:
        for key, perm, s in search_based_matrix():
            print(emit_gauss_code(key), perm, s)
        sys.exit()
    names = sys.argv[1:] or list(TARGETS)
    for name in names:
        hits = search(name)
        codes = sorted(emit_gauss_code(h) for h in hits)
        print(name, len(hits), codes[:6])
