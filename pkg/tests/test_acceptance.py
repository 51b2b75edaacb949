"""Acceptance criteria 1-8, one PASS/FAIL line each.

Run with pytest (lines appear in the terminal summary) or directly with
``python3 tests/test_acceptance.py``.
"""
import itertools
import random
import sys

from conftest import ACCEPTANCE_LINES, KNOTS

from vkparity.biquandle import (B3, B3_THETA, B3_TYPO, Z3, boltzmann_phi, check_axioms,
                                colorings, colour_monodromy_search, colour_permutation,
                                index_conditions_check, induced_cycle,
                                is_one_cocycle, lambda_search, lifted_coloring,
                                cocycle_parity_rule, transport_coloring, two_cocycle_from_one,
                                z3_biquandle)
from vkparity.derived import derived_rules, derived_series
from vkparity.functors import remainder_delta
from vkparity.gauss import GaussDiagram, half_cycle, random_diagram, unknot
from vkparity.groups import Z, make_group, parse_groupring, quotient_by_subgroup
from vkparity.moves import random_walk
from vkparity.parity import (GP, IP, cycle_rule, half_tables, index_parity_direct,
                             link_parity_rule, link_potential_parity, linking_invariant,
                             long_knot_parity, match_based_matrix, mixed_indicator,
                             parities_from_cycle, parity_cycle_of_rule, parity_from_cycle,
                             quasi_index_of_cycle, relative_parity_check, signature,
                             verify_parity_axioms, violations, ParityError)
from vkparity.surface import Chain, core_cycle, pairing_matrix

Z2, Z4, Z8 = make_group(0, [2]), make_group(0, [4]), make_group(0, [8])


def report(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def _ints(step, labels):
    """Values in crossing-number order."""
    return [x.signed()[0] if x.signed() else 0 for x in step.values(sorted(labels))]


def _poly(text, group):
    return parse_groupring(text, group)


# -- 1 ---------------------------------------------------------------------

def check_golden(corpus):
    bad = []
    series = {k: derived_series(corpus[k], max_n=12) for k in
              ("2.1", "3.1", "3.5", "4.1", "4.4", "4.75", "4.107")}
    steps = {k: r.steps for k, r in series.items()}

    def want(cond, what):
        if not cond:
            bad.append(what)

    sigma0 = {"2.1": 2, "3.1": 4, "3.5": 8, "4.1": 4, "4.75": 0, "4.107": 0}
    for k, s in sigma0.items():
        want(steps[k][0].sigma == Z(s), f"sigma_0 {k}")
    lk0 = {"2.1": "-t^-1 - t", "3.1": "-t^-1 + t - t^2", "3.5": "-t^-2 - t^2",
           "4.1": "-2t^-1 - 2t", "4.4": "-t^-1 - t", "4.75": "0", "4.107": "0"}
    for k, p in lk0.items():
        want(steps[k][0].lk_poly == _poly(p, Z), f"LK_0 {k}")

    s = steps["2.1"]
    for st in s[1:]:
        want(st.group == Z2 and st.sigma.is_zero(), f"2.1 A_{st.n}")
        want(_ints(st, corpus["2.1"].labels) == [1, 1], f"2.1 p_{st.n}")
        want(st.lk_poly == _poly("-2t^-1", Z2), f"2.1 LK_{st.n}")

    s = steps["3.1"]
    want(s[1].sigma.is_zero() and s[2].sigma.signed()[0] in (1, -1), "3.1 sigma_1, sigma_2")
    want(s[1].lk_poly == _poly("-t^-1", s[1].group), "3.1 LK_1")
    want(all(st.group.is_trivial() for st in s[3:]), "3.1 A_n = 0")
    want(all(not st.lk_poly for st in s[2:]), "3.1 LK_n = 0")

    s = steps["3.5"]
    want(s[1].group == Z8 and s[1].lk_poly == _poly("-3t^4", Z8), "3.5 LK_1")
    want(s[2].lk_poly == _poly("-2t^4", s[2].group), "3.5 LK_2")
    want(all(x.is_zero() for x in s[3].vector.values()), "3.5 p_3 = 0")
    want(all(not st.lk_poly for st in s[3:]), "3.5 LK_n = 0")

    s, lab = steps["4.1"], corpus["4.1"].labels
    cyc = [[1, -1, 1, -1], [1, 1, 1, 1], [-1, 1, -1, 1], [-1, -1, -1, -1]]
    polys = ["-2t^-1 - 2t", "-4t^-1", "-2t^-1 - 2t", "-4t"]
    for st in s:
        want(_ints(st, lab) == cyc[st.n % 4], f"4.1 p_{st.n}")
        want(st.lk_poly == _poly(polys[st.n % 4], st.group), f"4.1 LK_{st.n}")
        if st.n:
            want(st.group == Z4 and st.sigma.is_zero(), f"4.1 A_{st.n}")

    want(all(not st.lk_poly for st in steps["4.4"][1:2]), "4.4 LK_1 = 0")

    s, lab = steps["4.75"], corpus["4.75"].labels
    for st in s:
        want(st.group == Z and st.sigma.is_zero(), f"4.75 A_{st.n}")
        want(_ints(st, lab) == [2 ** st.n * e for e in (1, -1, -1, 1)], f"4.75 p_{st.n}")
        want(not st.lk_poly, f"4.75 LK_{st.n}")

    s, lab = steps["4.107"], corpus["4.107"].labels
    for st in s:
        k = st.n // 2
        want(st.group == Z, f"4.107 A_{st.n}")
        if st.n % 2 == 0:
            want(_ints(st, lab) == [2 * 3 ** k * e for e in (1, -1, -1, 1)], f"4.107 p_{st.n}")
            want(not st.lk_poly, f"4.107 LK_{st.n}")
        else:
            want(_ints(st, lab) == [-2 * 3 ** k] * 4, f"4.107 p_{st.n}")
            e = 2 * 3 ** k
            want(st.lk_poly == _poly(f"2t^-{e} - 2t^{e}", Z), f"4.107 LK_{st.n}")

    labels = {"3.1": "degeneration", "3.5": "degeneration", "2.1": "stabilization",
              "4.1": "periodicity", "4.75": "growth", "4.107": "growth"}
    for k, lab in labels.items():
        want(series[k].classification == lab, f"class {k}")
    return bad


def test_criterion_1_golden_numbers(corpus):
    bad = check_golden(corpus)
    report(1, not bad, "derived series golden numbers for 2.1 3.1 3.5 4.1 4.4 4.75 4.107"
           + (f"; mismatches {bad}" if bad else " (sigma_2 of 3.1 is -1, a generator like 1)"))
    assert not bad


# -- 2 ---------------------------------------------------------------------

T_BLOCK = [[0, 1, -1, -1, 1], [-1, 0, -1, 1, 1], [1, 1, 0, -1, -1],
           [1, -1, 1, 0, -1], [-1, -1, 1, 1, 0]]


def test_criterion_2_based_matrix(corpus, calibration):
    d = corpus["5.2012"]
    ac = all(index_parity_direct(d, v).is_zero() for v in d.labels)
    hits = match_based_matrix(d, T_BLOCK)
    man = calibration["half_pairing_5.2012"]
    first = ([d.labels[i] for i in hits[0][0]], hits[0][1]) if hits else None
    ok = ac and bool(hits) and first == (man["permutation"], man["sign"]) and man["block"] == T_BLOCK
    report(2, ok, f"5.2012 almost classical={ac}; half table = sign*T over {len(hits)} "
           f"(perm, sign) pairs; manifest records perm {man['permutation']} sign {man['sign']} "
           "(the printed T has a zero first row and column, so 5 crossings)")
    assert ok


# -- 3 ---------------------------------------------------------------------

def _round_trip(d, rule):
    delta = parity_cycle_of_rule(rule, d)
    vals = rule.values(d)
    if parities_from_cycle(d, delta) != vals:
        return "p != p^delta"
    if {v: parity_from_cycle(d, delta, v) for v in d.labels} != vals:
        return "p != p^delta (geometric)"
    back = cycle_rule("p_delta", lambda dd: parity_cycle_of_rule(rule, dd), rule.group)
    delta2 = parity_cycle_of_rule(back, d)
    if any(delta.arc(a.id) != delta2.arc(a.id) for a in d.arcs):
        return "delta != delta_{p^delta}"
    return None


def test_criterion_3_round_trips(corpus):
    bad = []
    names = [k for k, d in corpus.items() if len(d.components) == 1]
    for name in names:
        for rule in (GP, IP):
            err = _round_trip(corpus[name], rule)
            if err:
                bad.append((name, rule.name, err))
    report(3, not bad, f"gp and ip round trips on {len(names)} fixtures" + (f": {bad}" if bad else ""))
    assert not bad


# -- 4 ---------------------------------------------------------------------

def _theta_single(d, c):
    return induced_cycle(d, B3, B3_THETA, c, group=Z3)


def _transport_ok(walk, cycle_of):
    """rho(D') - rho(D) equals remainder_delta on every move."""
    bad = 0
    qs = [quasi_index_of_cycle(d, cycle_of(i, d)) for i, d in enumerate(walk.diagrams)]
    for i, rec in enumerate(walk.records):
        if qs[i + 1].rho - qs[i].rho != remainder_delta(qs[i].values, qs[i + 1].values, rec):
            bad += 1
    return bad


def check_axiom_suite(corpus, steps=1000, cap=10):
    bad = []
    counts = {"walks": 0, "moves": 0, "r3": 0, "transport": 0}
    for name in KNOTS:
        d0 = corpus[name]
        walk = random_walk(d0, steps, seed=KNOTS.index(name), cap=cap)
        counts["walks"] += 1
        counts["moves"] += len(walk.records)
        counts["r3"] += sum(r.kind == "R3" for r in walk.records)
        rules = [GP, IP] + derived_rules(d0, 3)[1:] + [cocycle_parity_rule(B3, B3_THETA, d0, Z3)]
        for rule in rules:
            n = violations(verify_parity_axioms(rule, walk))
            if n:
                bad.append((name, rule.name, n))
        seen = set()
        for d in walk.diagrams:
            st = derived_series(d, max_n=2).steps[0]
            seen.add((st.sigma, st.lk_poly, linking_invariant(d, IP)))
        if len(seen) != 1:
            bad.append((name, "sigma/lk/LK", len(seen)))
        # remainder transport: gp cycle and one biquandle colouring carried along
        n = _transport_ok(walk, lambda i, d: parity_cycle_of_rule(GP, d))
        cols = [colorings(d0, B3)[-1]]
        for rec in walk.records:
            cols.append(transport_coloring(rec, cols[-1], B3))
        n += _transport_ok(walk, lambda i, d: _theta_single(d, cols[i]))
        counts["transport"] += 2 * len(walk.records)
        if n:
            bad.append((name, "transport", n))
    return bad, counts


def test_criterion_4_axioms(corpus):
    bad, counts = check_axiom_suite(corpus)
    report(4, not bad, f"P0-P3+, bigon and triangle laws for gp, ip, ip', ip'', ip''' and the "
           f"biquandle rule on {counts['walks']} walks of 1000 steps ({counts['moves']} moves, "
           f"{counts['r3']} third moves); sigma, lk, LK constant; {counts['transport']} remainder "
           "transports" + (f"; failures {bad}" if bad else ""))
    assert not bad


# -- 5 ---------------------------------------------------------------------

def _calibration_identities(d):
    pm = pairing_matrix(d)
    E = pm.entries
    n = len(E)
    if any(E[i][j] != -E[j][i] for i in range(n) for j in range(n)):
        return "antisymmetry"
    if any(E[i][i] for i in range(n)):
        return "c.c"
    idx = {b: i for i, b in enumerate(pm.basis)}
    for k in range(len(d.components)):
        for l in range(len(d.components)):
            if k == l and E[idx[("core", k)]][idx[("core", l)]]:
                return "D.D"
    if len(d.components) == 1:
        labels, _, ip = half_tables(d)
        for i, v in enumerate(labels):
            direct = index_parity_direct(d, v)
            if Z(ip[i]) != direct:
                return "D^r.D != ip"
            if (int(GP.values(d)[v]) - int(direct)) % 2:
                return "gp != ip mod 2"
    return None


def test_criterion_5_calibration(corpus):
    rng = random.Random(5)
    diagrams = [d for d in corpus.values() if not d.long]
    for _ in range(200):
        diagrams.append(random_diagram(rng, rng.randint(1, 8)))
    bad = [(d, e) for d in diagrams if (e := _calibration_identities(d))]
    report(5, not bad, f"antisymmetry, c.c = 0, D.D = 0, D^r.D = ip (chord formula), gp = ip mod 2 "
           f"on {len(diagrams)} diagrams" + (f": {bad[:3]}" if bad else ""))
    assert not bad


# -- 6 ---------------------------------------------------------------------

def check_biquandle(corpus):
    res = {}
    typo = check_axioms(B3_TYPO)
    res["literal table fails"] = bool(typo["bijective"] or typo["exchange"])
    res["corrected table passes"] = not any(check_axioms(B3).values())
    res["corrected = Z_3 biquandle"] = B3 == z3_biquandle()
    res["theta 1-cocycle"] = is_one_cocycle(B3, B3_THETA, Z3)
    res["not an index"] = bool(index_conditions_check(B3, B3_THETA, Z3))
    hits = lambda_search(B3, B3_THETA, Z3, seeds=60)
    lam1 = [h for h in hits if h[6] == Z3(1)]
    res["lambda = 1 found"] = bool(lam1)
    res["pattern (2,2,2) -> (1,0,1)"] = any(
        sorted(int(x) % 3 for x in h[4]) == [2, 2, 2] and sorted(int(x) % 3 for x in h[5]) == [0, 1, 1]
        for h in lam1)
    cols = colorings(unknot(), B3)
    perms = colour_monodromy_search(unknot(), B3, depth=2, seed=1, width=200)
    res["monodromy (2 3)"] = {1: 1, 2: 3, 3: 2} in [colour_permutation(p, cols) for p in perms]
    phi = two_cocycle_from_one(B3, B3_THETA, Z3)
    n = 0
    ok = True
    for d in corpus.values():
        if d.long or len(d.components) > 1:
            continue
        for c in colorings(d, B3):
            n += 1
            ok &= signature(d, _theta_single(d, c)) == boltzmann_phi(d, lifted_coloring(d, c), phi)
    res[f"sigma = Phi on {n} colourings"] = ok
    return res, (lam1[0] if lam1 else None)


def test_criterion_6_biquandle(corpus):
    res, example = check_biquandle(corpus)
    ok = all(res.values())
    detail = ", ".join(f"{k}: {v}" for k, v in res.items())
    if example:
        detail += f"; lambda=1 on {example[1]}"
    report(6, ok, "DEVIATION: the literal printed table is not a biquandle (2 o 3 must be 3); "
           "checks run on the corrected table; " + detail)
    assert ok


# -- 7 ---------------------------------------------------------------------

def _pairings(points):
    if not points:
        yield []
        return
    a = points[0]
    for i in range(1, len(points)):
        for p in _pairings(points[1:i] + points[i + 1:]):
            yield [(a, points[i])] + p


def long_search(n_max=3, orders=(-1, 1, 1), ips=(-1, 1, 0)):
    found = []
    for n in range(1, n_max + 1):
        if n != len(orders):
            continue
        for pr in _pairings(list(range(2 * n))):
            for roles in itertools.product("OU", repeat=n):
                for signs in itertools.product((1, -1), repeat=n):
                    seq = [None] * (2 * n)
                    for k, (x, y) in enumerate(pr):
                        seq[x] = (k + 1, roles[k])
                        seq[y] = (k + 1, "U" if roles[k] == "O" else "O")
                    d = GaussDiagram([seq], {k + 1: signs[k] for k in range(n)}, long=True)
                    if tuple(d.long_order(v) for v in d.labels) != orders:
                        continue
                    if tuple(int(index_parity_direct(d, v)) for v in d.labels) == ips:
                        found.append(d)
    return found


def test_criterion_7_long_knots(corpus):
    found = long_search()
    good = []
    for d in found:
        vals = long_knot_parity(d, ({v: Z(-1) for v in d.labels}, Z(0)))
        if all(vals[v] == index_parity_direct(d, v) for v in d.labels):
            good.append(d)
    ok = bool(good) and corpus["long3"] in good
    report(7, ok, f"{len(found)} long diagrams with orders (-1,1,1) and ip (-1,1,0); on {len(good)} "
           "of them pi = -1, rho = 0 reproduces ip; fixture long3 is one of these")
    assert ok


# -- 8 ---------------------------------------------------------------------

def _over_linking(d, i, j):
    """Sum of signs of crossings where component i passes over j."""
    total = 0
    for v in d.labels:
        ov = d.endpoints[d.over(v)][0]
        un = d.endpoints[d.under(v)][0]
        if (ov, un) == (i, j):
            total += d.signs[v]
    return total


def check_links(corpus, n=100):
    res = {}
    hopf = corpus["hopf"]
    lk = linking_invariant(hopf, mixed_indicator())
    l12, l21 = _over_linking(hopf, 0, 1), _over_linking(hopf, 1, 0)
    res["hopf lk = lk12 + lk21"] = int(lk) == l12 + l21
    res["hopf classical (lk12 = lk21 = 1)"] = l12 == l21 == 1
    rng = random.Random(8)
    lk_ok = zero_ok = rel_ok = True
    pairs = nontrivial = 0
    for _ in range(n):
        m = rng.randint(1, 6)
        k = 2 if m < 3 else rng.choice((2, 2, 3))
        d = random_diagram(rng, m, components=k)
        oracle = sum(_over_linking(d, i, j) for i in range(k) for j in range(k) if i != j)
        lk_ok &= int(linking_invariant(d, mixed_indicator())) == oracle
        l = [Z(rng.randint(-3, 3)) for _ in range(k - 1)]
        lp = link_parity_rule(l)
        zero_ok &= all(x.is_zero() for x in parity_cycle_of_rule(lp, d).arcs.values())
        # a random normalized cycle: halves of self chords plus cores, then normalize
        delta = Chain(Z, {})
        for v in d.labels:
            if d.is_self(v):
                delta = delta + half_cycle(d, v, "right").tensor(Z(rng.randint(-3, 3)))
        for c in range(k):
            delta = delta + core_cycle(d, c).tensor(Z(rng.randint(-3, 3)))
        _, proj = quotient_by_subgroup(Z, list(signature(d, delta)))
        delta = delta.map(proj)
        nontrivial += any(not x.is_zero() for x in delta.arcs.values())
        vals = link_potential_parity(d, delta)
        lpv = lp.values(d)
        for v, w in itertools.product(d.labels, repeat=2):
            try:
                ok1 = relative_parity_check(d, delta, v, w, values=vals)[0]
                ok2 = relative_parity_check(d, Chain(Z, {}), v, w, values=lpv)[0]
            except ParityError:
                continue
            pairs += 1
            rel_ok &= ok1 and ok2
    res["lk = lk12 + lk21 on random links"] = lk_ok
    res["lp^l has zero cycle"] = zero_ok
    res[f"relative parity identity on {pairs} pairs ({nontrivial} nonzero cycles)"] = rel_ok
    return res, int(lk)


def test_criterion_8_links(corpus):
    res, lk = check_links(corpus)
    ok = all(res.values())
    report(8, ok, f"hopf lk = {lk} = sum over mixed crossings of sgn (twice the half-sum "
           "convention); " + ", ".join(f"{k}: {v}" for k, v in res.items()))
    assert ok


if __name__ == "__main__":
    from vkparity.cli import corpus_load
    import json
    from importlib.resources import files
    c = corpus_load()
    cal = json.loads(files("vkparity").joinpath("data/calibration.json").read_text())
    failed = 0
    for fn, args in ((test_criterion_1_golden_numbers, (c,)), (test_criterion_2_based_matrix, (c, cal)),
                     (test_criterion_3_round_trips, (c,)), (test_criterion_4_axioms, (c,)),
                     (test_criterion_5_calibration, (c,)), (test_criterion_6_biquandle, (c,)),
                     (test_criterion_7_long_knots, (c,)), (test_criterion_8_links, (c,))):
        try:
            fn(*args)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
