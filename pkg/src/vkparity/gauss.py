"""
Gauss diagrams of virtual knots, links and long knots.

A diagram is a tuple of components, each a sequence of chord endpoints
``(label, role)``.  Roles are ``"O"``/``"U"`` (over/under) for ordinary
diagrams and ``"F"``/``"S"`` (first/second occurrence) for flat ones.

Every chord is also given a *tail* and a *head* endpoint.  For ordinary
chords the tail is the overcrossing of a positive chord and the undercrossing
of a negative one; the right half of the chord is the part of the core circle
running from the tail forward to the head.  This datum is unchanged by a
crossing switch, so it is what flat diagrams remember: a flat chord with sign
``+1`` has its tail at the first occurrence, with ``-1`` at the second.

Arcs are numbered per component.  On a closed component with endpoints at
positions ``0..m-1`` arc ``i`` ends at position ``i`` (and starts at
``i-1 mod m``); a long component has ``m+1`` arcs, arc 0 coming in from
infinity and arc ``m`` leaving to infinity.
"""
from __future__ import annotations

import re
from collections import namedtuple
from functools import cached_property

Arc = namedtuple("Arc", ["id", "component", "from_endpoint", "to_endpoint"])
Chord = namedtuple("Chord", ["id", "sign"])

_TOKEN = re.compile(r"([OUX])(\d+)([+\-−]?)")


class GaussError(ValueError):
    pass


class GaussDiagram:
    """Immutable Gauss diagram.

    ``components`` is a sequence of sequences of ``(label, role)`` pairs and
    ``signs`` maps labels to +1/-1.
    """

    def __init__(self, components, signs, long: bool = False, flat: bool = False):
        comps = tuple(tuple((int(l), r) for l, r in c) for c in components)
        if not comps:
            comps = ((),)
        self.components = comps
        self.signs = {int(k): int(v) for k, v in dict(signs).items()}
        self.long = bool(long)
        self.flat = bool(flat)
        self._validate()

    def _validate(self):
        seen = {}
        roles_ok = ("F", "S") if self.flat else ("O", "U")
        for c in self.components:
            for l, r in c:
                if r not in roles_ok:
                    raise GaussError(f"bad role {r!r} for chord {l}")
                seen.setdefault(l, []).append(r)
        for l, rs in seen.items():
            if len(rs) != 2:
                raise GaussError(f"chord {l} appears {len(rs)} times")
            if sorted(rs) != sorted(roles_ok):
                raise GaussError(f"chord {l} has roles {rs}")
        if set(seen) != set(self.signs):
            missing = set(seen) ^ set(self.signs)
            raise GaussError(f"sign table does not match chords: {sorted(missing)}")
        for l, s in self.signs.items():
            if s not in (1, -1):
                raise GaussError(f"chord {l} has sign {s}")
        if self.long and len(self.components) != 1:
            raise GaussError("long diagrams have one component")

    # -- identity --------------------------------------------------------
    def _key(self):
        return (self.components, tuple(sorted(self.signs.items())), self.long, self.flat)

    def __eq__(self, other):
        return isinstance(other, GaussDiagram) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"GaussDiagram({emit_gauss_code(self)!r})"

    # -- basic data ------------------------------------------------------
    @property
    def kind(self):
        if self.long:
            return "long"
        return "link" if len(self.components) > 1 else "knot"

    @cached_property
    def labels(self) -> tuple:
        """Chord labels in order of first appearance."""
        out = []
        for c in self.components:
            for l, _ in c:
                if l not in out:
                    out.append(l)
        return tuple(out)

    @property
    def chords(self):
        return [Chord(l, self.signs[l]) for l in self.labels]

    @property
    def n(self):
        return len(self.labels)

    def sign(self, v):
        return self.signs[v]

    @property
    def writhe(self):
        return sum(self.signs.values())

    @cached_property
    def endpoints(self) -> tuple:
        """Global endpoint list of (component, position, label, role)."""
        out = []
        for k, c in enumerate(self.components):
            for i, (l, r) in enumerate(c):
                out.append((k, i, l, r))
        return tuple(out)

    @cached_property
    def _ep_index(self):
        return {(l, r): g for g, (_, _, l, r) in enumerate(self.endpoints)}

    @cached_property
    def _comp_offset(self):
        off, acc = [], 0
        for c in self.components:
            off.append(acc)
            acc += len(c)
        return off

    def endpoint(self, v, role) -> int:
        return self._ep_index[(v, role)]

    def _first_second(self, v):
        a, b = self._ep_index[(v, self._roles[0])], self._ep_index[(v, self._roles[1])]
        return (a, b) if a < b else (b, a)

    @property
    def _roles(self):
        return ("F", "S") if self.flat else ("O", "U")

    @cached_property
    def tails(self) -> dict:
        out = {}
        for v in self.labels:
            s = self.signs[v]
            if self.flat:
                out[v] = self._ep_index[(v, "F" if s > 0 else "S")]
            else:
                out[v] = self._ep_index[(v, "O" if s > 0 else "U")]
        return out

    @cached_property
    def heads(self) -> dict:
        out = {}
        for v in self.labels:
            s = self.signs[v]
            if self.flat:
                out[v] = self._ep_index[(v, "S" if s > 0 else "F")]
            else:
                out[v] = self._ep_index[(v, "U" if s > 0 else "O")]
        return out

    def over(self, v) -> int:
        return self._ep_index[(v, "O")]

    def under(self, v) -> int:
        return self._ep_index[(v, "U")]

    def is_tail(self, g: int) -> bool:
        v = self.endpoints[g][2]
        return self.tails[v] == g

    def component_of(self, v):
        """Components of the two endpoints of chord v."""
        t, h = self.tails[v], self.heads[v]
        return self.endpoints[t][0], self.endpoints[h][0]

    def is_self(self, v) -> bool:
        a, b = self.component_of(v)
        return a == b

    # -- arcs ------------------------------------------------------------
    @cached_property
    def arcs(self) -> tuple:
        out = []
        for k, c in enumerate(self.components):
            off = self._comp_offset[k]
            m = len(c)
            if self.long:
                for i in range(m + 1):
                    frm = off + i - 1 if i > 0 else None
                    to = off + i if i < m else None
                    out.append(Arc(len(out), k, frm, to))
            elif m == 0:
                out.append(Arc(len(out), k, None, None))
            else:
                for i in range(m):
                    out.append(Arc(len(out), k, off + (i - 1) % m, off + i))
        return tuple(out)

    @cached_property
    def _arc_tables(self):
        arc_in, arc_out = {}, {}
        for a in self.arcs:
            if a.to_endpoint is not None:
                arc_in[a.to_endpoint] = a.id
            if a.from_endpoint is not None:
                arc_out[a.from_endpoint] = a.id
        return arc_in, arc_out

    def arc_in(self, g: int) -> int:
        """Arc arriving at endpoint g."""
        return self._arc_tables[0][g]

    def arc_out(self, g: int) -> int:
        """Arc leaving endpoint g."""
        return self._arc_tables[1][g]

    @cached_property
    def component_arcs(self) -> tuple:
        out = [[] for _ in self.components]
        for a in self.arcs:
            out[a.component].append(a.id)
        return tuple(tuple(x) for x in out)

    def arcs_between(self, g1: int, g2: int) -> list:
        """Arcs from endpoint g1 forward to endpoint g2 on their common component.

        For a closed component with g1 == g2 this is the whole circle.
        """
        k1, i1 = self.endpoints[g1][:2]
        k2, i2 = self.endpoints[g2][:2]
        if k1 != k2:
            raise GaussError("endpoints on different components")
        m = len(self.components[k1])
        if self.long:
            if i2 <= i1:
                raise GaussError("long arc segment must go forward")
            return [self.arc_out(self._comp_offset[k1] + i) for i in range(i1, i2)]
        steps = (i2 - i1) % m or m
        off = self._comp_offset[k1]
        return [self.arc_out(off + (i1 + s) % m) for s in range(steps)]

    def endpoints_between(self, g1: int, g2: int) -> list:
        """Endpoints strictly between g1 and g2 going forward (closed components)."""
        k1, i1 = self.endpoints[g1][:2]
        k2, i2 = self.endpoints[g2][:2]
        if k1 != k2:
            raise GaussError("endpoints on different components")
        m = len(self.components[k1])
        off = self._comp_offset[k1]
        if self.long:
            return [off + i for i in range(i1 + 1, i2)]
        steps = (i2 - i1) % m
        return [off + (i1 + s) % m for s in range(1, steps)]

    # -- halves ----------------------------------------------------------
    def half_arcs(self, v, which: str) -> list:
        """Arc ids of a half of chord v.

        right: tail forward to head; left: head forward to tail;
        minus: over forward to under; plus: under forward to over;
        closed/open (long knots): the part between the endpoints / its complement.
        """
        if which in ("closed", "open"):
            if not self.long:
                raise GaussError("closed/open halves exist only for long knots")
            a, b = self._first_second(v)
            inner = self.arcs_between(a, b)
            if which == "closed":
                return inner
            return [x for x in range(len(self.arcs)) if x not in set(inner)]
        if self.long:
            return self.from_closure_arcs(self.closure().half_arcs(v, which))
        if not self.is_self(v):
            raise GaussError(f"chord {v} is a mixed crossing; halves are undefined")
        if which == "right":
            return self.arcs_between(self.tails[v], self.heads[v])
        if which == "left":
            return self.arcs_between(self.heads[v], self.tails[v])
        if self.flat:
            raise GaussError("signed halves need over/under information")
        if which == "minus":
            return self.arcs_between(self.over(v), self.under(v))
        if which == "plus":
            return self.arcs_between(self.under(v), self.over(v))
        raise GaussError(f"unknown half {which!r}")

    # -- long knots ------------------------------------------------------
    def closure(self) -> "GaussDiagram":
        if not self.long:
            return self
        return GaussDiagram(self.components, self.signs, long=False, flat=self.flat)

    @cached_property
    def _closure_arc_map(self):
        """Long arc id -> closure arc id (first and last arcs merge)."""
        m = len(self.components[0])
        if m == 0:
            return {0: 0}
        return {i: i % m for i in range(m + 1)}

    def from_closure_arcs(self, arcs) -> list:
        """Long-knot arcs covering the given closure arcs (arc 0 splits in two)."""
        m = len(self.components[0])
        out = []
        for x in arcs:
            out.extend([0, m] if x == 0 and m else [x])
        return sorted(out)

    def long_order(self, v) -> int:
        """o(v): +1 if the tail comes first (the sign times +1 if over comes first)."""
        if not self.long:
            raise GaussError("order is defined for long knots")
        return 1 if self.tails[v] < self.heads[v] else -1

    # -- predicates ------------------------------------------------------
    def isolated(self, v) -> bool:
        """True if the endpoints of v are adjacent on the core circle."""
        t, h = self.tails[v], self.heads[v]
        kt, it = self.endpoints[t][:2]
        kh, ih = self.endpoints[h][:2]
        if kt != kh:
            return False
        m = len(self.components[kt])
        if self.long:
            return abs(it - ih) == 1
        return (it - ih) % m in (1, m - 1)

    def relabel(self, mapping: dict) -> "GaussDiagram":
        comps = [[(mapping[l], r) for l, r in c] for c in self.components]
        signs = {mapping[l]: s for l, s in self.signs.items()}
        return GaussDiagram(comps, signs, self.long, self.flat)

    def normalized_labels(self) -> "GaussDiagram":
        """Relabel chords 1..n in order of first appearance."""
        return self.relabel({l: i + 1 for i, l in enumerate(self.labels)})

    def canonical(self) -> "GaussDiagram":
        """Representative up to relabeling and rotation of closed components."""
        if self.long or all(len(c) == 0 for c in self.components):
            return self.normalized_labels()
        import itertools
        rots = []
        for c in self.components:
            m = len(c)
            rots.append([c[i:] + c[:i] for i in range(m)] or [c])
        best = None
        for choice in itertools.product(*rots):
            d = GaussDiagram(choice, self.signs, False, self.flat).normalized_labels()
            code = emit_gauss_code(d)
            if best is None or code < best[0]:
                best = (code, d)
        return best[1]


# -- codec ----------------------------------------------------------------

def parse_gauss_code(text: str) -> GaussDiagram:
    """Parse 'O1+U2-...' (components separated by '/', long knots 'L:')."""
    s = "".join(text.split()).replace("−", "-")
    long = False
    if s.startswith("L:"):
        long, s = True, s[2:]
    parts = s.split("/") if s else [""]
    comps, signs, flat = [], {}, None
    token_roles = {}
    for part in parts:
        pos, comp = 0, []
        while pos < len(part):
            m = _TOKEN.match(part, pos)
            if not m:
                raise GaussError(f"cannot parse {part[pos:]!r}")
            pos = m.end()
            role, label, sgn = m.group(1), int(m.group(2)), m.group(3)
            is_flat = role == "X"
            if flat is None:
                flat = is_flat
            elif flat != is_flat:
                raise GaussError("mixing flat and ordinary tokens")
            if not sgn and not is_flat:
                raise GaussError(f"missing sign on chord {label}")
            token_roles.setdefault(label, []).append(role)
            if sgn:
                sv = 1 if sgn == "+" else -1
                if label in signs and signs[label] != sv:
                    raise GaussError(f"sign mismatch on chord {label}")
                signs[label] = sv
            comp.append([label, role])
        if not comp and len(parts) > 1:
            raise GaussError("empty component")
        comps.append(comp)
    flat = bool(flat)
    for label, roles in token_roles.items():
        if len(roles) != 2:
            raise GaussError(f"dangling chord label {label}")
        if not flat and sorted(roles) != ["O", "U"]:
            raise GaussError(f"chord {label} needs one O and one U")
    if flat:
        seen = set()
        for comp in comps:
            for tok in comp:
                tok[1] = "S" if tok[0] in seen else "F"
                seen.add(tok[0])
        for label in token_roles:
            signs.setdefault(label, 1)
    return GaussDiagram([[tuple(t) for t in c] for c in comps], signs, long=long, flat=flat)


def emit_gauss_code(d: GaussDiagram) -> str:
    parts = []
    for c in d.components:
        toks = []
        for l, r in c:
            s = "+" if d.signs[l] > 0 else "-"
            toks.append(f"{'X' if d.flat else r}{l}{s}")
        parts.append("".join(toks))
    code = "/".join(parts)
    return ("L:" if d.long else "") + code


def flatten(d: GaussDiagram) -> GaussDiagram:
    """Forget over/under; the flat sign records where the tail sits."""
    if d.flat:
        return d
    if d.long:
        raise GaussError("flatten expects a closed diagram")
    comps, signs = [], {}
    seen = set()
    for c in d.components:
        comp = []
        for l, r in c:
            role = "S" if l in seen else "F"
            seen.add(l)
            comp.append((l, role))
        comps.append(comp)
    for v in d.labels:
        first, _ = d._first_second(v)
        signs[v] = 1 if d.tails[v] == first else -1
    return GaussDiagram(comps, signs, long=False, flat=True)


def unknot() -> GaussDiagram:
    return GaussDiagram([()], {})


def random_diagram(rng, n: int, components: int = 1, long: bool = False) -> GaussDiagram:
    """A uniformly shuffled Gauss diagram with n chords; every component of a
    link gets at least one endpoint."""
    if long and components != 1:
        raise GaussError("long diagrams have one component")
    if components > max(2 * n, 1):
        raise GaussError("too many components for the chords")
    ends = [(v, r) for v in range(1, n + 1) for r in ("O", "U")]
    rng.shuffle(ends)
    cuts = sorted(rng.sample(range(1, 2 * n), components - 1)) if components > 1 else []
    bounds = [0] + cuts + [2 * n]
    comps = [ends[bounds[i]:bounds[i + 1]] for i in range(components)]
    signs = {v: rng.choice((1, -1)) for v in range(1, n + 1)}
    return GaussDiagram(comps, signs, long=long)


def half_cycle(d: GaussDiagram, v, which: str):
    """Half of chord v as a Gauss-graph cycle (see surface.Chain).

    Chords are oriented from head to tail, so the right half runs through v
    with coefficient +1 and the left half with coefficient -1; the plus/minus
    halves are the right or left half according to the sign of v.
    """
    from .surface import Chain
    from .groups import Z
    if which in ("plus", "minus"):
        if d.flat:
            raise GaussError("signed halves need over/under information")
        if d.long:
            raise GaussError("use closed/open halves on long knots")
        positive = which == "plus"
        which = "right" if (d.signs[v] < 0) == positive else "left"
    arcs = d.half_arcs(v, which)
    if which in ("closed", "open"):
        # the closed half is the right half exactly when the tail comes first
        coeff = d.long_order(v) * (1 if which == "closed" else -1)
    else:
        coeff = {"right": 1, "left": -1}[which]
    chords = {v: Z(coeff)} if coeff else {}
    return Chain(Z, {a: Z(1) for a in arcs}, chords)


def is_almost_classical(d: GaussDiagram) -> bool:
    from .parity import index_parity_direct
    return all(index_parity_direct(d, v) == 0 for v in d.labels)


def load_corpus_text(text: str) -> dict:
    out = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        if "\t" not in line:
            raise GaussError(f"line {lineno}: expected name<TAB>code")
        name, code = line.split("\t", 1)
        name = name.strip()
        if name in out:
            raise GaussError(f"line {lineno}: duplicate name {name!r}")
        out[name] = parse_gauss_code(code)
    return out
