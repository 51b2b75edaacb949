"""
Finitely generated abelian groups and their group rings.

A group is stored in invariant-factor form ``Z^r + Z_d1 + ... + Z_dk`` with
``d1 | d2 | ... | dk``.  Elements carry one integer coordinate per free
generator followed by one per torsion factor; torsion coordinates are kept
reduced in ``[0, d)`` so that elements can serve as dictionary keys.

    >>> Z4 = make_group(0, [4])
    >>> (Z4.elem([3]) + Z4.elem([2])).coords
    (1,)
    >>> make_group(0, [4, 2])
    AbGroup(0, (2, 4))
    >>> G, proj = quotient_by_cyclic(Z, Z.elem([4]))
    >>> G, proj(Z.elem([7])).coords
    (AbGroup(0, (4,)), (3,))
"""
from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence


class AbGroup:
    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank: int, torsion: Sequence[int] = ()):
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise ValueError("negative rank")
        for i, d in enumerate(torsion):
            if d < 2:
                raise ValueError("torsion modulus must be >= 2")
            if i and d % torsion[i - 1]:
                raise ValueError("torsion not in invariant-factor form")
        self.free_rank = int(free_rank)
        self.torsion = torsion

    @property
    def ngens(self):
        return self.free_rank + len(self.torsion)

    def __eq__(self, other):
        return (isinstance(other, AbGroup) and self.free_rank == other.free_rank
                and self.torsion == other.torsion)

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        return f"AbGroup({self.free_rank}, {self.torsion})"

    def __str__(self):
        parts = [f"Z_{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return "+".join(parts) if parts else "0"

    def is_trivial(self):
        return self.ngens == 0

    def moduli(self):
        """Order of each coordinate, 0 meaning infinite."""
        return (0,) * self.free_rank + self.torsion

    def elem(self, coords: Iterable[int]) -> "AbElem":
        return AbElem(self, tuple(coords))

    def zero(self) -> "AbElem":
        return AbElem(self, (0,) * self.ngens)

    def gens(self):
        out = []
        for i in range(self.ngens):
            c = [0] * self.ngens
            c[i] = 1
            out.append(AbElem(self, c))
        return out

    def __call__(self, x) -> "AbElem":
        """Coerce an integer (cyclic groups only) or an element of this group."""
        if isinstance(x, AbElem):
            if x.group != self:
                raise ValueError(f"element of {x.group} is not in {self}")
            return x
        if self.ngens != 1:
            raise ValueError(f"cannot coerce integer into {self}")
        return AbElem(self, (int(x),))

    def two_invertible(self):
        return self.free_rank == 0 and all(d % 2 for d in self.torsion)


class AbElem:
    __slots__ = ("group", "coords")

    def __init__(self, group: AbGroup, coords):
        coords = tuple(int(c) for c in coords)
        if len(coords) != group.ngens:
            raise ValueError("coordinate vector has wrong length")
        r = group.free_rank
        if group.torsion:
            coords = coords[:r] + tuple(c % d for c, d in zip(coords[r:], group.torsion))
        self.group = group
        self.coords = coords

    def _check(self, other):
        if not isinstance(other, AbElem) or other.group != self.group:
            raise ValueError("group mismatch")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return AbElem(self.group, [a + b for a, b in zip(self.coords, other.coords)])

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        return AbElem(self.group, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return AbElem(self.group, [-a for a in self.coords])

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return AbElem(self.group, [k * a for a in self.coords])

    __rmul__ = __mul__

    def scale(self, k: int):
        return self * k

    def __eq__(self, other):
        if isinstance(other, int):
            if other == 0:
                return self.is_zero()
            return self.group.ngens == 1 and self == self.group(other)
        return isinstance(other, AbElem) and self.group == other.group and self.coords == other.coords

    def __hash__(self):
        return hash((self.group, self.coords))

    def __bool__(self):
        return not self.is_zero()

    def is_zero(self):
        return not any(self.coords)

    def order(self):
        """Order of the element, 0 if infinite."""
        r = self.group.free_rank
        if any(self.coords[:r]):
            return 0
        o = 1
        for c, d in zip(self.coords[r:], self.group.torsion):
            k = d // gcd(c, d)
            o = o * k // gcd(o, k)
        return o

    def signed(self):
        """Coordinates with torsion entries lifted to the symmetric range."""
        r = self.group.free_rank
        out = list(self.coords[:r])
        for c, d in zip(self.coords[r:], self.group.torsion):
            out.append(c - d if c > d // 2 else c)
        return tuple(out)

    def __int__(self):
        if self.group.ngens != 1:
            raise ValueError("not a cyclic group element")
        return self.coords[0]

    def __repr__(self):
        return f"AbElem({self.group}, {self.coords})"

    def __str__(self):
        if self.group.ngens == 0:
            return "0"
        if self.group.ngens == 1:
            return str(self.signed()[0])
        return "(" + ",".join(str(c) for c in self.signed()) + ")"


Z = AbGroup(1)
Z2 = AbGroup(0, (2,))
TRIVIAL = AbGroup(0)


# --- Smith normal form -------------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(mat: Sequence[Sequence[int]], ncols: int | None = None):
    """Return (S, U, V) with U*mat*V = S diagonal, U and V unimodular.

    Diagonal entries of S are nonnegative and each divides the next.  Naive
    pivoting on the smallest nonzero entry; fine for the tiny matrices here.
    """
    A = [list(map(int, row)) for row in mat]
    m = len(A)
    n = ncols if ncols is not None else (len(A[0]) if A else 0)
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in A:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):
        A[dst] = [a + k * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for row in A:
            row[dst] += k * row[src]
        for row in V:
            row[dst] += k * row[src]

    t = 0
    while t < min(m, n):
        nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n) if A[i][j]]
        if not nz:
            break
        _, i, j = min(nz)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            p = A[t][t]
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // p))
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // p))
                    if A[t][j]:
                        done = False
            if done:
                # divisibility: fold a non-divisible entry into the pivot row
                bad = [(i, j) for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % p]
                if not bad:
                    break
                add_row(t, bad[0][0], 1)
                continue
            nz = [(abs(A[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                  if A[i][j] and (i == t or j == t)]
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-a for a in U[t]]
        t += 1
    return A, U, V


class Projection:
    """Homomorphism given on coordinates: y_j = sum_i x_i * cols[i][j]."""

    def __init__(self, source: AbGroup, target: AbGroup, images: Sequence[Sequence[int]]):
        self.source = source
        self.target = target
        self.images = [tuple(r) for r in images]

    def __call__(self, x: AbElem) -> AbElem:
        if x.group != self.source:
            raise ValueError("group mismatch")
        out = [0] * self.target.ngens
        for c, img in zip(x.coords, self.images):
            if c:
                for j, v in enumerate(img):
                    out[j] += c * v
        return AbElem(self.target, out)

    def compose(self, other: "Projection") -> "Projection":
        """self after other."""
        imgs = [self(AbElem(self.source, img)).coords for img in other.images]
        return Projection(other.source, self.target, imgs)

    @classmethod
    def identity(cls, g: AbGroup):
        return cls(g, g, [e.coords for e in g.gens()])


def presented_group(ngens: int, relations: Sequence[Sequence[int]]):
    """Z^ngens modulo the row span of ``relations``.

    Returns (group, projection from the raw coordinates).  The projection is
    expressed as a list of images of the raw generators.
    """
    rels = [list(r) for r in relations if any(r)]
    if not rels:
        rels = [[0] * ngens]
    S, U, V = smith_normal_form(rels, ngens)
    diag = [S[i][i] if i < len(S) else 0 for i in range(ngens)]
    # new coordinate k = sum_i x_i V[i][k], read modulo diag[k]
    free = [k for k in range(ngens) if diag[k] == 0]
    tors = [k for k in range(ngens) if diag[k] > 1]
    group = AbGroup(len(free), [diag[k] for k in tors])
    order = free + tors
    images = [[V[i][k] for k in order] for i in range(ngens)]
    return group, images


def make_group(rank: int, moduli: Sequence[int] = ()) -> AbGroup:
    """Invariant-factor normal form of Z^rank + sum Z_m."""
    if rank < 0:
        raise ValueError("negative rank")
    for m in moduli:
        if m < 2:
            raise ValueError("modulus must be >= 2")
    if all(moduli[i] % moduli[i - 1] == 0 for i in range(1, len(moduli))):
        return AbGroup(rank, moduli)
    n = len(moduli)
    rels = [[m if j == i else 0 for j in range(n)] for i, m in enumerate(moduli)]
    g, _ = presented_group(n, rels)
    return AbGroup(rank, g.torsion)


def quotient_by_subgroup(g: AbGroup, xs: Sequence[AbElem]):
    """Quotient of g by the subgroup generated by xs; returns (group, projection)."""
    n = g.ngens
    rels = []
    for i, d in enumerate(g.torsion):
        row = [0] * n
        row[g.free_rank + i] = d
        rels.append(row)
    for x in xs:
        if x.group != g:
            raise ValueError("group mismatch")
        rels.append(list(x.coords))
    if not any(any(x.coords) for x in xs):
        return g, Projection.identity(g)
    q, images = presented_group(n, rels)
    return q, Projection(g, q, images)


def quotient_by_cyclic(g: AbGroup, x: AbElem):
    return quotient_by_subgroup(g, [x])


def tensor(a: AbGroup, b: AbGroup):
    """Tensor product a (x) b with the bilinear map on elements.

    Returns (group, mult) where mult(x, y) is the image of x (x) y.
    """
    ma, mb = a.moduli(), b.moduli()
    pairs = [(i, j) for i in range(len(ma)) for j in range(len(mb))]
    rels = []
    for k, (i, j) in enumerate(pairs):
        d = gcd(ma[i], mb[j])  # gcd(0, m) = m covers the free factors
        if d:
            row = [0] * len(pairs)
            row[k] = d
            rels.append(row)
    g, images = presented_group(len(pairs), rels)
    proj = Projection(AbGroup(len(pairs)), g, images) if pairs else None

    def mult(x: AbElem, y: AbElem) -> AbElem:
        if x.group != a or y.group != b:
            raise ValueError("group mismatch")
        if not pairs:
            return g.zero()
        raw = [x.coords[i] * y.coords[j] for i, j in pairs]
        return proj(AbElem(AbGroup(len(pairs)), raw))

    return g, mult


def subgroup_generated(g: AbGroup, xs: Sequence[AbElem]) -> AbGroup:
    """Isomorphism type of the subgroup of g generated by xs."""
    if not xs:
        return TRIVIAL
    k = len(xs)
    # kernel of Z^k -> g gives relations; compute via SNF of [x | torsion]
    n = g.ngens
    rows = [list(x.coords) for x in xs]
    for i, d in enumerate(g.torsion):
        row = [0] * n
        row[g.free_rank + i] = d
        rows.append(row)
    S, U, V = smith_normal_form(rows, n)
    rank = sum(1 for i in range(min(len(S), n)) if S[i][i])
    # rows of U beyond the rank span the relation lattice of Z^(k + t) -> Z^n
    rels = [r[:k] for r in U[rank:]]
    # torsion-generator components are free to vary, so project them away
    sub, _ = presented_group(k, rels) if rels else (AbGroup(k), None)
    return sub


# --- group ring --------------------------------------------------------------

class GroupRingElem:
    """Element of Z[A], stored as {AbElem: nonzero int}."""

    __slots__ = ("group", "terms")

    def __init__(self, group: AbGroup, terms=None):
        self.group = group
        clean = {}
        for k, v in (terms or {}).items():
            if k.group != group:
                raise ValueError("group mismatch")
            if v:
                clean[k] = clean.get(k, 0) + int(v)
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def monomial(cls, x: AbElem, coeff: int = 1):
        return cls(x.group, {x: coeff})

    def _check(self, other):
        if not isinstance(other, GroupRingElem) or other.group != self.group:
            raise ValueError("group mismatch")

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._check(other)
        t = dict(self.terms)
        for k, v in other.terms.items():
            t[k] = t.get(k, 0) + v
        return GroupRingElem(self.group, t)

    __radd__ = __add__

    def __neg__(self):
        return GroupRingElem(self.group, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, k):
        if isinstance(k, int):
            return GroupRingElem(self.group, {x: k * v for x, v in self.terms.items()})
        self._check(k)
        t = {}
        for x, a in self.terms.items():
            for y, b in k.terms.items():
                t[x + y] = t.get(x + y, 0) + a * b
        return GroupRingElem(self.group, t)

    def __rmul__(self, k):
        return self * k

    def scale(self, k: int):
        return self * k

    def map(self, f: Projection) -> "GroupRingElem":
        t = {}
        for x, v in self.terms.items():
            y = f(x)
            t[y] = t.get(y, 0) + v
        return GroupRingElem(f.target, t)

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        return isinstance(other, GroupRingElem) and self.group == other.group and self.terms == other.terms

    def __hash__(self):
        return hash((self.group, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"GroupRingElem({self.group}, {self})"

    def __str__(self):
        return render_groupring(self)


def _monomial(x: AbElem) -> str:
    g = x.group
    if g.ngens == 1:
        e = x.coords[0]
        if e == 0:
            return ""
        return "t" if e == 1 else f"t^{e}"
    parts = []
    for i, e in enumerate(x.coords):
        if e:
            parts.append(f"t{i + 1}" if e == 1 else f"t{i + 1}^{e}")
    return "*".join(parts)


def _sort_key(x: AbElem):
    return x.coords


def render_groupring(p: GroupRingElem) -> str:
    """Signed Laurent-style sum, e.g. ``-t^-1 + t - t^2``."""
    if not p.terms:
        return "0"
    out = []
    for x in sorted(p.terms, key=_sort_key):
        c = p.terms[x]
        mono = _monomial(x)
        mag = abs(c)
        body = (str(mag) if mag != 1 or not mono else "") + mono
        if not out:
            out.append(("-" if c < 0 else "") + body)
        else:
            out.append(("- " if c < 0 else "+ ") + body)
    return " ".join(out)


def parse_groupring(text: str, group: AbGroup = Z) -> GroupRingElem:
    """Inverse of render for cyclic groups: '-t^-1 - t', '2t^-2 - 2t^2', '0'."""
    import re
    s = text.replace("−", "-").replace(" ", "")
    if s in ("", "0"):
        return GroupRingElem(group)
    terms = {}
    for sign, coef, t, exp in re.findall(r"([+-]?)(\d*)(t?)(?:\^(-?\d+))?", s):
        if not (coef or t):
            continue
        c = int(coef) if coef else 1
        if sign == "-":
            c = -c
        e = (int(exp) if exp else 1) if t else 0
        x = group(e)
        terms[x] = terms.get(x, 0) + c
    return GroupRingElem(group, terms)


def parse_elem(text: str, group: AbGroup) -> AbElem:
    """'3' for cyclic groups, '(1,2)' in general."""
    s = text.strip().replace("−", "-")
    if s.startswith("("):
        return group.elem(int(c) for c in s.strip("()").split(","))
    return group(int(s))


def parse_group(text: str) -> AbGroup:
    """Inverse of str(AbGroup): 'Z', 'Z_4', 'Z_2+Z', '0'."""
    s = text.strip()
    if s in ("0", ""):
        return TRIVIAL
    rank, mods = 0, []
    for part in s.split("+"):
        part = part.strip()
        if part == "Z":
            rank += 1
        elif part.startswith("Z_"):
            mods.append(int(part[2:]))
        else:
            raise ValueError(f"bad group literal {text!r}")
    return make_group(rank, mods)
