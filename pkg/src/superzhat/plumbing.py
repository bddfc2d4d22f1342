"""Plumbing trees, their adjacency matrices and exact integer linear algebra.

Everything here works over ``int`` and ``Fraction``; no floating point.
"""

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction


class NotATree(ValueError):
    pass


class SingularMatrix(ValueError):
    pass


class InvalidSeifertPair(ValueError):
    pass


class PatternMismatch(ValueError):
    pass


class DistinguishedVertexMove(ValueError):
    pass


# -----------------------------------------------------------------------------
# graphs
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted tree with an optional distinguished (boundary) vertex.

    ``vertices`` is a tuple of ``(id, weight)``; the order is the vertex order
    used for the adjacency matrix.  ``edges`` is a tuple of sorted id pairs.
    """

    vertices: tuple
    edges: tuple
    distinguished: object = None

    def __post_init__(self):
        verts = tuple((int(i), int(w)) for i, w in self.vertices)
        edges = tuple(sorted(tuple(sorted((int(a), int(b)))) for a, b in self.edges))
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", edges)
        ids = [i for i, _ in verts]
        if len(set(ids)) != len(ids):
            raise NotATree("duplicate vertex ids")
        idset = set(ids)
        for a, b in edges:
            if a == b or a not in idset or b not in idset:
                raise NotATree(f"bad edge {(a, b)}")
        if len(set(edges)) != len(edges):
            raise NotATree("multi-edge")
        if ids and len(edges) != len(ids) - 1:
            raise NotATree("edge count is not |V|-1")
        if ids:
            seen = {ids[0]}
            stack = [ids[0]]
            adj = self.adjacency()
            while stack:
                v = stack.pop()
                for u in adj[v]:
                    if u not in seen:
                        seen.add(u)
                        stack.append(u)
            if seen != idset:
                raise NotATree("graph is disconnected")
        if self.distinguished is not None:
            d = int(self.distinguished)
            object.__setattr__(self, "distinguished", d)
            if d not in idset:
                raise NotATree("distinguished vertex missing")
            deg = self.degree(d)
            if not (deg == 1 or (deg == 0 and len(ids) == 1)):
                raise NotATree("distinguished vertex must have degree 1")

    @property
    def ids(self):
        return [i for i, _ in self.vertices]

    @property
    def size(self):
        return len(self.vertices)

    def weight(self, v):
        return dict(self.vertices)[v]

    def index(self, v):
        return self.ids.index(v)

    def adjacency(self):
        adj = {i: [] for i, _ in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def degree(self, v):
        return sum(1 for e in self.edges if v in e)

    def degrees(self):
        adj = self.adjacency()
        return {v: len(adj[v]) for v in adj}

    def is_closed(self):
        return self.distinguished is None

    def to_dict(self):
        return {
            "vertices": [{"id": i, "weight": w} for i, w in self.vertices],
            "edges": [list(e) for e in self.edges],
            "distinguished": self.distinguished,
        }

    def with_distinguished(self, d):
        return PlumbingGraph(self.vertices, self.edges, d)


def graph_from_dict(doc):
    verts = [(v["id"], v["weight"]) for v in doc["vertices"]]
    return PlumbingGraph(tuple(verts), tuple(tuple(e) for e in doc.get("edges", [])),
                         doc.get("distinguished"))


def load_graph(path):
    with open(path) as fh:
        return graph_from_dict(json.load(fh))


def linear_graph(weights, distinguished_first=False):
    """Chain ``w0 - w1 - ... `` with ids 0..k-1."""
    verts = tuple(enumerate(weights))
    edges = tuple((i, i + 1) for i in range(len(weights) - 1))
    return PlumbingGraph(verts, edges, 0 if distinguished_first else None)


# -----------------------------------------------------------------------------
# matrices
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class AdjMatrix:
    entries: tuple

    @property
    def size(self):
        return len(self.entries)

    def rows(self):
        return [list(r) for r in self.entries]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]


def build_matrix(g):
    ids = g.ids
    pos = {v: k for k, v in enumerate(ids)}
    s = len(ids)
    B = [[0] * s for _ in range(s)]
    for v, w in g.vertices:
        B[pos[v]][pos[v]] = w
    for a, b in g.edges:
        B[pos[a]][pos[b]] = 1
        B[pos[b]][pos[a]] = 1
    return AdjMatrix(tuple(tuple(r) for r in B))


def _rows(B):
    return B.rows() if isinstance(B, AdjMatrix) else [list(r) for r in B]


def det(B):
    """Exact determinant (Bareiss fraction-free elimination)."""
    A = _rows(B)
    n = len(A)
    if n == 0:
        return 1
    sign, prev = 1, 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def inverse(B):
    """Exact inverse as a list of Fraction rows; raises SingularMatrix."""
    A = [[Fraction(x) for x in r] for r in _rows(B)]
    n = len(A)
    M = [r + [Fraction(int(i == j)) for j in range(n)] for i, r in enumerate(A)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            raise SingularMatrix("matrix is singular")
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def matvec(M, v):
    return [sum(a * b for a, b in zip(row, v)) for row in M]


def dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def principal(M, idx):
    return [[M[i][j] for j in idx] for i in idx]


@dataclass(frozen=True)
class Signature:
    positives: int
    zeros: int
    negatives: int


def signature_of(B):
    """Inertia by symmetric congruence elimination over Q.

    A nonzero diagonal entry is used as a 1x1 pivot; if the remaining diagonal
    vanishes but an off-diagonal entry does not, the 2x2 block
    ``[[0, a], [a, 0]]`` (one positive, one negative direction) is eliminated.
    """
    A = [[Fraction(x) for x in r] for r in _rows(B)]
    pos = neg = 0
    live = list(range(len(A)))
    while live:
        i = next((k for k in live if A[k][k] != 0), None)
        if i is not None:
            p = A[i][i]
            if p > 0:
                pos += 1
            else:
                neg += 1
            live.remove(i)
            for r in live:
                f = A[r][i] / p
                if f:
                    for c in live:
                        A[r][c] -= f * A[i][c]
            continue
        pair = next(((a, b) for a in live for b in live if a < b and A[a][b] != 0), None)
        if pair is None:
            break
        a, b = pair
        t = A[a][b]
        pos += 1
        neg += 1
        live.remove(a)
        live.remove(b)
        # Schur complement with block inverse [[0, 1/t], [1/t, 0]]
        for r in live:
            for c in live:
                A[r][c] -= (A[r][a] * A[b][c] + A[r][b] * A[a][c]) / t
    zeros = len(A) - pos - neg
    return Signature(pos, zeros, neg)


def is_negative_definite_matrix(M):
    """Leading principal minors alternate in sign, starting negative."""
    n = len(M)
    for k in range(1, n + 1):
        d = det_fraction([row[:k] for row in M[:k]])
        if d == 0 or (d > 0) != (k % 2 == 0):
            return False
    return True


def det_fraction(M):
    A = [[Fraction(x) for x in r] for r in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if A[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for r in range(c + 1, n):
            f = A[r][c] / A[c][c]
            if f:
                A[r] = [x - f * y for x, y in zip(A[r], A[c])]
    return d


# -----------------------------------------------------------------------------
# Smith normal form
# -----------------------------------------------------------------------------

def _eye(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_form(B):
    """Return ``(U, D, V)`` with ``U @ B @ V == D`` diagonal, U, V unimodular.

    Diagonal entries are nonnegative and each divides the next.
    """
    A = _rows(B)
    m = len(A)
    n = len(A[0]) if m else 0
    U, V = _eye(m), _eye(n)

    def swap_rows(i, j):
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (A, V):
            for r in M:
                r[i], r[j] = r[j], r[i]

    def add_row(dst, src, f):  # row dst += f * row src
        A[dst] = [x + f * y for x, y in zip(A[dst], A[src])]
        U[dst] = [x + f * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, f):
        for M in (A, V):
            for r in M:
                r[dst] += f * r[src]

    for k in range(min(m, n)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(k, m) for j in range(k, n) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            if i != k:
                swap_rows(i, k)
            if j != k:
                swap_cols(j, k)
            done = True
            for i in range(k + 1, m):
                if A[i][k]:
                    add_row(i, k, -(A[i][k] // A[k][k]))
                    if A[i][k]:
                        done = False
            for j in range(k + 1, n):
                if A[k][j]:
                    add_col(j, k, -(A[k][j] // A[k][k]))
                    if A[k][j]:
                        done = False
            if not done:
                continue
            bad = next(((i, j) for i in range(k + 1, m) for j in range(k + 1, n)
                        if A[i][j] % A[k][k]), None)
            if bad is None:
                break
            add_row(k, bad[0], 1)
        if k < m and k < n and A[k][k] < 0:
            for M in (A, V):
                for r in M:
                    r[k] = -r[k]
    return U, A, V


def _inv_unimodular(U):
    inv = inverse(U)
    return [[int(x) for x in r] for r in inv]


def homology(B):
    """Invariant factors of coker B other than 1 (0 stands for a Z summand)."""
    _, D, _ = smith_form(B)
    n = len(D)
    diag = [D[i][i] for i in range(n)]
    return [d for d in diag if d != 1]


def solve_integer(B, rhs, fixedZero=None):
    """Integer ``n`` with ``B n = rhs`` and ``n_i = 0`` for ``i in fixedZero``.

    Returns ``None`` when no integer solution exists.  Free directions of a
    singular system are set to zero in Smith coordinates.
    """
    A = _rows(B)
    s = len(A)
    fixed = set(fixedZero or ())
    cols = [j for j in range(len(A[0]) if s else 0) if j not in fixed]
    M = [[row[j] for j in cols] for row in A]
    if not cols:
        return [0] * (len(A[0]) if s else 0) if all(x == 0 for x in rhs) else None
    U, D, V = smith_form(M)
    t = matvec(U, list(rhs))
    y = [0] * len(cols)
    for i in range(s):
        d = D[i][i] if i < len(cols) else 0
        if d == 0:
            if t[i] != 0:
                return None
        else:
            if t[i] % d:
                return None
            y[i] = t[i] // d
    nfree = matvec(V, y)
    out = [0] * len(A[0])
    for j, val in zip(cols, nfree):
        out[j] = val
    return out


# -----------------------------------------------------------------------------
# labels (Spin^c representatives)
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class LabelPair:
    bvec: tuple
    cvec: tuple

    def __post_init__(self):
        object.__setattr__(self, "bvec", tuple(int(x) for x in self.bvec))
        object.__setattr__(self, "cvec", tuple(int(x) for x in self.cvec))


def zero_label(s):
    return LabelPair((0,) * s, (0,) * s)


class LabelLattice:
    """The quotient Z^s / M Z^k for an integer s x k matrix M.

    Coordinates are taken in the Smith basis ``x = U v``: torsion coordinates
    are reduced into ``[0, d_i)``, free coordinates are left untouched.
    """

    def __init__(self, M):
        self.M = _rows(M)
        self.s = len(self.M)
        U, D, _ = smith_form(self.M)
        self.U = U
        self.Uinv = _inv_unimodular(U)
        k = len(self.M[0]) if self.s else 0
        self.d = [D[i][i] if i < k else 0 for i in range(self.s)]

    @property
    def free_rank(self):
        return sum(1 for d in self.d if d == 0)

    @property
    def order(self):
        if self.free_rank:
            return None
        return math.prod(self.d)

    def coords(self, v):
        x = matvec(self.U, list(v))
        return [xi % d if d else xi for xi, d in zip(x, self.d)]

    def reduce(self, v):
        return tuple(matvec(self.Uinv, self.coords(v)))

    def same_class(self, u, v):
        return self.coords(u) == self.coords(v)

    def representatives(self, free_values=(0,)):
        grids = [range(d) if d else free_values for d in self.d]
        out = [[]]
        for g in grids:
            out = [o + [x] for o in out for x in g]
        return [tuple(matvec(self.Uinv, x)) for x in out]


def label_lattice(B, knotCase=False, distinguished_index=None):
    rows = _rows(B)
    if not knotCase:
        return LabelLattice(rows)
    s = len(rows)
    di = s - 1 if distinguished_index is None else distinguished_index
    cols = [j for j in range(s) if j != di]
    return LabelLattice([[r[j] for j in cols] for r in rows])


def enumerate_labels(B, knotCase=False, distinguished_index=None, free_values=(0,)):
    """All label pairs (b, c) of canonical representatives.

    In the knot case the quotient can have a free part; its Smith coordinate
    is enumerated over ``free_values``.
    """
    if not knotCase and det(B) == 0:
        raise SingularMatrix("closed-case labels need invertible B")
    L = label_lattice(B, knotCase, distinguished_index)
    reps = L.representatives(free_values)
    return [LabelPair(b, c) for b in reps for c in reps]


# -----------------------------------------------------------------------------
# definiteness and genericity
# -----------------------------------------------------------------------------

def is_weakly_negative_definite(g):
    B = build_matrix(g)
    if det(B) == 0:
        return False
    Binv = inverse(B)
    deg = g.degrees()
    idx = [g.index(v) for v in g.ids if v != g.distinguished and deg[v] >= 3]
    if not idx:
        return True
    return is_negative_definite_matrix(principal(Binv, idx))


def is_generic(g):
    B = build_matrix(g)
    if det(B) == 0:
        raise SingularMatrix("genericity is defined for invertible B only")
    Binv = inverse(B)
    deg = g.degrees()
    keep = [v for v in g.ids if deg[v] != 2]
    if not any(deg[v] > 2 for v in keep):
        return False
    pos = {v: g.index(v) for v in keep}
    seen = {keep[0]}
    stack = [keep[0]]
    while stack:
        v = stack.pop()
        for u in keep:
            if u not in seen and Binv[pos[v]][pos[u]] != 0:
                seen.add(u)
                stack.append(u)
    return len(seen) == len(keep)


# -----------------------------------------------------------------------------
# Seifert data and continued fractions
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class SeifertData:
    b: int
    pairs: tuple = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))


def negative_continued_fraction(x):
    """Weights ``(k1, k2, ...)`` with ``x = k1 - 1/(k2 - 1/(...))``.

    ``k1 = floor(x)`` and every later weight is at most -2.
    """
    x = Fraction(x)
    out = []
    while True:
        k = math.floor(x)
        out.append(k)
        if k == x:
            return out
        x = 1 / (k - x)


def evaluate_continued_fraction(ks):
    val = Fraction(ks[-1])
    for k in reversed(ks[:-1]):
        val = k - 1 / val
    return val


def euler_number(d):
    return Fraction(d.b) + sum(Fraction(a, b) for a, b in d.pairs)


def seifert_to_graph(d):
    """Star graph: center of weight ``b``, one leg per pair ``(a_i, b_i)``.

    The leg weights are the negative continued fraction of ``-b_i/a_i``,
    the first of them next to the center.
    """
    verts = [(0, d.b)]
    edges = []
    nxt = 1
    for a, b in d.pairs:
        if a <= 0 or b <= 0 or math.gcd(a, b) != 1:
            raise InvalidSeifertPair((a, b))
        prev = 0
        for k in negative_continued_fraction(Fraction(-b, a)):
            verts.append((nxt, k))
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return PlumbingGraph(tuple(verts), tuple(edges))


def brieskorn_seifert(*bs):
    """Negative definite Seifert data of the homology sphere Sigma(b_1, ..., b_n)."""
    N = math.prod(bs)
    pairs = []
    total = Fraction(0)
    for b in bs:
        a = (-pow(N // b, -1, b)) % b
        pairs.append((a, b))
        total += Fraction(a, b)
    central = Fraction(-1, N) - total
    if central.denominator != 1:
        raise InvalidSeifertPair(bs)
    return SeifertData(int(central), tuple(pairs))


def load_seifert(path):
    with open(path) as fh:
        doc = json.load(fh)
    return SeifertData(doc["b"], tuple(tuple(p) for p in doc["pairs"]))


# -----------------------------------------------------------------------------
# Kirby-Neumann moves
# -----------------------------------------------------------------------------

MOVES = ("BlowUp", "BlowDown", "Absorb", "Desorb", "Fuse", "Fission")


def _rebuild(weights, edges, order, distinguished):
    verts = tuple((v, weights[v]) for v in order)
    return PlumbingGraph(verts, tuple(edges), distinguished)


def apply_move(g, move, site, sign=1):
    """Apply one local move.

    Sites:
      * ``BlowUp``: vertex v; attaches a new leaf of weight ``sign`` and shifts
        v's weight by ``sign``.
      * ``BlowDown``: a leaf of weight ``sign``; removed, neighbour shifted by
        ``-sign``.
      * ``Absorb``: a degree-2 vertex of weight ``sign``; removed, its two
        neighbours joined and shifted by ``-sign``.
      * ``Desorb``: an edge ``(u, w)``; a vertex of weight ``sign`` is inserted
        and both ends shifted by ``sign``.
      * ``Fuse``: a degree-2 vertex of weight 0; its neighbours merge into the
        first one with summed weight.
      * ``Fission``: ``(v, moved_neighbours, k1)``; v keeps weight ``k1`` and the
        remaining neighbours, a new 0-vertex then a new vertex of weight
        ``w(v) - k1`` carrying ``moved_neighbours``.
    """
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    weights = dict(g.vertices)
    order = list(g.ids)
    edges = [list(e) for e in g.edges]
    adj = g.adjacency()
    dist = g.distinguished
    fresh = max(order) + 1

    if move == "BlowUp":
        v = site
        if v not in weights:
            raise PatternMismatch("no such vertex")
        if v == dist:
            raise DistinguishedVertexMove("blow-up at the distinguished vertex")
        weights[v] += sign
        weights[fresh] = sign
        order.append(fresh)
        edges.append([v, fresh])
    elif move == "BlowDown":
        v = site
        if v == dist:
            raise DistinguishedVertexMove("blow-down of the distinguished vertex")
        if v not in weights or len(adj[v]) > 1 or weights[v] != sign:
            raise PatternMismatch("blow-down needs a leaf of weight sign")
        if adj[v] and adj[v][0] == dist:
            raise DistinguishedVertexMove("blow-down onto the distinguished vertex")
        for u in adj[v]:
            weights[u] -= sign
        order.remove(v)
        del weights[v]
        edges = [e for e in edges if v not in e]
    elif move == "Absorb":
        v = site
        if v not in weights or len(adj[v]) != 2 or weights[v] != sign or v == dist:
            raise PatternMismatch("absorption needs a degree-2 vertex of weight sign")
        u, w = adj[v]
        weights[u] -= sign
        weights[w] -= sign
        order.remove(v)
        del weights[v]
        edges = [e for e in edges if v not in e] + [[u, w]]
    elif move == "Desorb":
        u, w = site
        if sorted((u, w)) not in [sorted(e) for e in edges]:
            raise PatternMismatch("desorption needs an edge")
        weights[u] += sign
        weights[w] += sign
        weights[fresh] = sign
        order.append(fresh)
        edges = [e for e in edges if sorted(e) != sorted((u, w))] + [[u, fresh], [fresh, w]]
    elif move == "Fuse":
        v = site
        if v not in weights or len(adj[v]) != 2 or weights[v] != 0 or v == dist:
            raise PatternMismatch("fusion needs a degree-2 vertex of weight 0")
        u, w = adj[v]
        weights[u] += weights[w]
        new_edges = []
        for e in edges:
            if v in e:
                continue
            e = [u if x == w else x for x in e]
            new_edges.append(e)
        edges = new_edges
        for x in (v, w):
            order.remove(x)
            del weights[x]
        if dist == w:
            dist = u
    elif move == "Fission":
        v, moved, k1 = site
        moved = list(moved)
        if v not in weights or not set(moved) <= set(adj[v]):
            raise PatternMismatch("fission needs neighbours of v")
        k2 = weights[v] - k1
        zero_v, other = fresh, fresh + 1
        weights[v] = k1
        weights[zero_v] = 0
        weights[other] = k2
        order += [zero_v, other]
        new_edges = []
        for e in edges:
            if v in e and (e[0] in moved or e[1] in moved):
                x = e[0] if e[1] == v else e[1]
                new_edges.append([other, x])
            else:
                new_edges.append(e)
        edges = new_edges + [[v, zero_v], [zero_v, other]]
    else:
        raise PatternMismatch(f"unknown move {move}")
    return _rebuild(weights, edges, order, dist)


def pi_shift(move, sign):
    """Change of the positive-eigenvalue count caused by a move."""
    if move in ("BlowUp", "Desorb"):
        return 1 if sign == 1 else 0
    if move in ("BlowDown", "Absorb"):
        return -1 if sign == 1 else 0
    if move == "Fission":
        return 1
    if move == "Fuse":
        return -1
    raise ValueError(move)


# -----------------------------------------------------------------------------
# surgery chains
# -----------------------------------------------------------------------------

def slope_chain(p, r):
    """Linear chain whose first vertex is distinguished and whose weights are
    the negative continued fraction of ``p/r``.

    With this chain ``B^{-1}_{11} = r/p``.
    """
    if r < 1 or math.gcd(p, r) != 1 or p == 0:
        raise ValueError(f"invalid slope {p}/{r}")
    ks = negative_continued_fraction(Fraction(p, r))
    return linear_graph(ks, distinguished_first=True)


def solve_linear(A, rhs):
    """Unique rational solution of a square system, or ``None`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(A, rhs)]
    for c in range(n):
        p = next((r for r in range(c, n) if M[r][c] != 0), None)
        if p is None:
            return None
        M[c], M[p] = M[p], M[c]
        piv = M[c][c]
        M[c] = [x / piv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n] for row in M]
