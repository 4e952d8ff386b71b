"""The asymptotic algebra of a diagonal H-cell, as a based fusion ring.

The basis is the H-cell itself; the product is a_x a_y = sum_z N_{x,y}^z a_z
with N_{x,y}^z = gamma_{x,y,z^-1}, the unit is the Duflo involution and the
duality is x -> x^-1.  The defining constraints (unit law, associativity,
Frobenius-Perron reciprocity N_{x,y}^z = N_{x^-1,z}^y, nonnegativity) are
asserted at construction time: a violation is an implementation bug, never
a warning.

Frobenius-Perron dimensions are spectral radii of the left multiplication
matrices; fusion graphs of a chosen generator are emitted as DOT text and
compared up to isomorphism with a distinguished (unit) vertex.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product as iproduct

import numpy as np

from .cells import CellDecomposition
from .errors import PropertyViolation
from .laurent import LaurentPoly

__all__ = [
    "FusionRing",
    "FusionGraph",
    "build_fusion_ring",
    "fusion_graph",
    "graphs_isomorphic",
    "is_commutative",
    "pf_dimensions",
    "phi_image",
    "rings_isomorphic",
    "so3_fusion_ring",
]


@dataclass(frozen=True)
class FusionRing:
    """A based ring with nonnegative structure constants, unit and duality.

    ``basis`` holds opaque labels (element ids for gamma-rings, small ints
    for reference rings); ``structure[x][y][z]`` is the multiplicity
    N_{x,y}^z with respect to basis positions.
    """

    basis: tuple
    unit: int
    duality: tuple[int, ...]
    structure: tuple

    def __post_init__(self):
        self.validate()

    @property
    def rank(self) -> int:
        return len(self.basis)

    def n(self, x: int, y: int, z: int) -> int:
        return self.structure[x][y][z]

    def validate(self) -> None:
        r = len(self.basis)
        N = self.structure
        d = self.unit
        dual = self.duality
        for x in range(r):
            for y in range(r):
                for z in range(r):
                    if N[x][y][z] < 0:
                        raise PropertyViolation(f"negative multiplicity at {(x, y, z)}")
        for y in range(r):
            for z in range(r):
                want = 1 if y == z else 0
                if N[d][y][z] != want or N[y][d][z] != want:
                    raise PropertyViolation(f"unit law fails at {(y, z)}")
        for x in range(r):
            for y in range(r):
                for z in range(r):
                    if N[x][y][z] != N[dual[x]][z][y]:
                        raise PropertyViolation(
                            f"Frobenius-Perron reciprocity fails at {(x, y, z)}"
                        )
        for x in range(r):
            for y in range(r):
                for z in range(r):
                    for w in range(r):
                        lhs = sum(N[x][y][u] * N[u][z][w] for u in range(r))
                        rhs = sum(N[y][z][u] * N[x][u][w] for u in range(r))
                        if lhs != rhs:
                            raise PropertyViolation(
                                f"associativity fails at {(x, y, z, w)}"
                            )

    def left_matrix(self, x: int) -> np.ndarray:
        """Matrix of left multiplication by basis element x: a_x a_w in column w."""
        r = self.rank
        m = np.zeros((r, r), dtype=np.int64)
        for w in range(r):
            for z in range(r):
                m[z, w] = self.structure[x][w][z]
        return m

    def to_json(self) -> dict:
        triples = [
            [x, y, z, self.structure[x][y][z]]
            for x, y, z in iproduct(range(self.rank), repeat=3)
            if self.structure[x][y][z]
        ]
        return {
            "basis": list(self.basis),
            "unit": self.unit,
            "duality": list(self.duality),
            "triples": triples,
        }


def build_fusion_ring(cells: CellDecomposition, H) -> FusionRing:
    """The gamma-ring of a diagonal H-cell, with the Duflo involution as unit."""
    H = sorted(H)
    inv = cells.system.inverse_id
    L = cells.left_of[H[0]]
    if H != cells.diagonal_h_cell(L):
        raise PropertyViolation(f"{H} is not a diagonal H-cell")
    d = cells.duflo_of_left[L]
    pos = {w: i for i, w in enumerate(H)}
    gam = cells.gamma_tensor(H)
    r = len(H)
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for (x, y), entry in gam.items():
        for z, g in entry.items():
            # N_{x,y}^{z^-1} = gamma_{x,y,z}
            N[pos[x]][pos[y]][pos[inv[z]]] = g
    return FusionRing(
        basis=tuple(H),
        unit=pos[d],
        duality=tuple(pos[inv[w]] for w in H),
        structure=tuple(tuple(tuple(row) for row in plane) for plane in N),
    )


def so3_fusion_ring(k: int) -> FusionRing:
    """Integer-spin part of the level-k quantum sl2 fusion ring.

    Basis 0, 2, ..., 2*floor(k/2) (twice-spin labels); a and b fuse to every
    c = |a-b|, |a-b|+2, ..., min(a+b, 2k-a-b).
    """
    labels = tuple(range(0, 2 * (k // 2) + 1, 2))
    pos = {a: i for i, a in enumerate(labels)}
    r = len(labels)
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for a in labels:
        for b in labels:
            for c in range(abs(a - b), min(a + b, 2 * k - a - b) + 1, 2):
                if c in pos:
                    N[pos[a]][pos[b]][pos[c]] = 1
    return FusionRing(
        basis=labels,
        unit=0,
        duality=tuple(range(r)),
        structure=tuple(tuple(tuple(row) for row in plane) for plane in N),
    )


# -- numerical analysis ---------------------------------------------------------

def pf_dimensions(ring: FusionRing, tol: float = 1e-12, max_iter: int = 10000) -> dict:
    """Frobenius-Perron dimension of each basis element.

    Power iteration with the all-ones start vector; if the ratio has not
    settled (periodic or reducible multiplication matrix) the spectral
    radius is taken from the eigenvalues instead.
    """
    out = {}
    for x in range(ring.rank):
        m = ring.left_matrix(x).astype(float)
        v = np.ones(ring.rank)
        lam = 0.0
        converged = False
        for _ in range(max_iter):
            w = m @ v
            nw = np.linalg.norm(w)
            if nw == 0:
                lam, converged = 0.0, True
                break
            w /= nw
            new_lam = float(w @ (m @ w))
            if abs(new_lam - lam) < tol:
                lam, converged = new_lam, True
                break
            lam, v = new_lam, w
        if not converged:
            lam = float(max(abs(np.linalg.eigvals(m))))
        out[ring.basis[x]] = lam
    return out


def total_pf_dimension(ring: FusionRing) -> float:
    return sum(d * d for d in pf_dimensions(ring).values())


def is_commutative(ring: FusionRing) -> bool:
    r = ring.rank
    N = ring.structure
    return all(
        N[x][y][z] == N[y][x][z]
        for x in range(r)
        for y in range(x + 1, r)
        for z in range(r)
    )


def phi_image(cells: CellDecomposition, w: int) -> dict[int, LaurentPoly]:
    """Image of c_w under the transfer map to the asymptotic algebra.

    Returns {u: v^a h_{w,d,u}} over the diagonal H-cell of w, d its Duflo
    involution; the coefficient of a_u in the image of c_w.
    """
    L = cells.left_of[w]
    H = cells.diagonal_h_cell(L)
    if w not in H:
        raise PropertyViolation(f"{w} is not in the diagonal H-cell of its left cell")
    d = cells.duflo_of_left[L]
    j = cells.two_of[w]
    a = cells.a_of_cell[j]
    cols = cells.h_cell_columns((w,), d, j)
    return {u: p.shift(a) for u, p in cols[w].items() if u in set(H)}


# -- fusion graphs ---------------------------------------------------------------

@dataclass(frozen=True)
class FusionGraph:
    """Directed multigraph of multiplication by one generator.

    ``adjacency[x][y]`` is the number of edges x -> y, i.e. N_{g,x}^y; the
    unit vertex is distinguished (drawn starred).
    """

    labels: tuple
    adjacency: tuple
    star: int
    generator: object = None

    @property
    def size(self) -> int:
        return len(self.labels)

    def is_symmetric(self) -> bool:
        a = self.adjacency
        n = self.size
        return all(a[i][j] == a[j][i] for i in range(n) for j in range(i + 1, n))

    def is_connected(self) -> bool:
        n = self.size
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in range(n):
                if w not in seen and (self.adjacency[v][w] or self.adjacency[w][v]):
                    seen.add(w)
                    stack.append(w)
        return len(seen) == n

    def to_dot(self) -> str:
        sym = self.is_symmetric()
        lines = ["graph fusion {" if sym else "digraph fusion {"]
        for i, lab in enumerate(self.labels):
            star = ' xlabel="*"' if i == self.star else ""
            lines.append(f'  n{i} [label="{lab}"{star}];')
        edge = " -- " if sym else " -> "
        n = self.size
        for i in range(n):
            rng = range(i, n) if sym else range(n)
            for j in rng:
                mult = self.adjacency[i][j]
                for _ in range(mult):
                    lines.append(f"  n{i}{edge}n{j};")
        lines.append("}")
        return "\n".join(lines)


def fusion_graph(ring: FusionRing, g: int) -> FusionGraph:
    """Graph with N_{g,x}^y edges x -> y, for g a basis position."""
    r = ring.rank
    adj = tuple(tuple(ring.structure[g][x][y] for y in range(r)) for x in range(r))
    return FusionGraph(
        labels=tuple(ring.basis), adjacency=adj, star=ring.unit, generator=ring.basis[g]
    )


def _wl_colors(adj, init):
    n = len(adj)
    colors = list(init)
    for _ in range(n):
        sigs = [
            (
                colors[v],
                tuple(sorted((colors[w], adj[v][w], adj[w][v]) for w in range(n))),
            )
            for v in range(n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new
    return colors


def graphs_isomorphic(a: FusionGraph, b: FusionGraph, match_star: bool = True) -> bool:
    """Multigraph isomorphism by color refinement plus backtracking.

    Intended for the small graphs here (at most a couple dozen vertices);
    the starred vertices must correspond when ``match_star`` is set.
    """
    n = a.size
    if b.size != n:
        return False
    init_a = [(1 if match_star and v == a.star else 0, a.adjacency[v][v]) for v in range(n)]
    init_b = [(1 if match_star and v == b.star else 0, b.adjacency[v][v]) for v in range(n)]
    pal = {s: i for i, s in enumerate(sorted(set(init_a) | set(init_b)))}
    ca = _wl_colors(a.adjacency, [pal[s] for s in init_a])
    cb = _wl_colors(b.adjacency, [pal[s] for s in init_b])
    if sorted(ca) != sorted(cb):
        return False

    order = sorted(range(n), key=lambda v: (ca.count(ca[v]), ca[v], v))
    mapping = [-1] * n
    used = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            return True
        v = order[i]
        for w in range(n):
            if used[w] or cb[w] != ca[v]:
                continue
            if a.adjacency[v][v] != b.adjacency[w][w]:
                continue
            ok = True
            for u in order[:i]:
                mu = mapping[u]
                if a.adjacency[v][u] != b.adjacency[w][mu] or a.adjacency[u][v] != b.adjacency[mu][w]:
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used[w] = True
            if extend(i + 1):
                return True
            mapping[v] = -1
            used[w] = False
        return False

    return extend(0)


def rings_isomorphic(a: FusionRing, b: FusionRing) -> bool:
    """Based-ring isomorphism: a basis bijection fixing units, commuting with
    duality and preserving all structure constants.  Backtracking with
    PF-dimension buckets; fine for the ranks that occur here (at most 24)."""
    r = a.rank
    if b.rank != r:
        return False
    da = pf_dimensions(a)
    db = pf_dimensions(b)
    dim_a = [round(da[a.basis[i]], 6) for i in range(r)]
    dim_b = [round(db[b.basis[i]], 6) for i in range(r)]
    if sorted(dim_a) != sorted(dim_b):
        return False

    Na, Nb = a.structure, b.structure

    def invariant(N, dual, unit, dims, x):
        return (
            x == unit,
            dual[x] == x,
            dims[x],
            N[x][x][x],
            tuple(sorted(N[x][x][z] for z in range(r))),
        )

    inv_a = [invariant(Na, a.duality, a.unit, dim_a, x) for x in range(r)]
    inv_b = [invariant(Nb, b.duality, b.unit, dim_b, x) for x in range(r)]
    if sorted(inv_a) != sorted(inv_b):
        return False

    order = sorted(range(r), key=lambda x: (inv_a.count(inv_a[x]), x))
    mapping = [-1] * r
    used = [False] * r

    def consistent(x: int, y: int) -> bool:
        md = mapping[a.duality[x]]
        if md != -1 and md != b.duality[y]:
            return False
        for u in range(r):
            mu = mapping[u]
            if mu == -1:
                continue
            for t in range(r):
                mt = mapping[t]
                if mt == -1:
                    continue
                if Na[x][u][t] != Nb[y][mu][mt] or Na[u][x][t] != Nb[mu][y][mt]:
                    return False
                if Na[u][t][x] != Nb[mu][mt][y]:
                    return False
        return True

    def extend(i: int) -> bool:
        if i == r:
            return True
        x = order[i]
        for y in range(r):
            if used[y] or inv_b[y] != inv_a[x]:
                continue
            mapping[x] = y
            used[y] = True
            if consistent(x, y) and extend(i + 1):
                return True
            mapping[x] = -1
            used[y] = False
        return False

    return extend(0)
