"""Cell theory: left/right/two-sided cells, a-function, gamma constants.

The left preorder is generated one step at a time from the products
b_s b_w: for s not a left descent of w this is b_sw plus mu(z, w) b_z over
z with s in LD(z), so the edge list of the preorder graph is exactly the
transition table plus the mu table filtered by descents.  Cells are the
strongly connected components; right cells are inverses of left cells, and
two-sided cells come from the union graph.

The a-function is computed per two-sided cell as the minimum over the cell
of Delta(z) = l(z) - 2 deg P_{e,z} (the valuation of the T_e-coefficient
of b_z); the minimizers are precisely the Duflo involutions, one per left
cell.  This agrees with the definition of a as the maximal v^-1-degree of
h_{x,y,z} over the cell (checked against that definition in the tests; the
equivalence is one of Lusztig's positivity properties, all of which hold
here and are themselves re-verified by ``verify_lusztig_properties``).

gamma_{x,y,z} is the coefficient of v^(-a(z)) in h_{x,y,z^-1}; it vanishes
unless x, y, z lie in one two-sided cell, so those products are computed in
the quotient by all strictly higher cells, which keeps vectors no larger
than a left cell even in H4.
"""

from __future__ import annotations

import random
from array import array
from dataclasses import dataclass, field
from itertools import permutations

from .errors import PropertyViolation
from .hecke import HeckeTable
from .laurent import LaurentPoly

__all__ = [
    "CellDecomposition",
    "CellMatrix",
    "VerifyReport",
    "block_matrices_match",
    "cell_decomposition",
]


# -- strongly connected components (iterative Tarjan) -------------------------

def _tarjan(n: int, adjacency) -> tuple[array, list[list[int]]]:
    """SCCs of the graph given by ``adjacency(v) -> iterable``.

    Returns (component id per vertex, components in reverse topological
    order: every edge goes from a later component to an earlier one).
    """
    index = array("i", [-1]) * n
    low = array("i", [0]) * n
    on_stack = bytearray(n)
    comp = array("i", [-1]) * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(adjacency(root)))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = 1
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = 1
                    work.append((w, iter(adjacency(w))))
                    advanced = True
                    break
                if on_stack[w] and low[v] > index[w]:
                    low[v] = index[w]
            if advanced:
                continue
            work.pop()
            if work:
                u = work[-1][0]
                if low[u] > low[v]:
                    low[u] = low[v]
            if low[v] == index[v]:
                members = []
                while True:
                    w = stack.pop()
                    on_stack[w] = 0
                    comp[w] = len(comps)
                    members.append(w)
                    if w == v:
                        break
                comps.append(members)
    return comp, comps


# -- the decomposition ---------------------------------------------------------

class CellDecomposition:
    """Left, right and two-sided cells of one finite Coxeter system."""

    def __init__(self, hecke: HeckeTable):
        self.hecke = hecke
        self.system = hecke.system
        self._decompose()
        self._compute_a_and_duflo()
        self._display_order()
        self._member_sets: dict[int, frozenset[int]] = {}

    # construction ----------------------------------------------------------

    def _left_adjacency(self, w: int):
        sys = self.system
        ld = sys.ldesc[w]
        out = [sys.left_mul(s, w) for s in range(sys.rank) if not ld >> s & 1]
        mr = self.hecke.mu_rows[w]
        ldesc = sys.ldesc
        for i in range(0, len(mr), 2):
            z = mr[i]
            if ldesc[z] & ~ld:
                out.append(z)
        return out

    def _decompose(self) -> None:
        sys = self.system
        size = sys.size
        inv = sys.inverse_id

        left_of, left_comps = _tarjan(size, self._left_adjacency)
        # canonical left-cell ids: by minimal element id
        order = sorted(range(len(left_comps)), key=lambda c: min(left_comps[c]))
        relabel = array("i", [0]) * len(left_comps)
        for new, old in enumerate(order):
            relabel[old] = new
        self.left_of = array("i", (relabel[left_of[w]] for w in range(size)))
        self.left_cells = [sorted(left_comps[c]) for c in order]
        self._left_up = self._reachability(left_of, left_comps, relabel, self._left_adjacency)

        self.right_of = array("i", (self.left_of[inv[w]] for w in range(size)))
        self.right_cells = [sorted(inv[x] for x in cell) for cell in self.left_cells]

        def union_adjacency(w):
            return self._left_adjacency(w) + [inv[x] for x in self._left_adjacency(inv[w])]

        two_of, two_comps = _tarjan(size, union_adjacency)
        order2 = sorted(range(len(two_comps)), key=lambda c: min(two_comps[c]))
        relabel2 = array("i", [0]) * len(two_comps)
        for new, old in enumerate(order2):
            relabel2[old] = new
        self.two_of = array("i", (relabel2[two_of[w]] for w in range(size)))
        self.two_cells = [sorted(two_comps[c]) for c in order2]
        self._two_up = self._reachability(two_of, two_comps, relabel2, union_adjacency)

        for cell in self.left_cells:
            if self.two_of[cell[0]] != self.two_of[cell[-1]] or len(
                {self.two_of[x] for x in cell}
            ) != 1:
                raise PropertyViolation("left cell not contained in a two-sided cell")

    @staticmethod
    def _reachability(comp, comps, relabel, adjacency) -> list[frozenset[int]]:
        # comps are in reverse topological order: targets come first
        up_raw: list[frozenset[int]] = []
        for c, members in enumerate(comps):
            reach = {relabel[c]}
            for w in members:
                for x in adjacency(w):
                    if comp[x] != c:
                        reach.update(up_raw[comp[x]])
            up_raw.append(frozenset(reach))
        out: list[frozenset[int]] = [frozenset()] * len(comps)
        for c in range(len(comps)):
            out[relabel[c]] = up_raw[c]
        return out

    def _compute_a_and_duflo(self) -> None:
        delta = self.hecke.delta
        inv = self.system.inverse_id
        self.a_of_cell = []
        self.duflo_of_left = array("i", [-1]) * len(self.left_cells)
        for j, cell in enumerate(self.two_cells):
            a = min(delta[z] for z in cell)
            self.a_of_cell.append(a)
            for z in cell:
                if delta[z] != a:
                    continue
                if inv[z] != z:
                    raise PropertyViolation(f"distinguished element {z} is not an involution")
                L = self.left_of[z]
                if self.duflo_of_left[L] != -1:
                    raise PropertyViolation(f"two Duflo involutions in left cell {L}")
                self.duflo_of_left[L] = z
        if min(self.duflo_of_left) < 0:
            raise PropertyViolation("a left cell without Duflo involution")

    def _display_order(self) -> None:
        """Order two-sided cells for the classification tables: ascending
        (a, min id) for the lower half, then the w0-partners mirrored."""
        sys = self.system
        n_cells = len(self.two_cells)
        partner = []
        for members in self.two_cells:
            partner.append(self.two_of[sys.product(members[0], sys.w0)])
        reps = []
        for c in range(n_cells):
            p = partner[c]
            key_c = (self.a_of_cell[c], self.two_cells[c][0])
            key_p = (self.a_of_cell[p], self.two_cells[p][0])
            if c == p or key_c < key_p:
                reps.append((key_c, c))
        reps.sort()
        lower = [c for _, c in reps]
        upper = [partner[c] for _, c in reversed(reps) if partner[c] != c]
        self.display_order = lower + upper
        self.partner = partner
        names = {}
        for k, c in enumerate(lower):
            names[c] = str(k)
            if partner[c] != c:
                names[partner[c]] = f"{k}'"
        self.cell_names = names

    # queries ------------------------------------------------------------------

    def cell_by_display_index(self, i: int) -> int:
        return self.display_order[i]

    def a_value(self, w: int) -> int:
        return self.a_of_cell[self.two_of[w]]

    def members(self, j: int) -> frozenset[int]:
        got = self._member_sets.get(j)
        if got is None:
            got = self._member_sets[j] = frozenset(self.two_cells[j])
        return got

    def left_leq(self, c1: int, c2: int) -> bool:
        """c1 <=_L c2 in the left order on left cells (c2 above c1)."""
        return c2 in self._left_up[c1]

    def two_leq(self, j1: int, j2: int) -> bool:
        return j2 in self._two_up[j1]

    def left_cells_of(self, j: int) -> list[int]:
        return sorted({self.left_of[w] for w in self.two_cells[j]})

    def diagonal_h_cell(self, L: int) -> list[int]:
        """L intersect L*, the diagonal H-cell of left cell L."""
        inv = self.system.inverse_id
        return sorted(x for x in self.left_cells[L] if self.left_of[inv[x]] == L)

    # h and gamma within a cell --------------------------------------------------

    def h_cell_columns(self, xs, y: int, j: int) -> dict:
        """h_{x,y,*} for x in xs, restricted (exactly) to two-sided cell j."""
        return self.hecke.h_on_cell(tuple(xs), y, self.members(j), ("J", j))

    def gamma(self, x: int, y: int, z: int) -> int:
        """gamma_{x,y,z}: coefficient of v^(-a) in h_{x,y,z^-1}."""
        j = self.two_of[z]
        if self.two_of[x] != j or self.two_of[y] != j:
            return 0
        zi = self.system.inverse_id[z]
        col = self.hecke.h_polys_raw(x, y, restrict=self.members(j), restrict_key=("J", j))
        p = col.get(zi)
        if not p:
            return 0
        return p.get(-self.a_of_cell[j], 0)

    def gamma_tensor(self, basis) -> dict[tuple[int, int], dict[int, int]]:
        """All gamma_{x,y,z} with x, y, z in ``basis`` (inside one cell).

        Returns {(x, y): {z: gamma}} with zero entries omitted.
        """
        basis = list(basis)
        j = self.two_of[basis[0]]
        a = self.a_of_cell[j]
        inv = self.system.inverse_id
        members = self.members(j)
        bset = set(basis)
        drop = len(members) > 2000  # big-cell closures are transiently large
        out: dict[tuple[int, int], dict[int, int]] = {}
        for y in basis:
            cols = self.hecke.h_on_cell(tuple(basis), y, members, ("J", j), drop=drop)
            for x in basis:
                entry = {}
                for zi, p in cols[x].items():
                    z = inv[zi]
                    if z in bset:
                        g = p.coefficient(-a)
                        if g:
                            entry[z] = g
                out[(x, y)] = entry
        return out

    def duflo_involution(self, L: int) -> int:
        """The Duflo involution of left cell L, by the gamma criterion.

        d is the unique element with gamma_{x^-1,x,d} = 1 for every x in L;
        a single x can see extra nonzero gamma_{x^-1,x,z}, so candidate sets
        are intersected over members of L (by increasing length) until one
        survives.  Taking x = d itself rules out every other candidate, so
        this terminates.  The result is cross-checked against the degree
        criterion (d minimizes l - 2 deg P_{e,.} on the cell).
        """
        sys = self.system
        cell = sorted(self.left_cells[L], key=sys.length.__getitem__)
        j = self.two_of[cell[0]]
        a = self.a_of_cell[j]
        inv = sys.inverse_id
        members = self.members(j)
        candidates: set[int] | None = None
        for x in cell:
            col = self.hecke.h_polys_raw(inv[x], x, restrict=members, restrict_key=("J", j))
            hits = {
                inv[zi]
                for zi, p in col.items()
                if p.get(-a, 0) == 1 and inv[zi] == zi and self.left_of[inv[zi]] == L
            }
            candidates = hits if candidates is None else candidates & hits
            if len(candidates) == 1:
                break
        if not candidates or len(candidates) != 1:
            raise PropertyViolation(
                f"gamma criterion left {candidates} Duflo candidates in left cell {L}"
            )
        d = candidates.pop()
        if d != self.duflo_of_left[L]:
            raise PropertyViolation(
                f"gamma and degree criteria disagree in left cell {L}: "
                f"{d} vs {self.duflo_of_left[L]}"
            )
        return d

    # cell matrix -----------------------------------------------------------------

    def cell_matrix(self, j: int) -> "CellMatrix":
        inv = self.system.inverse_id
        lefts = self.left_cells_of(j)
        pos = {L: i for i, L in enumerate(lefts)}
        k = len(lefts)
        M = [[0] * k for _ in range(k)]
        for y in self.two_cells[j]:
            M[pos[self.left_of[inv[y]]]][pos[self.left_of[y]]] += 1
        if any(M[i][p] != M[p][i] for i in range(k) for p in range(k)):
            raise PropertyViolation(f"cell matrix of cell {j} is not symmetric")

        # classes: left cells with identical columns give equivalent cell
        # 2-representations; by the inverse symmetry the class blocks of the
        # matrix are then constant
        groups: dict = {}
        for i in range(k):
            groups.setdefault(tuple(M[q][i] for q in range(k)), []).append(i)
        classes = sorted(groups.values(), key=lambda g: min(g))

        scalars = []
        for ca in classes:
            row = []
            for cb in classes:
                vals = {M[i][p] for i in ca for p in cb}
                if len(vals) != 1:
                    raise PropertyViolation(f"non-constant block in cell matrix of cell {j}")
                row.append(vals.pop())
            scalars.append(row)
        return CellMatrix(
            two_sided_cell=j,
            left_cell_ids=[lefts[i] for i in range(k)],
            entries=M,
            classes=[[lefts[i] for i in cls] for cls in classes],
            class_sizes=[len(cls) for cls in classes],
            block_scalars=scalars,
        )

    # graded Cartan matrix ----------------------------------------------------------

    def graded_cartan(self, H) -> dict[tuple[int, int], LaurentPoly]:
        """Entry (x, y) = v^a h_{y^-1, x, d} for x, y in the diagonal H-cell."""
        H = list(H)
        j = self.two_of[H[0]]
        a = self.a_of_cell[j]
        d = self.duflo_of_left[self.left_of[H[0]]]
        inv = self.system.inverse_id
        members = self.members(j)
        drop = len(members) > 2000
        out = {}
        for x in H:
            cols = self.hecke.h_on_cell(tuple(inv[y] for y in H), x, members, ("J", j), drop=drop)
            for y in H:
                out[(x, y)] = cols[inv[y]].get(d, LaurentPoly()).shift(a)
        return out

    # JSON -----------------------------------------------------------------------

    def to_json(self) -> dict:
        sys = self.system
        cells = []
        for i, j in enumerate(self.display_order):
            lefts = self.left_cells_of(j)
            cells.append(
                {
                    "index": i,
                    "name": self.cell_names[j],
                    "size": len(self.two_cells[j]),
                    "a": self.a_of_cell[j],
                    "left_cells": len(lefts),
                    "duflo": sorted(self.duflo_of_left[L] for L in lefts),
                    "self_paired": self.partner[j] == j,
                }
            )
        return {
            "type": str(sys.type),
            "order": sys.size,
            "cells": cells,
            # (lower, higher) in the two-sided order
            "two_sided_order_pairs": sorted(
                [j1, j2]
                for j1 in range(len(self.two_cells))
                for j2 in sorted(self._two_up[j1])
                if j1 != j2
            ),
        }


def cell_decomposition(hecke: HeckeTable) -> CellDecomposition:
    return CellDecomposition(hecke)


# -- cell matrices -------------------------------------------------------------

@dataclass
class CellMatrix:
    """H-cell sizes |R_i ∩ L_j| over one two-sided cell, with its block form.

    Classes group left cells with identical row/column profiles; on each
    class-by-class block the matrix is constant, which reproduces the
    n_{r,c} presentation of the classification tables.
    """

    two_sided_cell: int
    left_cell_ids: list[int]
    entries: list[list[int]]
    classes: list[list[int]]
    class_sizes: list[int]
    block_scalars: list[list[int]]

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.entries)

    def diagonal_h_sizes(self) -> list[int]:
        """One diagonal H-cell size per class."""
        return [self.block_scalars[i][i] for i in range(len(self.classes))]

    def to_json(self) -> dict:
        return {
            "two_sided_cell": self.two_sided_cell,
            "class_sizes": self.class_sizes,
            "block_scalars": self.block_scalars,
            "total": self.total,
            "blocks": [
                [
                    {"n": self.block_scalars[i][j],
                     "rows": self.class_sizes[i],
                     "cols": self.class_sizes[j]}
                    for j in range(len(self.classes))
                ]
                for i in range(len(self.classes))
            ],
        }


def block_matrices_match(sizes_a, scalars_a, sizes_b, scalars_b) -> bool:
    """Equality of block cell matrices up to simultaneous permutation."""
    if sorted(sizes_a) != sorted(sizes_b) or len(scalars_a) != len(scalars_b):
        return False
    k = len(sizes_a)
    for perm in permutations(range(k)):
        if any(sizes_a[perm[i]] != sizes_b[i] for i in range(k)):
            continue
        if all(
            scalars_a[perm[i]][perm[j]] == scalars_b[i][j]
            for i in range(k)
            for j in range(k)
        ):
            return True
    return False


# -- verification reports ---------------------------------------------------------

@dataclass
class VerifyCheck:
    name: str
    instances: int = 0
    failures: list[str] = field(default_factory=list)

    def record(self, ok: bool, detail: str = "") -> None:
        self.instances += 1
        if not ok and len(self.failures) < 20:
            self.failures.append(detail)

    @property
    def ok(self) -> bool:
        return not self.failures


@dataclass
class VerifyReport:
    scope: str
    checks: list[VerifyCheck] = field(default_factory=list)

    def check(self, name: str) -> VerifyCheck:
        c = VerifyCheck(name)
        self.checks.append(c)
        return c

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            status = "pass" if c.ok else "FAIL"
            out.append(f"{status}  {self.scope}: {c.name} ({c.instances} instances)")
            out.extend(f"      {f}" for f in c.failures)
        return out

    def to_json(self) -> dict:
        return {
            "scope": self.scope,
            "ok": self.ok,
            "checks": [
                {
                    "name": c.name,
                    "instances": c.instances,
                    "ok": c.ok,
                    "failures": c.failures,
                }
                for c in self.checks
            ],
        }


def verify_lusztig_properties(
    cells: CellDecomposition,
    j: int,
    props: tuple[str, ...] = ("bar", "sym", "P2", "P5", "P7", "magic"),
    sample_limit: int = 200,
    full_pair_limit: int = 300,
) -> VerifyReport:
    """Check the positivity-package identities on one two-sided cell.

    bar: every h_{x,y,.} over the cell is bar invariant.
    sym: h_{x,y,z} = h_{y^-1,x^-1,z^-1}.
    P2/P5: gamma_{v,u,d} = delta_{v,u^-1} on each diagonal H-cell (Duflo unit).
    P7: cyclic symmetry gamma_{a,b,c} = gamma_{c,a,b}.
    magic: sum_z h_{x1,x2,z} gamma_{z,x3,y^-1} = sum_z h_{x1,z,y} gamma_{x2,x3,z^-1}.

    Cells up to ``full_pair_limit`` elements get the exhaustive pass over all
    pairs with unrestricted product columns; larger cells get a
    deterministically sampled pass with columns restricted to the cell, plus
    the full Duflo checks.
    """
    sys = cells.system
    hk = cells.hecke
    inv = sys.inverse_id
    cell = cells.two_cells[j]
    a = cells.a_of_cell[j]
    members = cells.members(j)
    small = len(cell) <= full_pair_limit
    rng = random.Random(20260808 + j)
    report = VerifyReport(scope=f"{sys.type} cell {cells.cell_names[j]}")

    def column(x, y):
        if small:
            return hk.h_polys_raw(x, y)
        return hk.h_polys_raw(x, y, restrict=members, restrict_key=("J", j))

    def gamma_row(x, y):
        entry = {}
        for zi, p in column(x, y).items():
            if zi in members:
                g = p.get(-a, 0)
                if g:
                    entry[inv[zi]] = g
        return entry

    want = set(props)
    if small:
        pairs = [(x, y) for x in cell for y in cell]
    else:
        pool = sorted({(rng.choice(cell), rng.choice(cell)) for _ in range(sample_limit)})
        # sampled pairs must be closed under the partner map used by "sym"
        pairs = sorted({p for x, y in pool for p in [(x, y), (inv[y], inv[x])]})

    fingerprints: dict[tuple[int, int], tuple[int, int]] = {}
    gam: dict[tuple[int, int], dict[int, int]] = {}

    if want & {"bar", "sym", "P7", "magic"}:
        bar_check = report.check("bar invariance of h") if "bar" in want else None
        for x, y in pairs:
            vec = column(x, y)
            if bar_check is not None:
                ok = all(p.get(-e, 0) == c for p in vec.values() for e, c in p.items())
                bar_check.record(ok, f"h_{{{x},{y},.}} not bar invariant")
            plain = tuple(sorted((z, tuple(sorted(p.items()))) for z, p in vec.items()))
            inved = tuple(sorted((inv[z], tuple(sorted(p.items()))) for z, p in vec.items()))
            fingerprints[(x, y)] = (hash(plain), hash(inved))
            gam[(x, y)] = gamma_row(x, y)

    if "sym" in want:
        sym = report.check("h_{x,y,z} = h_{y^-1,x^-1,z^-1}")
        for (x, y), (plain, _) in fingerprints.items():
            sym.record(plain == fingerprints[(inv[y], inv[x])][1], f"symmetry fails at ({x},{y})")

    if "P7" in want:
        cyc = report.check("gamma cyclicity")
        for (x, y), entry in gam.items():
            for z, g in entry.items():
                other = gam[(z, x)] if (z, x) in gam else gamma_row(z, x)
                cyc.record(other.get(y, 0) == g, f"gamma({x},{y},{z})")

    if want & {"P2", "P5"}:
        dd = report.check("gamma_{v,u,d} = delta_{v,u^-1} at each Duflo")
        for L in cells.left_cells_of(j):
            d = cells.duflo_involution(L)
            H = cells.diagonal_h_cell(L)
            for v in H:
                for u in H:
                    g = gam[(v, u)].get(d, 0) if (v, u) in gam else cells.gamma(v, u, d)
                    expect = 1 if u == inv[v] else 0
                    dd.record(g == expect, f"gamma({v},{u},{d}) = {g} != {expect}")

    if "magic" in want:
        magic = report.check("h/gamma exchange identity")
        if small and len(cell) ** 4 <= sample_limit:
            quads = [(x1, x2, x3, y) for x1 in cell for x2 in cell for x3 in cell for y in cell]
        else:
            quads = [tuple(rng.choice(cell) for _ in range(4)) for _ in range(min(sample_limit, 60))]
        for x1, x2, x3, y in quads:
            # sum over z of h_{x1,x2,z} gamma_{z,x3,y^-1}: only z in the cell
            # contribute since gamma vanishes across cells
            lhs = LaurentPoly()
            for z, p in column(x1, x2).items():
                if z in members:
                    row = gam[(z, x3)] if (z, x3) in gam else gamma_row(z, x3)
                    g = row.get(inv[y], 0)
                    if g:
                        lhs = lhs + LaurentPoly(p) * g
            rhs = LaurentPoly()
            row23 = gam[(x2, x3)] if (x2, x3) in gam else gamma_row(x2, x3)
            for w, g in row23.items():  # w = z^-1, gamma_{x2,x3,z^-1}
                p = column(x1, inv[w]).get(y)
                if p:
                    rhs = rhs + LaurentPoly(p) * g
            magic.record(lhs == rhs, f"exchange identity fails at {(x1, x2, x3, y)}")

    return report


def verify_cell_rep_identities(cells: CellDecomposition, L: int) -> VerifyReport:
    """Decategorified checks for the cell 2-representation of one H-cell:

    (i)   sum_v h_{x^-1,v,d} gamma_{w,v,u^-1} = h_{w,x,u} on H;
    (ii)  graded Cartan shape: degrees within [0, 2a], constant term
          delta_{x,y}, diagonal top term exactly v^(2a), off-diagonal
          degrees within [1, 2a-1], and symmetry;
    (iii) v^-a (v^a h_{w,x,u}) is bar invariant;
    (iv)  multiplying by the Duflo unit: v^a h_{w,d,z} lies in 1 + ... + v^2a
          when z = w and within degrees [1, 2a-1] otherwise;
    (v)   the expansion h_{w,x,u} = sum_v h_{w,d,v} gamma_{v,x,u^-1} holds
          exactly (hence also after setting v = 1).
    """
    sys = cells.system
    d = cells.duflo_of_left[L]
    H = cells.diagonal_h_cell(L)
    j = cells.two_of[d]
    a = cells.a_of_cell[j]
    members = cells.members(j)
    inv = sys.inverse_id
    report = VerifyReport(scope=f"{sys.type} H-cell of left cell {L} (size {len(H)})")

    hs: dict[tuple[int, int], dict[int, LaurentPoly]] = {}
    for y in H:
        cols = cells.hecke.h_on_cell(tuple(H), y, members, ("J", j))
        for x in H:
            hs[(x, y)] = {z: p for z, p in cols[x].items() if z in set(H)}
    gamma = {
        (x, y): {inv[z]: p.coefficient(-a) for z, p in hs[(x, y)].items() if p.coefficient(-a)}
        for x, y in hs
    }

    magic = report.check("unique-solution identity for the bimodule multiplicities")
    for w in H:
        for x in H:
            for u in H:
                lhs = LaurentPoly()
                for v in H:
                    g = gamma[(w, v)].get(inv[u], 0)
                    if g:
                        lhs = lhs + hs[(inv[x], v)].get(d, LaurentPoly()) * g
                magic.record(
                    lhs == hs[(w, x)].get(u, LaurentPoly()),
                    f"multiplicity identity fails at {(w, x, u)}",
                )

    cartan = report.check("graded Cartan shape")
    for x in H:
        for y in H:
            p = hs[(inv[y], x)].get(d, LaurentPoly()).shift(a)
            q = hs[(inv[x], y)].get(d, LaurentPoly()).shift(a)
            ok = p == q and p.is_nonnegative()
            if x == y:
                ok = ok and p.coefficient(0) == 1 and p.max_deg == 2 * a and p.coefficient(2 * a) == 1
            else:
                ok = ok and (not p or (p.min_deg >= 1 and p.max_deg <= 2 * a - 1))
            cartan.record(ok, f"Cartan entry ({x},{y}) = {p.text()}")

    bar = report.check("bar invariance of h on the H-cell")
    for (w, x), vec in hs.items():
        for u, p in vec.items():
            bar.record(p.is_bar_invariant(), f"h({w},{x},{u})")

    duflo_shape = report.check("Duflo column shape")
    for w in H:
        for z in H:
            p = hs[(w, d)].get(z, LaurentPoly()).shift(a)
            if z == w:
                ok = bool(p) and p.coefficient(0) == 1 and p.max_deg == 2 * a
            else:
                ok = not p or (p.min_deg >= 1 and p.max_deg <= 2 * a - 1)
            duflo_shape.record(ok, f"v^a h({w},{d},{z}) = {p.text()}")

    phi = report.check("Duflo-column expansion of h")
    for w in H:
        for x in H:
            for u in H:
                rhs = LaurentPoly()
                for v in H:
                    g = gamma[(v, x)].get(inv[u], 0)
                    if g:
                        rhs = rhs + hs[(w, d)].get(v, LaurentPoly()) * g
                phi.record(
                    rhs == hs[(w, x)].get(u, LaurentPoly()),
                    f"expansion fails at {(w, x, u)}",
                )

    return report
