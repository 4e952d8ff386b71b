"""Identification of asymptotic categories and the resulting enumeration of
simple transitive 2-representations per two-sided cell.

Identification is by decategorified fingerprints: the cell matrix (all
H-cells singletons <=> a unique rank-1 representative) and the gamma-ring
of a convenient diagonal H-cell, matched against reference rings: group
rings of (Z/2)^k, character rings of S3, S4, S5 (built from scratch via
Murnaghan-Nakayama), and the integer-spin quantum sl2 rings for dihedral
middle cells.  The genuinely categorical distinctions that are invisible at
this level (the cohomological twist of the E7/E8 exceptional cells, the two
candidates left open in types H3/H4) come from a fixed lookup table keyed
by a-value, never from a guess.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as iproduct

from .asymptotic import (
    FusionRing,
    build_fusion_ring,
    pf_dimensions,
    rings_isomorphic,
    so3_fusion_ring,
)
from .cells import CellDecomposition, CellMatrix
from .coxeter import CoxeterType
from .errors import BudgetExceeded, UnrecognizedRing

__all__ = [
    "CategoryTag",
    "ClassificationRecord",
    "SimpleTransitive",
    "ade_diagrams",
    "classification_records",
    "enumerate_simple_transitives",
    "group_data",
    "identify_category",
    "rep_sn_ring",
]


# -- symmetric group character rings ------------------------------------------

def _partitions(n: int) -> list[tuple[int, ...]]:
    if n == 0:
        return [()]
    out = []

    def rec(rest, most, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for part in range(min(rest, most), 0, -1):
            rec(rest - part, part, prefix + [part])

    rec(n, n, [])
    return out


def _mn_character(lam: tuple[int, ...], mu: tuple[int, ...]) -> int:
    """chi^lam(mu) by the Murnaghan-Nakayama rule, on beta-sets.

    Removing a border strip of size k is replacing a beta-number b by
    b - k (when free); the strip height is the number of beta-numbers
    jumped over.
    """
    if not mu:
        return 1 if not lam else 0
    k, rest = mu[0], mu[1:]
    m = len(lam)
    beta = [lam[i] + (m - 1 - i) for i in range(m)]
    bset = set(beta)
    total = 0
    for b in beta:
        nb = b - k
        if nb < 0 or nb in bset:
            continue
        ht = sum(1 for c in beta if nb < c < b)
        new_beta = sorted((c for c in beta if c != b), reverse=True)
        new_beta.append(nb)
        new_beta.sort(reverse=True)
        mm = len(new_beta)
        new_lam = tuple(
            x for x in (new_beta[i] - (mm - 1 - i) for i in range(mm)) if x > 0
        )
        total += (-1) ** ht * _mn_character(new_lam, rest)
    return total


def _class_size(n: int, mu: tuple[int, ...]) -> int:
    z = 1
    fact = [1] * (n + 1)
    for i in range(2, n + 1):
        fact[i] = fact[i - 1] * i
    mult: dict[int, int] = {}
    for part in mu:
        mult[part] = mult.get(part, 0) + 1
    for part, m in mult.items():
        z *= part**m * fact[m]
    return fact[n] // z


@lru_cache(maxsize=None)
def rep_sn_ring(n: int) -> FusionRing:
    """The character ring of S_n as a fusion ring (basis: irreducibles)."""
    lams = _partitions(n)
    classes = _partitions(n)
    sizes = [_class_size(n, mu) for mu in classes]
    order = sum(sizes)
    table = [[_mn_character(lam, mu) for mu in classes] for lam in lams]
    r = len(lams)
    N = [[[0] * r for _ in range(r)] for _ in range(r)]
    for a in range(r):
        for b in range(r):
            for c in range(r):
                s = sum(
                    sizes[k] * table[a][k] * table[b][k] * table[c][k]
                    for k in range(len(classes))
                )
                if s % order:
                    raise ArithmeticError("tensor multiplicity is not integral")
                N[a][b][c] = s // order
    unit = lams.index((n,) if n else ())
    return FusionRing(
        basis=tuple(lams),
        unit=unit,
        duality=tuple(range(r)),
        structure=tuple(tuple(tuple(row) for row in plane) for plane in N),
    )


# -- reference-ring predicates ---------------------------------------------------

def _group_like_table(ring: FusionRing):
    """If every product a_x a_y is a single basis element, return the group
    multiplication table, else None."""
    r = ring.rank
    table = []
    for x in range(r):
        row = []
        for y in range(r):
            hits = [z for z in range(r) if ring.structure[x][y][z]]
            if len(hits) != 1 or ring.structure[x][y][hits[0]] != 1:
                return None
            row.append(hits[0])
        table.append(row)
    return table

def elementary_abelian_two_rank(ring: FusionRing) -> int | None:
    """k if the ring is the group ring of (Z/2)^k, else None."""
    table = _group_like_table(ring)
    if table is None:
        return None
    r = ring.rank
    if r & (r - 1):
        return None
    d = ring.unit
    if any(table[x][x] != d for x in range(r)):
        return None
    if any(table[x][y] != table[y][x] for x in range(r) for y in range(r)):
        return None
    return r.bit_length() - 1


# -- category tags ------------------------------------------------------------------

@dataclass(frozen=True)
class CategoryTag:
    """Identified asymptotic category of a two-sided cell.

    kind is one of Strict1x1, VectElemAbelian, RepS3, RepS4, RepS5, SO3,
    VectZ2Twisted, AmbiguousH; ``param`` carries k for VectElemAbelian and
    the level for SO3; ``candidates`` the open options for AmbiguousH.
    """

    kind: str
    param: int = 0
    candidates: tuple[str, ...] = ()
    evidence: tuple = ()

    @property
    def vect_rank(self) -> int | None:
        """k such that the tag is Vect((Z/2)^k); Strict1x1 counts as k = 0."""
        if self.kind == "Strict1x1":
            return 0
        if self.kind == "VectElemAbelian":
            return self.param
        return None

    @property
    def open(self) -> bool:
        return self.kind == "AmbiguousH"

    def display(self) -> str:
        if self.kind == "Strict1x1":
            return "Vect"
        if self.kind == "VectElemAbelian":
            return f"Vect((Z/2)^{self.param})"
        if self.kind in ("RepS3", "RepS4", "RepS5"):
            return f"Rep(S{self.kind[-1]})"
        if self.kind == "SO3":
            return f"SO(3)_{self.param}"
        if self.kind == "VectZ2Twisted":
            return "Vect^s(Z/2)"
        if self.kind == "AmbiguousH":
            if not self.candidates:
                return "open"
            return "open: " + " | ".join(self.candidates)
        return self.kind


# The distinctions below live above the Grothendieck level.  Exceptional
# cells (nontrivial associator on Vect(Z/2)): one in E7, two in E8, keyed by
# a-value.  In H3/H4 the candidate pairs are fixed per cell, with only the
# subregular cell (a = 1) pinned down.
_EXCEPTIONAL_CELLS = {("E", 7): (11,), ("E", 8): (11, 26)}

_SO3_CANDIDATES = ("SO(3)_3", "M(2,5)")
_VECT_CANDIDATES = ("Vect(Z/2)", "Vect^s(Z/2)")
_H_FLAGGED = {
    (3, 1): "so3-known",
    (3, 3): "amb-vect",
    (3, 6): "amb-so3",
    (4, 1): "so3-known",
    (4, 2): "amb-so3",
    (4, 3): "amb-vect",
    (4, 6): "amb-open",
    (4, 18): "amb-vect",
    (4, 22): "amb-so3",
    (4, 31): "amb-so3",
}


def _h_cell_rings(cells: CellDecomposition, cm: CellMatrix):
    """One gamma-ring per column class, smallest diagonal H-cells first."""
    order = sorted(range(len(cm.classes)), key=lambda i: (cm.block_scalars[i][i], i))
    for ci in order:
        L = cm.classes[ci][0]
        yield ci, build_fusion_ring(cells, cells.diagonal_h_cell(L))


def identify_category(cells: CellDecomposition, j: int) -> CategoryTag:
    """Identify the asymptotic category of two-sided cell j (internal id)."""
    ctype: CoxeterType = cells.system.type
    a = cells.a_of_cell[j]
    cm = cells.cell_matrix(j)
    fingerprint = ("cellmatrix", tuple(cm.class_sizes), tuple(map(tuple, cm.block_scalars)))

    if all(n == 1 for row in cm.entries for n in row):
        return CategoryTag("Strict1x1", evidence=(fingerprint,))

    if ctype.family == "H":
        flag = _H_FLAGGED.get((ctype.rank, a))
        if flag == "amb-open":
            # both candidate sets are unknown; no ring check settles anything
            return CategoryTag("AmbiguousH", evidence=(fingerprint,))
        if flag is not None:
            # the candidates of a flagged cell share one Grothendieck ring;
            # checking it guards the a-value keyed lookup
            ci, ring = next(_h_cell_rings(cells, cm))
            ringprint = ("ring-rank", ring.rank)
            if flag == "amb-vect":
                ok = elementary_abelian_two_rank(ring) == 1
            else:
                ok = rings_isomorphic(ring, so3_fusion_ring(3))
            if not ok:
                raise UnrecognizedRing(
                    f"{ctype} cell a={a}: gamma-ring does not match its flag {flag}", ringprint
                )
            if flag == "so3-known":
                return CategoryTag("SO3", 3, evidence=(fingerprint, ringprint))
            candidates = _VECT_CANDIDATES if flag == "amb-vect" else _SO3_CANDIDATES
            return CategoryTag("AmbiguousH", candidates=candidates, evidence=(fingerprint, ringprint))

    if ctype.family == "I2" and 0 < a < ctype.m:
        return CategoryTag("SO3", ctype.m - 2, evidence=(fingerprint,))

    exceptional = a in _EXCEPTIONAL_CELLS.get((ctype.family, ctype.rank), ())

    last_print = None
    for ci, ring in _h_cell_rings(cells, cm):
        k = elementary_abelian_two_rank(ring)
        ringprint = (
            "ring",
            ring.rank,
            tuple(sorted(round(d, 6) for d in pf_dimensions(ring).values())),
        )
        last_print = ringprint
        if k is not None:
            if exceptional:
                if k != 1:
                    raise UnrecognizedRing(f"exceptional cell with ring (Z/2)^{k}", ringprint)
                return CategoryTag("VectZ2Twisted", evidence=(fingerprint, ringprint))
            return CategoryTag("VectElemAbelian", k, evidence=(fingerprint, ringprint))
        for n in (3, 4, 5):
            if ring.rank == rep_sn_ring(n).rank and rings_isomorphic(ring, rep_sn_ring(n)):
                return CategoryTag(f"RepS{n}", evidence=(fingerprint, ringprint))
    raise UnrecognizedRing(f"{ctype} cell with a={a}: no identification rule fired",
                           (fingerprint, last_print))


# -- subgroup data and enumeration ----------------------------------------------

@dataclass(frozen=True)
class GroupDataRow:
    """One conjugacy class of subgroups: representative, how many classes of
    that shape, the order of its Schur multiplier, and the ranks of the
    attached module categories (trivial twist first)."""

    subgroup: str
    count: int
    schur_order: int
    ranks: tuple[int, ...]


_REP_TABLES: dict[str, list[GroupDataRow]] = {
    "S3": [
        GroupDataRow("1", 1, 1, (1,)),
        GroupDataRow("Z/2", 1, 1, (2,)),
        GroupDataRow("Z/3", 1, 1, (3,)),
        GroupDataRow("S3", 1, 1, (3,)),
    ],
    "S4": [
        GroupDataRow("1", 1, 1, (1,)),
        GroupDataRow("Z/2", 2, 1, (2,)),
        GroupDataRow("Z/3", 1, 1, (3,)),
        GroupDataRow("Z/4", 1, 1, (4,)),
        GroupDataRow("(Z/2)^2", 2, 2, (4, 1)),
        GroupDataRow("S3", 1, 1, (3,)),
        GroupDataRow("D4", 1, 2, (5, 2)),
        GroupDataRow("A4", 1, 2, (4, 3)),
        GroupDataRow("S4", 1, 2, (5, 3)),
    ],
    "S5": [
        GroupDataRow("1", 1, 1, (1,)),
        GroupDataRow("Z/2", 2, 1, (2,)),
        GroupDataRow("Z/3", 1, 1, (3,)),
        GroupDataRow("Z/4", 1, 1, (4,)),
        GroupDataRow("(Z/2)^2", 2, 2, (4, 1)),
        GroupDataRow("Z/5", 1, 1, (5,)),
        GroupDataRow("S3", 2, 1, (3,)),
        GroupDataRow("Z/6", 1, 1, (6,)),
        GroupDataRow("D4", 1, 2, (5, 2)),
        GroupDataRow("D5", 1, 2, (4, 2)),
        GroupDataRow("A4", 1, 2, (4, 3)),
        GroupDataRow("D6", 1, 2, (6, 3)),
        GroupDataRow("GA(1,5)", 1, 1, (5,)),
        GroupDataRow("S4", 1, 2, (5, 3)),
        GroupDataRow("A5", 1, 2, (5, 4)),
        GroupDataRow("S5", 1, 2, (7, 5)),
    ],
}


def _gaussian_binomial(n: int, k: int, q: int = 2) -> int:
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    assert num % den == 0
    return num // den


def group_data(group: str, k: int = 0) -> list[GroupDataRow]:
    """Subgroup classes with Schur multipliers and module-category ranks.

    ``group`` is "S3", "S4", "S5" or "ElemAbelian" (with k).  For
    (Z/2)^k the subgroup classes are the subspaces of F_2^k, counted by
    Gaussian binomials, with Schur multiplier (Z/2)^(l(l-1)/2) and rank
    2^(k-l) independent of the twist.
    """
    if group in _REP_TABLES:
        return list(_REP_TABLES[group])
    if group == "ElemAbelian":
        rows = []
        for l in range(k + 1):
            rows.append(
                GroupDataRow(
                    subgroup=f"(Z/2)^{l}",
                    count=_gaussian_binomial(k, l),
                    schur_order=2 ** (l * (l - 1) // 2),
                    ranks=(2 ** (k - l),),
                )
            )
        return rows
    raise ValueError(f"no subgroup data for {group!r}")


# -- ADE diagrams -----------------------------------------------------------------

@dataclass(frozen=True)
class ADEDiagram:
    name: str
    vertices: int
    coxeter_number: int
    #: a diagram automorphism exchanging the two color classes exists
    #: (then the two bicolorings are identified under automorphism + swap)
    color_swap: bool


def ade_diagrams(h: int) -> list[ADEDiagram]:
    """All ADE diagrams with Coxeter number h, h >= 2.

    A_{h-1} always; D_{h/2+1} for even h >= 6; E6, E7, E8 at h = 12, 18, 30.
    The flip of A_n exchanges the bicoloring exactly when n is even; no
    automorphism of D or E does.
    """
    if h < 2:
        raise ValueError("Coxeter number must be at least 2")
    out = [ADEDiagram(f"A{h - 1}", h - 1, h, color_swap=(h - 1) % 2 == 0)]
    if h % 2 == 0 and h >= 6:
        out.append(ADEDiagram(f"D{h // 2 + 1}", h // 2 + 1, h, color_swap=False))
    if h == 12:
        out.append(ADEDiagram("E6", 6, 12, color_swap=False))
    if h == 18:
        out.append(ADEDiagram("E7", 7, 18, color_swap=False))
    if h == 30:
        out.append(ADEDiagram("E8", 8, 30, color_swap=False))
    return out


# -- enumeration --------------------------------------------------------------------

@dataclass(frozen=True)
class SimpleTransitive:
    label: str
    rank: int | None


def enumerate_simple_transitives(
    tag: CategoryTag, identify_bicolorings: bool = False
) -> list[SimpleTransitive]:
    """Equivalence classes of simple transitive 2-representations for a tag.

    Vect(G): one class per (subgroup class, Schur twist), rank #G/#K.
    Rep(G): same index set; rank from the subgroup tables (twisted last).
    SO3(k): one class per bicolored ADE diagram with Coxeter number k + 2,
    rank the number of vertices; ``identify_bicolorings`` collapses the two
    colorings of a diagram when a color-swapping automorphism exists.
    """
    if tag.kind == "Strict1x1":
        return [SimpleTransitive("cell 2-representation", 1)]
    if tag.kind == "VectZ2Twisted":
        return [SimpleTransitive("regular 2-representation", 2)]
    if tag.kind == "AmbiguousH":
        return []
    if tag.kind == "VectElemAbelian":
        out = []
        for row in group_data("ElemAbelian", tag.param):
            for i in range(row.count):
                for t in range(row.schur_order):
                    label = f"K={row.subgroup}"
                    if row.count > 1:
                        label += f" [{i + 1}/{row.count}]"
                    label += " twisted" if t else " trivial twist"
                    out.append(SimpleTransitive(label, row.ranks[0]))
        return out
    if tag.kind in ("RepS3", "RepS4", "RepS5"):
        out = []
        for row in group_data("S" + tag.kind[-1]):
            for i in range(row.count):
                for t in range(row.schur_order):
                    label = f"Rep^w(K), K={row.subgroup}"
                    if row.count > 1:
                        label += f" [{i + 1}/{row.count}]"
                    label += " twisted" if t else " trivial twist"
                    out.append(SimpleTransitive(label, row.ranks[min(t, len(row.ranks) - 1)]))
        return out
    if tag.kind == "SO3":
        out = []
        for diag in ade_diagrams(tag.param + 2):
            if identify_bicolorings and diag.color_swap:
                out.append(SimpleTransitive(f"{diag.name} (bicolorings identified)", diag.vertices))
            else:
                out.append(SimpleTransitive(f"{diag.name} coloring 1", diag.vertices))
                out.append(SimpleTransitive(f"{diag.name} coloring 2", diag.vertices))
        return out
    raise ValueError(f"cannot enumerate for tag {tag.kind}")


# -- per-type classification table ---------------------------------------------------

@dataclass
class ClassificationRecord:
    cell_name: str
    size: int
    a: int
    tag: CategoryTag | None
    reps: list[SimpleTransitive] = field(default_factory=list)
    skipped: bool = False

    def to_json(self) -> dict:
        return {
            "cell": self.cell_name,
            "size": self.size,
            "a": self.a,
            "tag": None if self.tag is None else self.tag.display(),
            "kind": None if self.tag is None else self.tag.kind,
            "vect_rank": None if self.tag is None else self.tag.vect_rank,
            "open": bool(self.tag and self.tag.open),
            "candidates": list(self.tag.candidates) if self.tag else [],
            "reps": [{"label": r.label, "rank": r.rank} for r in self.reps],
            "skipped": self.skipped,
        }


def classification_records(
    cells: CellDecomposition, with_reps: bool = False
) -> list[ClassificationRecord]:
    """One record per two-sided cell, in classification-table order.

    Cells whose identification runs out of budget are marked skipped rather
    than aborting the whole table.
    """
    out = []
    for j in cells.display_order:
        rec = ClassificationRecord(
            cell_name=cells.cell_names[j],
            size=len(cells.two_cells[j]),
            a=cells.a_of_cell[j],
            tag=None,
        )
        try:
            rec.tag = identify_category(cells, j)
            if with_reps:
                rec.reps = enumerate_simple_transitives(rec.tag)
        except BudgetExceeded:
            rec.skipped = True
        out.append(rec)
    return out


def emit_classification_table(
    cells: CellDecomposition, fmt: str = "md", with_reps: bool = False
) -> str:
    """The per-type table (cell, size, a, asymptotic category) as text."""
    from .report import render_table

    rows = []
    for rec in classification_records(cells, with_reps=with_reps):
        row = {
            "cell": rec.cell_name,
            "size": rec.size,
            "a": rec.a,
            "A_H": "skipped" if rec.skipped else rec.tag.display(),
        }
        if with_reps:
            row["reps"] = "open" if rec.tag and rec.tag.open else ", ".join(
                f"{r.label} (rk {r.rank})" for r in rec.reps
            )
        rows.append(row)
    return render_table(rows, list(rows[0]) if rows else [], fmt)
