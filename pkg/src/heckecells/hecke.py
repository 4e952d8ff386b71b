"""The Hecke algebra of a finite Coxeter system in its Kazhdan-Lusztig basis.

Conventions.  The standard basis {T_w} satisfies
``(T_s - v^-1)(T_s + v) = 0`` and ``T_x T_y = T_xy`` when lengths add.  The
KL basis element

    b_w = sum_x  v^(l(w) - l(x)) P_{x,w}(v^-2) T_x

is the unique bar-invariant element of T_w + sum_{x<w} v Z[v] T_x; in
particular b_s = T_s + v and b_s b_s = (v + v^-1) b_s.  Structure
constants h_{x,y,z} are defined by b_x b_y = sum_z h_{x,y,z} b_z; they are
bar invariant with coefficients in N_0.

Storage.  The T_x-coefficient of b_w is determined by the classical
polynomial P_{x,w}; we keep its coefficient tuple (p_0, p_1, ...), p_k
being the coefficient of q^k = v^-2k, interned in a pool because a handful
of polynomials account for nearly all entries.  mu(x, w) is the
coefficient of v in the T_x-coefficient of b_w, i.e. p_k at the degree
bound k = (l(w) - l(x) - 1)/2; the nonzero mu values drive both the
one-generator products used everywhere below and the cell preorders.

Products.  h_{x,y,*} is computed by the left-handed recursion

    b_x b_y = b_s (b_x' b_y) - sum_{z : s in LD(z)} mu(z, x') b_z b_y

with x = s x', memoized per y, entirely in the KL basis.  When only structure constants
inside one two-sided cell are wanted, the computation can run in the
quotient by the span of all strictly higher cells (a two-sided ideal), so
vectors stay no larger than a left cell.
"""

from __future__ import annotations

from array import array
from bisect import bisect_left
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .budget import Budget
from .coxeter import CoxeterSystem
from .errors import PropertyViolation
from .laurent import LaurentPoly

__all__ = ["HeckeTable", "KLBasisElement"]


@dataclass(frozen=True)
class KLBasisElement:
    """Expansion of b_w in the standard basis: x -> coefficient of T_x."""

    w: int
    expansion: dict[int, LaurentPoly]

    def coefficient(self, x: int) -> LaurentPoly:
        return self.expansion.get(x, LaurentPoly())


class HeckeTable:
    """KL expansions, mu table and h-structure constants for one system."""

    def __init__(self, system: CoxeterSystem, budget: Budget | None = None, jobs: int = 1):
        self.system = system
        self.budget = budget or Budget()
        self._build_kl(jobs)
        # h-columns: (y, restrict_key) -> {x: {z: {exp: coeff}}}
        self._cols: dict = {}

    # -- KL basis construction ----------------------------------------------

    def _build_kl(self, jobs: int) -> None:
        sys = self.system
        size = sys.size
        n = sys.rank
        trans = sys.trans
        rdesc = sys.rdesc
        length = sys.length
        budget = self.budget

        pool: list[tuple[int, ...]] = [(1,)]
        pool_index: dict[tuple[int, ...], int] = {(1,): 0}
        rows_x: list = [array("i", [0])]
        rows_p: list = [array("i", [0])]
        mu_rows: list = [array("i")]

        def compute_raw(w: int) -> dict[int, list[int]]:
            s = (rdesc[w] & -rdesc[w]).bit_length() - 1
            u = trans[w * n + s]
            row: dict[int, list[int]] = {}
            ux, up = rows_x[u], rows_p[u]
            for i in range(len(ux)):
                x = ux[i]
                p = pool[up[i]]
                shift = 1 if rdesc[x] >> s & 1 else 0
                xs = trans[x * n + s]
                for tgt in (xs, x):
                    cur = row.get(tgt)
                    if cur is None:
                        row[tgt] = [0] * shift + list(p)
                    else:
                        need = shift + len(p)
                        if len(cur) < need:
                            cur.extend([0] * (need - len(cur)))
                        for k in range(len(p)):
                            cur[shift + k] += p[k]
            lw = length[w]
            mr = mu_rows[u]
            for i in range(0, len(mr), 2):
                z = mr[i]
                if not rdesc[z] >> s & 1:
                    continue
                mu = mr[i + 1]
                d = (lw - length[z]) >> 1
                zx, zp = rows_x[z], rows_p[z]
                for j in range(len(zx)):
                    x = zx[j]
                    p = pool[zp[j]]
                    cur = row.get(x)
                    if cur is None:
                        raise PropertyViolation("mu correction outside product support")
                    need = d + len(p)
                    if len(cur) < need:
                        cur.extend([0] * (need - len(cur)))
                    for k in range(len(p)):
                        cur[d + k] -= mu * p[k]
            return row

        def freeze(w: int, row: dict[int, list[int]]) -> None:
            lw = length[w]
            xs_out = array("i")
            ps_out = array("i")
            mu_out = array("i")
            for x in sorted(row):
                p = row[x]
                while p and p[-1] == 0:
                    p.pop()
                if not p:
                    continue
                d = lw - length[x]
                if x == w:
                    if p != [1]:
                        raise PropertyViolation(f"leading KL coefficient at w={w} is {p}")
                elif len(p) - 1 > (d - 1) // 2 or min(p) < 0:
                    raise PropertyViolation(f"KL positivity/degree failure at ({x}, {w}): {p}")
                tp = tuple(p)
                pid = pool_index.get(tp)
                if pid is None:
                    pid = len(pool)
                    pool_index[tp] = pid
                    pool.append(tp)
                xs_out.append(x)
                ps_out.append(pid)
                if x != w and d & 1 and len(p) == (d + 1) // 2:
                    mu_out.append(x)
                    mu_out.append(p[-1])
            rows_x.append(xs_out)
            rows_p.append(ps_out)
            mu_rows.append(mu_out)
            budget.charge_h(len(xs_out))

        if jobs > 1:
            # independent within a length level; merge in id order for
            # bit-identical tables regardless of worker count
            level_starts: list[int] = [0]
            for w in range(1, size):
                if length[w] != length[w - 1]:
                    level_starts.append(w)
            level_starts.append(size)
            with ThreadPoolExecutor(max_workers=jobs) as pool_exec:
                for li in range(1, len(level_starts) - 1):
                    lo, hi = level_starts[li], level_starts[li + 1]
                    for w, row in zip(range(lo, hi), pool_exec.map(compute_raw, range(lo, hi))):
                        freeze(w, row)
                    budget.check_clock()
        else:
            for w in range(1, size):
                freeze(w, compute_raw(w))
                if w % 4096 == 0:
                    budget.check_clock()

        self._pool = pool
        self._rows_x = rows_x
        self._rows_p = rows_p
        self.mu_rows = mu_rows
        # valuation of the T_e coefficient: l(w) - 2 deg_q P_{e,w}
        self.delta = array("i", (
            length[w] - 2 * (len(pool[rows_p[w][0]]) - 1) for w in range(size)
        ))

    # -- KL basis queries ----------------------------------------------------

    def kl_poly(self, x: int, w: int) -> tuple[int, ...]:
        """Coefficient tuple of the classical polynomial P_{x,w} in q."""
        xs = self._rows_x[w]
        i = bisect_left(xs, x)
        if i == len(xs) or xs[i] != x:
            return ()
        return self._pool[self._rows_p[w][i]]

    def kl_coefficient(self, x: int, w: int) -> LaurentPoly:
        """Coefficient of T_x in b_w as a Laurent polynomial in v."""
        p = self.kl_poly(x, w)
        d = self.system.length[w] - self.system.length[x]
        return LaurentPoly({d - 2 * k: c for k, c in enumerate(p)})

    def kl_basis(self, w: int) -> KLBasisElement:
        length = self.system.length
        lw = length[w]
        exp = {}
        xs, ps = self._rows_x[w], self._rows_p[w]
        for i in range(len(xs)):
            x = xs[i]
            d = lw - length[x]
            exp[x] = LaurentPoly({d - 2 * k: c for k, c in enumerate(self._pool[ps[i]])})
        return KLBasisElement(w, exp)

    def kl_support(self, w: int) -> array:
        return self._rows_x[w]

    def mu(self, x: int, w: int) -> int:
        mr = self.mu_rows[w]
        for i in range(0, len(mr), 2):
            if mr[i] == x:
                return mr[i + 1]
        return 0

    # -- products in the KL basis --------------------------------------------

    def _bs_apply(self, s: int, vec: dict, restrict) -> dict:
        """Left multiplication by b_s of a KL-basis vector {z: poly-dict}."""
        sys = self.system
        ldesc = sys.ldesc
        mu_rows = self.mu_rows
        left_mul = sys.left_mul
        out: dict[int, dict[int, int]] = {}
        for z, p in vec.items():
            if ldesc[z] >> s & 1:
                tgt = out.get(z)
                if tgt is None:
                    tgt = out[z] = {}
                for e, a in p.items():
                    tgt[e + 1] = tgt.get(e + 1, 0) + a
                    tgt[e - 1] = tgt.get(e - 1, 0) + a
            else:
                sz = left_mul(s, z)
                if restrict is None or sz in restrict:
                    tgt = out.get(sz)
                    if tgt is None:
                        tgt = out[sz] = {}
                    for e, a in p.items():
                        tgt[e] = tgt.get(e, 0) + a
                mr = mu_rows[z]
                for i in range(0, len(mr), 2):
                    q = mr[i]
                    if ldesc[q] >> s & 1 and (restrict is None or q in restrict):
                        m = mr[i + 1]
                        tgt = out.get(q)
                        if tgt is None:
                            tgt = out[q] = {}
                        for e, a in p.items():
                            tgt[e] = tgt.get(e, 0) + m * a
        return out

    def _ensure_column(self, y: int, need_xs, restrict=None, restrict_key=None) -> dict:
        """h_{x,y,*} for every x in need_xs, memoized per (y, restriction).

        With ``restrict`` (a set of element ids closed under the relevant
        products, typically a two-sided cell), coefficients are computed in
        the quotient by all b_u with u outside the set; entries at z inside
        the set are unaffected because higher cells span a two-sided ideal.
        """
        sys = self.system
        key = (y, restrict_key)
        col = self._cols.get(key)
        if col is None:
            col = self._cols[key] = {0: {y: {0: 1}}}
        first = sys.first_letter
        ldesc = sys.ldesc
        left_mul = sys.left_mul
        mu_rows = self.mu_rows
        length = sys.length

        stack = [x for x in need_xs if x not in col]
        if not stack:
            return col
        seen = set(col)
        seen.update(stack)
        closure = list(stack)
        while stack:
            x = stack.pop()
            s = first[x]
            x2 = left_mul(s, x)
            if x2 not in seen:
                seen.add(x2)
                closure.append(x2)
                stack.append(x2)
            mr = mu_rows[x2]
            for i in range(0, len(mr), 2):
                z = mr[i]
                if ldesc[z] >> s & 1 and z not in seen:
                    seen.add(z)
                    closure.append(z)
                    stack.append(z)
        closure.sort(key=length.__getitem__)

        budget = self.budget
        for x in closure:
            s = first[x]
            x2 = left_mul(s, x)
            vec = self._bs_apply(s, col[x2], restrict)
            mr = mu_rows[x2]
            for i in range(0, len(mr), 2):
                z = mr[i]
                if not ldesc[z] >> s & 1:
                    continue
                m = mr[i + 1]
                for u, p in col[z].items():
                    tgt = vec.get(u)
                    if tgt is None:
                        tgt = vec[u] = {}
                    for e, a in p.items():
                        tgt[e] = tgt.get(e, 0) - m * a
            for u in list(vec):
                p = vec[u]
                for e in [e for e, a in p.items() if not a]:
                    del p[e]
                if not p:
                    del vec[u]
            col[x] = vec
            budget.charge_h(len(vec) + 1)
        budget.check_clock()
        return col

    def h_constants(self, x: int, y: int) -> dict[int, LaurentPoly]:
        """b_x b_y = sum_z h_{x,y,z} b_z, as a map z -> h (exact)."""
        col = self._ensure_column(y, (x,))
        return {z: LaurentPoly(p) for z, p in sorted(col[x].items())}

    def h_on_cell(self, xs, y: int, cell: frozenset[int], cell_key, drop: bool = False) -> dict:
        """Columns h_{x,y,*} for x in xs, in the quotient past ``cell``.

        Returns {x: {z: LaurentPoly}} with z restricted to ``cell``; exact
        for those z.  ``drop`` releases the column memo afterwards (the
        closures over big cells are transiently large).
        """
        col = self._ensure_column(y, tuple(xs), restrict=cell, restrict_key=cell_key)
        out = {
            x: {z: LaurentPoly(p) for z, p in sorted(col[x].items())}
            for x in xs
        }
        if drop:
            del self._cols[(y, cell_key)]
        return out

    def h_polys_raw(self, x: int, y: int, restrict=None, restrict_key=None) -> dict:
        """Internal: {z: {exp: coeff}} without LaurentPoly wrapping."""
        col = self._ensure_column(y, (x,), restrict=restrict, restrict_key=restrict_key)
        return col[x]

    def drop_columns(self) -> None:
        """Release all memoized h-columns (the KL table itself stays)."""
        self._cols.clear()

    # -- cache import/export -----------------------------------------------------

    def export_cache(self):
        """Snapshot of the KL table plus all unrestricted h-columns."""
        from .cache import CacheFile

        cache = CacheFile(type_descriptor=str(self.system.type))
        for w in range(self.system.size):
            xs, ps = self._rows_x[w], self._rows_p[w]
            cache.kl_records.append(
                (w, [(xs[i], self._pool[ps[i]]) for i in range(len(xs))])
            )
        for (y, rkey), col in self._cols.items():
            if rkey is not None:
                continue
            for x, vec in col.items():
                if x == 0:
                    continue
                cache.h_records.append((x, y, {z: dict(p) for z, p in vec.items()}))
        cache.canonicalize()
        return cache

    @classmethod
    def from_cache(cls, system: CoxeterSystem, cache, budget: Budget | None = None):
        """Rebuild the tables from a cache snapshot of the same type."""
        from .errors import CorruptCache

        if cache.type_descriptor != str(system.type):
            raise CorruptCache(
                f"cache is for {cache.type_descriptor!r}, not {system.type}"
            )
        self = cls.__new__(cls)
        self.system = system
        self.budget = budget or Budget()
        size = system.size
        length = system.length
        if [w for w, _ in cache.kl_records] != list(range(size)):
            raise CorruptCache("cache does not cover every element exactly once")
        pool: list[tuple[int, ...]] = []
        pool_index: dict[tuple[int, ...], int] = {}
        rows_x, rows_p, mu_rows = [], [], []
        for w, entries in cache.kl_records:
            lw = length[w]
            xs_out = array("i")
            ps_out = array("i")
            mu_out = array("i")
            prev = -1
            for x, p in entries:
                if x <= prev or not p or p[-1] == 0 or min(p) < 0:
                    raise CorruptCache(f"malformed KL record for w={w}")
                prev = x
                d = lw - length[x]
                if x == w:
                    if p != (1,):
                        raise CorruptCache(f"bad leading coefficient for w={w}")
                elif len(p) - 1 > (d - 1) // 2:
                    raise CorruptCache(f"KL degree bound violated at ({x}, {w})")
                pid = pool_index.get(p)
                if pid is None:
                    pid = pool_index[p] = len(pool)
                    pool.append(p)
                xs_out.append(x)
                ps_out.append(pid)
                if x != w and d & 1 and len(p) == (d + 1) // 2:
                    mu_out.append(x)
                    mu_out.append(p[-1])
            rows_x.append(xs_out)
            rows_p.append(ps_out)
            mu_rows.append(mu_out)
        self._pool = pool
        self._rows_x = rows_x
        self._rows_p = rows_p
        self.mu_rows = mu_rows
        self.delta = array("i", (
            length[w] - 2 * (len(pool[rows_p[w][0]]) - 1) for w in range(size)
        ))
        self._cols = {}
        for x, y, vec in cache.h_records:
            col = self._cols.setdefault((y, None), {0: {y: {0: 1}}})
            col[x] = {z: dict(p) for z, p in vec.items()}
        return self

    # -- stats ----------------------------------------------------------------

    def pair_count(self) -> int:
        return sum(len(r) for r in self._rows_x)

    def __repr__(self) -> str:
        return f"HeckeTable({self.system.type}, {self.pair_count()} KL entries)"
