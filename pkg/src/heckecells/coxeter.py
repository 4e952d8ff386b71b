"""Finite Coxeter systems with a full element table.

Elements are enumerated breadth-first by length and indexed densely; within
a length level ids follow shortlex order on normal forms, so id 0 is the
identity and the last id is the longest element.  Each element is
represented during enumeration by the weight coordinates of w^-1 applied to
a regular dominant point, which makes the right action of a generator an
O(rank) update and gives descent sets from coordinate signs.

Crystallographic types (A, B, D, E, F) use integer Cartan data; H3, H4 use
exact arithmetic in Z[phi] with phi^2 = phi + 1; I2(m) uses a closed-form
dihedral model, so no irrational arithmetic is ever approximated.
"""

from __future__ import annotations

import re
from array import array
from dataclasses import dataclass
from functools import reduce
from typing import Iterator, Sequence

from .budget import Budget
from .errors import PropertyViolation, UnsupportedType

__all__ = ["CoxeterType", "CoxeterSystem", "Element", "build_system"]


# -- type descriptors --------------------------------------------------------

_TYPE_RE = re.compile(r"^([ABDEFH])\s*(\d+)$|^I2\((\d+)\)$", re.IGNORECASE)

_E_DEGREES = {
    6: (2, 5, 6, 8, 9, 12),
    7: (2, 6, 8, 10, 12, 14, 18),
    8: (2, 8, 12, 14, 18, 20, 24, 30),
}


@dataclass(frozen=True)
class CoxeterType:
    """A finite Coxeter type: family, rank, and (for I2) the bond order m."""

    family: str
    rank: int
    m: int = 0  # dihedral order, only for I2

    def __post_init__(self):
        f, n = self.family, self.rank
        ok = (
            (f == "A" and n >= 1)
            or (f == "B" and n >= 2)
            or (f == "D" and n >= 4)
            or (f == "E" and n in (6, 7, 8))
            or (f == "F" and n == 4)
            or (f == "H" and n in (3, 4))
            or (f == "I2" and n == 2 and self.m >= 3)
        )
        if not ok:
            raise UnsupportedType(f"not a supported finite Coxeter type: {self}")

    @classmethod
    def parse(cls, text: str) -> "CoxeterType":
        m = _TYPE_RE.match(text.strip())
        if not m:
            raise UnsupportedType(f"cannot parse type descriptor {text!r}")
        if m.group(3) is not None:
            return cls("I2", 2, int(m.group(3)))
        return cls(m.group(1).upper(), int(m.group(2)))

    @property
    def degrees(self) -> tuple[int, ...]:
        f, n = self.family, self.rank
        if f == "A":
            return tuple(range(2, n + 2))
        if f == "B":
            return tuple(range(2, 2 * n + 1, 2))
        if f == "D":
            return tuple(range(2, 2 * n - 1, 2)) + (n,)
        if f == "E":
            return _E_DEGREES[n]
        if f == "F":
            return (2, 6, 8, 12)
        if f == "H":
            return (2, 6, 10) if n == 3 else (2, 12, 20, 30)
        return (2, self.m)

    @property
    def order(self) -> int:
        return reduce(lambda a, b: a * b, self.degrees, 1)

    @property
    def longest_length(self) -> int:
        """l(w0) = number of positive roots = sum of (degrees - 1)."""
        return sum(d - 1 for d in self.degrees)

    def bonds(self) -> list[tuple[int, int, int]]:
        """Edges (i, j, m(i,j)) of the Coxeter diagram with m > 2."""
        f, n = self.family, self.rank
        if f == "A":
            return [(i, i + 1, 3) for i in range(n - 1)]
        if f == "B":
            return [(0, 1, 4)] + [(i, i + 1, 3) for i in range(1, n - 1)]
        if f == "D":
            return [(i, i + 1, 3) for i in range(n - 2)] + [(n - 3, n - 1, 3)]
        if f == "E":
            return [(0, 2, 3), (1, 3, 3)] + [(i, i + 1, 3) for i in range(2, n - 1)]
        if f == "F":
            return [(0, 1, 3), (1, 2, 4), (2, 3, 3)]
        if f == "H":
            return [(0, 1, 5)] + [(i, i + 1, 3) for i in range(1, n - 1)]
        return [(0, 1, self.m)]

    def coxeter_matrix(self) -> tuple[tuple[int, ...], ...]:
        n = self.rank
        m = [[2] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = 1
        for i, j, mij in self.bonds():
            m[i][j] = m[j][i] = mij
        return tuple(tuple(row) for row in m)

    def __str__(self) -> str:
        if self.family == "I2":
            return f"I2({self.m})"
        return f"{self.family}{self.rank}"


# -- element view ------------------------------------------------------------

@dataclass(frozen=True)
class Element:
    """A read-only record for one group element."""

    id: int
    normal_form: tuple[int, ...]
    length: int
    left_descents: frozenset[int]
    right_descents: frozenset[int]
    inverse_id: int


# -- golden-ratio scalars (H3 / H4) ------------------------------------------

def _golden_sign(a: int, b: int) -> int:
    """Sign of a + b*phi with phi = (1 + sqrt 5)/2."""
    u = 2 * a + b
    if b == 0:
        return (u > 0) - (u < 0)
    if u == 0:
        return (b > 0) - (b < 0)
    if u > 0 and b > 0:
        return 1
    if u < 0 and b < 0:
        return -1
    if u > 0:  # b < 0
        return 1 if u * u > 5 * b * b else -1
    return 1 if u * u < 5 * b * b else -1


# -- enumeration -------------------------------------------------------------

class CoxeterSystem:
    """A fully enumerated finite Coxeter group.

    Immutable after construction; all tables are dense arrays indexed by
    element id, safe to share read-only.
    """

    def __init__(self, ctype: CoxeterType, budget: Budget | None = None):
        budget = budget or Budget()
        order = ctype.order
        budget.check_elements(order, f"type {ctype}")

        self.type = ctype
        self.rank = ctype.rank
        self.generators = tuple(range(ctype.rank))
        self.coxeter_matrix = ctype.coxeter_matrix()

        if ctype.family == "I2":
            self._build_dihedral(ctype.m)
        else:
            self._build_matrix_model(ctype, budget)
        self.size = len(self.length)
        if self.size != order:
            raise PropertyViolation(
                f"enumeration of {ctype} produced {self.size} elements, expected {order}"
            )
        self.w0 = self.size - 1
        if self.length[self.w0] != ctype.longest_length:
            raise PropertyViolation(f"longest element of {ctype} has wrong length")

        self._finalize(budget)

    # -- construction ------------------------------------------------------

    def _build_matrix_model(self, ctype: CoxeterType, budget: Budget) -> None:
        n = ctype.rank
        golden = ctype.family == "H"
        # cart[i][j] such that s_i(x)_j = x_j - x_i * cart[i][j] in weight coords
        if golden:
            cart = [[(0, 0)] * n for _ in range(n)]
            for i in range(n):
                cart[i][i] = (2, 0)
            for i, j, m in ctype.bonds():
                val = (0, -1) if m == 5 else (-1, 0)
                cart[i][j] = cart[j][i] = val
        else:
            cart = [[0] * n for _ in range(n)]
            for i in range(n):
                cart[i][i] = 2
            for i, j, m in ctype.bonds():
                if m == 3:
                    cart[i][j] = cart[j][i] = -1
                elif m == 4:
                    cart[i][j], cart[j][i] = -1, -2
                else:
                    raise UnsupportedType(f"unexpected bond order {m} in {ctype}")
        rows = [
            [(j, cart[i][j]) for j in range(n) if (cart[i][j] != (0, 0) if golden else cart[i][j])]
            for i in range(n)
        ]

        if golden:
            state0 = tuple((1, 0) for _ in range(n))
        else:
            state0 = (1,) * n
        index: dict = {state0: 0}
        states = [state0]
        parent = array("i", [-1])
        parent_gen = array("b", [-1])
        length = array("i", [0])
        trans = array("i", [-1] * n)

        head = 0
        while head < len(states):
            st = states[head]
            lw = length[head]
            base = head * n
            for s in range(n):
                if trans[base + s] >= 0:
                    continue
                c = st[s]
                if golden:
                    neg = _golden_sign(c[0], c[1]) < 0
                else:
                    neg = c < 0
                if golden:
                    new = list(st)
                    ca, cb = c
                    for j, (pa, pb) in rows[s]:
                        xa, xb = new[j]
                        # (ca + cb*phi)(pa + pb*phi), phi^2 = phi + 1
                        new[j] = (xa - (ca * pa + cb * pb), xb - (ca * pb + cb * pa + cb * pb))
                    new_st = tuple(new)
                else:
                    new = list(st)
                    for j, a in rows[s]:
                        new[j] -= c * a
                    new_st = tuple(new)
                child = index.get(new_st)
                if child is None:
                    child = len(states)
                    index[new_st] = child
                    states.append(new_st)
                    parent.append(head)
                    parent_gen.append(s)
                    length.append(lw + (1 if not neg else -1))
                    trans.extend([-1] * n)
                trans[base + s] = child
                trans[child * n + s] = head
            head += 1

        # right descent masks from coordinate signs
        rdesc = array("q")
        for st in states:
            mask = 0
            for s in range(n):
                if golden:
                    if _golden_sign(st[s][0], st[s][1]) < 0:
                        mask |= 1 << s
                elif st[s] < 0:
                    mask |= 1 << s
            rdesc.append(mask)

        self.length = length
        self.trans = trans
        self.rdesc = rdesc
        self._parent = parent
        self._parent_gen = parent_gen

    def _build_dihedral(self, m: int) -> None:
        # ids: 0 = e; 2k-1, 2k = words of length k starting with 0, 1; 2m-1 = w0
        n = 2
        size = 2 * m
        length = array("i", [0] * size)
        trans = array("i", [-1] * (size * n))
        rdesc = array("q", [0] * size)
        parent = array("i", [-1] * size)
        parent_gen = array("b", [-1] * size)

        def elt(first: int, k: int) -> int:
            if k == 0:
                return 0
            if k == m:
                return 2 * m - 1
            return 2 * k - 1 + first

        def last_letter(first: int, k: int) -> int:
            return first if k % 2 == 1 else 1 - first

        for first in (0, 1):
            for k in range(1, m + 1):
                if k == m and first == 1:
                    continue
                w = elt(first, k)
                length[w] = k
                parent[w] = elt(first, k - 1)
                parent_gen[w] = first if k == 1 else last_letter(first, k)
        # w0's stored word starts with 0
        parent[2 * m - 1] = elt(0, m - 1)
        parent_gen[2 * m - 1] = last_letter(0, m)

        for first in (0, 1):
            for k in range(0, m + 1):
                if k == m and first == 1:
                    continue
                w = elt(first, k)
                for s in (0, 1):
                    if k == 0:
                        trans[w * n + s] = elt(s, 1)
                    elif k == m:
                        # remove the last letter of the word ending in s
                        f = s if m % 2 == 1 else 1 - s
                        trans[w * n + s] = elt(f, m - 1)
                    elif s == last_letter(first, k):
                        trans[w * n + s] = elt(first, k - 1)
                    else:
                        trans[w * n + s] = elt(first, k + 1)
                if k == m:
                    rdesc[w] = 0b11
                elif k > 0:
                    rdesc[w] = 1 << last_letter(first, k)

        self.length = length
        self.trans = trans
        self.rdesc = rdesc
        self._parent = parent
        self._parent_gen = parent_gen

    def _finalize(self, budget: Budget) -> None:
        n = self.rank
        size = self.size
        # shortlex first letter, for the left-handed recursion downstream
        first = array("b", [-1] * size)
        for w in range(1, size):
            p = self._parent[w]
            first[w] = self._parent_gen[w] if p == 0 else first[p]
        self.first_letter = first

        inv = array("i", [-1] * size)
        trans = self.trans
        for w in range(size):
            x = 0
            for s in reversed(self.normal_form(w)):
                x = trans[x * n + s]
            inv[w] = x
        self.inverse_id = inv

        self.ldesc = array("q", (self.rdesc[inv[w]] for w in range(size)))

        # sanity: Poincare palindromicity, l(w s) = l(w) +- 1
        counts: dict[int, int] = {}
        for w in range(size):
            counts[self.length[w]] = counts.get(self.length[w], 0) + 1
        top = self.length[self.w0]
        if any(counts.get(k, 0) != counts.get(top - k, 0) for k in range(top + 1)):
            raise PropertyViolation(f"length distribution of {self.type} is not palindromic")

    # -- queries -------------------------------------------------------------

    def __len__(self) -> int:
        return self.size

    def normal_form(self, w: int) -> tuple[int, ...]:
        out = []
        while w:
            out.append(self._parent_gen[w])
            w = self._parent[w]
        return tuple(reversed(out))

    def right_descents(self, w: int) -> frozenset[int]:
        m = self.rdesc[w]
        return frozenset(s for s in range(self.rank) if m >> s & 1)

    def left_descents(self, w: int) -> frozenset[int]:
        m = self.ldesc[w]
        return frozenset(s for s in range(self.rank) if m >> s & 1)

    def element(self, w: int) -> Element:
        return Element(
            id=w,
            normal_form=self.normal_form(w),
            length=self.length[w],
            left_descents=self.left_descents(w),
            right_descents=self.right_descents(w),
            inverse_id=self.inverse_id[w],
        )

    def elements(self) -> Iterator[Element]:
        return (self.element(w) for w in range(self.size))

    def right_mul(self, w: int, s: int) -> int:
        return self.trans[w * self.rank + s]

    def left_mul(self, s: int, w: int) -> int:
        inv = self.inverse_id
        return inv[self.trans[inv[w] * self.rank + s]]

    def mult_word(self, w: int, word: Sequence[int]) -> int:
        n = self.rank
        trans = self.trans
        for s in word:
            w = trans[w * n + s]
        return w

    def word_to_id(self, word: Sequence[int]) -> int:
        return self.mult_word(0, word)

    def product(self, x: int, y: int) -> int:
        return self.mult_word(x, self.normal_form(y))

    def bruhat_leq(self, x: int, y: int) -> bool:
        """Bruhat order via the lifting property; O(l(y)) per query."""
        n = self.rank
        trans = self.trans
        length = self.length
        rdesc = self.rdesc
        while True:
            if x == y or x == 0:
                return True
            if length[x] >= length[y]:
                return False
            s = (rdesc[y] & -rdesc[y]).bit_length() - 1  # lowest right descent
            y = trans[y * n + s]
            if rdesc[x] >> s & 1:
                x = trans[x * n + s]

    def __repr__(self) -> str:
        return f"CoxeterSystem({self.type}, {self.size} elements)"


def build_system(t: CoxeterType | str, budget: Budget | None = None) -> CoxeterSystem:
    """Enumerate the finite Coxeter group of the given type."""
    if isinstance(t, str):
        t = CoxeterType.parse(t)
    return CoxeterSystem(t, budget)
