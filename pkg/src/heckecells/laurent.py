"""Exact arithmetic in Z[v, v^-1].

Laurent polynomials in one variable v, stored sparsely as a map
exponent -> coefficient with no zero entries.  Coefficients are plain
Python ints, so everything downstream (Kazhdan-Lusztig polynomials,
structure constants, graded Cartan matrices) is exact by construction.

The bar involution sends v^k to v^-k; it is the coefficient-level shadow
of flipping grading shifts, and bar invariance is the defining property
of the canonical bases computed in :mod:`heckecells.hecke`.
"""

from __future__ import annotations

from typing import Iterator, Mapping

__all__ = ["LaurentPoly", "ZERO", "ONE", "V", "VINV", "GAUSS2"]


class LaurentPoly:
    """An element of Z[v, v^-1].  Immutable once constructed."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, a in coeffs.items():
                if a:
                    c[int(e)] = int(a)
        self._c = c
        self._hash = None

    # -- constructors ------------------------------------------------------

    @classmethod
    def monomial(cls, exponent: int, coefficient: int = 1) -> "LaurentPoly":
        return cls({exponent: coefficient})

    @classmethod
    def from_int(cls, n: int) -> "LaurentPoly":
        return cls({0: n})

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        # internal: c must already be canonical (no zeros)
        p = cls.__new__(cls)
        p._c = c
        p._hash = None
        return p

    # -- basic queries -----------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self._c)

    def __len__(self) -> int:
        return len(self._c)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(sorted(self._c.items()))

    def coefficient(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    def __getitem__(self, exponent: int) -> int:
        return self._c.get(exponent, 0)

    @property
    def min_deg(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return min(self._c)

    @property
    def max_deg(self) -> int:
        if not self._c:
            raise ValueError("zero polynomial has no degree")
        return max(self._c)

    def is_nonnegative(self) -> bool:
        return all(a >= 0 for a in self._c.values())

    def is_bar_invariant(self) -> bool:
        return all(self._c.get(-e, 0) == a for e, a in self._c.items())

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            b = c.get(e, 0) + a
            if b:
                c[e] = b
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._raw({e: -a for e, a in self._c.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c = dict(self._c)
        for e, a in other._c.items():
            b = c.get(e, 0) - a
            if b:
                c[e] = b
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return ZERO
            return LaurentPoly._raw({e: a * other for e, a in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                b = c.get(e, 0) + a1 * a2
                if b:
                    c[e] = b
                else:
                    del c[e]
        return LaurentPoly._raw(c)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers are not defined in Z[v, v^-1]")
        out = ONE
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        return LaurentPoly._raw({e + k: a for e, a in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The bar involution v^k -> v^-k."""
        return LaurentPoly._raw({-e: a for e, a in self._c.items()})

    def evaluate(self, value: float = 1) -> float:
        """Evaluate at a nonzero scalar; evaluate(1) is the rank morphism to Z."""
        if value == 1:
            return sum(self._c.values())
        return sum(a * value**e for e, a in self._c.items())

    # -- equality / hashing / display ---------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            return self._c == ({0: other} if other else {})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(sorted(self._c.items())))
        return self._hash

    def text(self) -> str:
        """Render as e.g. ``v^-3 + 3v^-1 + 3v + v^3``."""
        if not self._c:
            return "0"
        parts = []
        for e, a in sorted(self._c.items()):
            if e == 0:
                body = str(abs(a))
            else:
                var = "v" if e == 1 else f"v^{e}"
                body = var if abs(a) == 1 else f"{abs(a)}{var}"
            if not parts:
                parts.append(body if a > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if a > 0 else f"- {body}")
        return " ".join(parts)

    def to_json(self) -> dict[str, int]:
        """JSON form: {exponent: coefficient} with string keys."""
        return {str(e): a for e, a in sorted(self._c.items())}

    @classmethod
    def from_json(cls, d: Mapping[str, int]) -> "LaurentPoly":
        return cls({int(e): a for e, a in d.items()})

    def __repr__(self) -> str:
        return f"LaurentPoly({self.text()})"


ZERO = LaurentPoly()
ONE = LaurentPoly({0: 1})
V = LaurentPoly({1: 1})
VINV = LaurentPoly({-1: 1})

#: v + v^-1, the graded rank of the regular summand b_s b_s = (v + v^-1) b_s.
GAUSS2 = LaurentPoly({1: 1, -1: 1})
