"""Group laws for the three families of fundamental groups we handle.

Elements are plain Python values so they hash and compare cheaply:

* finite groups: an ``int`` index into the multiplication table,
* free abelian groups Z^n: a ``tuple`` of n ints (exponent vector),
* the infinite dihedral group C2 * C2 = <a, b | a^2 = b^2 = 1>: a ``str``
  over ``"ab"`` that strictly alternates (the empty string is the identity).

Each group also carries an orientation character omega: G -> {+1, -1}.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .errors import InvalidElement


def _sign(s):
    if s not in (1, -1):
        raise InvalidElement(f"orientation character values must be +1 or -1, got {s!r}")
    return s


@dataclass(frozen=True)
class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[i][j]`` is the index of ``i * j``; index 0 must be the identity.
    ``omega[i]`` is the character value of element ``i``.
    """

    table: tuple
    omega: tuple = None
    inverse: tuple = field(init=False, repr=False, compare=False)
    kind = "finite"

    def __post_init__(self):
        table = tuple(tuple(int(x) for x in row) for row in self.table)
        object.__setattr__(self, "table", table)
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InvalidElement("multiplication table must be a non-empty square")
        if any(not 0 <= x < n for row in table for x in row):
            raise InvalidElement("multiplication table entry out of range")
        if any(table[0][i] != i or table[i][0] != i for i in range(n)):
            raise InvalidElement("index 0 is not the identity")
        for i, j, k in itertools.product(range(n), repeat=3):
            if table[table[i][j]][k] != table[i][table[j][k]]:
                raise InvalidElement(f"table is not associative at ({i}, {j}, {k})")
        inverse = []
        for i in range(n):
            inv = [j for j in range(n) if table[i][j] == 0]
            if len(inv) != 1 or table[inv[0]][i] != 0:
                raise InvalidElement(f"element {i} has no two-sided inverse")
            inverse.append(inv[0])
        object.__setattr__(self, "inverse", tuple(inverse))

        omega = tuple(_sign(s) for s in (self.omega if self.omega is not None else [1] * n))
        if len(omega) != n:
            raise InvalidElement("omega must give one sign per element")
        for i, j in itertools.product(range(n), repeat=2):
            if omega[table[i][j]] != omega[i] * omega[j]:
                raise InvalidElement(f"omega is not a homomorphism at ({i}, {j})")
        object.__setattr__(self, "omega", omega)

    @classmethod
    def cyclic(cls, n, omega=None):
        """C_n with generator 1; ``omega`` is the sign of the generator."""
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        s = 1 if omega is None else omega
        if s == -1 and n % 2:
            raise InvalidElement("a cyclic group of odd order has no nontrivial character")
        return cls(table, [s**i for i in range(n)])

    @classmethod
    def from_permutations(cls, generators, signed=False):
        """Close a set of permutations (tuples) under composition.

        With ``signed=True`` the character is the permutation sign.
        """
        degree = len(generators[0])
        ident = tuple(range(degree))
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for x in frontier:
                for g in generators:
                    y = tuple(g[x[i]] for i in range(degree))
                    if y not in seen:
                        seen.add(y)
                        elems.append(y)
                        nxt.append(y)
            frontier = nxt
        index = {e: i for i, e in enumerate(elems)}
        # x * y means "apply y, then x"
        table = [[index[tuple(x[y[i]] for i in range(degree))] for y in elems] for x in elems]

        def perm_sign(p):
            s, seen_ = 1, set()
            for i in range(degree):
                if i in seen_:
                    continue
                j, length = i, 0
                while j not in seen_:
                    seen_.add(j)
                    j = p[j]
                    length += 1
                s *= (-1) ** (length - 1)
            return s

        omega = [perm_sign(p) if signed else 1 for p in elems]
        return cls(table, omega)

    @property
    def order(self):
        return len(self.table)

    @property
    def identity(self):
        return 0

    def check(self, g):
        if not isinstance(g, int) or isinstance(g, bool) or not 0 <= g < len(self.table):
            raise InvalidElement(f"{g!r} is not an element of a group of order {len(self.table)}")
        return g

    def mul(self, g, h):
        return self.table[g][h]

    def inv(self, g):
        return self.inverse[g]

    def char(self, g):
        return self.omega[g]

    def key(self, g):
        return g

    def elements(self, radius=None):
        return list(range(len(self.table)))


@dataclass(frozen=True)
class FreeAbelianGroup:
    """Z^rank, with ``omega[i]`` the sign of the i-th basis generator."""

    rank: int
    omega: tuple = None
    kind = "free_abelian"

    def __post_init__(self):
        if self.rank < 0:
            raise InvalidElement("rank must be non-negative")
        omega = self.omega if self.omega is not None else (1,) * self.rank
        omega = tuple(_sign(s) for s in omega)
        if len(omega) != self.rank:
            raise InvalidElement("omega must give one sign per generator")
        object.__setattr__(self, "omega", omega)

    @property
    def identity(self):
        return (0,) * self.rank

    def check(self, g):
        if (
            not isinstance(g, tuple)
            or len(g) != self.rank
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in g)
        ):
            raise InvalidElement(f"{g!r} is not an exponent vector of length {self.rank}")
        return g

    def mul(self, g, h):
        return tuple(x + y for x, y in zip(g, h))

    def inv(self, g):
        return tuple(-x for x in g)

    def char(self, g):
        odd = sum(x for x, s in zip(g, self.omega) if s == -1) % 2
        return -1 if odd else 1

    def key(self, g):
        return g

    def elements(self, radius=1):
        """All exponent vectors with total absolute degree at most ``radius``."""
        out = [
            v
            for v in itertools.product(range(-radius, radius + 1), repeat=self.rank)
            if sum(map(abs, v)) <= radius
        ]
        return sorted(out)


@dataclass(frozen=True)
class InfiniteDihedralGroup:
    """C2 * C2 with generators ``a`` and ``b``; ``omega`` maps each letter to a sign."""

    omega_a: int = 1
    omega_b: int = 1
    kind = "infinite_dihedral"

    def __post_init__(self):
        _sign(self.omega_a)
        _sign(self.omega_b)

    @property
    def omega(self):
        return {"a": self.omega_a, "b": self.omega_b}

    @property
    def identity(self):
        return ""

    def check(self, g):
        if not isinstance(g, str) or any(c not in "ab" for c in g):
            raise InvalidElement(f"{g!r} is not a word over 'ab'")
        if "aa" in g or "bb" in g:
            raise InvalidElement(f"{g!r} does not alternate")
        return g

    def mul(self, g, h):
        i = 0
        n = min(len(g), len(h))
        # both words alternate, so cancellation only happens at the seam
        while i < n and g[len(g) - 1 - i] == h[i]:
            i += 1
        return g[: len(g) - i] + h[i:]

    def inv(self, g):
        return g[::-1]

    def char(self, g):
        s = 1
        if self.omega_a == -1 and g.count("a") % 2:
            s = -s
        if self.omega_b == -1 and g.count("b") % 2:
            s = -s
        return s

    def key(self, g):
        return (len(g), g)

    def elements(self, radius=1):
        out = [""]
        for length in range(1, radius + 1):
            for start in "ab":
                other = "b" if start == "a" else "a"
                out.append("".join(start if i % 2 == 0 else other for i in range(length)))
        return sorted(out, key=self.key)


TRIVIAL_GROUP = FiniteGroup([[0]], [1])


def power(group, g, k):
    """g**k for k >= 0."""
    out = group.identity
    for _ in range(k):
        out = group.mul(out, g)
    return out
