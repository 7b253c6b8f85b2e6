"""The group ring A = Z[pi^omega] with its involution, and the minimal form parameter.

Ring elements are sparse formal sums stored in a canonical order, so two
elements are equal exactly when their term tuples are equal. Coefficients
are Python ints. A ``GroupRing`` may carry a ``modulus``; then every
coefficient is reduced mod m after every operation (used only for the
finite-coefficient searches in :mod:`qforms.pairs`).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import ContextMismatch, InvalidElement, PreconditionViolation, Unsupported


@dataclass(frozen=True)
class GroupRing:
    group: object
    modulus: int = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise InvalidElement("modulus must be at least 2")

    def element(self, terms=()):
        """Build an element from ``(group_element, coefficient)`` pairs in any order."""
        acc = {}
        for g, c in terms:
            self.group.check(g)
            acc[g] = acc.get(g, 0) + int(c)
        return RingElement._canonical(self, acc)

    def scalar(self, c):
        return self.element([(self.group.identity, c)])

    def basis(self, g, c=1):
        return self.element([(g, c)])

    @property
    def zero(self):
        return RingElement(self, ())

    @property
    def one(self):
        return self.scalar(1)

    def __repr__(self):
        m = f", mod {self.modulus}" if self.modulus else ""
        return f"GroupRing({self.group.kind}{m})"


class RingElement:
    """An element of a group ring; immutable.

    ``terms`` is a tuple of ``(group_element, coefficient)`` sorted by the
    group's total order, with no zero coefficients.
    """

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring, terms):
        self.ring = ring
        self.terms = terms
        self._hash = None

    @classmethod
    def _canonical(cls, ring, acc):
        m = ring.modulus
        if m is not None:
            items = [(g, c % m) for g, c in acc.items() if c % m]
        else:
            items = [(g, c) for g, c in acc.items() if c]
        items.sort(key=lambda gc: ring.group.key(gc[0]))
        return cls(ring, tuple(items))

    def _same(self, other):
        if not isinstance(other, RingElement):
            raise TypeError(f"expected a RingElement, got {type(other).__name__}")
        if other.ring is not self.ring and other.ring != self.ring:
            raise ContextMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        self._same(other)
        acc = dict(self.terms)
        for g, c in other.terms:
            acc[g] = acc.get(g, 0) + c
        return RingElement._canonical(self.ring, acc)

    def __neg__(self):
        return RingElement._canonical(self.ring, {g: -c for g, c in self.terms})

    def __sub__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return RingElement._canonical(self.ring, {g: c * other for g, c in self.terms})
        if not isinstance(other, RingElement):
            return NotImplemented
        self._same(other)
        if not self.terms or not other.terms:
            return self.ring.zero
        mul = self.ring.group.mul
        acc = {}
        for g, c in self.terms:
            for h, d in other.terms:
                k = mul(g, h)
                acc[k] = acc.get(k, 0) + c * d
        return RingElement._canonical(self.ring, acc)

    def __rmul__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            return self * other
        return NotImplemented

    def conj(self):
        """The involution sum c_g g -> sum c_g omega(g) g^-1."""
        group = self.ring.group
        return RingElement._canonical(
            self.ring, {group.inv(g): c * group.char(g) for g, c in self.terms}
        )

    def __eq__(self, other):
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.terms == other.terms and (self.ring is other.ring or self.ring == other.ring)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self):
        return not self.terms

    def coefficient(self, g):
        for h, c in self.terms:
            if h == g:
                return c
        return 0

    def support(self):
        return [g for g, _ in self.terms]

    def height(self):
        """Largest absolute coefficient (0 for the zero element)."""
        return max((abs(c) for _, c in self.terms), default=0)

    def trivial_unit_inverse(self):
        """If self is a unit of the form c*g with c a unit of the coefficients, its inverse.

        Returns None otherwise. Over Z the only such c are +-1.
        """
        if len(self.terms) != 1:
            return None
        g, c = self.terms[0]
        m = self.ring.modulus
        if m is None:
            if c not in (1, -1):
                return None
            cinv = c
        else:
            if gcd(c, m) != 1:
                return None
            cinv = pow(c, -1, m)
        return RingElement._canonical(self.ring, {self.ring.group.inv(g): cinv})

    def __repr__(self):
        if not self.terms:
            return "0"
        group = self.ring.group
        parts = []
        for g, c in self.terms:
            if g == group.identity:
                name = ""
            elif group.kind == "finite":
                name = f"g{g}"
            elif group.kind == "free_abelian":
                name = "u^" + ",".join(map(str, g))
            else:
                name = g
            if not name:
                parts.append(str(c))
            elif c == 1:
                parts.append(name)
            elif c == -1:
                parts.append("-" + name)
            else:
                parts.append(f"{c}*{name}")
        return " + ".join(parts).replace("+ -", "- ")


def involute(x):
    return x.conj()


@dataclass(frozen=True)
class FormParameter:
    """A unitary ring (A, lambda, Lambda); only Lambda = {a - lambda a-bar} is implemented."""

    ring: GroupRing
    lam: RingElement = None
    kind: str = "minimal"

    def __post_init__(self):
        if self.kind != "minimal":
            raise Unsupported(f"form parameter kind {self.kind!r}")
        lam = self.lam if self.lam is not None else self.ring.one
        if lam.ring != self.ring:
            raise ContextMismatch("lambda lives in a different ring")
        if lam * lam.conj() != self.ring.one:
            raise PreconditionViolation("lambda_unit", "lambda * conj(lambda) != 1")
        # centrality is only checkable on a finite sample for infinite groups
        for g in self.ring.group.elements(1):
            b = self.ring.basis(g)
            if lam * b != b * lam:
                raise PreconditionViolation("lambda_central", f"lambda does not commute with {g!r}")
        object.__setattr__(self, "lam", lam)

    @property
    def group(self):
        return self.ring.group

    @property
    def lambda_is_one(self):
        return self.lam == self.ring.one

    def reduce(self, x):
        """Canonical representative of the class of x in A / Lambda_min.

        Lambda_min is spanned by g - omega(g) g^-1. For each pair {g, g^-1}
        the coefficient of the larger element (in the group's order) is
        moved onto the smaller one; a self-inverse g with omega(g) = -1
        keeps its coefficient mod 2.
        """
        if not self.lambda_is_one:
            raise Unsupported("reduction is implemented for lambda = +1 only")
        if x.ring != self.ring:
            raise ContextMismatch("element lives in a different ring")
        group = self.ring.group
        m = self.ring.modulus
        two = 2 if m is None else gcd(2, m)
        acc = {}
        for g, c in x.terms:
            ginv = group.inv(g)
            if ginv == g:
                if group.char(g) == -1:
                    c %= two
                acc[g] = acc.get(g, 0) + c
            elif group.key(ginv) < group.key(g):
                acc[ginv] = acc.get(ginv, 0) + group.char(g) * c
            else:
                acc[g] = acc.get(g, 0) + c
        return RingElement._canonical(self.ring, acc)

    def in_lambda(self, x):
        return self.reduce(x).is_zero()

    def spanning_set(self, elements):
        """The vectors g - omega(g) g^-1 for the given group elements."""
        out = []
        for g in elements:
            b = self.ring.basis(g)
            out.append(b - b.conj())
        return out


def reduce_mod_lambda(x, ctx):
    return ctx.reduce(x)
