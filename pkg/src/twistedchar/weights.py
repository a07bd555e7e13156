"""Highest weights of GL_N, staircases, residue classes and twisted points."""
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational

from .exactnum import CycloNumber, common_conductor, lcm, lift_conductor, root_of_unity


class Weight(tuple):
    """Weakly decreasing integer tuple; entries may be negative.

    >>> Weight.parse("1,1,0,0")
    Weight(1, 1, 0, 0)
    >>> str(Weight([2, 0, -1]))
    '2,0,-1'
    """

    def __new__(cls, entries):
        entries = tuple(entries)
        if not entries:
            raise ValueError("a weight needs at least one entry")
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise TypeError(f"weight entries must be integers, got {e!r}")
        for a, b in zip(entries, entries[1:]):
            if a < b:
                raise ValueError(f"weight {entries} is not weakly decreasing")
        return super().__new__(cls, entries)

    @classmethod
    def parse(cls, text):
        parts = [p.strip() for p in text.split(",")]
        try:
            return cls(int(p) for p in parts)
        except ValueError as exc:
            raise ValueError(f"bad weight {text!r}: {exc}") from None

    def shift(self, c):
        """Twist by det^c."""
        return Weight(e + c for e in self)

    def __str__(self):
        return ",".join(str(e) for e in self)

    def __repr__(self):
        return f"Weight({', '.join(str(e) for e in self)})"


def staircase(a):
    """The tuple (a-1, a-2, ..., 1, 0)."""
    if a < 1:
        raise ValueError(f"staircase length must be positive, got {a}")
    return tuple(range(a - 1, -1, -1))


def add_staircase(lam):
    lam = Weight(lam)
    return tuple(x + d for x, d in zip(lam, staircase(len(lam))))


@dataclass(frozen=True)
class ResidueClasses:
    """Members of lambda + delta sorted by residue mod n (each class descending)."""

    n: int
    classes: tuple

    def __getitem__(self, i):
        return self.classes[i]

    def sizes(self):
        return tuple(len(c) for c in self.classes)

    def to_json(self):
        return {str(i): list(c) for i, c in enumerate(self.classes)}


def residue_classes(values, n):
    buckets = [[] for _ in range(n)]
    for a in values:
        buckets[a % n].append(a)
    return ResidueClasses(n, tuple(tuple(sorted(b, reverse=True)) for b in buckets))


def residue_condition(lam, m, n):
    """Check whether lambda + delta_{mn} hits every class of Z/n exactly m times.

    Returns ``(holds, classes)``; the classes are returned either way.

    >>> holds, classes = residue_condition((1, 1, 0, 0), 2, 2)
    >>> holds, classes.classes
    (True, ((4, 0), (3, 1)))
    """
    lam = Weight(lam)
    if m < 1 or n < 1:
        raise ValueError(f"m and n must be positive, got m={m}, n={n}")
    if len(lam) != m * n:
        raise ValueError(f"weight has length {len(lam)}, expected m*n = {m * n}")
    classes = residue_classes(add_staircase(lam), n)
    return all(s == m for s in classes.sizes()), classes


@dataclass(frozen=True)
class TwistedPoint:
    """The element t . c_n of GL_mn: scalars t_1..t_m and the twist order n."""

    t: tuple
    twist_order: int

    def __post_init__(self):
        t = tuple(Fraction(x) if isinstance(x, Rational) else x for x in self.t)
        if not t:
            raise ValueError("need at least one scalar t_i")
        if self.twist_order < 1:
            raise ValueError(f"twist order must be positive, got {self.twist_order}")
        for x in t:
            if not isinstance(x, (Fraction, CycloNumber)):
                raise TypeError(f"unsupported scalar {x!r}")
            if x == 0:
                raise ValueError("t_i must be nonzero")
        object.__setattr__(self, "t", t)

    @property
    def m(self):
        return len(self.t)

    @property
    def conductor(self):
        return common_conductor(self.t, self.twist_order)

    def powers(self):
        """(t_1^n, ..., t_m^n)."""
        return tuple(x ** self.twist_order for x in self.t)


def eigenvalues_of_twisted_point(p):
    """The mn eigenvalues t_i * zeta_n^j, j outer and i inner.

    >>> [str(x) for x in eigenvalues_of_twisted_point(TwistedPoint((1, 2), 2))]
    ['1', '2', '-1', '-2']
    """
    n = p.twist_order
    L = lcm(p.conductor, n)
    ts = [lift_conductor(x, L) for x in p.t]
    out = []
    for j in range(n):
        w = root_of_unity(L, j * (L // n))
        out.extend(x * w for x in ts)
    return tuple(out)


def is_regular(p):
    """All mn eigenvalues are distinct, i.e. the t_i^n are pairwise distinct."""
    pw = p.powers()
    return all(pw[i] != pw[j] for i in range(len(pw)) for j in range(i))


def central_character(lam):
    return sum(Weight(lam))
