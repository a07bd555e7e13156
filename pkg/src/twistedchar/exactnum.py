"""Exact rational and cyclotomic arithmetic.

An element of Q(zeta_L) is stored as its coefficient vector in the power
basis 1, zeta_L, ..., zeta_L^(phi(L)-1), reduced modulo the L-th cyclotomic
polynomial.  The reduction is canonical, so two values are equal exactly when
their conductors and coefficient vectors agree.

Rationals are plain :class:`fractions.Fraction` objects.

>>> z = root_of_unity(3, 1)
>>> z + z**2
CycloNumber(3, [-1, 0])
>>> (z**2) * z == 1
True
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd
from numbers import Rational

__all__ = [
    "ConductorMismatch",
    "CycloNumber",
    "CycloMatrix",
    "cyclotomic_polynomial",
    "euler_phi",
    "root_of_unity",
    "lift_conductor",
    "det_exact",
    "parse_rational",
    "format_rational",
]


class ConductorMismatch(ValueError):
    """Raised when two cyclotomic values with different conductors meet."""


def parse_rational(text):
    """Parse ``"p"`` or ``"p/q"`` into a Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    return Fraction(text)


def format_rational(q):
    """Always ``"p/q"``, so that serialized coefficients round-trip bit-exactly."""
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def lcm(a, b):
    return a * b // gcd(a, b)


@lru_cache(maxsize=None)
def euler_phi(n):
    if n < 1:
        raise ValueError(f"euler_phi needs n >= 1, got {n}")
    result, m, p = n, n, 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


def _exact_divide_monic(num, den):
    # integer polynomials, low degree first; den monic and divides num
    num = list(num)
    dd = len(den) - 1
    quot = [0] * (len(num) - dd)
    for k in range(len(num) - 1, dd - 1, -1):
        c = num[k]
        if c:
            quot[k - dd] = c
            for j in range(dd + 1):
                num[k - dd + j] -= c * den[j]
    if any(num):
        raise ArithmeticError("non-exact polynomial division")
    return quot


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L):
    """Return the L-th cyclotomic polynomial as integer coefficients, low degree first.

    >>> cyclotomic_polynomial(4)
    (1, 0, 1)
    """
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"cyclotomic polynomial needs L >= 1, got {L!r}")
    poly = [-1] + [0] * (L - 1) + [1]
    for d in _divisors(L)[:-1]:
        poly = _exact_divide_monic(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@lru_cache(maxsize=None)
def _power_table(L):
    # reductions of x^k mod Phi_L for 0 <= k < L; integer vectors of length phi(L)
    phi = cyclotomic_polynomial(L)
    d = len(phi) - 1
    table = []
    cur = [1] + [0] * (d - 1)
    for _ in range(L):
        table.append(tuple(cur))
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            for j in range(d):
                cur[j] -= top * phi[j]
    return tuple(table)


def _reduce(poly, L):
    """Reduce a coefficient list (low degree first) modulo Phi_L."""
    phi = cyclotomic_polynomial(L)
    d = len(phi) - 1
    p = list(poly)
    for k in range(len(p) - 1, d - 1, -1):
        c = p[k]
        if c:
            base = k - d
            for j in range(d):
                if phi[j]:
                    p[base + j] -= c * phi[j]
    p = p[:d]
    p.extend([0] * (d - len(p)))
    return p


# -- polynomial helpers over Q, used only for inversion ---------------------

def _trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = _trim(a)
    b = _trim(b)
    if not a or len(a) < len(b):
        return [], a
    lead = b[-1]
    q = [Fraction(0)] * (len(a) - len(b) + 1)
    r = list(a)
    for k in range(len(a) - len(b), -1, -1):
        c = r[k + len(b) - 1] / lead
        q[k] = c
        if c:
            for j, bj in enumerate(b):
                r[k + j] -= c * bj
    return q, _trim(r[: len(b) - 1])


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, modulus):
    # extended Euclid: find u with a*u = 1 mod modulus
    r0, r1 = _trim(modulus), _trim(a)
    s0, s1 = [], [Fraction(1)]
    while len(r1) > 1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if not r1:
        raise ZeroDivisionError("element is not invertible")
    c = r1[0]
    return [x / c for x in s1]


class CycloNumber:
    """Exact element of the cyclotomic field Q(zeta_L).

    Arithmetic with ints and Fractions is allowed.  Arithmetic between two
    CycloNumbers requires equal conductors; use :func:`lift_conductor` first.
    """

    __slots__ = ("_conductor", "_coeffs")

    def __init__(self, conductor, coeffs):
        if not isinstance(conductor, int) or conductor < 1:
            raise ValueError(f"conductor must be a positive integer, got {conductor!r}")
        coeffs = tuple(Fraction(c) for c in coeffs)
        if len(coeffs) != euler_phi(conductor):
            raise ValueError(
                f"conductor {conductor} needs {euler_phi(conductor)} coefficients, "
                f"got {len(coeffs)}"
            )
        object.__setattr__(self, "_conductor", conductor)
        object.__setattr__(self, "_coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("CycloNumber is immutable")

    def __reduce__(self):
        return (CycloNumber._raw, (self._conductor, self._coeffs))

    @property
    def conductor(self):
        return self._conductor

    @property
    def coeffs(self):
        return self._coeffs

    @classmethod
    def _raw(cls, conductor, coeffs):
        obj = object.__new__(cls)
        object.__setattr__(obj, "_conductor", conductor)
        object.__setattr__(obj, "_coeffs", tuple(coeffs))
        return obj

    @classmethod
    def from_rational(cls, value, conductor=1):
        d = euler_phi(conductor)
        return cls._raw(conductor, (Fraction(value),) + (Fraction(0),) * (d - 1))

    @classmethod
    def from_poly(cls, conductor, poly):
        """Value of ``sum poly[i] * zeta_L**i`` for an arbitrary-length poly."""
        return cls._raw(conductor, (Fraction(c) for c in _reduce(poly, conductor)))

    @classmethod
    def zero(cls, conductor=1):
        return cls.from_rational(0, conductor)

    @classmethod
    def one(cls, conductor=1):
        return cls.from_rational(1, conductor)

    def is_rational(self):
        return not any(self._coeffs[1:])

    def is_zero(self):
        return not any(self._coeffs)

    def to_fraction(self):
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self._coeffs[0]

    def _coerce(self, other):
        if isinstance(other, CycloNumber):
            if other._conductor != self._conductor:
                raise ConductorMismatch(
                    f"conductors differ: {self._conductor} vs {other._conductor}"
                )
            return other
        if isinstance(other, Rational):
            return CycloNumber.from_rational(other, self._conductor)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber._raw(self._conductor, (a + b for a, b in zip(self._coeffs, other._coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._raw(self._conductor, (-a for a in self._coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return CycloNumber._raw(self._conductor, (a - b for a, b in zip(self._coeffs, other._coeffs)))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._coeffs, other._coeffs
        if not any(b[1:]):
            c = b[0]
            return CycloNumber._raw(self._conductor, (x * c for x in a))
        if not any(a[1:]):
            c = a[0]
            return CycloNumber._raw(self._conductor, (c * y for y in b))
        prod = [0] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return CycloNumber._raw(self._conductor, _reduce(prod, self._conductor))

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycloNumber.from_rational(1 / self._coeffs[0], self._conductor)
        u = _poly_inverse_mod(list(self._coeffs), list(cyclotomic_polynomial(self._conductor)))
        return CycloNumber.from_poly(self._conductor, u)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        result = CycloNumber.one(self._conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, CycloNumber):
            if other._conductor == self._conductor:
                return self._coeffs == other._coeffs
            L = lcm(self._conductor, other._conductor)
            return lift_conductor(self, L)._coeffs == lift_conductor(other, L)._coeffs
        if isinstance(other, Rational):
            return self.is_rational() and self._coeffs[0] == other
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self._coeffs[0])
        # trace / degree does not change under lifting, so equal values hash equally
        return hash(self.trace() / euler_phi(self._conductor))

    def trace(self):
        """Trace from Q(zeta_L) down to Q."""
        L = self._conductor
        total = Fraction(0)
        for i, c in enumerate(self._coeffs):
            if c:
                total += c * _trace_of_power(L, i)
        return total

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        coeffs = ", ".join(str(c) for c in self._coeffs)
        return f"CycloNumber({self._conductor}, [{coeffs}])"

    def __str__(self):
        if self.is_rational():
            return str(self._coeffs[0])
        terms = []
        for i, c in enumerate(self._coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
                continue
            mono = f"z{self._conductor}" + (f"^{i}" if i > 1 else "")
            if c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ")

    def to_json(self):
        return {"conductor": self._conductor, "coeffs": [format_rational(c) for c in self._coeffs]}

    @classmethod
    def from_json(cls, doc):
        return cls(int(doc["conductor"]), [parse_rational(c) for c in doc["coeffs"]])


def _mobius(n):
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def _trace_of_power(L, i):
    # Tr(zeta_L^i) is the Ramanujan sum c_L(i)
    d = L // gcd(i, L)
    return _mobius(d) * euler_phi(L) // euler_phi(d)


def _as_cyclo(x, conductor):
    if isinstance(x, CycloNumber):
        if x.conductor != conductor:
            raise ConductorMismatch(f"conductors differ: {x.conductor} vs {conductor}")
        return x
    return CycloNumber.from_rational(x, conductor)


def root_of_unity(L, k=1):
    """zeta_L ** k with zeta_L = exp(2 pi i / L)."""
    if not isinstance(L, int) or L < 1:
        raise ValueError(f"root_of_unity needs L >= 1, got {L!r}")
    return CycloNumber._raw(L, (Fraction(c) for c in _power_table(L)[k % L]))


def lift_conductor(x, L):
    """Represent ``x`` in Q(zeta_L); the conductor of ``x`` must divide ``L``."""
    if isinstance(x, Rational):
        return CycloNumber.from_rational(x, L)
    if L % x.conductor:
        raise ConductorMismatch(f"conductor {x.conductor} does not divide {L}")
    if L == x.conductor:
        return x
    step = L // x.conductor
    table = _power_table(L)
    out = [Fraction(0)] * euler_phi(L)
    for i, c in enumerate(x.coeffs):
        if c:
            for j, v in enumerate(table[(i * step) % L]):
                if v:
                    out[j] += c * v
    return CycloNumber._raw(L, out)


def common_conductor(values, at_least=1):
    """Smallest conductor holding every value (Fractions count as conductor 1)."""
    L = at_least
    for v in values:
        if isinstance(v, CycloNumber):
            L = lcm(L, v.conductor)
    return L


class CycloMatrix:
    """Dense matrix over Q(zeta_L) with a single shared conductor."""

    __slots__ = ("rows", "cols", "entries", "conductor")

    def __init__(self, data, conductor=None):
        data = [list(r) for r in data]
        if not data or not data[0]:
            raise ValueError("matrix must be non-empty")
        ncols = len(data[0])
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        if conductor is None:
            found = {x.conductor for r in data for x in r if isinstance(x, CycloNumber)}
            if len(found) > 1:
                raise ConductorMismatch(f"mixed conductors {sorted(found)}")
            conductor = found.pop() if found else 1
        self.rows = len(data)
        self.cols = ncols
        self.conductor = conductor
        self.entries = tuple(_as_cyclo(x, conductor) for r in data for x in r)

    @classmethod
    def identity(cls, n, conductor=1):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], conductor)

    @classmethod
    def diagonal(cls, values, conductor=None):
        n = len(values)
        if conductor is None:
            conductor = common_conductor(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)], conductor)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r * self.cols + c]

    def to_lists(self):
        return [list(self.entries[r * self.cols:(r + 1) * self.cols]) for r in range(self.rows)]

    def is_square(self):
        return self.rows == self.cols

    def __eq__(self, other):
        if not isinstance(other, CycloMatrix):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    __hash__ = None

    def __repr__(self):
        body = "; ".join(", ".join(str(x) for x in row) for row in self.to_lists())
        return f"CycloMatrix([{body}])"

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        a, b = self.to_lists(), other.to_lists()
        return CycloMatrix([[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)], self.conductor)

    def scale(self, c):
        return CycloMatrix([[c * x for x in row] for row in self.to_lists()], self.conductor)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        if self.conductor != other.conductor:
            raise ConductorMismatch(f"conductors differ: {self.conductor} vs {other.conductor}")
        a, b = self.to_lists(), other.to_lists()
        zero = CycloNumber.zero(self.conductor)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    x = a[i][k]
                    if x:
                        acc = acc + x * b[k][j]
                row.append(acc)
            out.append(row)
        return CycloMatrix(out, self.conductor)

    def trace(self):
        if not self.is_square():
            raise ValueError("trace of a non-square matrix")
        acc = CycloNumber.zero(self.conductor)
        for i in range(self.rows):
            acc = acc + self[i, i]
        return acc

    def det(self):
        return det_exact(self)

    def inverse(self):
        """Gauss-Jordan inverse; raises ZeroDivisionError when singular."""
        if not self.is_square():
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        one = CycloNumber.one(self.conductor)
        zero = CycloNumber.zero(self.conductor)
        a = [row + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.to_lists())]
        for col in range(n):
            piv = next((r for r in range(col, n) if a[r][col]), None)
            if piv is None:
                raise ZeroDivisionError("singular matrix")
            a[col], a[piv] = a[piv], a[col]
            inv = a[col][col].inverse()
            a[col] = [x * inv for x in a[col]]
            for r in range(n):
                f = a[r][col]
                if r != col and f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[col])]
        return CycloMatrix([row[n:] for row in a], self.conductor)

    def charpoly(self):
        """Coefficients of det(x*I - A), low degree first (Faddeev-LeVerrier)."""
        if not self.is_square():
            raise ValueError("characteristic polynomial of a non-square matrix")
        n = self.rows
        L = self.conductor
        coeffs = [None] * (n + 1)
        coeffs[n] = CycloNumber.one(L)
        ident = CycloMatrix.identity(n, L)
        m = CycloMatrix([[0] * n for _ in range(n)], L)
        for k in range(1, n + 1):
            m = self @ m + ident.scale(coeffs[n - k + 1])
            coeffs[n - k] = -(self @ m).trace() / k
        return coeffs

    def lift(self, L):
        return CycloMatrix([[lift_conductor(x, L) for x in row] for row in self.to_lists()], L)


def det_exact(M):
    """Exact determinant by Gaussian elimination over the field.

    >>> det_exact(CycloMatrix([[1, 2], [3, 4]]))
    CycloNumber(1, [-2])
    """
    if not M.is_square():
        raise ValueError(f"determinant of a non-square {M.rows}x{M.cols} matrix")
    n = M.rows
    a = M.to_lists()
    result = CycloNumber.one(M.conductor)
    for col in range(n):
        piv = None
        for r in range(col, n):
            x = a[r][col]
            if x:
                # rational pivots are cheaper to invert
                if x.is_rational():
                    piv = r
                    break
                if piv is None:
                    piv = r
        if piv is None:
            return CycloNumber.zero(M.conductor)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            result = -result
        p = a[col][col]
        result = result * p
        inv = p.inverse()
        pivot_row = a[col]
        for r in range(col + 1, n):
            f = a[r][col]
            if f:
                f = f * inv
                row = a[r]
                for c in range(col + 1, n):
                    y = pivot_row[c]
                    if y:
                        row[c] = row[c] - f * y
    return result
