"""Characters of irreducible GL_N representations evaluated at eigenvalue lists.

Two independent engines:

* :func:`char_bialternant` -- ratio of the Weyl numerator by the Vandermonde,
  defined only at regular points;
* :func:`char_jacobi_trudi` -- determinant of complete homogeneous values,
  defined everywhere.

Weights with negative entries are handled by a determinant shift: the weight
is moved up by ``-min(lambda_N, 0)`` and the value is multiplied by the
matching power of the product of the eigenvalues.
"""
from .exactnum import (
    ConductorMismatch,
    CycloMatrix,
    CycloNumber,
    common_conductor,
    det_exact,
    lift_conductor,
)
from .weights import Weight, add_staircase

# Character values are plain field elements.
CharacterValue = CycloNumber


class IrregularPointError(ValueError):
    pass


class ZeroEigenvalueError(ValueError):
    pass


def as_field(xs):
    """Put a list of Fractions/CycloNumbers into one conductor.

    Rationals are embedded freely; CycloNumbers of different conductors are
    refused, callers lift them explicitly.
    """
    conductors = {x.conductor for x in xs if isinstance(x, CycloNumber)}
    if len(conductors) > 1:
        raise ConductorMismatch(f"eigenvalues live in different conductors {sorted(conductors)}")
    L = common_conductor(xs)
    return tuple(lift_conductor(x, L) for x in xs), L


def _check_sizes(lam, xs):
    if len(lam) != len(xs):
        raise ValueError(f"weight has {len(lam)} entries but {len(xs)} eigenvalues were given")


def _product(xs, L):
    acc = CycloNumber.one(L)
    for x in xs:
        acc = acc * x
    return acc


def _det_shift(lam, xs, L):
    s = min(lam[-1], 0)
    if s == 0:
        return lam, CycloNumber.one(L)
    if any(x.is_zero() for x in xs):
        raise ZeroEigenvalueError(f"weight {lam} needs a determinant shift but an eigenvalue is 0")
    return lam.shift(-s), _product(xs, L) ** s


def weyl_numerator(lam, xs):
    """det(x_c ** (lambda + delta)_r)."""
    lam = Weight(lam)
    _check_sizes(lam, xs)
    xs, L = as_field(xs)
    exps = add_staircase(lam)
    if exps[-1] < 0:
        raise ValueError(f"negative exponent in lambda + delta for {lam}; det-shift first")
    return det_exact(CycloMatrix([[x ** a for x in xs] for a in exps], L))


def weyl_denominator(xs):
    """Vandermonde prod_{r<s} (x_r - x_s), equal to weyl_numerator(0, xs)."""
    xs, L = as_field(xs)
    acc = CycloNumber.one(L)
    for r in range(len(xs)):
        for s in range(r + 1, len(xs)):
            acc = acc * (xs[r] - xs[s])
    return acc


def is_regular_point(xs):
    return all(xs[i] != xs[j] for i in range(len(xs)) for j in range(i))


def char_bialternant(lam, xs):
    lam = Weight(lam)
    _check_sizes(lam, xs)
    xs, L = as_field(xs)
    if not is_regular_point(xs):
        raise IrregularPointError("bialternant needs pairwise distinct eigenvalues")
    shifted, factor = _det_shift(lam, xs, L)
    return weyl_numerator(shifted, xs) / weyl_denominator(xs) * factor


def complete_homogeneous(degree, xs, L=None):
    """[h_0, ..., h_degree] at xs, from the product of 1/(1 - x u) truncated at ``degree``."""
    if L is None:
        xs, L = as_field(xs)
    h = [CycloNumber.one(L)] + [CycloNumber.zero(L)] * degree
    for x in xs:
        # multiply the series by 1/(1 - x u)
        for k in range(1, degree + 1):
            h[k] = h[k] + x * h[k - 1]
    return h


def char_jacobi_trudi(lam, xs):
    lam = Weight(lam)
    _check_sizes(lam, xs)
    xs, L = as_field(xs)
    shifted, factor = _det_shift(lam, xs, L)
    N = len(shifted)
    h = complete_homogeneous(shifted[0] + N, xs, L)
    zero = CycloNumber.zero(L)

    def entry(r, c):
        k = shifted[r] - r + c
        return h[k] if k >= 0 else zero

    M = CycloMatrix([[entry(r, c) for c in range(N)] for r in range(N)], L)
    return det_exact(M) * factor


def character_at(lam, xs):
    """Character of the irreducible with highest weight ``lam`` at eigenvalues ``xs``.

    Regular points go through the bialternant, all others through Jacobi-Trudi.
    """
    fx, _ = as_field(xs)
    if is_regular_point(fx):
        return char_bialternant(lam, fx)
    return char_jacobi_trudi(lam, fx)
