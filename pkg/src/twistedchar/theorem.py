"""Twisted characters of GL_mn and their factorization through GL_m.

For a highest weight lambda of GL_mn, write a = lambda + (mn-1, ..., 1, 0).
The character at t . c_n (eigenvalues t_i * zeta_n^j) vanishes identically
unless every residue class mod n contains exactly m of the a's.  When it
does, class i yields a GL_m weight mu_i with mu_i + (m-1, ..., 0) equal to
the sorted values (a - i) / n, and

    Theta_lambda(t . c_n) = sign * prod_i Theta_{mu_i}(t_1^n, ..., t_m^n).

The sign is found by exact evaluation at one point; everything else here is
about checking the identity and its companions exactly.
"""
import os
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import (
    CycloMatrix,
    CycloNumber,
    det_exact,
    format_rational,
    lcm,
    lift_conductor,
    root_of_unity,
)
from .schur import character_at
from .verify import random_rational, random_regular_point, stream
from .weights import (
    ResidueClasses,
    TwistedPoint,
    Weight,
    add_staircase,
    eigenvalues_of_twisted_point,
    is_regular,
    residue_condition,
    staircase,
)

DEFAULT_MAX_RETRIES = 32

_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71)


class Counterexample(AssertionError):
    """An exact identity failed."""


class NoEvaluationPoint(RuntimeError):
    pass


@dataclass(frozen=True)
class FactorizationResult:
    vanishes: bool
    classes: ResidueClasses
    mus: tuple = ()
    sign: int = None

    def to_json(self):
        return {
            "vanishes": self.vanishes,
            "classes": self.classes.to_json(),
            "mus": [list(mu) for mu in self.mus],
            "sign": self.sign,
        }


@dataclass
class TrialRecord:
    t: tuple
    lhs: CycloNumber
    rhs: CycloNumber
    ok: bool

    def to_json(self):
        return {
            "t": [x.to_json() if isinstance(x, CycloNumber) else format_rational(x) for x in self.t],
            "lhs": self.lhs.to_json(),
            "rhs": self.rhs.to_json(),
            "ok": self.ok,
        }


@dataclass
class VerificationReport:
    lam: Weight
    m: int
    n: int
    seed: int
    factorization: FactorizationResult
    trials: list = field(default_factory=list)

    @property
    def passed(self):
        return all(tr.ok for tr in self.trials)

    def counterexamples(self):
        return [tr for tr in self.trials if not tr.ok]

    def to_json(self):
        doc = self.factorization.to_json()
        doc["trials"] = [tr.to_json() for tr in self.trials]
        return doc


def _check_shape(lam, m, n):
    lam = Weight(lam)
    if len(lam) != m * n:
        raise ValueError(f"weight has length {len(lam)}, expected m*n = {m * n}")
    return lam


def factor_weights(classes, m, n):
    """GL_m weights mu_0, ..., mu_{n-1} from residue classes of size m."""
    delta = staircase(m)
    mus = []
    for i, members in enumerate(classes.classes):
        # a = i mod n, so (a - i) // n is exact, also for negative a
        vals = sorted(((a - i) // n for a in members), reverse=True)
        # distinct values minus a staircase; Weight() raises if not weakly decreasing
        mus.append(Weight(v - d for v, d in zip(vals, delta)))
    return tuple(mus)


def twisted_character(lam, p):
    """Theta_lambda(t . c_n)."""
    _check_shape(lam, p.m, p.twist_order)
    return character_at(lam, eigenvalues_of_twisted_point(p))


def factor_product(mus, xs):
    """prod_i Theta_{mu_i}(xs)."""
    acc = None
    for mu in mus:
        v = character_at(mu, xs)
        acc = v if acc is None else acc * v
    return acc


def _max_retries():
    return int(os.environ.get("TWISTEDCHAR_MAX_RETRIES", DEFAULT_MAX_RETRIES))


def sign_points(m, n, max_retries):
    """Deterministic candidate points: first m primes, shifted by 0, 1, 2, ..."""
    for offset in range(max_retries):
        yield TwistedPoint(tuple(Fraction(q + offset) for q in _PRIMES[:m]), n)


def determine_sign(lam, m, n, result, max_retries=None):
    """The sign in the factorization, by exact evaluation at one regular point."""
    if result.vanishes:
        raise ValueError("no sign for a vanishing character")
    if max_retries is None:
        max_retries = _max_retries()
    if m > len(_PRIMES):
        raise ValueError(f"m = {m} is beyond the built-in prime table")
    for p in sign_points(m, n, max_retries):
        if not is_regular(p):
            continue
        rhs = factor_product(result.mus, p.powers())
        if not rhs:
            continue
        ratio = twisted_character(lam, p) / lift_conductor(rhs, lcm(p.conductor, n))
        if ratio == 1:
            return 1
        if ratio == -1:
            return -1
        raise Counterexample(f"ratio {ratio} at t={p.t} for weight {lam} is not +-1")
    raise NoEvaluationPoint(f"no usable point for {lam} after {max_retries} tries")


def factorize(lam, m, n, with_sign=True):
    lam = _check_shape(lam, m, n)
    holds, classes = residue_condition(lam, m, n)
    if not holds:
        return FactorizationResult(True, classes)
    mus = factor_weights(classes, m, n)
    result = FactorizationResult(False, classes, mus)
    if with_sign:
        result = FactorizationResult(False, classes, mus, determine_sign(lam, m, n, result))
    return result


def identity_sides(lam, result, p):
    """(lhs, rhs) of the factorization identity at p, in a common conductor."""
    lhs = twisted_character(lam, p)
    if result.vanishes:
        rhs = CycloNumber.zero(lhs.conductor)
    else:
        rhs = lift_conductor(factor_product(result.mus, p.powers()) * result.sign, lhs.conductor)
    return lhs, rhs


def verify_identity(lam, m, n, trials, seed, height=9):
    """Check the factorization (or the vanishing) at ``trials`` random regular points."""
    lam = _check_shape(lam, m, n)
    result = factorize(lam, m, n)
    report = VerificationReport(lam, m, n, seed, result)
    for i in range(trials):
        p = random_regular_point(m, n, stream(seed, "trial", i), height)
        lhs, rhs = identity_sides(lam, result, p)
        report.trials.append(TrialRecord(p.t, lhs, rhs, lhs == rhs))
    return report


# -- norm map on twisted conjugacy classes ----------------------------------

def _as_matrices(gs):
    gs = tuple(g if isinstance(g, CycloMatrix) else CycloMatrix(g) for g in gs)
    if not gs:
        raise ValueError("empty tuple")
    size, L = gs[0].rows, gs[0].conductor
    for g in gs:
        if not g.is_square() or g.rows != size:
            raise ValueError("all matrices in the tuple must be square of one size")
        if g.conductor != L:
            raise ValueError("all matrices in the tuple must share a conductor")
    return gs


def norm_map(gs):
    """(g_1, ..., g_n) x sigma  ->  g_1 g_2 ... g_n."""
    gs = _as_matrices(gs)
    acc = gs[0]
    for g in gs[1:]:
        acc = acc @ g
    return acc


def twisted_conjugate(gs, hs):
    """g_k -> h_k g_k h_{k+1}^{-1}, indices cyclic; the norm gets conjugated by h_1."""
    gs = _as_matrices(gs)
    hs = _as_matrices(hs)
    if len(hs) != len(gs):
        raise ValueError("tuples of different lengths")
    try:
        inverses = [h.inverse() for h in hs]
    except ZeroDivisionError:
        raise ValueError("twisting tuple contains a singular matrix") from None
    n = len(gs)
    return tuple(hs[k] @ gs[k] @ inverses[(k + 1) % n] for k in range(n))


def twisted_element_matrix(gs):
    """The mn x mn matrix of (g_1, ..., g_n) x sigma: block (k, k+1 mod n) is g_k.

    Its n-th power is block diagonal with cyclic rotations of the norm.
    """
    gs = _as_matrices(gs)
    n, m, L = len(gs), gs[0].rows, gs[0].conductor
    zero = CycloNumber.zero(L)
    rows = [[zero] * (m * n) for _ in range(m * n)]
    for k, g in enumerate(gs):
        c0 = ((k + 1) % n) * m
        for r in range(m):
            for c in range(m):
                rows[k * m + r][c0 + c] = g[r, c]
    return CycloMatrix(rows, L)


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return out


def general_form_trial(lam, m, n, gs, roots, result):
    """One check of Theta(g x sigma) = sign * Theta'(Nm g) for diagonal g.

    ``roots`` are scalars s_k whose n-th powers are the diagonal of Nm g.
    Returns a TrialRecord; ``ok`` also requires the characteristic polynomial
    of the twisted element to be prod_k (x^n - s_k^n).
    """
    gs = _as_matrices(gs)
    nm = norm_map(gs)
    diag = [nm[i, i] for i in range(m)]
    off = [nm[i, j] for i in range(m) for j in range(m) if i != j]
    if any(off) or any(d != s ** n for d, s in zip(diag, roots)):
        raise ValueError("roots do not match a diagonal norm")
    expected = [1]
    for d in diag:
        expected = _poly_mul(expected, [-d] + [0] * (n - 1) + [1])
    eig_ok = twisted_element_matrix(gs).charpoly() == expected
    p = TwistedPoint(tuple(roots), n)
    lhs = twisted_character(lam, p)
    if result.vanishes:
        rhs = CycloNumber.zero(lhs.conductor)
    else:
        rhs = lift_conductor(factor_product(result.mus, diag) * result.sign, lhs.conductor)
    return TrialRecord(p.t, lhs, rhs, eig_ok and lhs == rhs)


def verify_general_form(lam, m, n, seed, trials=1, height=9):
    """Random diagonal tuples whose norm has rational n-th roots."""
    lam = _check_shape(lam, m, n)
    result = factorize(lam, m, n)
    report = VerificationReport(lam, m, n, seed, result)
    for i in range(trials):
        rng = stream(seed, "general", i)
        roots = [random_rational(rng, height) for _ in range(m)]
        diags = [[random_rational(rng, height) for _ in range(m)] for _ in range(n - 1)]
        last = []
        for k in range(m):
            prod = Fraction(1)
            for d in diags:
                prod *= d[k]
            last.append(roots[k] ** n / prod)
        gs = [CycloMatrix.diagonal(d) for d in diags + [last]]
        report.trials.append(general_form_trial(lam, m, n, gs, roots, result))
    return report


# -- block determinant identity ---------------------------------------------

def block_matrix(Xs, n):
    """Block (r, c) = w^(r * (n-1-c)) X_r, w = zeta_n; conductor n."""
    m = Xs[0].rows
    rows = []
    for r, X in enumerate(Xs):
        X = X.lift(n) if X.conductor != n else X
        for i in range(m):
            row = []
            for c in range(n):
                w = root_of_unity(n, r * (n - 1 - c))
                row.extend(w * X[i, j] for j in range(m))
            rows.append(row)
    return CycloMatrix(rows, n)


def block_det_constant(m, n):
    """prod_{0 <= i < j < n} (w^i - w^j)^m."""
    c = CycloNumber.one(n)
    for i in range(n):
        for j in range(i + 1, n):
            c = c * (root_of_unity(n, i) - root_of_unity(n, j)) ** m
    return c


def block_det_identity_check(Xs):
    """Return (lhs, rhs, c) with lhs the block determinant and rhs = c * prod det X_i."""
    Xs = [X if isinstance(X, CycloMatrix) else CycloMatrix(X) for X in Xs]
    n = len(Xs)
    m = Xs[0].rows
    if any(not X.is_square() or X.rows != m for X in Xs):
        raise ValueError("blocks must be square of one size")
    lhs = det_exact(block_matrix(Xs, n))
    c = block_det_constant(m, n)
    rhs = c
    for X in Xs:
        rhs = rhs * lift_conductor(det_exact(X), n)
    return lhs, rhs, c


# -- reformulations and worked examples -------------------------------------

def cocharacter_test(lam, m, n):
    """Do zeta_n^a, a in lambda + delta, hit every n-th root of unity exactly m times?"""
    lam = _check_shape(lam, m, n)
    counts = Counter(root_of_unity(n, a).coeffs for a in add_staircase(lam))
    return all(counts[root_of_unity(n, j).coeffs] == m for j in range(n)) and sum(counts.values()) == m * n


def kostant_value(lam, n):
    """Theta_lambda at the Coxeter class of GL_n; must lie in {-1, 0, 1}."""
    lam = _check_shape(lam, 1, n)
    v = twisted_character(lam, TwistedPoint((1,), n))
    if not v.is_rational() or v.to_fraction() not in (-1, 0, 1):
        raise Counterexample(f"Coxeter value {v} of {lam} is not in {{-1, 0, 1}}")
    return int(v.to_fraction())


def sym_weight(k, N):
    return Weight((k,) + (0,) * (N - 1))


def ext_weight(k, N):
    if not 0 <= k <= N:
        raise ValueError(f"exterior power {k} of a {N}-dimensional space")
    return Weight((1,) * k + (0,) * (N - k))


def sym_lambda_check(kind, k, m, n, t):
    """Sym^k / Lambda^k of C^{mn} at t . c_n against its closed form.

    Zero unless n | k; for k = n*l it is Theta_{Sym^l}(t^n), resp.
    (-1)^((n+1) l) Theta_{Lambda^l}(t^n).  For n = 2 the sign is (-1)^l.
    """
    if kind not in ("sym", "ext"):
        raise ValueError(f"kind must be 'sym' or 'ext', got {kind!r}")
    p = t if isinstance(t, TwistedPoint) else TwistedPoint(tuple(t), n)
    if p.m != m or p.twist_order != n:
        raise ValueError("point does not match (m, n)")
    lam = sym_weight(k, m * n) if kind == "sym" else ext_weight(k, m * n)
    value = twisted_character(lam, p)
    if k % n:
        closed = CycloNumber.zero(value.conductor)
    else:
        l = k // n
        if kind == "sym":
            closed = character_at(sym_weight(l, m), p.powers())
        elif l > m:
            closed = CycloNumber.zero(value.conductor)
        else:
            closed = character_at(ext_weight(l, m), p.powers()) * (-1) ** ((n + 1) * l)
        closed = lift_conductor(closed, value.conductor)
    if value != closed:
        raise Counterexample(f"{kind}^{k} at t={p.t}, n={n}: {value} != closed form {closed}")
    return value


def siegel_levi_eigenvalues(t):
    ts = [Fraction(x) for x in t]
    if any(x == 0 for x in ts):
        raise ValueError("t_i must be nonzero")
    inv = [1 / x for x in ts]
    return tuple(ts + inv + [-x for x in ts] + [-x for x in inv])


def siegel_levi_check(m, k, t):
    """Sym^k(C^{4m}) at (t, t^-1, -t, -t^-1) against Sym^{k/2}(C^{2m}) at (t^2, t^-2)."""
    if len(t) != m:
        raise ValueError(f"need {m} scalars, got {len(t)}")
    xs = siegel_levi_eigenvalues(t)
    value = character_at(sym_weight(k, 4 * m), xs)
    if k % 2:
        closed = CycloNumber.zero(value.conductor)
    else:
        sq = [x * x for x in xs[: 2 * m]]
        closed = character_at(sym_weight(k // 2, 2 * m), sq)
    if value != closed:
        raise Counterexample(f"Sym^{k} at t={tuple(t)}: {value} != {closed}")
    return value


def staircase_sum_identity(m, n):
    """sum_{i<mn} i == m * sum_{i<n} i + n^2 * sum_{i<m} i."""
    return sum(range(m * n)) == m * sum(range(n)) + n * n * sum(range(m))


def central_characters_consistent(lam, result):
    """z_pi = (z_1 ... z_n)^n, written additively: sum(lam) == n * sum_i sum(mu_i)."""
    if result.vanishes:
        raise ValueError("no factor weights for a vanishing character")
    n = result.classes.n
    return sum(lam) == n * sum(sum(mu) for mu in result.mus)
