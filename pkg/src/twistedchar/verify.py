"""Seeded instance generation and brute-force oracles.

The oracles here deliberately avoid the code paths in :mod:`twistedchar.schur`:
elementary and complete homogeneous values come from expanding the product
generating functions, and Schur values from enumerating semistandard tableaux.

Randomness is split per label: ``stream(seed, "weight", 3)`` always returns
the same generator, regardless of what else has been drawn, so concurrent or
reordered trials cannot change results.
"""
import hashlib
import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .exactnum import CycloNumber
from .schur import as_field
from .weights import TwistedPoint, Weight, is_regular

__all__ = [
    "TrialConfig",
    "derive_seed",
    "stream",
    "random_weight",
    "random_rational",
    "random_regular_point",
    "oracle_elementary",
    "oracle_homogeneous",
    "oracle_tableaux",
    "oracle_dimension",
    "run_sweep",
]


def derive_seed(seed, *labels):
    """64-bit child seed for ``labels`` under ``seed``."""
    key = "/".join(str(x) for x in (seed,) + labels).encode()
    return int.from_bytes(hashlib.sha256(key).digest()[:8], "big")


def stream(seed, *labels):
    return random.Random(derive_seed(seed, *labels))


def random_weight(N, lo, hi, rng):
    """Uniform draw from the weakly decreasing N-tuples with entries in [lo, hi].

    Stars and bars: choosing N distinct slots from hi - lo + N gives a
    multiset, and every multiset arises from exactly one choice.
    """
    if lo > hi:
        raise ValueError(f"empty range [{lo}, {hi}]")
    slots = sorted(rng.sample(range(hi - lo + N), N))
    return Weight(sorted((s - k + lo for k, s in enumerate(slots)), reverse=True))


def random_rational(rng, height):
    """Nonzero rational p/q with |p| <= height and 1 <= q <= height."""
    while True:
        p = rng.randint(-height, height)
        if p:
            return Fraction(p, rng.randint(1, height))


def random_regular_point(m, n, rng, height=9):
    """Twisted point with rational t whose n-th powers are distinct."""
    while True:
        p = TwistedPoint(tuple(random_rational(rng, height) for _ in range(m)), n)
        if is_regular(p):
            return p


def _series_product(factors, k, L):
    # multiply power series given as coefficient lists, truncated at degree k
    acc = [CycloNumber.one(L)] + [CycloNumber.zero(L)] * k
    for f in factors:
        out = [CycloNumber.zero(L)] * (k + 1)
        for i, a in enumerate(acc):
            if not a:
                continue
            for j, b in enumerate(f[: k + 1 - i]):
                if b:
                    out[i + j] = out[i + j] + a * b
        acc = out
    return acc


def oracle_elementary(k, xs):
    """e_k(xs) as the u^k coefficient of prod (1 + x u)."""
    if k < 0:
        raise ValueError("k must be non-negative")
    xs, L = as_field(xs)
    one = CycloNumber.one(L)
    return _series_product([[one, x] for x in xs], k, L)[k]


def oracle_homogeneous(k, xs):
    """h_k(xs) as the u^k coefficient of prod 1/(1 - x u), each factor expanded as a geometric series."""
    if k < 0:
        raise ValueError("k must be non-negative")
    xs, L = as_field(xs)
    factors = [[x ** j for j in range(k + 1)] for x in xs]
    return _series_product(factors, k, L)[k]


def _ssyt(shape, N):
    # fill row by row, left to right; rows weakly increase, columns strictly increase
    cells = [(r, c) for r, length in enumerate(shape) for c in range(length)]
    filling = {}

    def rec(idx):
        if idx == len(cells):
            yield dict(filling)
            return
        r, c = cells[idx]
        low = 1
        if c > 0:
            low = max(low, filling[(r, c - 1)])
        if r > 0:
            low = max(low, filling[(r - 1, c)] + 1)
        for v in range(low, N + 1):
            filling[(r, c)] = v
            yield from rec(idx + 1)
        filling.pop((r, c), None)

    yield from rec(0)


def oracle_tableaux(lam, xs):
    """Sum over semistandard tableaux of shape lam of x^content.  N <= 3, |lam| <= 8."""
    lam = Weight(lam)
    if len(lam) != len(xs):
        raise ValueError("weight and eigenvalue list have different lengths")
    if lam[-1] < 0:
        raise ValueError("tableau oracle needs a non-negative weight")
    if len(xs) > 3 or sum(lam) > 8:
        raise ValueError(f"tableau oracle bound exceeded (N={len(xs)}, |lam|={sum(lam)})")
    xs, L = as_field(xs)
    shape = [p for p in lam if p > 0]
    total = CycloNumber.zero(L)
    for t in _ssyt(shape, len(xs)):
        mono = CycloNumber.one(L)
        for v in t.values():
            mono = mono * xs[v - 1]
        total = total + mono
    return total


def oracle_dimension(lam):
    """Hook-content formula: prod over cells of (N + content) / hook, after det-shift."""
    lam = Weight(lam)
    N = len(lam)
    shape = [p - lam[-1] for p in lam]
    conj = [sum(1 for p in shape if p > c) for c in range(shape[0])] if shape[0] else []
    num = den = 1
    for r, length in enumerate(shape):
        for c in range(length):
            num *= N + c - r
            den *= (length - c - 1) + (conj[c] - r - 1) + 1
    return Fraction(num, den)


@dataclass
class TrialConfig:
    """Parameters of a seeded sweep over random weights."""

    seed: int = 0
    trials: int = 3
    shapes: list = field(default_factory=lambda: [(1, 2), (1, 3), (1, 4), (2, 2), (3, 2), (2, 3)])
    weights_per_shape: int = 200
    lo: int = 0
    hi: int = 4
    height: int = 9

    def __post_init__(self):
        self.shapes = [tuple(s) for s in self.shapes]
        if not self.shapes:
            raise ValueError("need at least one (m, n) shape")
        if self.trials < 1 or self.weights_per_shape < 1 or self.height < 1:
            raise ValueError("trials, weights_per_shape and height must be positive")
        if self.lo > self.hi:
            raise ValueError(f"empty entry range [{self.lo}, {self.hi}]")
        for m, n in self.shapes:
            if m < 1 or n < 1:
                raise ValueError(f"bad shape {(m, n)}")

    @classmethod
    def from_json(cls, doc):
        if isinstance(doc, str):
            doc = json.loads(doc)
        return cls(**doc)

    def to_json(self):
        return {
            "seed": self.seed,
            "trials": self.trials,
            "shapes": [list(s) for s in self.shapes],
            "weights_per_shape": self.weights_per_shape,
            "lo": self.lo,
            "hi": self.hi,
            "height": self.height,
        }


def _sweep_one(args):
    from .theorem import verify_identity

    lam, m, n, trials, seed, height = args
    return verify_identity(lam, m, n, trials, seed, height=height)


def sweep_jobs(config):
    jobs = []
    for m, n in config.shapes:
        for w in range(config.weights_per_shape):
            lam = random_weight(m * n, config.lo, config.hi, stream(config.seed, "weight", m, n, w))
            jobs.append((lam, m, n, config.trials, derive_seed(config.seed, "points", m, n, w), config.height))
    return jobs


def run_sweep(config, workers=1):
    """Verify the factorization identity on every weight of the sweep, in order."""
    jobs = sweep_jobs(config)
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            return list(pool.map(_sweep_one, jobs, chunksize=8))
    return [_sweep_one(j) for j in jobs]


def sweep_document(config, reports):
    return {
        "config": config.to_json(),
        "reports": [
            {"lambda": str(r.lam), "m": r.m, "n": r.n, "report": r.to_json()} for r in reports
        ],
    }
