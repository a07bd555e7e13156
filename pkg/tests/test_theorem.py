import itertools
import random
from fractions import Fraction

import pytest

from twistedchar.exactnum import CycloMatrix, CycloNumber, det_exact, root_of_unity
from twistedchar.schur import character_at
from twistedchar.theorem import (
    Counterexample,
    NoEvaluationPoint,
    block_det_constant,
    block_det_identity_check,
    block_matrix,
    central_characters_consistent,
    cocharacter_test,
    determine_sign,
    factor_product,
    factorize,
    general_form_trial,
    kostant_value,
    norm_map,
    siegel_levi_check,
    sign_points,
    staircase_sum_identity,
    sym_lambda_check,
    twisted_character,
    twisted_conjugate,
    twisted_element_matrix,
    verify_general_form,
    verify_identity,
)
from twistedchar.verify import oracle_elementary, oracle_homogeneous, random_regular_point, random_weight
from twistedchar.weights import TwistedPoint, Weight, residue_condition

from test_exactnum import leibniz


def test_factorize_examples():
    r = factorize((0, 0, 0, 0), 2, 2)
    assert not r.vanishes and r.mus == ((0, 0), (0, 0)) and r.sign == 1
    r = factorize((1, 1, 0, 0), 2, 2)
    assert r.mus == ((1, 0), (0, 0)) and r.sign == -1
    r = factorize((2, 0, 0, 0), 2, 2)
    assert r.classes.classes == ((2, 0), (5, 1))
    assert r.mus == ((0, 0), (1, 0)) and r.sign == 1
    r = factorize((1, 0), 1, 2)
    assert r.vanishes and r.sign is None and r.mus == ()
    with pytest.raises(ValueError):
        factorize((1, 0, 0), 2, 2)


def test_factorize_negative_weight():
    # lambda + delta = (1, -1, -3, -5): every entry odd
    assert factorize((-2, -3, -4, -5), 2, 2).vanishes
    # lambda + delta = (3, 2, 0, -1): class 0 {2, 0}, class 1 {3, -1}
    r = factorize((0, 0, -1, -1), 2, 2)
    assert r.mus == ((0, 0), (0, -1))
    assert verify_identity((0, 0, -1, -1), 2, 2, 3, 0).passed


def test_sign_examples_by_hand():
    # Lambda^2 at (t1, t2, -t1, -t2) is -(t1^2 + t2^2); the factor side is t1^2 + t2^2
    t1, t2 = Fraction(3, 2), Fraction(-5)
    p = TwistedPoint((t1, t2), 2)
    assert twisted_character((1, 1, 0, 0), p) == -(t1 ** 2 + t2 ** 2)
    assert twisted_character((2, 0, 0, 0), p) == t1 ** 2 + t2 ** 2
    for lam, sign in [((0, 0, 0, 0), 1), ((1, 1, 0, 0), -1), ((2, 0, 0, 0), 1)]:
        r = factorize(lam, 2, 2, with_sign=False)
        assert determine_sign(lam, 2, 2, r) == sign


def test_determine_sign_retry_bound():
    r = factorize((1, 1, 0, 0), 2, 2, with_sign=False)
    with pytest.raises(NoEvaluationPoint):
        determine_sign((1, 1, 0, 0), 2, 2, r, max_retries=0)


def test_max_retries_env(monkeypatch):
    monkeypatch.setenv("TWISTEDCHAR_MAX_RETRIES", "0")
    with pytest.raises(NoEvaluationPoint):
        factorize((1, 1, 0, 0), 2, 2)


def test_sign_points_deterministic():
    pts = list(sign_points(3, 2, 3))
    assert [p.t for p in pts] == [(2, 3, 5), (3, 4, 6), (4, 5, 7)]


@pytest.mark.parametrize("seed", range(12))
def test_sign_stable_across_points(seed):
    rng = random.Random(seed)
    m, n = rng.choice([(2, 2), (3, 2), (2, 3), (1, 4)])
    while True:
        lam = random_weight(m * n, 0, 4, rng)
        r = factorize(lam, m, n)
        if not r.vanishes:
            break
    for _ in range(3):
        p = random_regular_point(m, n, rng)
        lhs = twisted_character(lam, p)
        rhs = factor_product(r.mus, p.powers())
        assert lhs == rhs.to_fraction() * r.sign


def test_twisted_character_examples():
    assert twisted_character((1, 0), TwistedPoint((1,), 2)) == 0
    assert twisted_character((1, 1, 0, 0), TwistedPoint((1, 2), 2)) == oracle_elementary(2, (1, 2, -1, -2))
    assert twisted_character((0, 0, 0, 0), TwistedPoint((Fraction(2, 7), 5), 2)) == 1
    assert twisted_character((0, 0, 0, 0), TwistedPoint((1, 1), 2)) == 1


def test_verify_identity_examples():
    for seed in (0, 1, 2):
        rep = verify_identity((1, 1, 0, 0), 2, 2, 3, seed)
        assert rep.passed and len(rep.trials) == 3
    rep = verify_identity((1, 0), 1, 2, 4, 0)
    assert rep.passed and all(tr.lhs == 0 for tr in rep.trials)
    rep = verify_identity((0,) * 6, 2, 3, 3, 5)
    assert rep.passed and all(tr.lhs == 1 and tr.rhs == 1 for tr in rep.trials)


def test_report_json_fields():
    doc = verify_identity((1, 1, 0, 0), 2, 2, 1, 0).to_json()
    assert list(doc) == ["vanishes", "classes", "mus", "sign", "trials"]
    assert list(doc["trials"][0]) == ["t", "lhs", "rhs", "ok"]
    assert doc["classes"] == {"0": [4, 0], "1": [3, 1]}


def test_mismatch_is_reported_not_raised(monkeypatch):
    import twistedchar.theorem as th

    monkeypatch.setattr(th, "identity_sides", lambda lam, r, p: (CycloNumber.one(2), CycloNumber.zero(2)))
    rep = th.verify_identity((1, 1, 0, 0), 2, 2, 2, 0)
    assert not rep.passed
    assert len(rep.counterexamples()) == 2


def rational_matrix(rng, m):
    return CycloMatrix([[Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(m)] for _ in range(m)])


def test_norm_map_examples():
    g = CycloMatrix([[2, 1], [1, 1]])
    assert norm_map((g, g.inverse())) == CycloMatrix.identity(2)
    d = norm_map((CycloMatrix.diagonal([2, 3]), CycloMatrix.diagonal([5, Fraction(1, 3)])))
    assert d == CycloMatrix.diagonal([10, 1])
    rng = random.Random(1)
    a, b = rational_matrix(rng, 2), rational_matrix(rng, 2)
    prod = [[sum(a[i, k] * b[k, j] for k in range(2)) for j in range(2)] for i in range(2)]
    assert norm_map((a, b)) == CycloMatrix(prod)


def test_twisted_conjugate_examples():
    rng = random.Random(2)
    gs = [rational_matrix(rng, 2) for _ in range(3)]
    ident = [CycloMatrix.identity(2)] * 3
    assert twisted_conjugate(gs, ident) == tuple(gs)
    hs = [CycloMatrix([[1, 2], [0, 3]]), CycloMatrix([[2, 0], [1, 1]]), CycloMatrix([[1, 1], [1, 2]])]
    out = twisted_conjugate(ident, hs)
    assert out[0] == hs[0] @ hs[1].inverse()
    assert norm_map(out) == CycloMatrix.identity(2)
    with pytest.raises(ValueError):
        twisted_conjugate(gs, [CycloMatrix([[1, 1], [1, 1]])] * 3)


@pytest.mark.parametrize("seed", range(8))
def test_norm_charpoly_invariant(seed):
    rng = random.Random(10 + seed)
    m, n = rng.randint(1, 3), rng.randint(1, 3)
    gs = [rational_matrix(rng, m) for _ in range(n)]
    hs = []
    while len(hs) < n:
        h = rational_matrix(rng, m)
        if h.det():
            hs.append(h)
    assert norm_map(gs).charpoly() == norm_map(twisted_conjugate(gs, hs)).charpoly()


def test_twisted_element_matrix_power_is_block_norm():
    rng = random.Random(4)
    gs = [rational_matrix(rng, 2) for _ in range(3)]
    M = twisted_element_matrix(gs)
    M3 = M @ M @ M
    nm = norm_map(gs)
    assert all(M3[i, j] == nm[i, j] for i in range(2) for j in range(2))


def test_general_form_examples():
    one = CycloMatrix.identity(2)
    lam = Weight((2, 1, 1, 0))
    r = factorize(lam, 2, 2)
    tr = general_form_trial(lam, 2, 2, [one, one], [1, 1], r)
    assert tr.ok and tr.lhs == twisted_character(lam, TwistedPoint((1, 1), 2))
    r = factorize((1, 0), 1, 2)
    tr = general_form_trial((1, 0), 1, 2, [CycloMatrix([[4]]), CycloMatrix([[1]])], [2], r)
    assert tr.ok and tr.lhs == 0 and tr.rhs == 0
    assert verify_general_form((1, 1, 0, 0), 2, 2, seed=3, trials=5).passed
    with pytest.raises(ValueError):
        general_form_trial((1, 0), 1, 2, [CycloMatrix([[4]]), CycloMatrix([[1]])], [3], r)


def test_block_det_small_case():
    x1, x2 = Fraction(3), Fraction(-7, 2)
    B = block_matrix([CycloMatrix([[x1]]), CycloMatrix([[x2]])], 2)
    assert B.to_lists() == [[x1, x1], [-x2, x2]]
    lhs, rhs, c = block_det_identity_check([[[x1]], [[x2]]])
    assert lhs == 2 * x1 * x2 == rhs and c == 2


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (1, 3), (2, 3), (3, 3), (1, 4)])
def test_block_det_identity_blocks(m, n):
    ident = [CycloMatrix.identity(m)] * n
    lhs, rhs, c = block_det_identity_check(ident)
    assert lhs == c == rhs
    rng = random.Random(m * 10 + n)
    Xs = [rational_matrix(rng, m) for _ in range(n)]
    lhs, rhs, c = block_det_identity_check(Xs)
    assert lhs == rhs
    if m * n <= 6:
        assert lhs == leibniz(block_matrix(Xs, n).to_lists())


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (1, 3), (2, 3), (1, 4)])
def test_ascending_layout_differs_by_vandermonde_sign(m, n):
    # the layout w^(r*c) X_r gives (-1)^(m * n(n-1)/2) c prod det
    rng = random.Random(7)
    Xs = [rational_matrix(rng, m) for _ in range(n)]
    rows = []
    for r, X in enumerate(Xs):
        X = X.lift(n)
        for i in range(m):
            rows.append([root_of_unity(n, r * c) * X[i, j] for c in range(n) for j in range(m)])
    asc = det_exact(CycloMatrix(rows, n))
    _, rhs, _ = block_det_identity_check(Xs)
    assert asc == rhs * (-1) ** (m * n * (n - 1) // 2)


def test_cocharacter_examples():
    assert cocharacter_test((0, 0, 0, 0), 2, 2)
    assert not cocharacter_test((1, 0), 1, 2)


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3), (3, 2), (1, 6)])
def test_cocharacter_matches_residue_condition(m, n):
    for entries in itertools.combinations_with_replacement(range(n, -1, -1), m * n):
        lam = tuple(entries)
        assert cocharacter_test(lam, m, n) == residue_condition(lam, m, n)[0]


def test_kostant_examples():
    for n in range(1, 7):
        assert kostant_value((0,) * n, n) == 1
    for n in range(2, 7):
        assert kostant_value((1,) + (0,) * (n - 1), n) == 0
    assert kostant_value((1, 1), 2) == -1


@pytest.mark.parametrize("n", range(2, 7))
def test_kostant_random(n):
    rng = random.Random(n)
    for _ in range(60):
        lam = random_weight(n, -3, 6, rng)
        v = kostant_value(lam, n)
        r = factorize(lam, 1, n)
        assert v == (0 if r.vanishes else r.sign)


def test_sym_lambda_examples():
    assert sym_lambda_check("sym", 3, 2, 2, (1, 2)) == 0
    assert sym_lambda_check("sym", 2, 2, 2, (1, 2)) == oracle_homogeneous(2, (1, 2, -1, -2)) == 5
    assert sym_lambda_check("ext", 2, 2, 2, (1, 2)) == oracle_elementary(2, (1, 2, -1, -2)) == -5
    with pytest.raises(ValueError):
        sym_lambda_check("ext", 5, 2, 2, (1, 2))
    with pytest.raises(ValueError):
        sym_lambda_check("tensor", 2, 2, 2, (1, 2))


@pytest.mark.parametrize("n", [3, 4])
def test_sym_lambda_other_twists(n):
    t = (Fraction(2), Fraction(-1, 3))
    for k in range(0, 2 * n + 1):
        sym_lambda_check("sym", k, 2, n, t)
        sym_lambda_check("ext", k, 2, n, t)


def test_siegel_examples():
    assert siegel_levi_check(1, 1, (Fraction(5, 3),)) == 0
    assert siegel_levi_check(1, 2, (2,)) == Fraction(17, 4)
    assert siegel_levi_check(1, 0, (7,)) == 1
    assert siegel_levi_check(2, 4, (1, 1)) == character_at((2, 0, 0, 0), (1, 1, 1, 1))


def test_counterexample_is_loud(monkeypatch):
    import twistedchar.theorem as th

    monkeypatch.setattr(th, "twisted_character", lambda lam, p: CycloNumber.from_rational(2, p.twist_order))
    with pytest.raises(Counterexample):
        th.kostant_value((0, 0), 2)


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2), (1, 3), (3, 2), (2, 3)])
def test_theorem_soundness(m, n):
    rng = random.Random(m * 7 + n)
    for i in range(15):
        lam = random_weight(m * n, 0, 4, rng)
        rep = verify_identity(lam, m, n, 3, seed=i)
        assert rep.passed, lam
        r = rep.factorization
        if not r.vanishes:
            assert all(isinstance(mu, Weight) and len(mu) == m for mu in r.mus)
            assert central_characters_consistent(lam, r)


@pytest.mark.parametrize("m", range(1, 7))
def test_staircase_sum_identity(m):
    for n in range(1, 7):
        assert staircase_sum_identity(m, n)


def test_block_det_constant_small():
    assert block_det_constant(1, 2) == 2
    assert block_det_constant(2, 2) == 4
    w = root_of_unity(3, 1)
    assert block_det_constant(1, 3) == (1 - w) * (1 - w * w) * (w - w * w)
