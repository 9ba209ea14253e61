import random
from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import koszul
from squarezero.polyalg import (
    ANY,
    GF,
    QQ,
    FieldError,
    MatrixError,
    Poly,
    PolyError,
    PolyMatrix,
    det,
    find_common_projective_root,
    gcd_homogeneous_bivariate,
    is_square_zero,
    matrix_mul,
    minor,
    normalize_point,
    projective_points,
    rank_at_point,
    symbolic_rank,
    symbolic_rank_by_minors,
)
from squarezero.polyalg.matrix import _bareiss, _det_cofactor

F7, F101 = GF(7), GF(101)


def p(text, field=QQ, nvars=2):
    return Poly.parse(text, field, nvars)


# fields ---------------------------------------------------------------------

def test_field_basics():
    assert F7(10) == 3 and F7(-1) == 6
    assert F7(Fraction(1, 2)) == 4
    assert F7.inv(3) == 5
    assert F7.format(6) == "-1"
    assert QQ(Fraction(3, 6)) == Fraction(1, 2)
    with pytest.raises(FieldError):
        GF(8)
    with pytest.raises(ZeroDivisionError):
        F7.inv(0)


# parsing and printing -------------------------------------------------------

@pytest.mark.parametrize("text", [
    "x1^2-x2^2", "2*x1*x2", "x1+x2", "-x1", "0", "1", "x1^3*x2+1/2*x2^2-7",
])
def test_round_trip_q(text):
    assert str(p(text)) == text


def test_round_trip_fp_balanced():
    f = p("x1^2+100*x2", F101)
    assert str(f) == "x1^2-x2"
    assert p(str(f), F101) == f


@pytest.mark.parametrize("text", ["x3", "x1^", "2x1", "x1**2", "x1+*x2", "y1", "1/0"])
def test_parse_rejects(text):
    with pytest.raises((PolyError, ZeroDivisionError)):
        p(text)


# arithmetic -----------------------------------------------------------------

def test_examples():
    x1, x2 = Poly.gens(QQ, 2)
    assert (x1 + x2) * (x1 - x2) == p("x1^2-x2^2")
    assert p("x1^2+x1*x2").homogeneous_degree() == 2
    assert p("x1^2+x2").homogeneous_degree() is None
    assert Poly.zero(QQ, 2).homogeneous_degree() == ANY
    assert p("x1*x2+x2^2", F7).eval((2, 3)) == 1


def test_mixed_rings_rejected():
    with pytest.raises(PolyError):
        p("x1") + p("x1", F7)
    with pytest.raises(PolyError):
        p("x1") * Poly.var(QQ, 3, 1)


def test_canonical_form():
    f = p("x1-x1+x2")
    assert f == p("x2") and all(c != 0 for c in f.terms.values())
    assert p("x1^2+x1*x2+x2^2").leading() == ((2, 0), 1)
    assert p("x2^3+x1").leading()[0] == (0, 3)


def test_divexact():
    f = p("x1^2-x2^2")
    assert f.divexact(p("x1+x2")) == p("x1-x2")
    with pytest.raises(PolyError):
        f.divexact(p("x1"))


def polys(field, nvars=2, max_terms=4, max_deg=3):
    coeff = (st.fractions(min_value=-20, max_value=20, max_denominator=5)
             if field is QQ else st.integers(0, field.p - 1))
    mono = st.tuples(*[st.integers(0, max_deg)] * nvars)
    return st.dictionaries(mono, coeff, max_size=max_terms).map(
        lambda d: Poly(field, nvars, d))


@pytest.mark.parametrize("field", [QQ, F7])
def test_ring_axioms(field):
    @settings(max_examples=150, deadline=None)
    @given(polys(field), polys(field), polys(field))
    def check(a, b, c):
        assert a + b == b + a
        assert a * b == b * a
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly.zero(field, 2)
        assert a * Poly.const(field, 2, 1) == a
    check()


@settings(max_examples=100, deadline=None)
@given(polys(F101, nvars=3), st.integers(1, 100),
       st.tuples(st.integers(0, 100), st.integers(0, 100), st.integers(0, 100)))
def test_homogeneous_scaling(f, lam, pt):
    # keep only the top-degree part to get a homogeneous form
    if not f:
        return
    d = f.degree
    h = Poly(F101, 3, {e: c for e, c in f.terms.items() if sum(e) == d})
    scaled = tuple(lam * x for x in pt)
    assert h.eval(scaled) == F101.norm(pow(lam, d, 101) * h.eval(pt))


@settings(max_examples=100, deadline=None)
@given(polys(QQ), polys(QQ))
def test_eval_is_a_homomorphism(a, b):
    pt = (Fraction(2, 3), Fraction(-5, 7))
    assert (a * b).eval(pt) == a.eval(pt) * b.eval(pt)
    assert (a + b).eval(pt) == a.eval(pt) + b.eval(pt)


# matrices -------------------------------------------------------------------

def test_square_zero_examples(kz):
    assert is_square_zero(kz) == (True, None)
    assert is_square_zero(PolyMatrix.from_rows([["0", "x1"], ["0", "0"]], QQ, 1))[0]
    D = PolyMatrix.from_rows([["0", "x1", "0"], ["0", "0", "x1"], ["0", "0", "0"]], QQ, 1)
    ok, (pos, val) = is_square_zero(D)
    assert not ok and pos == (1, 3) and str(val) == "x1^2"


def test_matrix_mul_dims():
    A = PolyMatrix(2, QQ, 1)
    B = PolyMatrix(3, QQ, 1)
    with pytest.raises(MatrixError):
        matrix_mul(A, B)


def test_json_round_trip(kz):
    assert PolyMatrix.from_json(kz.to_json()) == kz
    D = PolyMatrix(2, QQ, 2, {(1, 2): "1/2*x1"}, degrees=(1, 1))
    back = PolyMatrix.from_json(D.to_json())
    assert back == D and back.degrees == (1, 1)


def test_minor_examples(kz):
    assert str(minor(kz, [1, 2], [2, 4])) == "x1*x2"
    assert minor(kz, [1, 2], [2, 3]).is_zero()
    with pytest.raises(MatrixError):
        minor(kz, [1, 2], [2])
    with pytest.raises(MatrixError):
        minor(kz, [1, 5], [2, 3])


def test_corner_block_matrix_minor():
    # upper right 4x4 block diag(x1, x2, x1+x2, x1)
    entries = {(1, 5): "x1", (2, 6): "x2", (3, 7): "x1+x2", (4, 8): "x1"}
    D = PolyMatrix(8, F101, 2, entries)
    m = minor(D, [1, 2, 3, 4], [5, 6, 7, 8])
    assert m == p("x1^3*x2+x1^2*x2^2", F101)


def test_symbolic_rank_examples(kz):
    assert symbolic_rank(kz) == 2
    assert symbolic_rank(PolyMatrix(3, QQ, 2)) == 0
    f = [p("x1"), p("x1+x2"), p("x2^2")]
    a, b = p("x1-x2"), p("3")
    L = PolyMatrix(3, QQ, 2, {(1, j + 1): a * f[j] for j in range(3)}
                   | {(2, j + 1): b * f[j] for j in range(3)})
    assert symbolic_rank(L) == 1


def test_rank_at_point_examples(kz):
    assert rank_at_point(kz, (1, 1)) == 2
    assert rank_at_point(kz, (0, 0)) == 0
    assert rank_at_point(PolyMatrix.from_rows([["0", "x1"], ["0", "0"]], GF(5), 1), (0,)) == 0


def random_matrix(rng, n, field, nvars=2, density=0.6, max_deg=2):
    ent = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if rng.random() < density:
                terms = {}
                for _ in range(rng.randint(1, 3)):
                    e = tuple(rng.randint(0, max_deg) for _ in range(nvars))
                    terms[e] = field.random_element(rng, 5)
                ent[(i, j)] = Poly(field, nvars, terms)
    return PolyMatrix(n, field, nvars, ent)


def low_rank_matrix(rng, n, k, field):
    """Product of n x k and k x n random polynomial matrices: rank <= k."""
    A = random_matrix(rng, n, field, density=0.8, max_deg=1)
    B = random_matrix(rng, n, field, density=0.8, max_deg=1)
    A = PolyMatrix(n, field, 2, {ij: v for ij, v in A.entries.items() if ij[1] <= k})
    B = PolyMatrix(n, field, 2, {ij: v for ij, v in B.entries.items() if ij[0] <= k})
    return matrix_mul(A, B)


def test_symbolic_rank_matches_minors():
    rng = random.Random(1)
    for _ in range(40):
        n = rng.randint(1, 4)
        field = rng.choice([QQ, F7])
        X = (low_rank_matrix(rng, n, rng.randint(0, n), field) if rng.random() < 0.5
             else random_matrix(rng, n, field))
        assert symbolic_rank(X) == symbolic_rank_by_minors(X)


def test_specialization_never_raises_rank():
    rng = random.Random(2)
    for _ in range(30):
        X = low_rank_matrix(rng, 4, rng.randint(0, 4), F7)
        sr = symbolic_rank(X)
        for pt in [(a, b) for a in range(7) for b in range(7)]:
            assert rank_at_point(X, pt) <= sr


def test_det_bareiss_matches_cofactor():
    rng = random.Random(3)
    for field in (QQ, F101):
        for _ in range(5):
            X = random_matrix(rng, 5, field, density=0.7, max_deg=1)
            rows = X.rows()
            assert _bareiss(rows, field, 2, True)[1] == _det_cofactor(rows, field, 2)
            assert det(rows, field, 2) == _det_cofactor(rows, field, 2)


def test_minor_permutation_sign():
    rng = random.Random(4)
    for _ in range(20):
        X = random_matrix(rng, 5, QQ)
        rows = rng.sample(range(1, 6), 3)
        cols = rng.sample(range(1, 6), 3)
        base = minor(X, rows, cols)
        for perm in permutations(range(3)):
            inversions = sum(perm[a] > perm[b] for a in range(3) for b in range(a + 1, 3))
            sign = -1 if inversions % 2 else 1
            r2 = [rows[k] for k in perm]
            assert minor(X, r2, cols) == base * sign
            # the same permutation on both sides leaves the minor unchanged
            assert minor(X, r2, [cols[k] for k in perm]) == base


# projective roots -----------------------------------------------------------

def test_projective_points_order_and_count():
    pts = list(projective_points(2, 3))
    assert pts == [(1, 0), (1, 1), (1, 2), (0, 1)]
    assert len(list(projective_points(3, 5))) == 1 + 5 + 25
    assert normalize_point((0, 3, 6), F7) == (0, 1, 2)
    with pytest.raises(PolyError):
        normalize_point((0, 0), F7)


def test_root_examples():
    F3, F5 = GF(3), GF(5)
    assert find_common_projective_root([p("x1", F3)], F3) == (0, 1)
    fs = [p("x1-x2", F5, 3), p("x1-x3", F5, 3)]
    assert find_common_projective_root(fs, F5) == (1, 1, 1)
    f = p("x1^2+x2^2", F3)
    assert [f.eval(pt) for pt in projective_points(2, 3)] == [1, 2, 2, 1]
    assert find_common_projective_root([f], F3) is None


def test_root_errors():
    with pytest.raises(PolyError, match="no finite enumeration"):
        find_common_projective_root([p("x1")], QQ)
    with pytest.raises(PolyError):
        find_common_projective_root([p("x1^2+x2", F7)], F7)
    with pytest.raises(PolyError):
        find_common_projective_root([p("3", F7)], F7)
    with pytest.raises(PolyError):
        find_common_projective_root([p("x1", F7, 5)], F7)


def test_roots_are_roots():
    rng = random.Random(5)
    F = GF(11)
    for _ in range(30):
        a, b, c = (F.random_element(rng) for _ in range(3))
        fs = [Poly(F, 3, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c}) or p("x1", F, 3)]
        root = find_common_projective_root(fs, F)
        # a single linear form always has a root in P^2
        assert root is not None and all(f.eval(root) == 0 for f in fs)


# bivariate gcd --------------------------------------------------------------

def test_gcd_examples():
    g = gcd_homogeneous_bivariate(p("x1^2-x2^2"), p("x1^2+2*x1*x2+x2^2"))
    assert g == p("x1+x2")
    f = p("3*x1^2-3*x2^2")
    assert gcd_homogeneous_bivariate(f, Poly.zero(QQ, 2)) == p("x1^2-x2^2")
    assert gcd_homogeneous_bivariate(p("x1*x2"), p("x2^2")) == p("x2")
    assert gcd_homogeneous_bivariate(p("x1+x2"), p("x1-x2")) == p("1")


def test_gcd_errors():
    with pytest.raises(PolyError, match="out of scope"):
        gcd_homogeneous_bivariate(p("x1", QQ, 3), p("x2", QQ, 3))
    with pytest.raises(PolyError, match="out of scope"):
        gcd_homogeneous_bivariate(p("x1^2+x2"), p("x1"))


def test_gcd_divides_and_recovers_common_factor():
    rng = random.Random(6)
    for field in (QQ, F101):
        for _ in range(25):
            def form(deg):
                return Poly(field, 2, {(k, deg - k): field.random_element(rng, 9)
                                       for k in range(deg + 1)})
            common, u, v = form(rng.randint(0, 2)), form(rng.randint(0, 3)), form(rng.randint(0, 3))
            f, g = common * u, common * v
            if not f or not g:
                continue
            h = gcd_homogeneous_bivariate(f, g)
            assert f.divexact(h) * h == f
            assert g.divexact(h) * h == g
            # any common factor divides the gcd
            assert h.divexact(common) * common == h
            assert h == h.monic()
