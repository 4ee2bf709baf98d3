import random
from fractions import Fraction
from itertools import combinations

import pytest
import sympy

from minrank.graph import Graph
from minrank.linalg import (
    MatrixError,
    SymRatMatrix,
    charpoly,
    congruence,
    in_pattern,
    inertia,
    matmul,
    matvec,
    nullspace_basis,
    parse_matrix,
    pattern_graph,
    rank,
    rref,
    submatrix,
    transpose,
)


def rand_matrix(rng, r, c, lo=-3, hi=3, frac=False):
    def entry():
        x = rng.randint(lo, hi)
        return Fraction(x, rng.randint(1, 4)) if frac else Fraction(x)

    return [[entry() for _ in range(c)] for _ in range(r)]


def rand_sym(rng, n, frac=False):
    m = rand_matrix(rng, n, n, frac=frac)
    return SymRatMatrix([[m[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)])


def low_rank(rng, n, r):
    """Symmetric ``n x n`` of rank at most ``r``."""
    m = rand_matrix(rng, r, n)
    d = [rng.choice((-2, -1, 1, 3)) for _ in range(r)]
    return congruence(m, SymRatMatrix.diag(d))


def det(m):
    n = len(m)
    if n == 0:
        return Fraction(1)
    return sum(
        (-1) ** j * m[0][j] * det([r[:j] + r[j + 1:] for r in m[1:]]) for j in range(n) if m[0][j]
    )


def rank_by_minors(m):
    rows, cols = len(m), len(m[0])
    for k in range(min(rows, cols), 0, -1):
        for rs in combinations(range(rows), k):
            for cs in combinations(range(cols), k):
                if det([[m[i][j] for j in cs] for i in rs]):
                    return k
    return 0


def test_rank_against_sympy():
    rng = random.Random(1)
    for _ in range(300):
        m = rand_matrix(rng, rng.randint(1, 7), rng.randint(1, 7), frac=rng.random() < 0.5)
        assert rank(m) == sympy.Matrix(m).rank()


def test_rank_against_minors():
    rng = random.Random(2)
    for _ in range(150):
        m = rand_matrix(rng, rng.randint(1, 5), rng.randint(1, 5), lo=-1, hi=1)
        assert rank(m) == rank_by_minors(m)


def test_low_rank_constructions():
    rng = random.Random(3)
    for _ in range(100):
        n = rng.randint(1, 8)
        r = rng.randint(1, n)
        assert rank(low_rank(rng, n, r)) <= r


def test_rank_examples():
    assert rank(SymRatMatrix.identity(5)) == 5
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([]) == 0
    assert rank([[Fraction(1, 3), Fraction(1, 6)], [2, 1]]) == 1


def test_nullspace_vectors_are_null_and_independent():
    rng = random.Random(4)
    for _ in range(200):
        r, c = rng.randint(1, 6), rng.randint(1, 7)
        m = rand_matrix(rng, r, c, lo=-2, hi=2)
        basis = nullspace_basis(m)
        assert len(basis) == c - rank(m)
        for x in basis:
            assert all(v == 0 for v in matvec(m, x))
        if basis:
            assert rank(basis) == len(basis)


def test_nullspace_is_canonical():
    rng = random.Random(5)
    for _ in range(50):
        m = rand_matrix(rng, 3, 6, lo=-2, hi=2)
        p = rand_matrix(rng, 3, 3)
        if rank(p) < 3:
            continue
        # row operations do not change the null space or its echelon basis
        assert nullspace_basis(matmul(p, m)) == nullspace_basis(m)


def test_nullspace_of_empty_rows():
    assert nullspace_basis([], ncols=2) == [[1, 0], [0, 1]]
    with pytest.raises(MatrixError):
        nullspace_basis([])


def test_rref_pivots():
    m, piv = rref([[0, 2, 4], [0, 1, 2], [1, 0, 1]])
    assert piv == [0, 1]
    assert m[0] == [1, 0, 1] and m[1] == [0, 1, 2]


def numeric_inertia(a):
    vals = sympy.Matrix(a.tolist()).eigenvals(multiple=True)
    nums = [complex(sympy.N(v, 30)).real for v in vals]
    pos = sum(1 for x in nums if x > 1e-9)
    neg = sum(1 for x in nums if x < -1e-9)
    return pos, neg, len(nums) - pos - neg


def test_inertia_against_sympy():
    rng = random.Random(6)
    for _ in range(60):
        n = rng.randint(1, 4)
        a = rand_sym(rng, n, frac=rng.random() < 0.3)
        assert inertia(a) == numeric_inertia(a)


def test_inertia_sylvester():
    rng = random.Random(7)
    for _ in range(150):
        n = rng.randint(1, 7)
        d = [rng.choice((-2, -1, 0, 0, 1, 5)) for _ in range(n)]
        expect = (sum(x > 0 for x in d), sum(x < 0 for x in d), d.count(0))
        p = rand_matrix(rng, n, n)
        if rank(p) < n:
            continue
        assert inertia(congruence(p, SymRatMatrix.diag(d))) == expect


def test_inertia_sums_to_order_and_matches_rank():
    rng = random.Random(8)
    for _ in range(150):
        a = rand_sym(rng, rng.randint(1, 8))
        pos, neg, zero = inertia(a)
        assert pos + neg + zero == a.n
        assert pos + neg == rank(a)


def test_inertia_examples():
    assert inertia(SymRatMatrix([[0, 1], [1, 0]])) == (1, 1, 0)
    assert inertia(SymRatMatrix([])) == (0, 0, 0)
    assert inertia(SymRatMatrix.diag([Fraction(1, 7), 0, -3])) == (1, 1, 1)


def test_charpoly_against_sympy():
    rng = random.Random(9)
    x = sympy.Symbol("x")
    for _ in range(100):
        n = rng.randint(1, 6)
        m = rand_matrix(rng, n, n, frac=rng.random() < 0.3)
        expect = sympy.Matrix(m).charpoly(x).all_coeffs()
        assert [sympy.Rational(c.numerator, c.denominator) for c in charpoly(m)] == expect


def test_parse_matrix():
    a = parse_matrix("2\n1 1/2\n1/2 -3\n")
    assert a == [[1, Fraction(1, 2)], [Fraction(1, 2), -3]]
    assert SymRatMatrix.from_text(SymRatMatrix(a).to_text()) == SymRatMatrix(a)


@pytest.mark.parametrize(
    "text",
    ["", "x\n1", "2\n1 0\n", "2\n1 0\n0\n", "1\n1/0\n", "1\n0.5\n", "1\nabc\n"],
)
def test_parse_errors(text):
    with pytest.raises(MatrixError):
        SymRatMatrix.from_text(text)


def test_symmetric_matrix_checks():
    with pytest.raises(MatrixError, match="symmetric"):
        SymRatMatrix([[1, 2], [3, 4]])
    with pytest.raises(MatrixError, match="square"):
        SymRatMatrix([[1, 2]])
    with pytest.raises(MatrixError, match="floating"):
        SymRatMatrix([[0.5]])


def test_submatrix_and_transpose():
    m = [[1, 2, 3], [4, 5, 6]]
    assert submatrix(m, [1], [2, 0]) == [[4, 6]]
    assert transpose(m) == [[1, 4], [2, 5], [3, 6]]
    with pytest.raises(MatrixError):
        submatrix(m, [2], [0])
    with pytest.raises(MatrixError):
        submatrix(m, [0], [3])


def test_matmul_shape_error():
    with pytest.raises(MatrixError):
        matmul([[1, 2]], [[1, 2]])


def test_congruence_is_symmetric_and_correct():
    m = [[1, 2], [0, 1], [1, 0]]
    d = SymRatMatrix.diag([1, 1, -1])
    b = congruence(m, d)
    assert b.tolist() == [[0, 2], [2, 5]]
    with pytest.raises(MatrixError):
        congruence(m, SymRatMatrix.identity(2))


def test_pattern_helpers():
    a = SymRatMatrix([[5, 1, 0], [1, 0, 2], [0, 2, 9]])
    assert pattern_graph(a) == Graph.path(3)
    assert in_pattern(a, Graph.path(3))
    assert not in_pattern(a, Graph.complete(3))
    with pytest.raises(MatrixError):
        in_pattern(a, Graph.path(2))


def test_permuted():
    a = SymRatMatrix([[1, 2, 0], [2, 3, 4], [0, 4, 5]])
    b = a.permuted([2, 0, 1])
    assert b[2, 0] == a[0, 1] and b[1, 1] == a[2, 2]
    assert b.permuted([1, 2, 0]) == a
