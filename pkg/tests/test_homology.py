import random

import pytest

from pogcat import (
    AbGroup,
    ChainComplexZ,
    cokernel,
    invariant_factors,
    is_quasi_iso,
    kernel_basis,
    mapping_cone,
    smith_normal_form,
    solve_int,
)
from pogcat.homology import (
    det,
    identity,
    in_span,
    int_inverse,
    mat_mul,
    mat_vec,
    rank,
    span_contains,
)


def random_matrix(rng, m, n, lo=-9, hi=9):
    return [[rng.randint(lo, hi) for _ in range(n)] for _ in range(m)]


def test_smith_form_textbook_matrix():
    a = [[2, 4, 4], [-6, 6, 12], [10, -4, -16]]
    s, u, v = smith_normal_form(a)
    assert [s[i][i] for i in range(3)] == [2, 6, 12]
    assert mat_mul(mat_mul(u, a), v) == s
    assert abs(det(u)) == 1 and abs(det(v)) == 1


def test_smith_form_properties_random():
    rng = random.Random(42)
    for _ in range(120):
        m, n = rng.randint(0, 5), rng.randint(0, 5)
        a = random_matrix(rng, m, n)
        s, u, v = smith_normal_form(a)
        assert mat_mul(mat_mul(u, a), v) == s
        if m:
            assert abs(det(u)) == 1
        if n:
            assert abs(det(v)) == 1
        diag = [s[i][i] for i in range(min(m, n))]
        for i in range(m):
            for j in range(n):
                if i != j:
                    assert s[i][j] == 0
        assert all(d >= 0 for d in diag)
        nz = [d for d in diag if d]
        for x, y in zip(nz, nz[1:]):
            assert y % x == 0
        # deterministic: same input, same output
        assert smith_normal_form(a) == (s, u, v)


def test_invariant_factors_and_rank():
    assert invariant_factors([[2, 0], [0, 3]]) == [1, 6]
    assert invariant_factors([[0, 0], [0, 0]]) == []
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[1, 0], [0, 1]]) == 2


def test_solve_and_kernel():
    a = [[2, 0], [0, 3]]
    assert solve_int(a, [4, 9]) == [2, 3]
    assert solve_int(a, [1, 0]) is None
    k = kernel_basis([[1, 2, 3]])
    assert len(k) == 2
    for v in k:
        assert mat_vec([[1, 2, 3]], v) == [0]
    assert kernel_basis([[1, 0], [0, 1]]) == []


def test_span_membership():
    cols = [[2, 0], [0, 2]]
    assert in_span(cols, [4, -2])
    assert not in_span(cols, [1, 0])
    assert span_contains([[1, 0], [0, 1]], cols)
    assert not span_contains(cols, [[1, 0]])


def test_int_inverse():
    u = [[1, 1], [0, 1]]
    assert int_inverse(u) == [[1, -1], [0, 1]]
    assert int_inverse([[2, 0], [0, 1]]) is None
    assert int_inverse([[1, 2], [3, 4]]) is None
    assert int_inverse([]) == []


def test_cokernel():
    assert cokernel([[2]]) == AbGroup(0, (2,))
    assert cokernel([[2, 0], [0, 3]]) == AbGroup(0, (6,))
    assert cokernel([[1], [0]]) == AbGroup(1)
    assert str(AbGroup(2, (2, 4))) == "Z^2 + Z/2 + Z/4"
    assert str(AbGroup(0)) == "0"
    assert str(AbGroup(1)) == "Z"


def test_circle_cohomology():
    # two points, two arcs; the differential of a vertex is (ends) - (starts)
    c = ChainComplexZ(
        {0: ["p", "q"], 1: ["a", "b"]},
        {0: [[-1, 1], [-1, 1]]},
    )
    assert c.homology(0) == AbGroup(1)
    assert c.homology(1) == AbGroup(1)
    assert c.homology(2) == AbGroup(0)


def test_torsion_in_cohomology():
    c = ChainComplexZ({0: ["x"], 1: ["y"]}, {0: [[2]]})
    assert c.homology(0) == AbGroup(0)
    assert c.homology(1) == AbGroup(0, (2,))


def test_differential_must_square_to_zero():
    with pytest.raises(ValueError):
        ChainComplexZ({0: ["x"], 1: ["y"], 2: ["z"]}, {0: [[1]], 1: [[1]]})


def test_acyclic_two_term():
    c = ChainComplexZ({0: ["x"], 1: ["y"]}, {0: [[1]]})
    assert c.is_acyclic()
    assert c.total_homology() == {}


def test_mapping_cone_detects_quasi_isos():
    circle = {0: ["p", "q"], 1: ["a", "b"]}
    d = {0: [[-1, 1], [-1, 1]]}
    c1 = ChainComplexZ(circle, d)
    c2 = ChainComplexZ(circle, d)
    ident = {0: identity(2), 1: identity(2)}
    assert is_quasi_iso(ident, c1, c2)
    zero = {0: [[0, 0], [0, 0]], 1: [[0, 0], [0, 0]]}
    assert not is_quasi_iso(zero, c1, c2)


def test_mapping_cone_of_multiplication_by_two():
    # Z --2--> Z in degree 0: the source sits in cone degree -1, so the
    # quotient Z/2 shows up in degree 0
    pt = ChainComplexZ({0: ["x"]}, {})
    cone = mapping_cone({0: [[2]]}, pt, pt)
    assert cone.homology(-1) == AbGroup(0)
    assert cone.homology(0) == AbGroup(0, (2,))


def test_mapping_cone_rejects_non_chain_maps():
    c1 = ChainComplexZ({0: ["x"], 1: ["y"]}, {0: [[1]]})
    c2 = ChainComplexZ({0: ["u"], 1: ["v"]}, {0: [[3]]})
    with pytest.raises(ValueError):
        mapping_cone({0: [[1]], 1: [[1]]}, c1, c2)


def test_smith_form_against_sympy_when_available():
    sympy = pytest.importorskip("sympy")
    from sympy.matrices.normalforms import smith_normal_form as snf

    rng = random.Random(7)
    for _ in range(25):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = random_matrix(rng, m, n, -6, 6)
        ours = invariant_factors(a)
        theirs = snf(sympy.Matrix(a))
        diag = [abs(theirs[i, i]) for i in range(min(m, n))]
        diag = [int(d) for d in diag if d != 0]
        assert ours == diag
