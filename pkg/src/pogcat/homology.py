"""Exact integer linear algebra: Smith normal form, homology, quasi-isos.

Matrices are dense lists of lists of Python ints (arbitrary precision, no
floats anywhere).  Everything here is deterministic: pivots are chosen by
minimal absolute value with lexicographically smallest position breaking
ties, so repeated runs produce identical transforms.
"""

from __future__ import annotations

from dataclasses import dataclass


# ---------------------------------------------------------------------------
# matrix helpers

def zeros(m: int, n: int) -> list[list[int]]:
    return [[0] * n for _ in range(m)]


def identity(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_copy(a) -> list[list[int]]:
    return [row[:] for row in a]


def shape(a) -> tuple[int, int]:
    return (len(a), len(a[0]) if a else 0)


def mat_mul(a, b) -> list[list[int]]:
    # empty matrices lose one dimension in the nested-list encoding, so
    # treat them as zero maps of whatever size fits
    m, k = shape(a)
    k2, n = shape(b)
    if (m == 0 or k == 0) or (k2 == 0 or n == 0):
        return zeros(m, n)
    if k != k2:
        raise ValueError(f"shape mismatch: {m}x{k} times {k2}x{n}")
    out = zeros(m, n)
    for i in range(m):
        ai = a[i]
        oi = out[i]
        for t in range(k):
            v = ai[t]
            if v:
                bt = b[t]
                for j in range(n):
                    oi[j] += v * bt[j]
    return out


def mat_vec(a, x) -> list[int]:
    m, n = shape(a)
    if n != len(x):
        if n == 0 or not x:
            return [0] * m
        raise ValueError("shape mismatch")
    return [sum(a[i][j] * x[j] for j in range(n)) for i in range(m)]


def mat_eq(a, b) -> bool:
    return shape(a) == shape(b) and all(ra == rb for ra, rb in zip(a, b))


def transpose(a) -> list[list[int]]:
    m, n = shape(a)
    return [[a[i][j] for i in range(m)] for j in range(n)]


def hstack(a, b) -> list[list[int]]:
    if len(a) != len(b):
        raise ValueError("row count mismatch")
    return [ra + rb for ra, rb in zip(a, b)]


def det(a) -> int:
    """Fraction-free (Bareiss) determinant of a square integer matrix."""
    n = len(a)
    if any(len(r) != n for r in a):
        raise ValueError("determinant of a non-square matrix")
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1] if n else 1


# ---------------------------------------------------------------------------
# Smith normal form

def smith_normal_form(a):
    """Return (S, U, V) with U*a*V = S diagonal, d_1 | d_2 | ... , d_i >= 0.

    U and V are unimodular (products of row/column swaps, negations and
    transvections).  Partial pivoting by minimal absolute value keeps the
    intermediate entries small on the desk-scale matrices we care about.
    """
    s = mat_copy(a)
    m, n = shape(s)
    u = identity(m)
    v = identity(n)

    def row_op(i, k, q):
        # row_i -= q * row_k
        si, sk = s[i], s[k]
        ui, uk = u[i], u[k]
        for j in range(n):
            si[j] -= q * sk[j]
        for j in range(m):
            ui[j] -= q * uk[j]

    def col_op(j, k, q):
        # col_j -= q * col_k
        for row in s:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def swap_rows(i, k):
        s[i], s[k] = s[k], s[i]
        u[i], u[k] = u[k], u[i]

    def swap_cols(j, k):
        for row in s:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def min_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                e = s[i][j]
                if e and (best is None or abs(e) < abs(best[2])):
                    best = (i, j, e)
        return best

    t = 0
    while True:
        piv = min_pivot(t)
        if piv is None:
            break
        i, j, _ = piv
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            # clear column t, re-pivoting on any nonzero remainder
            dirty = False
            for i in range(t + 1, m):
                if s[i][t]:
                    q = s[i][t] // s[t][t]
                    row_op(i, t, q)
                    if s[i][t]:
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, n):
                if s[t][j]:
                    q = s[t][j] // s[t][t]
                    col_op(j, t, q)
                    if s[t][j]:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # pivot must divide the remaining block for the divisor chain
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if s[i][j] % s[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # fold offending row into pivot row
        if s[t][t] < 0:
            for j in range(n):
                s[t][j] = -s[t][j]
            for j in range(m):
                u[t][j] = -u[t][j]
        t += 1
        if t == min(m, n):
            break
    return s, u, v


def invariant_factors(a) -> list[int]:
    s, _, _ = smith_normal_form(a)
    m, n = shape(s)
    return [s[i][i] for i in range(min(m, n)) if s[i][i] != 0]


def rank(a) -> int:
    return len(invariant_factors(a))


def kernel_basis(a) -> list[list[int]]:
    """Basis (columns) of the integer kernel; saturated by construction."""
    _, _, v = smith_normal_form(a)
    r = rank(a)
    _, n = shape(a)
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def solve_int(a, b):
    """An integer solution x of a@x = b, or None.

    Existence is decided exactly through the Smith form: with UaV = S the
    system becomes S y = U b, solvable iff each pivot divides its target
    and the rows beyond the rank vanish.
    """
    s, u, v = smith_normal_form(a)
    m, n = shape(a)
    if len(b) != m:
        raise ValueError("shape mismatch")
    c = mat_vec(u, b)
    r = rank(a)
    y = [0] * n
    for i in range(r):
        if c[i] % s[i][i]:
            return None
        y[i] = c[i] // s[i][i]
    if any(c[i] for i in range(r, m)):
        return None
    return mat_vec(v, y)


class IntSolver:
    """Repeated integer solves against a fixed matrix, one Smith form."""

    def __init__(self, a):
        self.a = mat_copy(a)
        self.m, self.n = shape(a)
        self.s, self.u, self.v = smith_normal_form(a)
        self.rank = sum(1 for i in range(min(self.m, self.n)) if self.s[i][i])

    def solve(self, b):
        if len(b) != self.m:
            raise ValueError("shape mismatch")
        c = mat_vec(self.u, b)
        y = [0] * self.n
        for i in range(self.rank):
            if c[i] % self.s[i][i]:
                return None
            y[i] = c[i] // self.s[i][i]
        if any(c[i] for i in range(self.rank, self.m)):
            return None
        return mat_vec(self.v, y)


def int_inverse(a):
    """Inverse of a square integer matrix, or None if not unimodular."""
    m, n = shape(a)
    if m != n:
        return None
    if n == 0:
        return []
    solver = IntSolver(a)
    cols = []
    for i in range(n):
        e = [1 if j == i else 0 for j in range(n)]
        x = solver.solve(e)
        if x is None:
            return None
        cols.append(x)
    inv = transpose(cols)
    if not mat_eq(mat_mul(a, inv), identity(n)):
        return None
    return inv


def in_span(columns: list[list[int]], target: list[int]) -> bool:
    """Is target an integer combination of the given column vectors?"""
    if not columns:
        return all(e == 0 for e in target)
    a = transpose(columns)
    return solve_int(a, target) is not None


def span_contains(columns_a, columns_b) -> bool:
    """Does the integer span of columns_a contain every column of columns_b?"""
    return all(in_span(columns_a, c) for c in columns_b)


# ---------------------------------------------------------------------------
# finitely generated abelian groups and cochain complexes

@dataclass(frozen=True)
class AbGroup:
    """Z^free + Z/t_1 + ... with t_1 | t_2 | ... all > 1."""

    free_rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        if self.free_rank < 0 or any(t <= 1 for t in self.torsion):
            raise ValueError(f"bad group descriptor {self}")

    @property
    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self) -> str:
        parts = []
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


def cokernel(a) -> AbGroup:
    """coker(a : Z^n -> Z^m) as an abstract group."""
    m, _ = shape(a)
    facs = invariant_factors(a)
    return AbGroup(m - len(facs), tuple(t for t in facs if t > 1))


class ChainComplexZ:
    """Cochain complex of finitely generated free Z-modules.

    ``basis[k]`` names the generators in degree k; ``d[k]`` is the matrix of
    the degree +1 differential into degree k+1 (columns indexed by basis[k]).
    The composite of consecutive differentials is checked at construction.
    """

    def __init__(self, basis: dict[int, list[str]], d: dict[int, list[list[int]]]):
        self.basis = {k: list(v) for k, v in basis.items() if v}
        self.d = {}
        for k, mat in d.items():
            rows = len(self.basis.get(k + 1, []))
            cols = len(self.basis.get(k, []))
            if rows == 0 or cols == 0:
                if any(any(row) for row in mat):
                    raise ValueError(f"nonzero differential at degree {k} "
                                     "into or out of a zero term")
                continue
            if shape(mat) != (rows, cols):
                raise ValueError(
                    f"differential at degree {k} has shape {shape(mat)}, "
                    f"expected {(rows, cols)}")
            if any(any(row) for row in mat):
                self.d[k] = mat_copy(mat)
        for k in self.d:
            if k + 1 in self.d:
                comp = mat_mul(self.d[k + 1], self.d[k])
                if any(any(row) for row in comp):
                    raise ValueError(f"d∘d != 0 between degrees {k} and {k + 2}")

    def dim(self, k: int) -> int:
        return len(self.basis.get(k, []))

    def diff(self, k: int) -> list[list[int]]:
        return self.d.get(k, zeros(self.dim(k + 1), self.dim(k)))

    def degrees(self) -> list[int]:
        return sorted(self.basis)

    def homology(self, k: int) -> AbGroup:
        """H^k = ker(d_k)/im(d_{k-1}), free rank plus torsion exactly."""
        dk = self.diff(k)
        dprev = self.diff(k - 1)
        free = self.dim(k) - rank(dk) - rank(dprev)
        torsion = tuple(t for t in invariant_factors(dprev) if t > 1)
        return AbGroup(free, torsion)

    def total_homology(self) -> dict[int, AbGroup]:
        out = {}
        for k in self.degrees():
            h = self.homology(k)
            if not h.is_zero:
                out[k] = h
        return out

    def is_acyclic(self) -> bool:
        return all(self.homology(k).is_zero for k in self.degrees())


def homology(complex_: ChainComplexZ, degree: int) -> AbGroup:
    return complex_.homology(degree)


def mapping_cone(f: dict[int, list[list[int]]], src: ChainComplexZ,
                 tgt: ChainComplexZ) -> ChainComplexZ:
    """Cone of a chain map f : src -> tgt; Cone^k = tgt^k + src^{k+1}."""
    for k in set(src.d) | set(f):
        fk = f.get(k, zeros(tgt.dim(k), src.dim(k)))
        fk1 = f.get(k + 1, zeros(tgt.dim(k + 1), src.dim(k + 1)))
        lhs = mat_mul(tgt.diff(k), fk)
        rhs = mat_mul(fk1, src.diff(k))
        lhs_zero = not any(any(row) for row in lhs)
        rhs_zero = not any(any(row) for row in rhs)
        if not (lhs_zero and rhs_zero) and not mat_eq(lhs, rhs):
            raise ValueError(f"not a chain map at degree {k}")
    degs = set(src.degrees()) | set(tgt.degrees())
    basis = {}
    for k in sorted(degs | {k - 1 for k in src.basis}):
        names = [f"t{n}" for n in tgt.basis.get(k, [])]
        names += [f"s{n}" for n in src.basis.get(k + 1, [])]
        if names:
            basis[k] = names
    d = {}
    for k in basis:
        rows_t, rows_s = tgt.dim(k + 1), src.dim(k + 2)
        cols_t, cols_s = tgt.dim(k), src.dim(k + 1)
        block = zeros(rows_t + rows_s, cols_t + cols_s)
        dt = tgt.diff(k)
        fk1 = f.get(k + 1, zeros(tgt.dim(k + 1), src.dim(k + 1)))
        ds = src.diff(k + 1)
        for i in range(rows_t):
            for j in range(cols_t):
                block[i][j] = dt[i][j]
            for j in range(cols_s):
                block[i][cols_t + j] = fk1[i][j]
        for i in range(rows_s):
            for j in range(cols_s):
                block[rows_t + i][cols_t + j] = -ds[i][j]
        d[k] = block
    return ChainComplexZ(basis, d)


def is_quasi_iso(f: dict[int, list[list[int]]], src: ChainComplexZ,
                 tgt: ChainComplexZ) -> bool:
    """Chain map inducing isomorphisms on all homology, decided exactly
    through acyclicity of the mapping cone."""
    return mapping_cone(f, src, tgt).is_acyclic()
