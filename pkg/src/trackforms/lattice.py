"""Exact integer linear algebra: Hermite forms, kernels, and the skew normal form.

Everything here works over arbitrary-precision Python integers; nothing is
ever rounded.  The central routine, :func:`skew_normal_form`, reduces an
antisymmetric integer matrix ``M`` by a unimodular congruence ``U M U^T`` to
a block diagonal matrix with 2x2 blocks ``(0 d; -d 0)``, ``d_1 | d_2 | ...``,
followed by a zero block, and returns the certificate ``U``.

``verify_structure`` combines the normal form with the region census of a
connected train track and checks the predicted block multiset:

* some region has an odd spike count: ``h`` blocks with d = 1,
  ``n_odd / 2 - 1`` blocks with d = 2, and ``n_even`` zero rows;
* every region has an even spike count and the track is orientable:
  ``h`` blocks with d = 1 and ``n_even - 1`` zero rows;
* every region has an even spike count and the track is non-orientable:
  ``h - 1`` blocks with d = 1 and ``n_even`` zero rows.

Here ``h`` is the genus of the thickened neighborhood ``U``.  Rank
bookkeeping pins the non-orientable count: the weight lattice then has rank
``-chi(U) = 2h + n_even - 2``, which only accommodates ``h - 1`` paired
blocks next to the ``n_even`` zero rows.
"""

from __future__ import annotations

from dataclasses import dataclass

from .traintrack import (
    TrainTrack,
    TriangulationTrack,
    puncture_weight,
    regions,
    theta_matrix,
    weight_lattice_basis,
)


# --- generic helpers -------------------------------------------------------

def identity_matrix(n: int) -> list[list[int]]:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(a, b) -> list[list[int]]:
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[0] * cols for _ in range(rows)]
    for i in range(rows):
        ai = a[i]
        for k in range(inner):
            f = ai[k]
            if f == 0:
                continue
            bk = b[k]
            oi = out[i]
            for j in range(cols):
                oi[j] += f * bk[j]
    return out


def transpose(a) -> list[list[int]]:
    return [list(col) for col in zip(*a)]


def integer_det(matrix) -> int:
    """Determinant by fraction-free Bareiss elimination."""
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]
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
    return sign * m[n - 1][n - 1]


def hermite_normal_form(rows) -> tuple[tuple[int, ...], ...]:
    """Canonical row-style Hermite normal form, zero rows dropped.

    Pivots are positive, entries above each pivot are reduced into
    ``[0, pivot)``; the result is a canonical invariant of the row span.
    """
    if not rows:
        return ()
    work = [list(map(int, r)) for r in rows]
    cols = len(work[0])
    if any(len(r) != cols for r in work):
        raise ValueError("ragged rows")
    r = 0
    for c in range(cols):
        # gcd elimination in column c among rows >= r
        while True:
            live = [i for i in range(r, len(work)) if work[i][c] != 0]
            if not live:
                break
            i_min = min(live, key=lambda i: (abs(work[i][c]), i))
            work[r], work[i_min] = work[i_min], work[r]
            if work[r][c] < 0:
                work[r] = [-x for x in work[r]]
            p = work[r][c]
            done = True
            for i in range(r + 1, len(work)):
                if work[i][c] != 0:
                    q = work[i][c] // p
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
                    if work[i][c] != 0:
                        done = False
            if done:
                break
        if r < len(work) and work[r][c] != 0:
            p = work[r][c]
            for i in range(r):
                q = work[i][c] // p
                if q:
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
            r += 1
            if r == len(work):
                break
    return tuple(tuple(row) for row in work[:r] if any(row))


def lattice_equal(a_rows, b_rows) -> bool:
    """Whether two lists of integer vectors span the same lattice (not just the same Q-span)."""
    a_rows = list(a_rows)
    b_rows = list(b_rows)
    if a_rows and b_rows and len(a_rows[0]) != len(b_rows[0]):
        raise ValueError(f"ambient dimension mismatch: {len(a_rows[0])} vs {len(b_rows[0])}")
    return hermite_normal_form(a_rows) == hermite_normal_form(b_rows)


def integer_kernel_basis(matrix) -> list[list[int]]:
    """Basis of the integer kernel {v : matrix @ v = 0}, canonicalized by HNF."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    # Row-reduce [matrix^T | I]; rows whose left part dies give the kernel.
    work = [[matrix[i][j] for i in range(rows)] + [1 if k == j else 0 for k in range(cols)]
            for j in range(cols)]
    r = 0
    for c in range(rows):
        while True:
            live = [i for i in range(r, cols) if work[i][c] != 0]
            if not live:
                break
            i_min = min(live, key=lambda i: (abs(work[i][c]), i))
            work[r], work[i_min] = work[i_min], work[r]
            p = work[r][c]
            done = True
            for i in range(r + 1, cols):
                if work[i][c] != 0:
                    q = work[i][c] // p
                    work[i] = [x - q * y for x, y in zip(work[i], work[r])]
                    if work[i][c] != 0:
                        done = False
            if done:
                break
        if r < cols and work[r][c] != 0:
            r += 1
    kernel = [row[rows:] for row in work[r:]]
    return [list(row) for row in hermite_normal_form(kernel)]


# --- skew normal form ------------------------------------------------------

@dataclass(frozen=True)
class NormalForm:
    """Certificate ``U M U^T = D`` with ``|det U| = 1``.

    ``blocks`` lists the d's of the 2x2 blocks in divisibility order; the
    trailing ``nullity`` rows and columns of ``D`` vanish.  Rows
    ``2 * len(blocks)`` onward of ``U`` are a basis of the integer kernel.
    """

    U: tuple[tuple[int, ...], ...]
    D: tuple[tuple[int, ...], ...]
    blocks: tuple[int, ...]
    nullity: int

    @property
    def rank(self) -> int:
        return 2 * len(self.blocks)

    def kernel_rows(self) -> list[tuple[int, ...]]:
        return [self.U[i] for i in range(self.rank, len(self.U))]

    def to_json_dict(self) -> dict:
        """Row-major integer arrays for U and D plus the block data."""
        return {
            "U": [list(r) for r in self.U],
            "D": [list(r) for r in self.D],
            "blocks": list(self.blocks),
            "nullity": self.nullity,
        }


def _check_antisymmetric(m) -> list[list[int]]:
    n = len(m)
    out = [list(map(int, row)) for row in m]
    for row in out:
        if len(row) != n:
            raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(n):
            if out[i][j] != -out[j][i]:
                raise ValueError(f"matrix is not antisymmetric at ({i}, {j})")
    return out


def skew_normal_form(matrix) -> NormalForm:
    """Block-diagonalize an antisymmetric integer matrix by unimodular congruence.

    Deterministic: pivots are chosen with minimal absolute value, ties broken
    lexicographically by (row, column).  Division remainders and divisibility
    folds strictly shrink the pivot, so the loop terminates.
    """
    m = _check_antisymmetric(matrix)
    n = len(m)
    u = identity_matrix(n)

    def swap(i, j):
        if i == j:
            return
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    def add_row(i, j, q):
        # row_i += q row_j, col_i += q col_j: congruence by I + q E_ij
        if q == 0:
            return
        m[i] = [x + q * y for x, y in zip(m[i], m[j])]
        u[i] = [x + q * y for x, y in zip(u[i], u[j])]
        for row in m:
            row[i] += q * row[j]

    t = 0
    while t + 1 < n:
        pivot = None
        for i in range(t, n):
            for j in range(t, n):
                v = m[i][j]
                if v != 0 and (pivot is None or abs(v) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        if i != t:
            swap(t, i)
            if j == t:
                j = i
        if j != t + 1:
            swap(t + 1, j)
        if m[t][t + 1] < 0:
            swap(t, t + 1)
        p = m[t][t + 1]

        dirty = False
        for c in range(t + 2, n):
            # clear m[t][c] with row/col t+1, then m[t+1][c] with row/col t
            if m[t][c] != 0:
                q = -(m[t][c] // p)
                add_row(c, t + 1, q)
                if m[t][c] != 0:
                    dirty = True
            if m[t + 1][c] != 0:
                q = m[t + 1][c] // p
                add_row(c, t, q)
                if m[t + 1][c] != 0:
                    dirty = True
        if dirty:
            continue

        fold = None
        for i in range(t + 2, n):
            for j in range(t + 2, n):
                if m[i][j] % p != 0:
                    fold = i
                    break
            if fold is not None:
                break
        if fold is not None:
            add_row(t, fold, 1)
            continue
        t += 2

    blocks = []
    k = 0
    while k + 1 < n and m[k][k + 1] != 0:
        blocks.append(m[k][k + 1])
        k += 2
    nf = NormalForm(
        U=tuple(tuple(row) for row in u),
        D=tuple(tuple(row) for row in m),
        blocks=tuple(blocks),
        nullity=n - 2 * len(blocks),
    )
    return nf


def certify_normal_form(nf: NormalForm, matrix) -> bool:
    """Exact check of U M U^T == D, |det U| == 1, and the divisibility chain."""
    u = [list(r) for r in nf.U]
    d = mat_mul(mat_mul(u, [list(r) for r in matrix]), transpose(u))
    if d != [list(r) for r in nf.D]:
        return False
    if abs(integer_det(u)) != 1:
        return False
    for a, b in zip(nf.blocks, nf.blocks[1:]):
        if a <= 0 or b % a != 0:
            return False
    if nf.blocks and nf.blocks[0] <= 0:
        return False
    n = len(nf.D)
    for i in range(n):
        for j in range(n):
            expected = 0
            if i % 2 == 0 and j == i + 1 and i // 2 < len(nf.blocks):
                expected = nf.blocks[i // 2]
            elif j % 2 == 0 and i == j + 1 and j // 2 < len(nf.blocks):
                expected = -nf.blocks[j // 2]
            if nf.D[i][j] != expected:
                return False
    return True


def kernel_basis(matrix) -> list[tuple[int, ...]]:
    """Basis of the integer kernel of an antisymmetric matrix (trailing rows of U)."""
    return skew_normal_form(matrix).kernel_rows()


# --- the structure theorem -------------------------------------------------

@dataclass(frozen=True)
class StructureReport:
    case: str
    genus: int
    n_even: int
    n_odd: int
    orientable: bool
    expected_blocks: tuple[int, ...]
    expected_nullity: int
    computed_blocks: tuple[int, ...]
    nullity: int
    rank: int
    passed: bool
    eta_kernel_match: bool | None = None

    def to_json_dict(self) -> dict:
        return {
            "case": self.case,
            "h": self.genus,
            "n_even": self.n_even,
            "n_odd": self.n_odd,
            "orientable": self.orientable,
            "expected_blocks": list(self.expected_blocks),
            "expected_nullity": self.expected_nullity,
            "computed_blocks": list(self.computed_blocks),
            "nullity": self.nullity,
            "rank": self.rank,
            "pass": self.passed,
            **({} if self.eta_kernel_match is None
               else {"eta_kernel_match": self.eta_kernel_match}),
        }


def predicted_blocks(genus: int, n_even: int, n_odd: int, orientable: bool) -> tuple[tuple[int, ...], int]:
    """Expected (block multiset, nullity) for a connected track's census."""
    if n_odd > 0:
        if n_odd % 2 != 0:
            raise ValueError("odd-spiked regions come in pairs")
        return tuple([1] * genus + [2] * (n_odd // 2 - 1)), n_even
    if orientable:
        return tuple([1] * genus), n_even - 1
    return tuple([1] * (genus - 1)), n_even


def verify_structure(track: TrainTrack) -> StructureReport:
    """Run census + normal form on a connected track and compare block predictions."""
    regs, topo = regions(track)
    basis = weight_lattice_basis(track)
    m = theta_matrix(track, basis)
    nf = skew_normal_form(m)
    if not certify_normal_form(nf, m):
        raise AssertionError("normal form certificate failed")
    expected, expected_nullity = predicted_blocks(
        topo.genus, topo.n_even, topo.n_odd, topo.orientable)
    if topo.n_odd > 0:
        case = "odd-spiked regions present"
    elif topo.orientable:
        case = "all regions even-spiked, orientable"
    else:
        case = "all regions even-spiked, non-orientable"
    computed = tuple(sorted(nf.blocks))
    passed = computed == tuple(sorted(expected)) and nf.nullity == expected_nullity

    eta_match = None
    if isinstance(track, TriangulationTrack):
        kernel_branch = [
            _combine(row, basis) for row in nf.kernel_rows()
        ]
        etas = [puncture_weight(track, k) for k in range(track.tri.punctures)]
        eta_match = lattice_equal(kernel_branch, etas)
        passed = passed and eta_match
    return StructureReport(
        case=case,
        genus=topo.genus,
        n_even=topo.n_even,
        n_odd=topo.n_odd,
        orientable=topo.orientable,
        expected_blocks=tuple(sorted(expected)),
        expected_nullity=expected_nullity,
        computed_blocks=computed,
        nullity=nf.nullity,
        rank=nf.rank,
        passed=passed,
        eta_kernel_match=eta_match,
    )


def _combine(coeffs, basis) -> tuple[int, ...]:
    out = [0] * len(basis[0])
    for c, vec in zip(coeffs, basis):
        if c:
            for i, x in enumerate(vec):
                out[i] += c * x
    return tuple(out)
