"""Small dense linear algebra over Z_m.

Matrices are tuples of row tuples and act on column coordinate vectors.
Everything here is desk scale (rank <= 4, modulus <= 8), so clarity wins
over asymptotics.
"""

from __future__ import annotations

import itertools

from .errors import TooLarge

Matrix = tuple[tuple[int, ...], ...]
Vector = tuple[int, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n ** 0.5) + 1))


def vec_add(m: int, u: Vector, v: Vector) -> Vector:
    return tuple((a + b) % m for a, b in zip(u, v))


def vec_neg(m: int, u: Vector) -> Vector:
    return tuple((-a) % m for a in u)


def vec_scale(m: int, c: int, u: Vector) -> Vector:
    return tuple((c * a) % m for a in u)


def zero_matrix(rows: int, cols: int) -> Matrix:
    return tuple((0,) * cols for _ in range(rows))


def identity_matrix(n: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def elementary_matrix(rows: int, cols: int, i: int, j: int) -> Matrix:
    return tuple(tuple(1 if (r, c) == (i, j) else 0 for c in range(cols)) for r in range(rows))


def mat_vec(m: int, mat: Matrix, v: Vector) -> Vector:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) % m for row in mat)


def mat_mul(m: int, a: Matrix, b: Matrix) -> Matrix:
    cols = range(len(b[0]) if b else 0)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(len(b))) % m for j in cols)
        for i in range(len(a))
    )


def mat_add(m: int, a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple((x + y) % m for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(m: int, c: int, a: Matrix) -> Matrix:
    return tuple(tuple((c * x) % m for x in row) for row in a)


def all_matrices(m: int, rows: int, cols: int):
    """All rows x cols matrices over Z_m in lexicographic (row-major) order."""
    cells = rows * cols
    for flat in itertools.product(range(m), repeat=cells):
        yield tuple(flat[r * cols:(r + 1) * cols] for r in range(rows))


def all_vectors(m: int, n: int):
    yield from itertools.product(range(m), repeat=n)


def invert_matrix(m: int, a: Matrix) -> Matrix | None:
    """Inverse over Z_m, or None if a is not invertible.

    Gauss-Jordan with unit pivots; sufficient for the small moduli used here
    (a matrix over Z_m is invertible iff it is invertible mod every prime
    divisor, and unit pivots always exist for invertible matrices).
    """
    n = len(a)
    aug = [list(a[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = None
        for r in range(col, n):
            if _unit_inverse(m, aug[r][col]) is not None:
                pivot = r
                break
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = _unit_inverse(m, aug[col][col])
        aug[col] = [(x * inv) % m for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [(x - f * y) % m for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def _unit_inverse(m: int, x: int) -> int | None:
    x %= m
    if x == 0:
        return None
    g, inv, _ = _egcd(x, m)
    return inv % m if g == 1 else None


def _egcd(a: int, b: int):
    if a == 0:
        return b, 0, 1
    g, x, y = _egcd(b % a, a)
    return g, y - (b // a) * x, x


def unit_inverse(m: int, x: int) -> int | None:
    return _unit_inverse(m, x)


def nullspace_mod(m: int, rows: list[Vector], n: int,
                  brute_cap: int = 1 << 20) -> list[Vector]:
    """Generating set for {x in (Z_m)^n : rows @ x = 0 mod m}.

    Prime moduli go through Gaussian elimination and return the canonical
    reduced basis (free columns ascending).  Composite moduli fall back to
    scanning all m**n vectors, which is plenty at desk scale; beyond the cap
    the caller gets TooLarge.
    """
    if not rows or n == 0:
        return [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
    if is_prime(m):
        return _nullspace_prime(m, rows, n)
    if m ** n > brute_cap:
        raise TooLarge(f"nullspace over Z_{m} in dimension {n} exceeds brute-force cap")
    solutions = [v for v in all_vectors(m, n)
                 if all(sum(r[j] * v[j] for j in range(n)) % m == 0 for r in rows)]
    return _minimal_generating_set(m, solutions, n)


def _nullspace_prime(p: int, rows: list[Vector], n: int) -> list[Vector]:
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for col in range(n):
        pivot_row = next((i for i in range(r, len(mat)) if mat[i][col] % p), None)
        if pivot_row is None:
            continue
        mat[r], mat[pivot_row] = mat[pivot_row], mat[r]
        inv = pow(mat[r][col], -1, p)
        mat[r] = [(x * inv) % p for x in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][col]:
                f = mat[i][col]
                mat[i] = [(x - f * y) % p for x, y in zip(mat[i], mat[r])]
        pivots.append(col)
        r += 1
        if r == len(mat):
            break
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * n
        v[fc] = 1
        for i, pc in enumerate(pivots):
            v[pc] = (-mat[i][fc]) % p
        basis.append(tuple(v))
    return basis


def _minimal_generating_set(m: int, solutions: list[Vector], n: int) -> list[Vector]:
    gens: list[Vector] = []
    spanned = {(0,) * n}
    for v in sorted(solutions):
        if v in spanned:
            continue
        gens.append(v)
        new = set()
        for s in spanned:
            acc = s
            for _ in range(1, m):
                acc = vec_add(m, acc, v)
                new.add(acc)
        spanned |= new
        # re-close: span of gens under addition
        changed = True
        while changed:
            changed = False
            for a in list(spanned):
                for g in gens:
                    t = vec_add(m, a, g)
                    if t not in spanned:
                        spanned.add(t)
                        changed = True
    return gens


def span_size(m: int, gens: list[Vector], n: int) -> int:
    spanned = {(0,) * n}
    frontier = [(0,) * n]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                t = vec_add(m, a, g)
                if t not in spanned:
                    spanned.add(t)
                    nxt.append(t)
        frontier = nxt
    return len(spanned)
