"""Integer row-lattice primitives.

Lattices are spanned by the rows of integer matrices. Every routine works on
plain Python ints, so there is no overflow, and returns tuples so results can
be hashed and compared directly.
"""

from __future__ import annotations

from math import prod
from typing import Iterable, List, Sequence, Tuple

Vector = Tuple[int, ...]
Basis = Tuple[Vector, ...]


def hnf(rows: Iterable[Sequence[int]], ncols: int) -> Basis:
    """Row Hermite normal form of the lattice spanned by ``rows``.

    The result is in echelon form with strictly increasing pivot columns,
    positive pivots and entries above each pivot reduced into ``[0, pivot)``.
    It is unique for the lattice, so two lattices are equal iff their HNFs are.
    """
    work: List[List[int]] = []
    for r in rows:
        if len(r) != ncols:
            raise ValueError(f"row of length {len(r)} in a lattice of width {ncols}")
        if any(r):
            work.append(list(r))
    out: List[List[int]] = []
    pivots: List[int] = []
    col = 0
    while work and col < ncols:
        nz = [r for r in work if r[col]]
        if not nz:
            col += 1
            continue
        rest = [r for r in work if not r[col]]
        while len(nz) > 1:
            nz.sort(key=lambda r: abs(r[col]))
            p = nz[0]
            pc = p[col]
            keep = [p]
            for r in nz[1:]:
                q = r[col] // pc
                r2 = [a - q * b for a, b in zip(r, p)]
                if r2[col]:
                    keep.append(r2)
                elif any(r2):
                    rest.append(r2)
            nz = keep
        p = nz[0]
        if p[col] < 0:
            p = [-a for a in p]
        out.append(p)
        pivots.append(col)
        work = rest
        col += 1
    for i in range(len(out)):
        c = pivots[i]
        pv = out[i][c]
        for j in range(i):
            q = out[j][c] // pv
            if q:
                out[j] = [a - q * b for a, b in zip(out[j], out[i])]
    return tuple(tuple(r) for r in out)


def pivot_columns(basis: Basis) -> Tuple[int, ...]:
    cols = []
    for row in basis:
        for c, a in enumerate(row):
            if a:
                cols.append(c)
                break
    return tuple(cols)


def reduce_vector(basis: Basis, v: Sequence[int]) -> Vector:
    """Remainder of ``v`` after echelon reduction against an HNF basis."""
    w = list(v)
    for row in basis:
        c = next(i for i, a in enumerate(row) if a)
        q = w[c] // row[c]
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    return tuple(w)


def contains(basis: Basis, v: Sequence[int]) -> bool:
    return not any(reduce_vector(basis, v))


def solve_coordinates(basis: Basis, v: Sequence[int]) -> Vector:
    """Integer coefficients ``y`` with ``y * basis == v``; raises if ``v`` is outside."""
    w = list(v)
    ys = []
    for row in basis:
        c = next(i for i, a in enumerate(row) if a)
        q, r = divmod(w[c], row[c])
        if r:
            raise ValueError("vector is not in the lattice")
        ys.append(q)
        if q:
            w = [a - q * b for a, b in zip(w, row)]
    if any(w):
        raise ValueError("vector is not in the lattice")
    return tuple(ys)


def eliminate(rows: Iterable[Sequence[int]], ncols: int, k: int) -> Basis:
    """Sublattice of vectors whose first ``k`` coordinates vanish, with those dropped.

    This single primitive drives intersections, images, preimages and
    relation composition: encode the constraint in the leading block and
    read the solution off the trailing block.
    """
    basis = hnf(rows, ncols)
    tail = [row[k:] for row in basis if not any(row[:k])]
    return hnf(tail, ncols - k)


def lattice_index(basis: Basis, ncols: int):
    """``[Z^ncols : L]`` for a full-rank lattice, ``None`` otherwise."""
    if len(basis) != ncols:
        return None
    return prod(row[c] for row, c in zip(basis, pivot_columns(basis)))


def identity(n: int) -> List[List[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> List[List[int]]:
    bt = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def vec_mat(v: Sequence[int], m: Sequence[Sequence[int]]) -> Vector:
    """Row vector times matrix."""
    if not m:
        return ()
    out = [0] * len(m[0])
    for a, row in zip(v, m):
        if a:
            for j, b in enumerate(row):
                out[j] += a * b
    return tuple(out)


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> Vector:
    """Matrix times column vector."""
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def smith_columns(rows: Sequence[Sequence[int]], ncols: int):
    """Smith normal form of ``rows`` tracking only the column transform.

    Returns ``(diag, V, Vinv)`` where ``diag`` has length ``ncols`` (zeros past
    the rank), ``U * rows * V`` is diagonal for some unimodular ``U``, and
    ``Vinv`` is the exact inverse of ``V``. The nonzero diagonal entries form a
    divisibility chain.
    """
    a = [list(r) for r in rows]
    m = len(a)
    n = ncols
    v = identity(n)
    vi = identity(n)

    def col_sub(j: int, t: int, q: int) -> None:
        # col j -= q * col t
        for row in a:
            row[j] -= q * row[t]
        for row in v:
            row[j] -= q * row[t]
        vi[t] = [x + q * y for x, y in zip(vi[t], vi[j])]

    def col_swap(i: int, j: int) -> None:
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]
        vi[i], vi[j] = vi[j], vi[i]

    t = 0
    while t < min(m, n):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            col_swap(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    col_sub(j, t, a[t][j] // a[t][t])
                    if a[t][j]:
                        done = False
            if not done:
                # a smaller remainder appeared in row t or column t: make it the pivot
                rbest = min((i for i in range(t, m) if a[i][t]), key=lambda i: abs(a[i][t]))
                cbest = min((j for j in range(t, n) if a[t][j]), key=lambda j: abs(a[t][j]))
                if abs(a[t][cbest]) < abs(a[rbest][t]):
                    if cbest != t:
                        col_swap(t, cbest)
                elif rbest != t:
                    a[t], a[rbest] = a[rbest], a[t]
                continue
            bad = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad])]
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
        t += 1
    diag = [a[i][i] if i < m else 0 for i in range(n)]
    return diag, v, vi
