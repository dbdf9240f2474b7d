"""Exact dense linear algebra: fraction-free rank over ZZ, rank/nullspace over QQ or GF(p)."""
from __future__ import annotations

from typing import List, Sequence

from gmpy2 import mpq, mpz


def bareiss_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free (Bareiss) elimination."""
    M = [[mpz(x) for x in r] for r in rows]
    if not M:
        return 0
    m, ncols = len(M), len(M[0])
    prev = mpz(1)
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, m) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        pr = M[rank]
        for r in range(rank + 1, m):
            row = M[r]
            f = row[col]
            for k in range(col + 1, ncols):
                row[k] = (pr[col] * row[k] - f * pr[k]) // prev
            row[col] = 0
        prev = pr[col]
        rank += 1
        if rank == m:
            break
    return rank


def row_echelon(rows: Sequence[Sequence], p: int = 0) -> List[list]:
    """Reduced row echelon form over QQ (``p = 0``) or GF(p); zero rows dropped."""
    M = [[(x % p) if p else mpq(x) for x in r] for r in rows]
    if not M:
        return []
    ncols = len(M[0])
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if M[r][col] != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        inv = pow(int(M[rank][col]), -1, p) if p else 1 / M[rank][col]
        M[rank] = [(x * inv) % p if p else x * inv for x in M[rank]]
        pr = M[rank]
        for r in range(len(M)):
            if r != rank and M[r][col] != 0:
                f = M[r][col]
                M[r] = [((x - f * y) % p) if p else x - f * y for x, y in zip(M[r], pr)]
        rank += 1
    return M[:rank]


def rank(rows: Sequence[Sequence], p: int = 0) -> int:
    return len(row_echelon(rows, p))
