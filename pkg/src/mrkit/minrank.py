"""Fitting matrices and exact min-rank over GF(q).

``min_rank_le`` is a depth-first search over the rows of a fitting matrix,
vertex by vertex in ascending order. Row ``i`` ranges over vectors with a 1
on the diagonal and arbitrary entries on the out-neighbors of ``i``, in
lexicographic order of entry values. The span of the rows chosen so far is
kept in reduced row-echelon form. Three facts prune the tree without
changing which witness comes out first:

* once the span reaches dimension ``r`` every later row must lie inside it,
  and the remaining rows become independent problems, each solved by
  linear algebra (lexicographically least fitting vector in the span);
* if the rows left cannot push the rank past ``r``, the lexicographically
  first completion (unit rows) succeeds outright;
* whether rows ``i..n`` can be completed depends only on ``i`` and the
  current span, so failed ``(i, span)`` states are remembered.

``min_rank_naive`` is the independent oracle: it enumerates every fitting
matrix, unnormalized diagonal included, and takes ranks from
:mod:`mrkit.field`.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Optional

from . import field
from .errors import CapExceeded
from .field import FieldMatrix, check_modulus
from .graphs import DEFAULT_MAIS_CAP, GraphLike, as_digraph, mais

MAX_N = 24
MAX_ROW_CANDIDATES = 2**20
NAIVE_MAX_PRODUCT = 2**24


@dataclass(frozen=True)
class MinRankResult:
    value: int
    witness: FieldMatrix
    q: int


def fits(m: FieldMatrix, d: GraphLike) -> bool:
    """Nonzero diagonal, zero at every off-diagonal non-arc position."""
    d = as_digraph(d)
    n = d.n
    if m.shape != (n, n):
        raise ValueError(f"matrix shape {m.shape} does not match digraph order {n}")
    for i in range(n):
        row = m.entries[i]
        if row[i] == 0:
            return False
        allowed = d.out_masks[i] | (1 << i)
        for j, x in enumerate(row):
            if x and not (allowed >> j) & 1:
                return False
    return True


def _check_caps(d, q, max_n, max_row_candidates):
    if d.n > max_n:
        raise CapExceeded(f"min-rank search refuses n={d.n} > cap {max_n}")
    worst = max((bin(m).count("1") for m in d.out_masks), default=0)
    if q**worst > max_row_candidates:
        raise CapExceeded(
            f"min-rank search refuses: a row has {q}^{worst} candidates, cap is {max_row_candidates}"
        )


# --------------------------------------------------------------------------
# GF(2) search on packed rows; bit j is column j (0-indexed)


def _lexmin_in_span_gf2(basis, i, allowed, n):
    """Lexicographically least v in span(basis) with v_i = 1 and
    supp(v) within ``allowed`` (which contains i), or None.

    Unknowns are the coefficients c over the basis; constraints are kept
    as (coef_mask, rhs) pairs in reduced form keyed by pivot bit.
    """
    cols = [0] * n
    for t, b in enumerate(basis):
        rest = b
        while rest:
            low = rest & -rest
            cols[low.bit_length() - 1] |= 1 << t
            rest ^= low
    system: list[tuple[int, int, int]] = []  # (pivot_bit, mask, rhs)

    def reduce(a, rhs):
        for p, mask, val in system:
            if a & p:
                a ^= mask
                rhs ^= val
        return a, rhs

    def add(a, rhs):
        a, rhs = reduce(a, rhs)
        if not a:
            return rhs == 0
        p = a & -a
        for k, (pp, mask, val) in enumerate(system):
            if mask & p:
                system[k] = (pp, mask ^ a, val ^ rhs)
        system.append((p, a, rhs))
        return True

    for j in range(n):
        if j != i and not (allowed >> j) & 1 and cols[j]:
            if not add(cols[j], 0):
                return None
    if not add(cols[i], 1):
        return None
    v = 0
    for j in range(n):
        if j == i:
            v |= 1 << j
        elif not (allowed >> j) & 1:
            continue
        else:
            a, rhs = reduce(cols[j], 0)
            if a:
                add(cols[j], 0)
            elif rhs:
                v |= 1 << j
    return v


def _candidates_gf2(i, nbrs_mask, n):
    """Row candidates for vertex i in lexicographic order of entries.

    Lexicographic order on (m_1, ..., m_n) means the lowest column is the
    most significant digit.
    """
    cols = [j for j in range(n) if (nbrs_mask >> j) & 1]
    k = len(cols)
    base = 1 << i
    out = []
    for t in range(1 << k):
        v = base
        for pos in range(k):
            if (t >> (k - 1 - pos)) & 1:
                v |= 1 << cols[pos]
        out.append(v)
    return out


def _search_gf2(d, r):
    n = d.n
    out = d.out_masks
    allowed = [out[i] | (1 << i) for i in range(n)]
    cands = [None] * n
    failed = set()
    rows = [0] * n

    def complete(i, basis):
        if len(basis) == r:
            for j in range(i, n):
                v = _lexmin_in_span_gf2(basis, j, allowed[j], n)
                if v is None:
                    return False
                rows[j] = v
            return True
        if len(basis) + (n - i) <= r:
            for j in range(i, n):
                rows[j] = 1 << j
            return True
        return None

    def dfs(i, basis):
        key = (i, tuple(sorted(basis)))
        if key in failed:
            return False
        done = complete(i, basis)
        if done is not None:
            if not done:
                failed.add(key)
            return done
        if cands[i] is None:
            cands[i] = _candidates_gf2(i, out[i], n)
        for v in cands[i]:
            red = v
            for b in basis:
                if red & (b & -b):
                    red ^= b
            rows[i] = v
            if red:
                p = red & -red
                new_basis = [b ^ red if b & p else b for b in basis]
                new_basis.append(red)
            else:
                new_basis = basis
            if dfs(i + 1, new_basis):
                return True
        failed.add(key)
        return False

    if dfs(0, []):
        return [tuple((v >> j) & 1 for j in range(n)) for v in rows]
    return None


# --------------------------------------------------------------------------
# generic GF(q) search on integer lists


@lru_cache(maxsize=None)
def _inverses(q):
    return (0,) + tuple(pow(a, q - 2, q) for a in range(1, q))


def _lexmin_in_span_generic(basis, i, allowed, n, q):
    inv_table = _inverses(q)
    cols = [[b[j] for b in basis] for j in range(n)]
    system: list[tuple[int, list[int], int]] = []  # (pivot, coeffs with pivot 1, rhs)

    def reduce(a, rhs):
        a = list(a)
        for p, row, val in system:
            f = a[p]
            if f:
                a = [(x - f * y) % q for x, y in zip(a, row)]
                rhs = (rhs - f * val) % q
        return a, rhs

    def add(a, rhs):
        a, rhs = reduce(a, rhs)
        p = next((t for t, x in enumerate(a) if x), None)
        if p is None:
            return rhs == 0
        inv = inv_table[a[p]]
        a = [(x * inv) % q for x in a]
        rhs = (rhs * inv) % q
        for k, (pp, row, val) in enumerate(system):
            f = row[p]
            if f:
                system[k] = (pp, [(x - f * y) % q for x, y in zip(row, a)], (val - f * rhs) % q)
        system.append((p, a, rhs))
        return True

    for j in range(n):
        if j != i and not (allowed >> j) & 1 and any(cols[j]):
            if not add(cols[j], 0):
                return None
    if not add(cols[i], 1):
        return None
    v = [0] * n
    v[i] = 1
    for j in range(n):
        if j == i or not (allowed >> j) & 1:
            continue
        a, rhs = reduce(cols[j], 0)
        if any(a):
            add(cols[j], 0)
        else:
            # col_j . c equals the combination of constraint right-hand sides
            v[j] = (-rhs) % q
    return v


def _candidates_generic(i, nbrs_mask, n, q):
    cols = [j for j in range(n) if (nbrs_mask >> j) & 1]
    for values in product(range(q), repeat=len(cols)):
        v = [0] * n
        v[i] = 1
        for j, x in zip(cols, values):
            v[j] = x
        yield v


def _search_generic(d, q, r):
    n = d.n
    out = d.out_masks
    allowed = [out[i] | (1 << i) for i in range(n)]
    inv_table = _inverses(q)
    failed = set()
    rows = [None] * n

    def complete(i, basis):
        if len(basis) == r:
            vecs = [b for _, b in basis]
            for j in range(i, n):
                v = _lexmin_in_span_generic(vecs, j, allowed[j], n, q)
                if v is None:
                    return False
                rows[j] = v
            return True
        if len(basis) + (n - i) <= r:
            for j in range(i, n):
                rows[j] = [1 if c == j else 0 for c in range(n)]
            return True
        return None

    def dfs(i, basis):
        key = (i, tuple(sorted((p, tuple(b)) for p, b in basis)))
        if key in failed:
            return False
        done = complete(i, basis)
        if done is not None:
            if not done:
                failed.add(key)
            return done
        for v in _candidates_generic(i, out[i], n, q):
            red = v
            for p, b in basis:
                f = red[p]
                if f:
                    red = [(x - f * y) % q for x, y in zip(red, b)]
            rows[i] = v
            p = next((c for c, x in enumerate(red) if x), None)
            if p is not None:
                inv = inv_table[red[p]]
                red = [(x * inv) % q for x in red]
                new_basis = []
                for pp, b in basis:
                    f = b[p]
                    if f:
                        b = [(x - f * y) % q for x, y in zip(b, red)]
                    new_basis.append((pp, b))
                new_basis.append((p, red))
            else:
                new_basis = basis
            if dfs(i + 1, new_basis):
                return True
        failed.add(key)
        return False

    if dfs(0, []):
        return [tuple(v) for v in rows]
    return None


# --------------------------------------------------------------------------
# public API


def min_rank_le(
    d: GraphLike,
    q: int,
    r: int,
    *,
    max_n: int = MAX_N,
    max_row_candidates: int = MAX_ROW_CANDIDATES,
) -> Optional[FieldMatrix]:
    """A matrix fitting ``d`` over GF(q) with rank at most ``r``, or None.

    The witness is the first one met in the deterministic search order.
    Raises :class:`CapExceeded` rather than running on oversized input.
    """
    d = as_digraph(d)
    check_modulus(q)
    if not 1 <= r <= d.n:
        raise ValueError(f"rank bound must lie in 1..{d.n}, got {r}")
    _check_caps(d, q, max_n, max_row_candidates)
    rows = _search_gf2(d, r) if q == 2 else _search_generic(d, q, r)
    if rows is None:
        return None
    return FieldMatrix(rows, q, cols=d.n)


def min_rank(
    d: GraphLike,
    q: int = 2,
    *,
    max_n: int = MAX_N,
    max_row_candidates: int = MAX_ROW_CANDIDATES,
    mais_cap: int = DEFAULT_MAIS_CAP,
) -> MinRankResult:
    """Exact min-rank, scanning r upward from the MAIS lower bound."""
    d = as_digraph(d)
    check_modulus(q)
    _check_caps(d, q, max_n, max_row_candidates)
    lower = mais(d)[0] if d.n <= mais_cap else 1
    for r in range(lower, d.n + 1):
        m = min_rank_le(d, q, r, max_n=max_n, max_row_candidates=max_row_candidates)
        if m is not None:
            value = field.rank(m)
            return MinRankResult(value, m, q)
    raise AssertionError("the identity matrix always fits")


def min_rank_naive(d: GraphLike, q: int = 2, *, max_product: int = NAIVE_MAX_PRODUCT) -> MinRankResult:
    """Minimum rank over every fitting matrix, by plain enumeration.

    Only for tiny instances: refuses when the number of fitting matrices
    exceeds ``max_product``.
    """
    d = as_digraph(d)
    check_modulus(q)
    n = d.n
    per_row = []
    total = 1
    for i in range(n):
        nbrs = [j for j in range(n) if (d.out_masks[i] >> j) & 1]
        total *= (q - 1) * q ** len(nbrs)
        if total > max_product:
            raise CapExceeded(f"naive enumeration refuses more than {max_product} matrices")
        row_list = []
        for diag in range(1, q):
            for values in product(range(q), repeat=len(nbrs)):
                v = [0] * n
                v[i] = diag
                for j, x in zip(nbrs, values):
                    v[j] = x
                row_list.append(tuple(v))
        per_row.append(row_list)

    best = None
    best_rows = None
    if q == 2:
        packed = [[field._pack(v) for v in rl] for rl in per_row]
        for choice in product(*packed):
            rk = len(field.rref_gf2(list(choice), n))
            if best is None or rk < best:
                best, best_rows = rk, choice
        rows = [field._unpack(v, n) for v in best_rows]
    else:
        for choice in product(*per_row):
            rk = len(field.rref_generic(choice, n, q))
            if best is None or rk < best:
                best, best_rows = rk, choice
        rows = best_rows
    return MinRankResult(best, FieldMatrix(rows, q, cols=n), q)
