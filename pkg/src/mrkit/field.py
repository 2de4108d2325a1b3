"""Dense matrices over prime fields GF(q).

Two elimination paths share one contract: a bit-packed path for q = 2,
where each row is a Python int, and a generic integer path for odd primes.
Pivoting is always the first nonzero entry scanning columns left to right
and rows top to bottom, so every output here is deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ParseError

MAX_MODULUS = 256


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    f = 2
    while f * f <= q:
        if q % f == 0:
            return False
        f += 1
    return True


def check_modulus(q: int) -> int:
    if not isinstance(q, int) or not is_prime(q) or q >= MAX_MODULUS:
        raise ValueError(f"field modulus must be a prime below {MAX_MODULUS}, got {q!r}")
    return q


def inverse(a: int, q: int) -> int:
    a %= q
    if a == 0:
        raise ZeroDivisionError(f"0 has no inverse mod {q}")
    return pow(a, q - 2, q)


@dataclass(frozen=True)
class FieldMatrix:
    """Row-major matrix with entries in 0..q-1."""

    q: int
    entries: tuple

    def __init__(self, entries: Sequence[Sequence[int]], q: int = 2, cols: Optional[int] = None):
        check_modulus(q)
        rows = tuple(tuple(int(x) % q for x in row) for row in entries)
        width = len(rows[0]) if rows else (cols or 0)
        if cols is not None and width != cols:
            raise ValueError(f"expected {cols} columns, got {width}")
        if any(len(r) != width for r in rows):
            raise ValueError("ragged matrix rows")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "entries", rows)
        object.__setattr__(self, "_cols", width)

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return self._cols

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def row(self, i: int) -> tuple[int, ...]:
        """Row ``i``, 1-indexed like the vertex it belongs to."""
        return self.entries[i - 1]

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def transpose(self) -> "FieldMatrix":
        return FieldMatrix(list(zip(*self.entries)), self.q, cols=self.rows)

    def tolist(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def packed_rows(self) -> list[int]:
        """GF(2) rows as ints, bit ``j`` holding column ``j`` (0-indexed)."""
        return [_pack(r) for r in self.entries]

    def __repr__(self):
        return f"FieldMatrix(q={self.q}, {self.tolist()})"

    @classmethod
    def identity(cls, n: int, q: int = 2) -> "FieldMatrix":
        return cls([unit_vector(i, n, q) for i in range(1, n + 1)], q)

    @classmethod
    def zeros(cls, rows: int, cols: int, q: int = 2) -> "FieldMatrix":
        return cls([[0] * cols for _ in range(rows)], q, cols=cols)

    @classmethod
    def ones(cls, rows: int, cols: int, q: int = 2) -> "FieldMatrix":
        return cls([[1] * cols for _ in range(rows)], q, cols=cols)


def _pack(row) -> int:
    v = 0
    for j, x in enumerate(row):
        if x & 1:
            v |= 1 << j
    return v


def _unpack(v: int, width: int) -> tuple[int, ...]:
    return tuple((v >> j) & 1 for j in range(width))


def unit_vector(i: int, n: int, q: int = 2) -> tuple[int, ...]:
    if not 1 <= i <= n:
        raise ValueError(f"unit vector index {i} outside 1..{n}")
    return tuple(1 if j == i else 0 for j in range(1, n + 1))


# --------------------------------------------------------------------------
# elimination


def rref_gf2(rows: list[int], width: int) -> list[int]:
    """Reduced row-echelon nonzero rows of a packed GF(2) matrix."""
    work = list(rows)
    out_rows = []
    top = 0
    for col in range(width):
        bit = 1 << col
        pivot = next((r for r in range(top, len(work)) if work[r] & bit), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        for r in range(len(work)):
            if r != top and work[r] & bit:
                work[r] ^= work[top]
        top += 1
        if top == len(work):
            break
    out_rows = work[:top]
    return out_rows


def rref_generic(rows: list[list[int]], width: int, q: int) -> list[list[int]]:
    """Reduced row-echelon nonzero rows over GF(q), pivots scaled to 1."""
    work = [list(r) for r in rows]
    top = 0
    for col in range(width):
        pivot = next((r for r in range(top, len(work)) if work[r][col] % q), None)
        if pivot is None:
            continue
        work[top], work[pivot] = work[pivot], work[top]
        inv = inverse(work[top][col], q)
        work[top] = [(x * inv) % q for x in work[top]]
        prow = work[top]
        for r in range(len(work)):
            f = work[r][col]
            if r != top and f:
                work[r] = [(a - f * b) % q for a, b in zip(work[r], prow)]
        top += 1
        if top == len(work):
            break
    return work[:top]


def rank_gf2(m: FieldMatrix) -> int:
    if m.q != 2:
        raise ValueError("packed path is GF(2) only")
    return len(rref_gf2(m.packed_rows(), m.cols))


def rank_generic(m: FieldMatrix) -> int:
    return len(rref_generic(m.tolist(), m.cols, m.q))


def rank(m: FieldMatrix) -> int:
    if m.q == 2:
        return rank_gf2(m)
    return rank_generic(m)


def row_space_basis(m: FieldMatrix) -> FieldMatrix:
    """Reduced row-echelon basis of the row space (``rank(m)`` rows)."""
    if m.q == 2:
        rows = [_unpack(v, m.cols) for v in rref_gf2(m.packed_rows(), m.cols)]
    else:
        rows = rref_generic(m.tolist(), m.cols, m.q)
    return FieldMatrix(rows, m.q, cols=m.cols)


def solve_left(basis: FieldMatrix, target: Sequence[int]) -> Optional[tuple[int, ...]]:
    """Coefficients ``c`` with ``c . basis == target``, or ``None``.

    Free coefficients are set to zero, so the answer is deterministic and
    unique whenever the basis rows are independent.
    """
    q = basis.q
    k, width = basis.rows, basis.cols
    if len(target) != width:
        raise ValueError(f"target has length {len(target)}, basis has {width} columns")
    # Solve basis^T c = target^T: one equation per column of the basis.
    system = [[basis.entries[t][j] for t in range(k)] + [int(target[j]) % q] for j in range(width)]
    reduced = rref_generic(system, k + 1, q)
    c = [0] * k
    for row in reduced:
        lead = next(j for j, x in enumerate(row) if x)
        if lead == k:
            return None
        c[lead] = row[k]
    return tuple(c)


def vec_mat(c: Sequence[int], m: FieldMatrix) -> tuple[int, ...]:
    """Row vector times matrix."""
    q = m.q
    out = [0] * m.cols
    for coef, row in zip(c, m.entries):
        if coef:
            for j, x in enumerate(row):
                out[j] += coef * x
    return tuple(x % q for x in out)


def mat_vec(m: FieldMatrix, x: Sequence[int]) -> tuple[int, ...]:
    """Matrix times column vector."""
    if len(x) != m.cols:
        raise ValueError(f"vector has length {len(x)}, matrix has {m.cols} columns")
    q = m.q
    return tuple(sum(a * b for a, b in zip(row, x)) % q for row in m.entries)


# --------------------------------------------------------------------------
# text format


def format_matrix(m: FieldMatrix) -> str:
    lines = [f"matrix {m.rows} {m.cols} {m.q}"]
    lines += [" ".join(str(x) for x in row) for row in m.entries]
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> FieldMatrix:
    lines = [
        (no, ln.strip())
        for no, ln in enumerate(text.splitlines(), start=1)
        if ln.strip() and not ln.strip().startswith("#")
    ]
    if not lines:
        raise ParseError("missing 'matrix <rows> <cols> <q>' header")
    no, head = lines[0]
    fields = head.split()
    if len(fields) != 4 or fields[0] != "matrix":
        raise ParseError("expected header 'matrix <rows> <cols> <q>'", no)
    try:
        rows, cols, q = (int(x) for x in fields[1:])
    except ValueError:
        raise ParseError("non-integer matrix dimensions", no) from None
    if not is_prime(q) or q >= MAX_MODULUS:
        raise ParseError(f"modulus {q} is not a prime below {MAX_MODULUS}", no)
    body = lines[1:]
    if len(body) != rows:
        raise ParseError(f"expected {rows} matrix rows, found {len(body)}", no)
    entries = []
    for no, ln in body:
        vals = ln.split()
        if len(vals) != cols:
            raise ParseError(f"expected {cols} entries, found {len(vals)}", no)
        try:
            row = [int(v) for v in vals]
        except ValueError:
            raise ParseError(f"non-integer entry in {ln!r}", no) from None
        if any(not 0 <= x < q for x in row):
            raise ParseError(f"entry outside 0..{q - 1} in {ln!r}", no)
        entries.append(row)
    return FieldMatrix(entries, q, cols=cols)
