"""Scalar linear index codes built from fitting matrices.

A matrix M fitting the side-information digraph gives a code whose
generator is a basis of M's row space. Receiver i solves c . L = M_i,
so c . y = M_i . x, and strips off the side-information terms to get x_i.

:class:`ScalarIndexCoder` wraps the same pipeline in an estimator shell:
``fit`` takes the side-information adjacency matrix, ``transform`` encodes
message rows, ``decode`` recovers them from codewords plus side
information.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field as dc_field
from typing import Mapping, Sequence

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from . import field
from .errors import ParseError
from .field import FieldMatrix, check_modulus
from .graphs import Digraph, mais
from .minrank import MAX_N, MAX_ROW_CANDIDATES, fits, min_rank


@dataclass(frozen=True)
class IcsiInstance:
    n: int
    q: int
    side_info: tuple

    def __init__(self, n: int, q: int, side_info: Sequence[Sequence[int]]):
        check_modulus(q)
        if n < 1:
            raise ValueError("an instance needs at least one receiver")
        sets = tuple(frozenset(int(j) for j in xs) for xs in side_info)
        if len(sets) != n:
            raise ValueError(f"expected {n} side-information sets, got {len(sets)}")
        for i, xs in enumerate(sets, start=1):
            if i in xs:
                raise ValueError(f"receiver {i} cannot already hold its own message")
            if any(not 1 <= j <= n for j in xs):
                raise ValueError(f"side information of receiver {i} names a message outside 1..{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "side_info", sets)

    def knows(self, i: int) -> frozenset:
        return self.side_info[i - 1]

    @classmethod
    def from_digraph(cls, d: Digraph, q: int = 2) -> "IcsiInstance":
        return cls(d.n, q, [d.out_neighbors(i) for i in range(1, d.n + 1)])

    def to_dict(self) -> dict:
        return {"n": self.n, "q": self.q, "side_info": [sorted(xs) for xs in self.side_info]}


def parse_instance(text: str) -> IcsiInstance:
    """Instance file: a JSON object with ``n``, ``q`` and ``side_info``."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"instance is not valid JSON: {exc.msg}", exc.lineno) from None
    try:
        return IcsiInstance(int(data["n"]), int(data.get("q", 2)), data["side_info"])
    except KeyError as exc:
        raise ParseError(f"instance is missing field {exc.args[0]!r}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(str(exc)) from None


def format_instance(inst: IcsiInstance) -> str:
    return json.dumps(inst.to_dict()) + "\n"


def side_info_digraph(inst: IcsiInstance) -> Digraph:
    return Digraph(inst.n, [(i, j) for i in range(1, inst.n + 1) for j in inst.knows(i)])


@dataclass(frozen=True)
class IndexCode:
    generator: FieldMatrix
    source: FieldMatrix
    block_length: int = 1

    @property
    def length(self) -> int:
        return self.generator.rows

    @property
    def q(self) -> int:
        return self.generator.q


def build_code(inst: IcsiInstance, m: FieldMatrix) -> IndexCode:
    if m.q != inst.q:
        raise ValueError(f"matrix is over GF({m.q}), instance over GF({inst.q})")
    if not fits(m, side_info_digraph(inst)):
        raise ValueError("matrix does not fit the side-information digraph")
    return IndexCode(field.row_space_basis(m), m)


def encode(code: IndexCode, x: Sequence[int]) -> tuple[int, ...]:
    return field.mat_vec(code.generator, [int(v) % code.q for v in x])


def decode(
    inst: IcsiInstance,
    code: IndexCode,
    i: int,
    y: Sequence[int],
    side_values: Mapping[int, int],
) -> int:
    """Receiver ``i`` recovers x_i from codeword ``y`` and its side values."""
    missing = sorted(set(inst.knows(i)) - set(side_values))
    if missing:
        raise ValueError(f"receiver {i} is missing side values for messages {missing}")
    q = code.q
    row = code.source.row(i)
    c = field.solve_left(code.generator, row)
    if c is None:
        raise ValueError(f"row {i} of the source matrix is outside the code's row space")
    s = sum(a * b for a, b in zip(c, y)) % q
    for j, coef in enumerate(row, start=1):
        if j != i and coef:
            s -= coef * side_values[j]
    return (s * field.inverse(row[i - 1], q)) % q


@dataclass
class SimulationReport:
    length: int
    trials: int
    successes: int
    savings: int
    seed: int
    n: int
    failures: list = dc_field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.successes == self.trials * self.n and not self.failures

    def to_dict(self) -> dict:
        return {
            "length": self.length,
            "trials": self.trials,
            "successes": self.successes,
            "savings": self.savings,
            "seed": self.seed,
            "failures": [{"x": list(x), "receiver": i} for x, i in self.failures],
        }

    def to_text(self) -> str:
        lines = [
            f"length {self.length}",
            f"trials {self.trials}",
            f"successes {self.successes}",
            f"savings {self.savings}",
            f"seed {self.seed}",
        ]
        for x, i in self.failures:
            lines.append(f"failure receiver={i} x={' '.join(map(str, x))}")
        return "\n".join(lines) + "\n"


def simulate(inst: IcsiInstance, m: FieldMatrix, trials: int = 1000, seed: int = 0) -> SimulationReport:
    """Encode and decode ``trials`` random message vectors at every receiver.

    Messages come from ``numpy.random.default_rng(seed)`` (PCG64), drawn as
    one ``trials x n`` block, so reports are reproducible.
    """
    if trials < 1:
        raise ValueError("trials must be at least 1")
    code = build_code(inst, m)
    rng = np.random.default_rng(seed)
    messages = rng.integers(0, inst.q, size=(trials, inst.n))
    successes = 0
    failures = []
    for x in messages.tolist():
        y = encode(code, x)
        for i in range(1, inst.n + 1):
            side = {j: x[j - 1] for j in inst.knows(i)}
            if decode(inst, code, i, y, side) == x[i - 1]:
                successes += 1
            else:
                failures.append((tuple(x), i))
    return SimulationReport(code.length, trials, successes, inst.n - code.length, seed, inst.n, failures)


def optimal_scalar_rate(inst: IcsiInstance, **caps) -> tuple[int, FieldMatrix]:
    """Length of an optimal scalar linear code, with a fitting matrix achieving it."""
    result = min_rank(side_info_digraph(inst), inst.q, **caps)
    return result.value, result.witness


def rate_bounds(inst: IcsiInstance, **caps) -> tuple[int, int]:
    """(MAIS, min-rank): the interval holding the broadcast rate."""
    d = side_info_digraph(inst)
    return mais(d)[0], min_rank(d, inst.q, **caps).value


class ScalarIndexCoder(TransformerMixin, BaseEstimator):
    """Optimal scalar linear index code as an estimator.

    ``fit(A)`` takes the n x n side-information adjacency matrix
    (``A[i, j] = 1`` when receiver i holds message j) and solves for a
    minimum-rank fitting matrix. ``transform(X)`` encodes each row of X,
    a message vector over GF(q), into a codeword of length ``code_length_``.
    """

    def __init__(self, q=2, max_n=MAX_N, max_row_candidates=MAX_ROW_CANDIDATES):
        self.q = q
        self.max_n = max_n
        self.max_row_candidates = max_row_candidates

    def fit(self, X, y=None):
        A = check_array(X, dtype=np.int64)
        n, cols = A.shape
        if n != cols:
            raise ValueError(f"side-information matrix must be square, got {A.shape}")
        if np.any(np.diag(A)):
            raise ValueError("a receiver cannot already hold its own message")
        side = [np.flatnonzero(A[i]).tolist() for i in range(n)]
        self.instance_ = IcsiInstance(n, self.q, [[j + 1 for j in xs] for xs in side])
        value, witness = optimal_scalar_rate(
            self.instance_, max_n=self.max_n, max_row_candidates=self.max_row_candidates
        )
        self.code_ = build_code(self.instance_, witness)
        self.code_length_ = value
        self.n_features_in_ = n
        return self

    def transform(self, X):
        check_is_fitted(self, "code_")
        X = check_array(X, dtype=np.int64)
        if X.shape[1] != self.n_features_in_:
            raise ValueError(f"expected {self.n_features_in_} messages per row, got {X.shape[1]}")
        L = np.asarray(self.code_.generator.tolist(), dtype=np.int64).reshape(self.code_length_, -1)
        return (np.mod(X, self.q) @ L.T) % self.q

    def decode(self, Y, X):
        """Recover every message from codewords ``Y``, reading only the
        side-information entries of ``X`` for each receiver."""
        check_is_fitted(self, "code_")
        Y = check_array(Y, dtype=np.int64)
        X = check_array(X, dtype=np.int64)
        inst = self.instance_
        out = np.zeros_like(X)
        for t in range(X.shape[0]):
            y = Y[t].tolist()
            for i in range(1, inst.n + 1):
                side = {j: int(X[t, j - 1]) % self.q for j in inst.knows(i)}
                out[t, i - 1] = decode(inst, self.code_, i, y, side)
        return out

    def score(self, X, y=None):
        """Fraction of (message row, receiver) pairs decoded correctly."""
        X = np.mod(check_array(X, dtype=np.int64), self.q)
        return float(np.mean(self.decode(self.transform(X), X) == X))
