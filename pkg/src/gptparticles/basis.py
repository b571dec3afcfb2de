"""Occupation-number bases, probability vectors and stochastic matrices.

Every matrix in the package is indexed by a :class:`ModeBasis`, whose
states are ordered reverse-lexicographically (descending ``n_1``, then
descending ``n_2``, ...).  For two particles in two modes this gives
``[(2, 0), (1, 1), (0, 2)]``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from math import comb
from typing import Iterator, Sequence

import numpy as np

from .errors import DomainError, ParseError, StateNotFoundError, StructuralError

DEFAULT_TOL = 1e-9

OccupationState = tuple  # tuple[int, ...]; one particle count per mode


def _compositions(n: int, m: int) -> Iterator[tuple[int, ...]]:
    if m == 1:
        yield (n,)
        return
    for first in range(n, -1, -1):
        for rest in _compositions(n - first, m - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class ModeBasis:
    """Ordered set of all occupation states of ``N`` particles in ``M`` modes."""

    N: int
    M: int
    states: tuple[OccupationState, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "_index", {s: k for k, s in enumerate(self.states)})

    def __len__(self) -> int:
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __getitem__(self, k: int) -> OccupationState:
        return self.states[k]

    @property
    def dim(self) -> int:
        return len(self.states)

    def index(self, state: Sequence[int]) -> int:
        return index_of(state, self)

    def all_in_mode(self, mode: int) -> OccupationState:
        """State with every particle in ``mode`` (zero-based)."""
        counts = [0] * self.M
        counts[mode] = self.N
        return tuple(counts)

    def as_lists(self) -> list[list[int]]:
        return [list(s) for s in self.states]


@lru_cache(maxsize=None)
def _enumerate_basis(N: int, M: int) -> ModeBasis:
    return ModeBasis(N, M, tuple(_compositions(N, M)))


def enumerate_basis(N: int, M: int) -> ModeBasis:
    """All compositions of ``N`` into ``M`` nonnegative parts.

    The result has ``C(N + M - 1, M - 1)`` states in reverse-lexicographic
    order.  ``N = 0`` or ``M = 0`` raises :class:`DomainError`.
    """
    if int(N) != N or int(M) != M:
        raise DomainError(f"N and M must be integers, got N={N!r}, M={M!r}")
    N, M = int(N), int(M)
    if N < 1 or M < 1:
        raise DomainError(f"need N >= 1 and M >= 1, got N={N}, M={M}")
    basis = _enumerate_basis(N, M)
    assert len(basis) == comb(N + M - 1, M - 1)
    return basis


def index_of(state: Sequence[int], basis: ModeBasis) -> int:
    key = tuple(int(n) for n in state)
    try:
        return basis._index[key]
    except KeyError:
        raise StateNotFoundError(
            f"state {key} is not in basis(N={basis.N}, M={basis.M})"
        ) from None


@dataclass(frozen=True, eq=False)
class ProbVector:
    """Probability distribution over the states of a basis.

    Entries in ``[-tol, 0)`` are clamped to zero; anything more negative, or
    a total that differs from one by more than ``tol``, is rejected.
    """

    basis: ModeBasis
    p: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        p = np.array(self.p, dtype=float)
        if p.shape != (self.basis.dim,):
            raise StructuralError(
                f"vector of length {p.shape} does not match basis dimension {self.basis.dim}"
            )
        if p.min() < -self.tol:
            raise DomainError(f"negative probability {p.min():.3g}")
        if abs(p.sum() - 1.0) > self.tol:
            raise DomainError(f"probabilities sum to {p.sum():.17g}, not 1")
        p[p < 0] = 0.0
        p.setflags(write=False)
        object.__setattr__(self, "p", p)

    def __getitem__(self, state) -> float:
        return float(self.p[index_of(state, self.basis)])


@dataclass(frozen=True, eq=False)
class TransitionMatrix:
    """Real matrix mapping distributions over ``input_basis`` to ``output_basis``.

    Rows are output states and columns input states.  Only the shape is
    enforced at construction; use :func:`validate_stochastic` to check the
    probabilistic constraints.
    """

    input_basis: ModeBasis
    output_basis: ModeBasis
    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        expected = (self.output_basis.dim, self.input_basis.dim)
        if a.shape != expected:
            raise StructuralError(f"matrix shape {a.shape} does not match bases {expected}")
        a.setflags(write=False)
        object.__setattr__(self, "entries", a)

    @property
    def shape(self) -> tuple[int, int]:
        return self.entries.shape

    @property
    def is_square(self) -> bool:
        return self.input_basis == self.output_basis

    def prob(self, out_state, in_state) -> float:
        """Probability of ``in_state -> out_state``."""
        return float(
            self.entries[index_of(out_state, self.output_basis), index_of(in_state, self.input_basis)]
        )

    def column(self, in_state) -> np.ndarray:
        return self.entries[:, index_of(in_state, self.input_basis)]

    def apply(self, vec: ProbVector) -> ProbVector:
        if vec.basis != self.input_basis:
            raise StructuralError("vector basis does not match the matrix input basis")
        return ProbVector(self.output_basis, self.entries @ vec.p, tol=vec.tol)

    def __matmul__(self, other: "TransitionMatrix") -> "TransitionMatrix":
        if not isinstance(other, TransitionMatrix):
            return NotImplemented
        if self.input_basis != other.output_basis:
            raise StructuralError("cannot compose matrices over mismatched bases")
        return TransitionMatrix(other.input_basis, self.output_basis, self.entries @ other.entries)

    def allclose(self, other: "TransitionMatrix", tol: float = DEFAULT_TOL) -> bool:
        return (
            self.input_basis == other.input_basis
            and self.output_basis == other.output_basis
            and float(np.max(np.abs(self.entries - other.entries))) <= tol
        )


def square_matrix(N: int, M: int, rows) -> TransitionMatrix:
    """Convenience constructor for a matrix on ``basis(N, M)``."""
    b = enumerate_basis(N, M)
    return TransitionMatrix(b, b, rows)


@dataclass(frozen=True)
class StochasticityReport:
    passed: bool
    max_deviation: float
    min_entry: float


def validate_stochastic(T: TransitionMatrix, tol: float = DEFAULT_TOL) -> StochasticityReport:
    """Check that every column of ``T`` sums to one and no entry is below ``-tol``."""
    a = np.asarray(T.entries)
    if a.shape != (T.output_basis.dim, T.input_basis.dim):
        raise StructuralError("matrix dimensions do not match its bases")
    deviation = float(np.max(np.abs(a.sum(axis=0) - 1.0)))
    min_entry = float(a.min())
    return StochasticityReport(deviation <= tol and min_entry >= -tol, deviation, min_entry)


# --- JSON ------------------------------------------------------------------

def format_float(x: float) -> str:
    return format(float(x), ".17g")


def dumps(obj, indent: int = 2) -> str:
    """Deterministic JSON with floats written to 17 significant digits."""
    return _emit(obj, indent, 0)


def _emit(obj, indent, level) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if not np.isfinite(x):
            return "null"
        return format_float(x)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        seq = list(obj)
        if not seq:
            return "[]"
        # numeric rows stay on one line
        if all(not isinstance(v, (list, tuple, dict, np.ndarray)) for v in seq):
            return "[" + ", ".join(_emit(v, indent, level + 1) for v in seq) + "]"
        return "[\n" + ",\n".join(pad + _emit(v, indent, level + 1) for v in seq) + "\n" + end + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def matrix_to_dict(T: TransitionMatrix) -> dict:
    return {
        "N_in": T.input_basis.N,
        "M": T.input_basis.M,
        "N_out": T.output_basis.N,
        "basis_in": T.input_basis.as_lists(),
        "basis_out": T.output_basis.as_lists(),
        "rows": T.entries.tolist(),
    }


def vector_to_dict(v: ProbVector) -> dict:
    return {"N": v.basis.N, "M": v.basis.M, "basis": v.basis.as_lists(), "p": v.p.tolist()}


def _loads(text: str) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("top-level JSON value must be an object")
    return doc


def _require(doc: dict, key: str, kind):
    if key not in doc:
        raise ParseError(f"missing key {key!r}")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise ParseError(f"key {key!r} must be an integer")
    if kind is list and not isinstance(value, list):
        raise ParseError(f"key {key!r} must be an array")
    return value


def _checked_basis(N: int, M: int, listed, key: str) -> ModeBasis:
    try:
        basis = enumerate_basis(N, M)
    except DomainError as exc:
        raise ParseError(f"{key}: {exc}") from None
    if [list(s) for s in basis] != listed:
        raise StructuralError(
            f"{key} does not match the canonical reverse-lexicographic ordering for N={N}, M={M}"
        )
    return basis


def _numeric_rows(rows, key: str) -> np.ndarray:
    try:
        a = np.array(rows, dtype=float)
    except (TypeError, ValueError):
        raise ParseError(f"{key!r} must contain only numbers in rectangular arrays") from None
    return a


def matrix_from_dict(doc: dict) -> TransitionMatrix:
    N_in = _require(doc, "N_in", int)
    M = _require(doc, "M", int)
    N_out = _require(doc, "N_out", int)
    b_in = _checked_basis(N_in, M, _require(doc, "basis_in", list), "basis_in")
    b_out = _checked_basis(N_out, M, _require(doc, "basis_out", list), "basis_out")
    rows = _numeric_rows(_require(doc, "rows", list), "rows")
    return TransitionMatrix(b_in, b_out, rows)


def vector_from_dict(doc: dict, tol: float = DEFAULT_TOL) -> ProbVector:
    N = _require(doc, "N", int)
    M = _require(doc, "M", int)
    basis = _checked_basis(N, M, _require(doc, "basis", list), "basis")
    p = _numeric_rows(_require(doc, "p", list), "p")
    return ProbVector(basis, p, tol=tol)


def load_matrix(text: str) -> TransitionMatrix:
    return matrix_from_dict(_loads(text))


def load_vector(text: str, tol: float = DEFAULT_TOL) -> ProbVector:
    return vector_from_dict(_loads(text), tol=tol)


def dump_matrix(T: TransitionMatrix) -> str:
    return dumps(matrix_to_dict(T))


def dump_vector(v: ProbVector) -> str:
    return dumps(vector_to_dict(v))
