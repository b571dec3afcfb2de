"""Two-mode beam-splitter statistics of q-deformed particles (quons).

Quons obey ``a_i a_j^dagger - q a_j^dagger a_i = delta_ij`` with
``-1 <= q <= 1``; ``q = 1`` are bosons and ``q = -1`` fermions.  Only the
closed-form one- and two-quon probabilities for a beam splitter with
reflectivity ``R`` and transmissivity ``T = 1 - R`` are provided.

Notation: ``P[in][out]``, e.g. ``table[(1, 1)][(2, 0)] = R T (1 + q)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from .basis import DEFAULT_TOL, TransitionMatrix, enumerate_basis, square_matrix
from .errors import DomainError, UnnormalizableStateError
from .physicality import ConditionVerdict, check_evolution, check_no_interaction

SINGLE_INPUTS = ((1, 0), (0, 1))
PAIR_INPUTS = ((2, 0), (1, 1), (0, 2))
ALL_INPUTS = SINGLE_INPUTS + PAIR_INPUTS


def quon_norm(n: int, q: float) -> float:
    """``v_n`` with ``v_1 = 1`` and ``v_n = 1 + q v_(n-1)``."""
    if n < 1:
        raise DomainError(f"quon_norm needs n >= 1, got {n}")
    v = 1.0
    for _ in range(n - 1):
        v = 1.0 + q * v
    return v


@dataclass(frozen=True)
class QuonModel:
    q: float
    R: float

    def __post_init__(self):
        if not -1.0 <= self.q <= 1.0:
            raise DomainError(f"q must lie in [-1, 1], got {self.q}")
        if not 0.0 <= self.R <= 1.0:
            raise DomainError(f"R must lie in [0, 1], got {self.R}")

    @property
    def T(self) -> float:
        return 1.0 - self.R

    @property
    def same_mode_defined(self) -> bool:
        # v_2 = 1 + q vanishes for fermions
        return quon_norm(2, self.q) > 0.0


@dataclass(frozen=True)
class QuonOutcomeTable:
    model: QuonModel
    rows: Mapping[tuple, Mapping[tuple, float]]

    def __getitem__(self, in_state) -> Mapping[tuple, float]:
        key = tuple(in_state)
        if key not in self.rows:
            if key in ((2, 0), (0, 2)) and not self.model.same_mode_defined:
                raise UnnormalizableStateError(
                    f"input {key} has zero norm at q = {self.model.q}"
                )
            raise KeyError(key)
        return self.rows[key]

    def __contains__(self, in_state) -> bool:
        return tuple(in_state) in self.rows

    def prob(self, in_state, out_state) -> float:
        return self[in_state][tuple(out_state)]


def quon_statistics(model: QuonModel, inputs: Iterable[tuple] | None = None) -> QuonOutcomeTable:
    """Outcome distributions for one or two quons on a beam splitter.

    By default every input defined for the model is included; at ``q = -1``
    the same-mode inputs ``(2, 0)`` and ``(0, 2)`` are skipped, and asking
    for them explicitly raises :class:`UnnormalizableStateError`.
    """
    q, R, T = model.q, model.R, model.T
    if inputs is None:
        inputs = ALL_INPUTS if model.same_mode_defined else SINGLE_INPUTS + ((1, 1),)
    rows = {}
    for s in map(tuple, inputs):
        if s == (1, 0):
            rows[s] = {(1, 0): T, (0, 1): R}
        elif s == (0, 1):
            rows[s] = {(1, 0): R, (0, 1): T}
        elif s == (1, 1):
            bunch = R * T * (1 + q)
            rows[s] = {(2, 0): bunch, (1, 1): R * R + T * T - 2 * q * R * T, (0, 2): bunch}
        elif s in ((2, 0), (0, 2)):
            if not model.same_mode_defined:
                raise UnnormalizableStateError(f"input {s} has zero norm at q = {q}")
            stay, swap = (T * T, R * R)
            rows[s] = {
                (2, 0): stay if s == (2, 0) else swap,
                (1, 1): 2 * R * T,
                (0, 2): swap if s == (2, 0) else stay,
            }
        else:
            raise DomainError(f"no quon statistics defined for input {s}")
    return QuonOutcomeTable(model, rows)


def quon_single_matrix(model: QuonModel) -> TransitionMatrix:
    T, R = model.T, model.R
    return square_matrix(1, 2, [[T, R], [R, T]])


def quon_transition_matrix(model: QuonModel) -> TransitionMatrix:
    """Two-quon table as a 3x3 matrix over ``basis(2, 2)``."""
    table = quon_statistics(model, ALL_INPUTS)
    basis = enumerate_basis(2, 2)
    a = np.array([[table.prob(s, t) for s in basis] for t in basis])
    return square_matrix(2, 2, a)


def check_quon_evolution(model: QuonModel, tol: float = DEFAULT_TOL) -> ConditionVerdict:
    return check_evolution(quon_transition_matrix(model), quon_single_matrix(model), tol)


def quon_no_interaction(model: QuonModel, tol: float = DEFAULT_TOL) -> ConditionVerdict:
    """No-interaction residual against the single-quon map.

    Reported for information; no pass/fail expectation is attached to it.
    """
    return check_no_interaction(quon_transition_matrix(model), quon_single_matrix(model), tol)


def sweep_rows(q_values: Iterable[float], r_values: Iterable[float]):
    """Yield ``(header, rows)`` for a CSV sweep over the ``(q, R)`` grid.

    Undefined same-mode entries at ``q = -1`` are left empty.
    """
    cols = [(s, t) for s in ALL_INPUTS for t in (SINGLE_INPUTS if sum(s) == 1 else PAIR_INPUTS)]
    header = ["q", "R"] + [f"P{''.join(map(str, s))}_{''.join(map(str, t))}" for s, t in cols]
    rows = []
    for q in q_values:
        for r in r_values:
            table = quon_statistics(QuonModel(q, r))
            row = [q, r]
            for s, t in cols:
                row.append(table.prob(s, t) if s in table else None)
            rows.append(row)
    return header, rows
