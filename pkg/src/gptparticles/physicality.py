"""Physicality conditions for identical-particle transformations.

Three conditions are checked:

* double stochasticity: rows and columns of ``T`` sum to one;
* no-interaction: ``R(N->K) T_N == T_K R(N->K)``;
* evolution principle: a state with all particles in one mode evolves to
  the multinomial distribution of independent single-particle draws.

For two particles in two modes the module also builds the constrained
parameter families and inverts a matrix back to its single-particle
parameter ``beta``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import factorial, prod
from typing import Optional

import numpy as np

from .basis import DEFAULT_TOL, ModeBasis, TransitionMatrix, enumerate_basis, square_matrix
from .errors import DomainError, InfeasibleParametersError, StructuralError
from .removal import removal_chain


@dataclass(frozen=True)
class Witness:
    """A column where a condition fails: what was observed and what was required."""

    condition: str
    input_state: tuple
    observed: tuple
    expected: tuple

    @property
    def residual(self) -> float:
        return max(abs(o - e) for o, e in zip(self.observed, self.expected))

    def to_dict(self) -> dict:
        return {
            "condition": self.condition,
            "input_state": list(self.input_state),
            "observed": list(self.observed),
            "expected": list(self.expected),
            "residual": self.residual,
        }


@dataclass(frozen=True)
class ConditionVerdict:
    name: str
    passed: bool
    residual: float
    witnesses: tuple = ()
    detail: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        d = {"passed": self.passed, "residual": self.residual}
        if self.detail:
            d["detail"] = self.detail
        return d


@dataclass(frozen=True)
class PhysicalityReport:
    doubly_stochastic: ConditionVerdict
    no_interaction: ConditionVerdict
    evolution: ConditionVerdict
    inferred_beta: Optional[float] = None
    realizable: Optional[bool] = False
    realizing_theta: Optional[float] = None
    single_particle: Optional[TransitionMatrix] = field(default=None, compare=False)

    @property
    def all_pass(self) -> bool:
        return bool(self.doubly_stochastic and self.no_interaction and self.evolution)

    @property
    def witnesses(self) -> list:
        return [
            *self.doubly_stochastic.witnesses,
            *self.no_interaction.witnesses,
            *self.evolution.witnesses,
        ]

    def to_dict(self) -> dict:
        return {
            "doubly_stochastic": self.doubly_stochastic.to_dict(),
            "no_interaction": self.no_interaction.to_dict(),
            "evolution": self.evolution.to_dict(),
            "beta": self.inferred_beta,
            "realizable": self.realizable,
            "theta": self.realizing_theta,
            "witnesses": [w.to_dict() for w in self.witnesses],
        }


def _square_basis(T: TransitionMatrix, what: str) -> ModeBasis:
    if not T.is_square:
        raise StructuralError(f"{what} must map a basis to itself")
    return T.input_basis


def check_double_stochastic(T: TransitionMatrix, tol: float = DEFAULT_TOL) -> ConditionVerdict:
    """Rows and columns of ``T`` must each sum to one, entries within ``[0, 1]``."""
    a = T.entries
    if a.shape[0] != a.shape[1]:
        raise StructuralError(f"double stochasticity needs a square matrix, got {a.shape}")
    col_dev = np.abs(a.sum(axis=0) - 1.0)
    row_dev = np.abs(a.sum(axis=1) - 1.0)
    range_dev = max(0.0, -float(a.min()), float(a.max()) - 1.0)
    residual = float(max(col_dev.max(), row_dev.max(), range_dev))
    detail = ""
    if residual > tol:
        detail = (
            f"max row-sum deviation {row_dev.max():.3g}, "
            f"max column-sum deviation {col_dev.max():.3g}"
        )
    return ConditionVerdict("doubly_stochastic", residual <= tol, residual, (), detail)


def check_no_interaction(
    T_N: TransitionMatrix, T_K: TransitionMatrix, tol: float = DEFAULT_TOL
) -> ConditionVerdict:
    """Compare removing-then-evolving against evolving-then-removing.

    The residual is ``max |R T_N - T_K R|`` with ``R`` the removal chain from
    ``N`` to ``K`` particles.  Matrix equality is the same as equality on
    every basis state.
    """
    bN = _square_basis(T_N, "T_N")
    bK = _square_basis(T_K, "T_K")
    if bN.M != bK.M or not bK.N < bN.N:
        raise StructuralError(
            f"no-interaction needs the same modes and K < N, got "
            f"(N={bN.N}, M={bN.M}) and (K={bK.N}, M={bK.M})"
        )
    R = removal_chain(bN.N, bK.N, bN.M).entries
    lhs = R @ T_N.entries
    rhs = T_K.entries @ R
    col_res = np.max(np.abs(lhs - rhs), axis=0)
    residual = float(col_res.max())
    witnesses = tuple(
        Witness("no_interaction", bN[j], tuple(lhs[:, j]), tuple(rhs[:, j]))
        for j in np.flatnonzero(col_res > tol)
    )
    return ConditionVerdict("no_interaction", residual <= tol, residual, witnesses)


def multinomial_column(single: np.ndarray, basis: ModeBasis) -> np.ndarray:
    """Distribution of ``basis.N`` independent draws from ``single`` as occupations."""
    N = basis.N
    out = np.empty(basis.dim)
    for i, t in enumerate(basis):
        coeff = factorial(N) // prod(factorial(n) for n in t)
        out[i] = coeff * prod(float(p) ** n for p, n in zip(single, t))
    return out


def check_evolution(
    T_N: TransitionMatrix, T_1: TransitionMatrix, tol: float = DEFAULT_TOL
) -> ConditionVerdict:
    """All-in-one-mode inputs must evolve like ``N`` independent single particles.

    For every mode ``m`` the column of ``T_N`` at the state with all ``N``
    particles in ``m`` is compared with the multinomial distribution built
    from column ``m`` of ``T_1``.  For two particles this is the product
    rule ``P(20 -> 20) = P(10 -> 10)^2`` and its companions.
    """
    bN = _square_basis(T_N, "T_N")
    b1 = _square_basis(T_1, "T_1")
    if b1.N != 1 or b1.M != bN.M:
        raise StructuralError(f"T_1 must act on basis(1, {bN.M})")
    residual = 0.0
    witnesses = []
    for m in range(bN.M):
        state = bN.all_in_mode(m)
        observed = T_N.column(state)
        expected = multinomial_column(T_1.entries[:, m], bN)
        r = float(np.max(np.abs(observed - expected)))
        residual = max(residual, r)
        if r > tol:
            witnesses.append(Witness("evolution", state, tuple(observed), tuple(expected)))
    return ConditionVerdict("evolution", residual <= tol, residual, tuple(witnesses))


# --- two particles in two modes ----------------------------------------------

def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return beta


def single_family_matrix(beta: float) -> TransitionMatrix:
    """General doubly stochastic single-particle map ``[[b, 1-b], [1-b, b]]``."""
    b = _check_beta(beta)
    return square_matrix(1, 2, [[b, 1 - b], [1 - b, b]])


def three_param_matrix(
    alpha1: float, alpha2: float, beta: float, tol: float = DEFAULT_TOL
) -> TransitionMatrix:
    """Doubly stochastic two-particle map already constrained by no-interaction."""
    a1, a2, b = float(alpha1), float(alpha2), float(beta)
    rows = np.array(
        [
            [a1, a2, 1 - a1 - a2],
            [2 * (b - a1), 1 - 2 * a2, 2 * (-b + a1 + a2)],
            [1 + a1 - 2 * b, a2, 2 * b - a1 - a2],
        ]
    )
    bad = np.argwhere((rows < -tol) | (rows > 1 + tol))
    if len(bad):
        i, j = bad[0]
        raise InfeasibleParametersError(
            f"entry ({i}, {j}) = {rows[i, j]:.6g} is outside [0, 1] "
            f"for alpha1={a1}, alpha2={a2}, beta={b}"
        )
    return square_matrix(2, 2, np.clip(rows, 0.0, 1.0))


def family_matrix(beta: float) -> TransitionMatrix:
    """The one-parameter family satisfying all three conditions (N = M = 2).

    At ``beta = 1/2`` this is the symmetric beam splitter with a vanishing
    ``(1,1) -> (1,1)`` entry.
    """
    b = _check_beta(beta)
    c = 1 - b
    x = 2 * b * c
    return square_matrix(2, 2, [[b * b, x, c * c], [x, 1 - 2 * x, x], [c * c, x, b * b]])


def infer_single_particle(T_N: TransitionMatrix) -> TransitionMatrix:
    """Single-particle map implied by ``T_N`` through the no-interaction relation.

    Removing ``N - 1`` particles from an all-in-mode-``m`` state leaves one
    particle in ``m`` with certainty, so column ``m`` of ``T_1`` must equal
    ``R(N->1)`` applied to that column of ``T_N``.
    """
    bN = _square_basis(T_N, "T_N")
    if bN.N < 2:
        raise StructuralError("inference needs N >= 2")
    R = removal_chain(bN.N, 1, bN.M).entries
    cols = [R @ T_N.column(bN.all_in_mode(m)) for m in range(bN.M)]
    return square_matrix(1, bN.M, np.column_stack(cols))


def _not_evaluated(name: str, why: str) -> ConditionVerdict:
    return ConditionVerdict(name, False, float("nan"), (), why)


def characterize_2x2(T2: TransitionMatrix, tol: float = DEFAULT_TOL) -> PhysicalityReport:
    """Full verdict for a two-particle, two-mode matrix.

    ``beta`` is read off linearly as ``T[0,0] + T[1,0] / 2`` so that it is
    defined even when the evolution principle fails.  The matrix is
    realizable exactly when all three conditions hold and it coincides with
    :func:`family_matrix` at that ``beta``; the returned angle is the one
    used by :func:`gptparticles.quantum.realize` (``cos^2 theta = beta``).
    """
    if T2.input_basis != enumerate_basis(2, 2) or not T2.is_square:
        raise StructuralError("characterize_2x2 needs a 3x3 matrix over basis(2, 2)")
    ds = check_double_stochastic(T2, tol)

    a = T2.entries
    beta = float(a[0, 0] + a[1, 0] / 2)
    if -tol <= beta < 0.0:
        beta = 0.0
    elif 1.0 < beta <= 1 + tol:
        beta = 1.0
    if not 0.0 <= beta <= 1.0:
        why = f"inferred beta = {beta:.6g} outside [0, 1]: no valid single-particle counterpart"
        return PhysicalityReport(
            ds,
            _not_evaluated("no_interaction", why),
            _not_evaluated("evolution", why),
            inferred_beta=None,
            realizable=False,
        )

    T1 = single_family_matrix(beta)
    ni = check_no_interaction(T2, T1, tol)
    ev = check_evolution(T2, T1, tol)
    realizable = False
    theta = None
    if ds and ni and ev:
        if T2.allclose(family_matrix(beta), tol):
            realizable = True
            theta = float(np.arccos(np.sqrt(beta)))
    return PhysicalityReport(ds, ni, ev, beta, realizable, theta, T1)


def check_all(
    T_N: TransitionMatrix, T_1: Optional[TransitionMatrix] = None, tol: float = DEFAULT_TOL
) -> PhysicalityReport:
    """Run the three checks on a general ``N``-particle matrix.

    ``T_1`` is inferred when not supplied.  Realizability is decided only
    for two modes, where every beam splitter's N-particle statistics depend
    on ``|u_11|^2`` alone; for more modes it is left as ``None``.
    """
    bN = _square_basis(T_N, "T_N")
    if T_1 is None:
        T_1 = infer_single_particle(T_N)
    ds = check_double_stochastic(T_N, tol)
    ni = check_no_interaction(T_N, T_1, tol)
    ev = check_evolution(T_N, T_1, tol)
    beta = theta = None
    realizable: Optional[bool] = None
    if bN.M == 2:
        from .quantum import boson_transition_matrix, realize

        realizable = False
        b = float(T_1.entries[0, 0])
        if ds and ni and ev and T_1.allclose(single_family_matrix(min(max(b, 0.0), 1.0)), tol):
            b = min(max(b, 0.0), 1.0)
            beta = b
            if T_N.allclose(boson_transition_matrix(realize(b), bN.N), tol):
                realizable = True
                theta = float(np.arccos(np.sqrt(b)))
    return PhysicalityReport(ds, ni, ev, beta, realizable, theta, T_1)
