"""Reproduction checks run by ``gptparticles demo``.

Each check returns a :class:`CheckResult` with the worst residual seen and
the tolerance it was judged against.  Passing ``tol`` overrides every
check's own tolerance.
"""
from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from math import factorial
from typing import Callable, Optional

import numpy as np

from .basis import square_matrix
from .permanent import BACKEND, permanent, permanent_bruteforce
from .physicality import (
    characterize_2x2,
    check_double_stochastic,
    check_evolution,
    check_no_interaction,
    family_matrix,
    single_family_matrix,
)
from .quantum import beta_of_theta, boson_transition_matrix, bs_unitary, random_unitary, realize
from .quon import QuonModel, check_quon_evolution, quon_statistics, quon_transition_matrix
from .removal import removal_matrix

SEED = 20181


@dataclass(frozen=True)
class CheckResult:
    id: int
    name: str
    passed: bool
    residual: float
    tol: float
    seconds: float
    detail: str = ""

    def to_dict(self) -> dict:
        return asdict(self)


def t_imp():
    return square_matrix(2, 2, [[0.5, 0, 0.5], [0, 1, 0], [0.5, 0, 0.5]])


def _max_dev(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def removal_exact(tol):
    expected = 0.5 * np.array([[2, 1, 0], [0, 1, 2]])
    r = _max_dev(removal_matrix(2, 2).entries, expected)
    return r <= tol, r, ""


def family_half(tol):
    expected = [[0.25, 0.5, 0.25], [0.5, 0, 0.5], [0.25, 0.5, 0.25]]
    r = _max_dev(family_matrix(0.5).entries, expected)
    return r <= tol, r, ""


def family_closure(tol):
    worst = 0.0
    ok = True
    for beta in np.linspace(0, 1, 101):
        T2, T1 = family_matrix(beta), single_family_matrix(beta)
        for v in (check_double_stochastic(T2, tol), check_no_interaction(T2, T1, tol),
                  check_evolution(T2, T1, tol)):
            worst = max(worst, v.residual)
            ok &= v.passed
    return ok, worst, "101 beta values"


def quantum_equivalence(tol):
    worst = 0.0
    for theta in np.linspace(0, np.pi / 2, 181):
        T = boson_transition_matrix(bs_unitary(theta), 2)
        worst = max(worst, _max_dev(T.entries, family_matrix(beta_of_theta(theta)).entries))
    return worst <= tol, worst, "181 theta values, beta = cos^2(theta)"


def impossible_process(tol):
    rep = characterize_2x2(t_imp(), tol)
    w = [x for x in rep.evolution.witnesses if x.input_state == (2, 0)]
    beta_err = abs(rep.inferred_beta - 0.5) if rep.inferred_beta is not None else np.inf
    witness_err = abs(w[0].observed[0] - 0.5) + abs(w[0].expected[0] - 0.25) if w else np.inf
    ok = (
        rep.doubly_stochastic.passed
        and rep.no_interaction.passed
        and beta_err <= min(tol, 1e-12)
        and not rep.evolution.passed
        and witness_err <= tol
        and rep.realizable is False
    )
    detail = "P(20->20) = 1/2 vs P(10->10)^2 = 1/4" if w else "no (2,0) witness"
    return ok, max(beta_err, witness_err), detail


def _quantum_sweep():
    rng = np.random.default_rng(SEED)
    for k in range(50):
        M = 2 + k % 2
        U = random_unitary(M, rng)
        mats = {n: boson_transition_matrix(U, n) for n in range(1, 5)}
        for N in (2, 3, 4):
            yield mats, N


def quantum_no_interaction(tol):
    worst = 0.0
    for mats, N in _quantum_sweep():
        worst = max(worst, check_no_interaction(mats[N], mats[N - 1], tol).residual)
    return worst <= tol, worst, "50 Haar unitaries, M in {2,3}, N in {2,3,4}"


def quantum_evolution(tol):
    worst = 0.0
    for mats, N in _quantum_sweep():
        worst = max(worst, check_evolution(mats[N], mats[1], tol).residual)
    return worst <= tol, worst, "50 Haar unitaries, M in {2,3}, N in {2,3,4}"


def permanent_oracle(tol):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for n in range(2, 8):
        for _ in range(20):
            A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
            ref = permanent_bruteforce(A)
            worst = max(worst, abs(permanent(A) - ref) / abs(ref))
    ones_ok = all(permanent(np.ones((n, n))) == factorial(n) for n in range(1, 11))
    A = rng.standard_normal((24, 24)) + 1j * rng.standard_normal((24, 24))
    t0 = time.perf_counter()
    permanent(A)
    elapsed = time.perf_counter() - t0
    ok = worst <= tol and ones_ok and elapsed < 5.0
    return ok, worst, f"backend={BACKEND}, 24x24 in {elapsed:.2f} s, ones n! exact={ones_ok}"


def quon_limits(tol):
    worst = 0.0
    ok = True
    for R in np.linspace(0, 1, 21):
        worst = max(worst, _max_dev(quon_transition_matrix(QuonModel(1.0, R)).entries,
                                    family_matrix(1 - R).entries))
        worst = max(worst, abs(quon_statistics(QuonModel(-1.0, R)).prob((1, 1), (1, 1)) - 1))
    for q in (-0.99, -0.5, 0.0, 0.5, 1.0):
        for R in np.linspace(0, 1, 11):
            m = QuonModel(q, R)
            ev = check_quon_evolution(m, tol)
            ok &= ev.passed
            worst = max(worst, ev.residual)
            table = quon_statistics(m)
            for s in table.rows:
                worst = max(worst, abs(sum(table[s].values()) - 1))
            row20 = quon_transition_matrix(m).entries[0].sum()
            worst = max(worst, abs(row20 - (1 + R * (1 - R) * (q - 1))))
    return ok and worst <= tol, worst, ""


def inverse_round_trip(tol):
    worst = 0.0
    ok = True
    for beta in np.linspace(0, 1, 101):
        T = family_matrix(beta)
        rep = characterize_2x2(T, tol)
        ok &= rep.realizable is True
        if rep.inferred_beta is None:
            return False, np.inf, f"no beta inferred at {beta}"
        worst = max(worst, abs(rep.inferred_beta - beta))
        worst = max(worst, _max_dev(boson_transition_matrix(realize(beta), 2).entries, T.entries))
    return ok and worst <= tol, worst, "101 beta values"


CHECKS: list[tuple[int, str, float, Callable]] = [
    (1, "removal matrix R(2) exact", 1e-15, removal_exact),
    (2, "family matrix at beta=1/2", 1e-15, family_half),
    (3, "family passes all three conditions", 1e-9, family_closure),
    (4, "beam splitter equals family", 1e-9, quantum_equivalence),
    (5, "impossible process verdict", 1e-9, impossible_process),
    (6, "no-interaction holds for bosons", 1e-9, quantum_no_interaction),
    (7, "evolution principle holds for bosons", 1e-9, quantum_evolution),
    (8, "Ryser permanent vs brute force", 1e-12, permanent_oracle),
    (9, "quon limits and evolution", 1e-12, quon_limits),
    (10, "inverse round trip", 1e-9, inverse_round_trip),
]


def run_all(tol: Optional[float] = None) -> list[CheckResult]:
    results = []
    for cid, name, default_tol, fn in CHECKS:
        use = default_tol if tol is None else tol
        t0 = time.perf_counter()
        try:
            ok, residual, detail = fn(use)
        except Exception as exc:  # report, never abort the table
            ok, residual, detail = False, float("nan"), f"{type(exc).__name__}: {exc}"
        results.append(
            CheckResult(cid, name, bool(ok), float(residual), use, time.perf_counter() - t0, detail)
        )
    return results
