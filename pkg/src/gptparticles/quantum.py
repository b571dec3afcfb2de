"""Boson transition matrices from linear-optical unitaries.

Mode operators transform as ``b = U a``.  A single particle entering mode
``k`` leaves in mode ``l`` with probability ``|U[l, k]|^2``, so with
:func:`bs_unitary` the stay probability is ``cos^2 theta``.  This module
fixes ``beta = cos^2 theta``; the relabeling ``theta -> pi/2 - theta`` gives
the equivalent ``beta = sin^2 theta`` convention with the same family of
matrices.
"""
from __future__ import annotations

import json
from math import factorial

import numpy as np

from .basis import DEFAULT_TOL, TransitionMatrix, enumerate_basis
from .errors import DomainError, ParseError, StructuralError
from .permanent import permanent

MAX_PARTICLES = 20
_FACTORIALS = [factorial(n) for n in range(MAX_PARTICLES + 1)]


def check_unitary(U, tol: float = DEFAULT_TOL) -> np.ndarray:
    u = np.asarray(U, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise StructuralError(f"unitary must be square, got shape {u.shape}")
    dev = float(np.max(np.abs(u @ u.conj().T - np.eye(u.shape[0]))))
    if dev > tol:
        raise DomainError(f"matrix is not unitary (max |U U^dagger - I| = {dev:.3g})")
    return u


def bs_unitary(theta: float) -> np.ndarray:
    """Real SU(2) beam splitter ``[[cos t, sin t], [-sin t, cos t]]``."""
    t = float(theta) % (2 * np.pi)
    c, s = np.cos(t), np.sin(t)
    return np.array([[c, s], [-s, c]], dtype=complex)


def random_unitary(M: int, rng: np.random.Generator | None = None) -> np.ndarray:
    """Haar-random ``M x M`` unitary (QR of a complex Gaussian, phase-corrected)."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((M, M)) + 1j * rng.standard_normal((M, M))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d / np.abs(d))


def _repeat_index(occupation) -> list[int]:
    return [mode for mode, n in enumerate(occupation) for _ in range(n)]


def transition_probability(U: np.ndarray, out_state, in_state) -> float:
    """``|perm(U[t, s])|^2 / (prod s! prod t!)`` for occupations ``s -> t``."""
    rows = _repeat_index(out_state)
    cols = _repeat_index(in_state)
    sub = U[np.ix_(rows, cols)]
    norm = 1
    for n in (*in_state, *out_state):
        norm *= _FACTORIALS[n]
    return abs(permanent(sub)) ** 2 / norm


def boson_transition_matrix(U, N: int, tol: float = DEFAULT_TOL) -> TransitionMatrix:
    """Transition matrix of ``N`` indistinguishable bosons through ``U``."""
    if not 1 <= N <= MAX_PARTICLES:
        raise DomainError(f"N must be in [1, {MAX_PARTICLES}], got {N}")
    u = check_unitary(U, tol)
    basis = enumerate_basis(N, u.shape[0])
    P = np.empty((basis.dim, basis.dim))
    for j, s in enumerate(basis):
        for i, t in enumerate(basis):
            P[i, j] = transition_probability(u, t, s)
    return TransitionMatrix(basis, basis, P)


def beta_of_theta(theta: float) -> float:
    return float(np.cos(theta) ** 2)


def theta_of_beta(beta: float) -> float:
    if not 0.0 <= beta <= 1.0:
        raise DomainError(f"beta must lie in [0, 1], got {beta}")
    return float(np.arccos(np.sqrt(beta)))


def realize(beta: float) -> np.ndarray:
    """Canonical beam splitter (real, ``theta`` in ``[0, pi/2]``) realizing ``family_matrix(beta)``.

    Any phases on the inputs or outputs give the same statistics, so the
    realization is not unique.
    """
    return bs_unitary(theta_of_beta(beta))


def unitary_to_json(U) -> str:
    from .basis import dumps

    u = np.asarray(U, dtype=complex)
    return dumps([[[z.real, z.imag] for z in row] for row in u])


def unitary_from_json(text: str, tol: float = DEFAULT_TOL) -> np.ndarray:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    try:
        u = np.array(doc, dtype=float)
    except (TypeError, ValueError):
        raise ParseError("unitary must be a 2-D array of [re, im] pairs") from None
    if u.ndim != 3 or u.shape[2] != 2:
        raise ParseError("unitary must be a 2-D array of [re, im] pairs")
    return check_unitary(u[..., 0] + 1j * u[..., 1], tol)
