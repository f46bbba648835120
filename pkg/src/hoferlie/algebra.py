"""Linear algebra on su(n) and SU(n).

Elements of su(n) are plain ``complex`` numpy arrays that are skew-Hermitian
and traceless; elements of SU(n) are unitary arrays with determinant one.
Eigen-decompositions go through the Hermitian matrix ``x / i``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import linalg as sla

from .config import EPS_BRANCH, EPS_CLUSTER, EPS_MAT
from .errors import (
    BoundaryOfInjectivity,
    DimensionMismatch,
    EigenSolverError,
    MalformedInput,
    NotCommuting,
)

__all__ = [
    "Spectrum",
    "LogResult",
    "as_skew",
    "as_unitary",
    "inner_product",
    "spectrum",
    "group_exp",
    "principal_log",
    "principal_log_info",
    "commutes",
    "bracket",
    "joint_eigenbasis",
    "adjoint",
    "diag_skew",
    "spectral_radius",
    "random_unitary",
    "random_skew",
]

TWO_PI = 2.0 * np.pi


def as_skew(x, tol: float = EPS_MAT) -> np.ndarray:
    """Validate and return x as a complex traceless skew-Hermitian array."""
    a = np.asarray(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 2:
        raise MalformedInput(f"expected a square matrix of size >= 2, got shape {a.shape}")
    scale = 1.0 + np.linalg.norm(a)
    if np.linalg.norm(a + a.conj().T) > tol * scale:
        raise MalformedInput("matrix is not skew-Hermitian")
    if abs(np.trace(a)) > tol * scale:
        raise MalformedInput("matrix is not traceless")
    return a


def as_unitary(u, tol: float = EPS_MAT) -> np.ndarray:
    a = np.asarray(u, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise MalformedInput(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if np.linalg.norm(a @ a.conj().T - np.eye(n)) > tol * n:
        raise MalformedInput("matrix is not unitary")
    if abs(np.linalg.det(a) - 1.0) > tol * n:
        raise MalformedInput("determinant is not 1")
    return a


def _same_dim(x, y):
    if x.shape != y.shape:
        raise DimensionMismatch(f"shapes {x.shape} and {y.shape} differ")


def diag_skew(values) -> np.ndarray:
    """i * diag(values)."""
    return 1j * np.diag(np.asarray(values, dtype=float))


def inner_product(x, y, scale: float = 1.0) -> float:
    """scale * (-tr(x y)); positive definite on su(n)."""
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    _same_dim(x, y)
    return float(scale * -np.einsum("jk,kj->", x, y).real)


@dataclass(frozen=True)
class Spectrum:
    """Eigenvalues of x/i in weakly decreasing order with matching eigenvectors."""

    values: np.ndarray
    basis: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return 1j * (self.basis * self.values) @ self.basis.conj().T


def spectrum(x) -> Spectrum:
    a = np.asarray(x, dtype=complex)
    h = -1j * a
    h = 0.5 * (h + h.conj().T)
    try:
        w, v = np.linalg.eigh(h)
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(str(exc)) from exc
    w = w[::-1]
    v = v[:, ::-1]
    w = w - w.mean()
    return Spectrum(w, v)


def spectral_radius(x) -> float:
    """Operator norm ||x||_inf = max |eigenvalue|."""
    return float(np.max(np.abs(spectrum(x).values)))


def group_exp(x) -> np.ndarray:
    """Exponential through the eigendecomposition of the Hermitian x/i."""
    s = spectrum(x)
    return (s.basis * np.exp(1j * s.values)) @ s.basis.conj().T


@dataclass(frozen=True)
class LogResult:
    z: np.ndarray
    arguments: np.ndarray  # eigenvalues of z/i after branch correction, decreasing
    branch_shift: int  # m when the principal arguments summed to 2*pi*m


def principal_log_info(u, eps_branch: float = EPS_BRANCH, strict: bool = True) -> LogResult:
    """Traceless logarithm of u, plus branch metadata.

    Principal arguments lie in (-pi, pi); when they sum to 2*pi*m with m != 0
    the m largest (or -m smallest) are shifted by 2*pi to restore a zero
    trace. Such a shift always leaves the open spectral ball of radius pi, so
    with ``strict`` (the default) it raises BoundaryOfInjectivity; otherwise
    the shifted logarithm is returned with ``branch_shift = m``.
    """
    a = np.asarray(u, dtype=complex)
    T, Q = sla.schur(a, output="complex")
    d = np.diag(T)
    d = d / np.abs(d)
    theta = np.angle(d)
    if np.any(np.abs(theta) > np.pi - eps_branch):
        raise BoundaryOfInjectivity("an eigenvalue is too close to -1")
    m = int(np.rint(theta.sum() / TWO_PI))
    if m:
        if strict:
            raise BoundaryOfInjectivity("no traceless logarithm inside the spectral ball")
        order = np.argsort(-theta, kind="stable")
        if m > 0:
            theta[order[:m]] -= TWO_PI
        else:
            theta[order[::-1][: -m]] += TWO_PI
    theta = theta - theta.mean()
    z = 1j * (Q * theta) @ Q.conj().T
    z = 0.5 * (z - z.conj().T)
    return LogResult(z, np.sort(theta)[::-1], m)


def principal_log(u, eps_branch: float = EPS_BRANCH) -> np.ndarray:
    """Logarithm with spectrum in the open ball of radius pi; see :func:`principal_log_info`."""
    return principal_log_info(u, eps_branch).z


def bracket(x, y) -> np.ndarray:
    return x @ y - y @ x


def commutes(x, y, tol: float = EPS_MAT) -> bool:
    x = np.asarray(x, dtype=complex)
    y = np.asarray(y, dtype=complex)
    _same_dim(x, y)
    b = np.linalg.norm(bracket(x, y))
    return bool(b <= tol * (1 + np.linalg.norm(x)) * (1 + np.linalg.norm(y)))


def _is_diagonal(x, tol):
    off = x - np.diag(np.diag(x))
    return np.linalg.norm(off) <= tol * (1 + np.linalg.norm(x))


def joint_eigenbasis(xs, tol: float = EPS_MAT, cluster: float = EPS_CLUSTER):
    """Common unitary diagonalization of a commuting family.

    The basis is refined element by element: each x_k is diagonalized inside
    the eigenspace clusters left by its predecessors. Returns the unitary and
    the real coordinate vectors (eigenvalues of x_k / i) in that basis.
    """
    xs = [np.asarray(x, dtype=complex) for x in xs]
    if not xs:
        raise ValueError("empty family")
    n = xs[0].shape[0]
    for x in xs:
        _same_dim(xs[0], x)
    worst, pair = 0.0, None
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            b = np.linalg.norm(bracket(xs[i], xs[j]))
            rel = b / ((1 + np.linalg.norm(xs[i])) * (1 + np.linalg.norm(xs[j])))
            if rel > tol and rel > worst:
                worst, pair = rel, (i, j)
    if pair is not None:
        raise NotCommuting(
            f"elements {pair[0]} and {pair[1]} do not commute (relative bracket {worst:.3e})",
            pair=pair,
            bracket=float(np.linalg.norm(bracket(xs[pair[0]], xs[pair[1]]))),
        )
    if all(_is_diagonal(x, tol) for x in xs):
        u = np.eye(n, dtype=complex)
    else:
        u = np.eye(n, dtype=complex)
        blocks = [list(range(n))]
        for x in xs:
            h = -1j * x
            h = 0.5 * (h + h.conj().T)
            thresh = cluster * (1 + np.linalg.norm(h))
            new_blocks = []
            for b in blocks:
                if len(b) == 1:
                    new_blocks.append(b)
                    continue
                vb = u[:, b]
                m = vb.conj().T @ h @ vb
                w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
                w, v = w[::-1], v[:, ::-1]
                u[:, b] = vb @ v
                start = 0
                for k in range(1, len(b) + 1):
                    if k == len(b) or w[k - 1] - w[k] > thresh:
                        new_blocks.append(b[start:k])
                        start = k
            blocks = new_blocks
    coords = []
    for x in xs:
        d = u.conj().T @ (-1j * x) @ u
        if np.linalg.norm(d - np.diag(np.diag(d))) > max(100 * tol, 1e-6) * (1 + np.linalg.norm(x)):
            raise NotCommuting("joint diagonalization failed to converge")
        c = np.real(np.diag(d))
        coords.append(c - c.mean())
    return u, coords


def adjoint(u, x) -> np.ndarray:
    u = np.asarray(u, dtype=complex)
    x = np.asarray(x, dtype=complex)
    _same_dim(u, x)
    return u @ x @ u.conj().T


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed element of SU(n)."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    ph = np.diag(r) / np.abs(np.diag(r))
    q = q * ph
    det = np.linalg.det(q)
    q[:, 0] /= det
    return q


def random_skew(n: int, rng: np.random.Generator, values=None) -> np.ndarray:
    """Random element of su(n), with prescribed eigenvalues of x/i when given."""
    if values is None:
        values = rng.standard_normal(n)
    values = np.asarray(values, dtype=float)
    values = values - values.mean()
    u = random_unitary(n, rng)
    return adjoint(u, diag_skew(values))
