"""Dense symmetric/Hermitian eigensolvers and (block-)circulant constructors.

Real matrices are plain ``numpy.ndarray`` of float64, complex ones of
complex128. Eigenvalues only; eigenvectors are never formed.
"""

from __future__ import annotations

import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InconsistencyError, InvalidArgumentError, NonConvergenceError
from .polyring import root_of_unity

DEFAULT_TOL = 1e-12
MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12


def default_cluster_tol(values: Iterable[float]) -> float:
    values = list(values)
    top = max((abs(v) for v in values), default=0.0)
    return max(1e-8, 1e-10 * top)


@dataclass(frozen=True)
class Spectrum:
    """All eigenvalues (ascending) plus an ascending clustered view.

    Adjacent sorted values closer than ``cluster_tol`` share a cluster; a
    cluster's value is the mean of its members.
    """

    values: tuple[float, ...]
    clusters: tuple[tuple[float, int], ...]
    cluster_tol: float

    @classmethod
    def from_values(cls, values: Iterable[float], cluster_tol: float | None = None) -> Spectrum:
        vals = sorted(float(v) for v in values)
        if cluster_tol is None:
            cluster_tol = default_cluster_tol(vals)
        groups: list[list[float]] = []
        for v in vals:
            if groups and v - groups[-1][-1] <= cluster_tol:
                groups[-1].append(v)
            else:
                groups.append([v])
        for g in groups:
            if g[-1] - g[0] > cluster_tol:
                raise InvalidArgumentError(
                    f"eigenvalues {g[0]!r}..{g[-1]!r} chain together but spread more than "
                    f"cluster_tol={cluster_tol:g}; choose a different cluster tolerance"
                )
        clusters = tuple((math.fsum(g) / len(g), len(g)) for g in groups)
        return cls(tuple(vals), clusters, float(cluster_tol))

    def __len__(self) -> int:
        return len(self.values)

    @property
    def descending_clusters(self) -> tuple[tuple[float, int], ...]:
        return tuple(reversed(self.clusters))

    @property
    def max(self) -> float:
        return self.values[-1]

    def multiplicity(self, value: float) -> int:
        """Multiplicity of the cluster containing ``value`` (0 if none)."""
        for v, m in self.clusters:
            if abs(v - value) <= self.cluster_tol:
                return m
        return 0

    def with_cluster_tol(self, cluster_tol: float | None) -> Spectrum:
        return Spectrum.from_values(self.values, cluster_tol)


def frobenius(a: np.ndarray) -> float:
    return float(np.linalg.norm(a))


def _check_square(a: np.ndarray, what: str) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] == 0:
        raise InvalidArgumentError(f"{what} must be a non-empty square matrix, got shape {a.shape}")


@lru_cache(maxsize=64)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    """Split all pairs p<q of [n] into rounds of disjoint pairs (circle method)."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for k in range(m // 2):
            a, b = players[k], players[m - 1 - k]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.intp), np.array(qs, dtype=np.intp)))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a.copy()
    np.fill_diagonal(off, 0.0)
    return frobenius(off)


def jacobi_eigenvalues(s: np.ndarray, tol: float = DEFAULT_TOL, max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix by cyclic two-sided Jacobi rotations.

    Each sweep visits every off-diagonal pair once, grouped into rounds of
    disjoint pairs whose rotations commute and are applied together.
    Iterates until the off-diagonal Frobenius norm is at most ``tol * ||S||_F``.
    """
    a = np.array(s, dtype=np.float64)
    n = a.shape[0]
    scale = frobenius(a)
    if n == 1 or scale == 0.0:
        return np.sort(np.diag(a).copy())
    rounds = _round_robin(n)
    for sweep in range(max_sweeps + 1):
        off = _off_norm(a)
        if off <= tol * scale:
            return np.sort(np.diag(a).copy())
        if sweep == max_sweeps:
            raise NonConvergenceError(max_sweeps, off)
        for p, q in rounds:
            apq = a[p, q]
            active = apq != 0.0
            if not active.any():
                continue
            app = a[p, p]
            aqq = a[q, q]
            safe = np.where(active, apq, 1.0)
            with np.errstate(over="ignore"):
                theta = (aqq - app) / (2.0 * safe)
            big = np.abs(theta) > 1e150
            theta_small = np.where(big, 0.0, theta)
            t = np.where(
                big,
                0.5 / np.where(big, theta, 1.0),
                np.where(theta_small >= 0.0, 1.0, -1.0) / (np.abs(theta_small) + np.sqrt(theta_small**2 + 1.0)),
            )
            t = np.where(active, t, 0.0)
            c = 1.0 / np.sqrt(t * t + 1.0)
            sn = t * c

            cols_p = a[:, p]
            cols_q = a[:, q]
            a[:, p] = cols_p * c - cols_q * sn
            a[:, q] = cols_p * sn + cols_q * c
            rows_p = a[p, :]
            rows_q = a[q, :]
            a[p, :] = c[:, None] * rows_p - sn[:, None] * rows_q
            a[q, :] = sn[:, None] * rows_p + c[:, None] * rows_q
            a[p, q] = 0.0
            a[q, p] = 0.0
    raise AssertionError("unreachable")


def symmetric_eigenvalues(s: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    s = np.asarray(s, dtype=np.float64)
    _check_square(s, "symmetric input")
    scale = frobenius(s)
    asym = frobenius(s - s.T)
    if asym > SYMMETRY_TOL * scale:
        raise InvalidArgumentError(f"matrix is not symmetric (||S - S^T||_F = {asym:.3e})")
    return jacobi_eigenvalues(0.5 * (s + s.T), tol)


def sym_eig(s: np.ndarray, tol: float = DEFAULT_TOL, cluster_tol: float | None = None) -> Spectrum:
    """Spectrum of a real symmetric matrix."""
    return Spectrum.from_values(symmetric_eigenvalues(s, tol), cluster_tol)


def hermitian_embedding(m: np.ndarray) -> np.ndarray:
    """Real symmetric ``[[A, -B], [B, A]]`` for ``M = A + iB``."""
    a = m.real
    b = m.imag
    return np.block([[a, -b], [b, a]])


def hermitian_eigenvalues(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Ascending eigenvalues of a Hermitian matrix; each appears twice in the embedding."""
    m = np.asarray(m, dtype=np.complex128)
    _check_square(m, "Hermitian input")
    scale = frobenius(m)
    skew = frobenius(m - m.conj().T)
    if skew > SYMMETRY_TOL * scale:
        raise InvalidArgumentError(f"matrix is not Hermitian (||M - M^H||_F = {skew:.3e})")
    m = 0.5 * (m + m.conj().T)
    doubled = jacobi_eigenvalues(hermitian_embedding(m), tol)
    first, second = doubled[0::2], doubled[1::2]
    pair_gap = float(np.max(np.abs(second - first)))
    if pair_gap > tol * max(1.0, scale):
        raise InconsistencyError(
            f"real embedding eigenvalues do not pair up (largest gap {pair_gap:.3e})"
        )
    return 0.5 * (first + second)


def herm_eig(m: np.ndarray, tol: float = DEFAULT_TOL, cluster_tol: float | None = None) -> Spectrum:
    """Spectrum of a complex Hermitian matrix via its real symmetric embedding."""
    return Spectrum.from_values(hermitian_eigenvalues(m, tol), cluster_tol)


def gram(h: np.ndarray) -> np.ndarray:
    """H^T H, symmetric by construction (upper triangle mirrored)."""
    h = np.asarray(h, dtype=np.float64)
    g = h.T @ h
    upper = np.triu(g)
    return upper + np.triu(g, 1).T


def circulant(first_column: Sequence[float]) -> np.ndarray:
    """Circulant whose (a, b) entry is ``first_column[(a - b) mod n]``."""
    col = np.asarray(first_column)
    n = col.shape[0]
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    return col[idx]


def block_circulant(blocks: Sequence[np.ndarray]) -> np.ndarray:
    """``circ(b_0, ..., b_{r-1})``: block (a, b) is ``blocks[(a - b) mod r]``."""
    blocks = [np.asarray(b) for b in blocks]
    r = len(blocks)
    return np.block([[blocks[(a - b) % r] for b in range(r)] for a in range(r)])


def block_circulant_spectrum(
    blocks: Sequence[np.ndarray], tol: float = DEFAULT_TOL, cluster_tol: float | None = None
) -> Spectrum:
    """Spectrum of ``circ(blocks)`` as the union of spectra of W(x) = sum_i b_i x^i, x in R_r."""
    if not blocks:
        raise InvalidArgumentError("need at least one block")
    arrs = [np.asarray(b, dtype=np.complex128) for b in blocks]
    size = arrs[0].shape
    for b in arrs:
        _check_square(b, "block")
        if b.shape != size:
            raise InvalidArgumentError("all blocks must have the same shape")
    r = len(arrs)
    values = []
    for j in range(r):
        w = np.zeros(size, dtype=np.complex128)
        for i, b in enumerate(arrs):
            w += b * root_of_unity(r, i * j)
        if frobenius(w - w.conj().T) > SYMMETRY_TOL * max(1.0, frobenius(w)):
            raise InvalidArgumentError(f"W(x) is not Hermitian at x = exp(2 pi i {j}/{r})")
        values.append(hermitian_eigenvalues(0.5 * (w + w.conj().T), tol))
    return Spectrum.from_values(np.concatenate(values), cluster_tol)
