"""Eigenvalue-based bounds, the circulant equality test, and pseudo-codeword utilities."""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrumError, InconsistencyError, InvalidArgumentError, NonDivisibleError
from .linalg import Spectrum
from .polyring import IntPoly, cyclic_autocorrelation, exact_divide, format_poly, reciprocal
from .qc import ScalarMatrix

CONE_TOL = 1e-9


@dataclass(frozen=True)
class SpectrumSummary:
    lambda1: float
    lambda1_mult: int
    lambda2: float
    distinct_count: int

    @property
    def gap(self) -> float:
        return self.lambda1 - self.lambda2


def summarize(spec: Spectrum) -> SpectrumSummary:
    """Largest and second-largest distinct eigenvalue clusters."""
    clusters = spec.descending_clusters
    if len(clusters) < 2:
        raise DegenerateSpectrumError(
            f"spectrum has a single eigenvalue cluster {clusters[0][0]:.6g}; lambda2 undefined"
            if clusters
            else "empty spectrum"
        )
    (l1, m1), (l2, _) = clusters[0], clusters[1]
    return SpectrumSummary(l1, m1, l2, len(clusters))


def _check_gap(lambda1: float, lambda2: float) -> None:
    if not lambda1 > lambda2:
        raise InvalidArgumentError(f"need lambda1 > lambda2, got {lambda1} and {lambda2}")


def awgnc_pw_bound(n: int, c: float, lambda1: float, lambda2: float) -> float:
    """Lower bound n (2c - lambda2) / (lambda1 - lambda2) on the minimum AWGNC pseudo-weight.

    Values <= 0 are returned unclamped; they carry no information.
    """
    _check_gap(lambda1, lambda2)
    return n * (2 * c - lambda2) / (lambda1 - lambda2)


def tanner_dmin_bound(n: int, c: float, d: float, lambda1: float, lambda2: float) -> float:
    """n (2/d) (2c + d - 2 - lambda2) / (lambda1 - lambda2)."""
    _check_gap(lambda1, lambda2)
    if d < 1:
        raise InvalidArgumentError("row weight d must be at least 1")
    return n * (2 / d) * (2 * c + d - 2 - lambda2) / (lambda1 - lambda2)


def check_necessary_condition(spec: Spectrum, n: int) -> bool:
    """True iff the spectrum is a simple top eigenvalue plus one (n-1)-fold eigenvalue."""
    clusters = spec.descending_clusters
    return len(clusters) == 2 and clusters[0][1] == 1 and clusters[1][1] == n - 1


@dataclass(frozen=True)
class BoundReport:
    n: int
    c: int
    d: int
    summary: SpectrumSummary
    pw_bound: float
    dmin_bound: float
    necessary_condition: bool

    @property
    def informative(self) -> bool:
        return self.pw_bound > 0

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "c": self.c,
            "d": self.d,
            "lambda1": self.summary.lambda1,
            "lambda1_mult": self.summary.lambda1_mult,
            "lambda2": self.summary.lambda2,
            "pw_bound": self.pw_bound,
            "dmin_bound": self.dmin_bound,
            "informative": self.informative,
            "necessary_condition": self.necessary_condition,
        }


def bound_report(spec: Spectrum, n: int, c: int, d: int) -> BoundReport:
    s = summarize(spec)
    return BoundReport(
        n=n,
        c=c,
        d=d,
        summary=s,
        pw_bound=awgnc_pw_bound(n, c, s.lambda1, s.lambda2),
        dmin_bound=tanner_dmin_bound(n, c, d, s.lambda1, s.lambda2),
        necessary_condition=check_necessary_condition(spec, n),
    )


@dataclass(frozen=True)
class EqualityReport:
    holds: bool
    n: int
    d: int
    k: int
    autocorrelation: tuple[int, ...]
    mu: int | None = None
    lambda2: int | None = None
    rpoly: IntPoly | None = None
    residual: IntPoly | None = None
    reason: str = ""

    @property
    def lambda1(self) -> int:
        return self.d * self.d

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "mu": self.mu,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "r_poly": None if self.rpoly is None else format_poly(self.rpoly),
            "autocorrelation": list(self.autocorrelation),
            "reason": self.reason,
        }


def check_equality_condition(w: IntPoly, n: int) -> EqualityReport:
    """Decide, in exact arithmetic, whether |w(x)|^2 is constant on the nontrivial n-th roots.

    When it is, lambda2 = d - mu with mu the constant off-peak autocorrelation,
    and ``w(X) w~(X) - lambda2 X^k = (1 + X + ... + X^{n-1}) r(X)`` over Z[X];
    r(X) is returned in ``rpoly``. On failure ``residual`` holds the
    autocorrelation polynomial sum_t a_t X^t witnessing the non-constant lags.
    """
    if w.is_zero():
        raise InvalidArgumentError("w must be nonzero")
    if not w.is_binary():
        raise InvalidArgumentError("w must have 0/1 coefficients")
    if w.degree >= n:
        raise InvalidArgumentError(f"deg w = {w.degree} must be below n = {n}")
    k = int(w.degree)
    d = w.weight()
    auto = cyclic_autocorrelation(w, n)
    base = dict(n=n, d=d, k=k, autocorrelation=auto)
    off_peak = set(auto[1:])
    if len(off_peak) > 1:
        return EqualityReport(
            holds=False, residual=IntPoly(auto), reason="off-peak autocorrelation is not constant", **base
        )
    mu = off_peak.pop() if off_peak else 0
    lam2 = d - mu
    if 2 * k < n - 1:
        return EqualityReport(
            holds=False, mu=mu, lambda2=lam2, residual=IntPoly(auto), reason="degree deficiency", **base
        )
    if d == 1:
        # w w~ = X^k exactly; every eigenvalue is 1 and there is no second one
        return EqualityReport(
            holds=False, mu=mu, lambda2=lam2, residual=IntPoly(auto), reason="single eigenvalue", **base
        )
    lhs = w * reciprocal(w, k) - IntPoly.monomial(k, lam2)
    try:
        rpoly = exact_divide(lhs, IntPoly.ones(n))
    except NonDivisibleError as exc:
        raise InconsistencyError(
            f"constant autocorrelation but w w~ - {lam2} X^{k} is not a multiple of 1 + ... + X^{n - 1}"
        ) from exc
    # deg(w w~) = 2k - v with v the lowest exponent of w
    expected_degree = 2 * k - min(w.support()) - n + 1
    if rpoly.degree != expected_degree:
        raise InconsistencyError(f"deg r = {rpoly.degree}, expected {expected_degree}")
    return EqualityReport(holds=True, mu=mu, lambda2=lam2, rpoly=rpoly, **base)


# -- fundamental cone ------------------------------------------------------------


@dataclass(frozen=True)
class ConeViolation:
    row: int | None  # None for a negativity violation
    col: int
    slack: float  # how far the constraint is violated

    def __str__(self) -> str:
        if self.row is None:
            return f"omega[{self.col}] < 0"
        return f"check {self.row}: omega[{self.col}] exceeds the sum over the rest of its row by {self.slack:.6g}"


def cone_membership(
    h: ScalarMatrix | np.ndarray, omega: Sequence[float], tol: float = CONE_TOL
) -> tuple[bool, ConeViolation | None]:
    """Test omega against the fundamental cone of H; report the first violated constraint."""
    m = np.asarray(h.matrix if isinstance(h, ScalarMatrix) else h)
    w = np.asarray(omega, dtype=np.float64)
    if m.ndim != 2 or w.ndim != 1 or m.shape[1] != w.shape[0]:
        raise InvalidArgumentError(f"vector of length {w.shape} does not match H of shape {m.shape}")
    if not np.isin(m, (0, 1)).all():
        raise InvalidArgumentError("H must be binary")
    if not np.isfinite(w).all():
        raise InvalidArgumentError("pseudo-codeword entries must be finite")
    for i, v in enumerate(w):
        if v < -tol:
            return False, ConeViolation(None, i, float(-v))
    for j, row in enumerate(m):
        support = np.flatnonzero(row)
        total = math.fsum(w[support])
        for i in support:
            slack = w[i] - (total - w[i])
            if slack > tol:
                return False, ConeViolation(j, int(i), float(slack))
    return True, None


def pseudo_weight(omega: Sequence[float]) -> float:
    """AWGNC pseudo-weight ||omega||_1^2 / ||omega||_2^2."""
    w = [float(v) for v in omega]
    sq = math.fsum(v * v for v in w)
    if sq == 0.0:
        raise InvalidArgumentError("pseudo-weight of the zero vector is undefined")
    l1 = math.fsum(abs(v) for v in w)
    return l1 * l1 / sq
