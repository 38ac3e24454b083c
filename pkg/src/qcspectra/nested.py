"""m-nested circulant matrices.

An m-nested circulant with dims (i_1, ..., i_m) is ``circ(b_0, ..., b_{i_1-1})``
whose blocks are (m-1)-nested circulants with dims (i_2, ..., i_m), down to
scalars. Writing a row index in mixed radix with i_1 as the most significant
digit, entry (row, col) equals ``b[(row - col) mod dims]`` digit-wise, so the
first column lists the coefficients in index order. The eigenvalues are the
values of q(X_1, ..., X_m) = sum b_j prod X_t^{j_t} at all x_t in R_{i_t}.
"""

from __future__ import annotations

import cmath
import itertools
import json
import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import linalg
from .errors import InconsistencyError, InvalidArgumentError, ParseError, StructureError
from .linalg import Spectrum

IMAG_TOL = 1e-9


@dataclass(frozen=True)
class NestedCirculant:
    dims: tuple[int, ...]
    coeffs: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        dims = tuple(int(i) for i in self.dims)
        if not dims or any(i < 1 for i in dims):
            raise InvalidArgumentError("dims must be a non-empty sequence of positive integers")
        clean = {}
        for key, value in self.coeffs.items():
            key = tuple(int(j) for j in key)
            if len(key) != len(dims) or any(not 0 <= j < i for j, i in zip(key, dims)):
                raise InvalidArgumentError(f"index {key} does not fit dims {dims}")
            if value != 0:
                clean[key] = value
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def from_first_column(cls, dims: Sequence[int], column: Sequence[float]) -> NestedCirculant:
        dims = tuple(dims)
        if len(column) != math.prod(dims):
            raise InvalidArgumentError("first column length must equal prod(dims)")
        return cls(dims, {idx: column[k] for k, idx in enumerate(_indices(dims)) if column[k] != 0})

    @property
    def m(self) -> int:
        return len(self.dims)

    @property
    def n(self) -> int:
        return math.prod(self.dims)

    def coefficient(self, index: Sequence[int]) -> float:
        return self.coeffs.get(tuple(index), 0)

    def first_column(self) -> list[float]:
        return [self.coefficient(idx) for idx in _indices(self.dims)]

    def is_symmetric(self) -> bool:
        """B^T = B iff b_j = b_{-j} for every index (negation digit-wise)."""
        for key, value in self.coeffs.items():
            neg = tuple((-j) % i for j, i in zip(key, self.dims))
            if self.coeffs.get(neg, 0) != value:
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NestedCirculant):
            return NotImplemented
        return self.dims == other.dims and dict(self.coeffs) == dict(other.coeffs)

    def __hash__(self) -> int:
        return hash((self.dims, tuple(sorted(self.coeffs.items()))))


def _indices(dims: Sequence[int]):
    return itertools.product(*(range(i) for i in dims))


def _digit_table(dims: Sequence[int]) -> np.ndarray:
    """digits[k] = mixed-radix digits of k, most significant first."""
    return np.array(list(_indices(dims)), dtype=np.intp).reshape(-1, len(dims))


def nested_expand(nc: NestedCirculant) -> np.ndarray:
    """Dense n x n matrix of a nested circulant."""
    dims = np.array(nc.dims, dtype=np.intp)
    digits = _digit_table(nc.dims)
    diff = (digits[:, None, :] - digits[None, :, :]) % dims
    # flatten digit tuples back to a linear first-column position
    strides = np.array([math.prod(nc.dims[t + 1:]) for t in range(nc.m)], dtype=np.intp)
    flat = diff @ strides
    column = np.array(nc.first_column(), dtype=np.float64)
    return column[flat]


def nested_eigenvalues(nc: NestedCirculant) -> list[complex]:
    """q(x_1, ..., x_m) for every root tuple, in index order of (k_1, ..., k_m).

    Each term's phase is accumulated as an exact integer multiple of 2 pi / n.
    """
    n = nc.n
    scale = [n // i for i in nc.dims]
    terms = list(nc.coeffs.items())
    out = []
    for ks in _indices(nc.dims):
        re = im = 0.0
        for js, b in terms:
            phase = sum(k * j % i * s for k, j, i, s in zip(ks, js, nc.dims, scale)) % n
            z = _unit(n, phase)
            re += b * z.real
            im += b * z.imag
        out.append(complex(re, im))
    return out


def _unit(n: int, m: int) -> complex:
    if m == 0:
        return 1.0 + 0.0j
    if 2 * m == n:
        return -1.0 + 0.0j
    return cmath.exp(2j * math.pi * m / n)


@dataclass(frozen=True)
class ComplexSpectrum:
    """Eigenvalues of a non-symmetric nested circulant (not real in general)."""

    values: tuple[complex, ...]


def nested_spectrum(nc: NestedCirculant, symmetric: bool | None = None) -> Spectrum | ComplexSpectrum:
    """Spectrum via evaluation of the associated polynomial.

    With ``symmetric=None`` symmetry is read off the coefficients; a
    non-symmetric matrix yields a ``ComplexSpectrum``. Requesting
    ``symmetric=True`` on data whose evaluations are not real raises.
    """
    values = nested_eigenvalues(nc)
    if symmetric is None:
        symmetric = nc.is_symmetric()
    if not symmetric:
        return ComplexSpectrum(tuple(values))
    for v in values:
        if abs(v.imag) > IMAG_TOL * (1.0 + abs(v)):
            raise InconsistencyError(
                f"symmetric spectrum requested but q(x) = {v} has imaginary part"
            )
    return Spectrum.from_values(v.real for v in values)


def nested_detect(m: np.ndarray, dims: Sequence[int], atol: float = 0.0) -> NestedCirculant:
    """Recover the nested circulant whose expansion is ``m``.

    Coefficients come from the first column; every other entry is checked
    against them and the first mismatch (row-major) is reported.
    """
    m = np.asarray(m, dtype=np.float64)
    dims = tuple(int(i) for i in dims)
    n = math.prod(dims)
    if m.shape != (n, n):
        raise InvalidArgumentError(f"matrix shape {m.shape} does not match prod(dims) = {n}")
    nc = NestedCirculant.from_first_column(dims, m[:, 0].tolist())
    expected = nested_expand(nc)
    bad = np.abs(m - expected) > atol
    if bad.any():
        row, col = (int(v) for v in np.argwhere(bad)[0])
        raise StructureError(row, col, float(expected[row, col]), float(m[row, col]))
    return nc


def nested_gram(nc: NestedCirculant) -> NestedCirculant:
    """Nested-circulant form of B^T B, where B is the expansion of ``nc``."""
    b = nested_expand(nc)
    g = linalg.gram(b)
    atol = 0.0 if _integral(nc) else 1e-12 * max(1.0, float(np.abs(g).max()))
    try:
        return nested_detect(g, nc.dims, atol=atol)
    except StructureError as exc:
        raise InconsistencyError(f"Gram matrix lost nested-circulant structure: {exc}") from exc


def _integral(nc: NestedCirculant) -> bool:
    return all(float(v).is_integer() for v in nc.coeffs.values())


def nested_to_json(nc: NestedCirculant) -> dict:
    return {
        "dims": list(nc.dims),
        "coeffs": [{"index": list(k), "value": v} for k, v in sorted(nc.coeffs.items())],
    }


def nested_from_json(obj: dict) -> NestedCirculant:
    try:
        dims = [int(i) for i in obj["dims"]]
        coeffs = {}
        for item in obj.get("coeffs", []):
            key = tuple(int(j) for j in item["index"])
            if key in coeffs:
                raise ParseError(f"duplicate coefficient index {list(key)}")
            coeffs[key] = item["value"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed nested-circulant JSON: {exc}") from None
    return NestedCirculant(tuple(dims), coeffs)


def load_nested(path: str | Path) -> NestedCirculant:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return nested_from_json(obj)


def parse_dense_matrix(text: str) -> np.ndarray:
    """Whitespace-separated rows, one per line; '#' starts a comment."""
    rows = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].replace(",", " ").strip()
        if not line:
            continue
        try:
            rows.append([float(tok) for tok in line.split()])
        except ValueError as exc:
            raise ParseError(str(exc), lineno, 1) from None
        if len(rows[-1]) != len(rows[0]):
            raise ParseError(f"row has {len(rows[-1])} entries, expected {len(rows[0])}", lineno, 1)
    if not rows:
        raise ParseError("empty matrix")
    return np.array(rows, dtype=np.float64)
