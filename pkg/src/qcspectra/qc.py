"""Quasi-cyclic codes given by a J x L polynomial matrix over Z[X]/(X^r - 1).

Two scalar layouts are supported. ``BLOCK_OF_CIRCULANTS`` is the J x L array
of r x r circulants; ``CIRCULANT_OF_BLOCKS`` is the r x r block circulant
``circ(H_0, ..., H_{r-1})`` with ``P(X) = H_0 + H_1 X + ... + H_{r-1} X^{r-1}``.
They differ by a row and a column permutation (see ``layout_permutation``).
"""

from __future__ import annotations

import enum
import json
from collections import Counter
from collections.abc import Sequence
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import linalg
from ._syntax import TokenStream, parse_terms, tokenize
from .errors import InvalidArgumentError, ParseError
from .linalg import Spectrum
from .polyring import (
    IntPoly,
    cyclic_mul,
    eval_at_root,
    format_poly,
    poly_from_terms,
    reduce_mod,
)


class Layout(enum.Enum):
    BLOCK_OF_CIRCULANTS = "block-of-circulants"
    CIRCULANT_OF_BLOCKS = "circulant-of-blocks"


@dataclass(frozen=True)
class PolyMatrix:
    r: int
    entries: tuple[tuple[IntPoly, ...], ...]

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InvalidArgumentError("circulant size r must be positive")
        if not self.entries or not self.entries[0]:
            raise InvalidArgumentError("polynomial matrix must have at least one entry")
        width = len(self.entries[0])
        for i, row in enumerate(self.entries):
            if len(row) != width:
                raise InvalidArgumentError(f"row {i + 1} has {len(row)} entries, expected {width}")
            for j, p in enumerate(row):
                if p.degree >= self.r:
                    raise InvalidArgumentError(
                        f"entry ({i + 1}, {j + 1}) has degree {p.degree} >= r = {self.r}"
                    )

    @classmethod
    def from_rows(cls, r: int, rows: Sequence[Sequence[IntPoly]], reduce: bool = False) -> PolyMatrix:
        fix = (lambda p: reduce_mod(p, r)) if reduce else (lambda p: p)
        return cls(r, tuple(tuple(fix(p) for p in row) for row in rows))

    @classmethod
    def from_exponents(cls, r: int, exponents: Sequence[Sequence[int | None]]) -> PolyMatrix:
        """Monomial matrix: entry X^e, or 0 where the exponent is None."""
        return cls.from_rows(
            r,
            [[IntPoly() if e is None else IntPoly.monomial(e % r) for e in row] for row in exponents],
        )

    @property
    def J(self) -> int:
        return len(self.entries)

    @property
    def L(self) -> int:
        return len(self.entries[0])

    @property
    def n(self) -> int:
        return self.r * self.L

    @property
    def binary(self) -> bool:
        return all(p.is_binary() for row in self.entries for p in row)

    def __getitem__(self, index: tuple[int, int]) -> IntPoly:
        i, j = index
        return self.entries[i][j]

    def transpose_conjugate(self) -> PolyMatrix:
        """X^r P^T(1/X) reduced mod X^r - 1: the polynomial matrix of H^T."""
        r = self.r
        return PolyMatrix(
            r,
            tuple(
                tuple(_conjugate(self.entries[j][l], r) for j in range(self.J))
                for l in range(self.L)
            ),
        )

    def coefficient_matrices(self) -> list[np.ndarray]:
        """H_0, ..., H_{r-1} with P(X) = sum_i H_i X^i."""
        hs = np.zeros((self.r, self.J, self.L), dtype=np.int64)
        for j, row in enumerate(self.entries):
            for l, p in enumerate(row):
                for e, c in enumerate(p.coeffs):
                    hs[e, j, l] = c
        return list(hs)


def _conjugate(p: IntPoly, r: int) -> IntPoly:
    out = [0] * r
    for e, c in enumerate(p.coeffs):
        out[(-e) % r] += c
    return IntPoly(out)


def matmul(a: PolyMatrix, b: PolyMatrix) -> PolyMatrix:
    """Product of polynomial matrices over Z[X]/(X^r - 1)."""
    if a.r != b.r or a.L != b.J:
        raise InvalidArgumentError("shape or modulus mismatch")
    r = a.r
    rows = []
    for i in range(a.J):
        row = []
        for k in range(b.L):
            acc = IntPoly()
            for j in range(a.L):
                acc = acc + cyclic_mul(a[i, j], b[j, k], r)
            row.append(acc)
        rows.append(row)
    return PolyMatrix.from_rows(r, rows)


def gram_poly_matrix(p: PolyMatrix) -> PolyMatrix:
    """Exact L x L polynomial matrix of H^T H (i.e. W(X) = X^r P^T(1/X) P(X))."""
    return matmul(p.transpose_conjugate(), p)


# -- text / JSON formats -----------------------------------------------------


def parse_poly_matrix(text: str) -> PolyMatrix:
    """Parse the ``r = ...`` / ``P = [ ... ; ... ]`` code-file format."""
    stream = TokenStream(tokenize(text))
    r = None
    reduce = False
    grid = None
    seen = set()
    while stream.peek().kind != "eof":
        tok = stream.next()
        if tok.kind != "name":
            raise ParseError(f"expected a setting name, found {tok.text!r}", tok.line, tok.col)
        key = tok.text
        if key in seen:
            raise ParseError(f"{key!r} assigned twice", tok.line, tok.col)
        seen.add(key)
        stream.expect("=")
        if key == "r":
            val = stream.next()
            if val.kind != "int" or int(val.text) < 1:
                raise ParseError("r must be a positive integer", val.line, val.col)
            r = int(val.text)
        elif key == "reduce":
            val = stream.next()
            if val.text.lower() not in ("true", "false"):
                raise ParseError("reduce must be true or false", val.line, val.col)
            reduce = val.text.lower() == "true"
        elif key == "P":
            grid = _parse_grid(stream)
        else:
            raise ParseError(f"unknown setting {key!r}", tok.line, tok.col)
    if r is None:
        raise ParseError("missing 'r = <int>'")
    if grid is None:
        raise ParseError("missing 'P = [...]'")
    rows = []
    for row in grid:
        entries = []
        for terms in row:
            for t in terms:
                if t.exponent >= r and not reduce:
                    raise ParseError(
                        f"exponent {t.exponent} exceeds r - 1 = {r - 1} (set 'reduce = true' to fold)",
                        t.token.line,
                        t.token.col,
                    )
            entries.append(poly_from_terms((t.coeff, t.exponent) for t in terms))
        rows.append(entries)
    return PolyMatrix.from_rows(r, rows, reduce=reduce)


def _parse_grid(stream: TokenStream):
    open_tok = stream.expect("[")
    rows = [[]]
    while True:
        rows[-1].append(parse_terms(stream))
        if stream.at(","):
            stream.next()
        elif stream.at(";"):
            stream.next()
            if stream.at("]"):
                break
            rows.append([])
        elif stream.at("]"):
            break
        else:
            raise stream.error("expected ',', ';' or ']' in matrix")
    stream.expect("]")
    width = len(rows[0])
    for i, row in enumerate(rows):
        if len(row) != width:
            raise ParseError(
                f"row {i + 1} has {len(row)} entries but row 1 has {width}",
                open_tok.line,
                open_tok.col,
            )
    return rows


def format_poly_matrix(p: PolyMatrix) -> str:
    rows = [", ".join(format_poly(e) for e in row) for row in p.entries]
    body = " ;\n      ".join(rows)
    return f"r = {p.r}\nP = [ {body} ]\n"


def poly_matrix_to_json(p: PolyMatrix) -> dict:
    return {"r": p.r, "rows": [[list(e.coeffs) for e in row] for row in p.entries]}


def poly_matrix_from_json(obj: dict) -> PolyMatrix:
    try:
        r = int(obj["r"])
        rows = obj["rows"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"code JSON needs integer 'r' and 'rows': {exc}") from None
    reduce = bool(obj.get("reduce", False))
    return PolyMatrix.from_rows(r, [[IntPoly(c) for c in row] for row in rows], reduce=reduce)


def load_poly_matrix(path: str | Path) -> PolyMatrix:
    path = Path(path)
    text = path.read_text(encoding="utf-8")
    if path.suffix == ".json":
        try:
            return poly_matrix_from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(exc.msg, exc.lineno, exc.colno) from None
    return parse_poly_matrix(text)


# -- scalar expansion ----------------------------------------------------------


@dataclass(frozen=True)
class ScalarMatrix:
    layout: Layout
    matrix: np.ndarray
    J: int
    L: int
    r: int


def expand_scalar(p: PolyMatrix, layout: Layout = Layout.BLOCK_OF_CIRCULANTS) -> ScalarMatrix:
    r, J, L = p.r, p.J, p.L
    if layout is Layout.BLOCK_OF_CIRCULANTS:
        h = np.zeros((r * J, r * L), dtype=np.int64)
        for j, row in enumerate(p.entries):
            for l, e in enumerate(row):
                h[j * r:(j + 1) * r, l * r:(l + 1) * r] = linalg.circulant(e.padded(r))
    else:
        h = linalg.block_circulant(p.coefficient_matrices())
    return ScalarMatrix(layout, h, J, L, r)


def layout_permutation(J: int, L: int, r: int) -> tuple[np.ndarray, np.ndarray]:
    """Index arrays with ``H_blocks[rows][:, cols] == H_circulant_of_blocks``.

    Row a*J + j of the block-circulant form is row j*r + a of the array of
    circulants (and likewise for columns with L).
    """
    rows = np.array([j * r + a for a in range(r) for j in range(J)], dtype=np.intp)
    cols = np.array([l * r + a for a in range(r) for l in range(L)], dtype=np.intp)
    return rows, cols


@dataclass(frozen=True)
class CodeProfile:
    n: int
    c: int | None  # common column weight, None if columns differ
    d: int | None  # common row weight, None if rows differ
    regular: bool
    column_weights: tuple[int, ...]
    row_weights: tuple[int, ...]

    @property
    def zero_columns(self) -> int:
        return self.column_weights.count(0)

    @property
    def zero_rows(self) -> int:
        return self.row_weights.count(0)

    def column_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.column_weights).items()))

    def row_histogram(self) -> dict[int, int]:
        return dict(sorted(Counter(self.row_weights).items()))


def profile(h: ScalarMatrix | np.ndarray) -> CodeProfile:
    m = np.asarray(h.matrix if isinstance(h, ScalarMatrix) else h)
    if m.ndim != 2:
        raise InvalidArgumentError("parity-check matrix must be 2-dimensional")
    if not np.isin(m, (0, 1)).all():
        raise InvalidArgumentError("parity-check matrix has non-binary entries")
    cols = tuple(int(v) for v in m.sum(axis=0))
    rows = tuple(int(v) for v in m.sum(axis=1))
    c = cols[0] if len(set(cols)) == 1 else None
    d = rows[0] if len(set(rows)) == 1 else None
    return CodeProfile(m.shape[1], c, d, c is not None and d is not None, cols, rows)


# -- spectra -------------------------------------------------------------------


def evaluate(p: PolyMatrix, k: int) -> np.ndarray:
    """P(x) at x = exp(2 pi i k / r)."""
    return np.array([[eval_at_root(e, p.r, k) for e in row] for row in p.entries], dtype=np.complex128)


def gram_spectrum_reduced(
    p: PolyMatrix, tol: float = linalg.DEFAULT_TOL, cluster_tol: float | None = None
) -> Spectrum:
    """Spectrum of H^T H as the union over x in R_r of spectra of P^T(x*) P(x)."""
    values = []
    for k in range(p.r):
        e = evaluate(p, k)
        m = e.conj().T @ e
        # exactly Hermitian: the product is only Hermitian up to rounding
        values.append(linalg.hermitian_eigenvalues(0.5 * (m + m.conj().T), tol))
    return Spectrum.from_values(np.concatenate(values), cluster_tol)


def gram_spectrum_dense(
    p: PolyMatrix, tol: float = linalg.DEFAULT_TOL, cluster_tol: float | None = None
) -> Spectrum:
    """Brute-force oracle: Jacobi on the full rL x rL Gram matrix."""
    h = expand_scalar(p, Layout.CIRCULANT_OF_BLOCKS).matrix
    return linalg.sym_eig(linalg.gram(h), tol, cluster_tol)


def circulant_spectrum(w: IntPoly, n: int, cluster_tol: float | None = None) -> Spectrum:
    """Gram spectrum of the n x n circulant of ``w``: {|w(x)|^2 : x in R_n}."""
    if w.degree >= n:
        raise InvalidArgumentError(f"deg w = {w.degree} must be below n = {n}")
    return Spectrum.from_values((abs(eval_at_root(w, n, j)) ** 2 for j in range(n)), cluster_tol)


def random_poly_matrix(
    rng: np.random.Generator, J: int, L: int, r: int, weight: int = 1
) -> PolyMatrix:
    """Random binary QC matrix whose entries all have exactly ``weight`` terms.

    The result is (J*weight, L*weight)-regular.
    """
    if not 1 <= weight <= r:
        raise InvalidArgumentError("entry weight must lie in [1, r]")
    rows = [
        [IntPoly.from_exponents(rng.choice(r, size=weight, replace=False).tolist()) for _ in range(L)]
        for _ in range(J)
    ]
    return PolyMatrix.from_rows(r, rows)
