"""Exchange-matrix, seed, Y-seed, and g-vector mutation.

Matrices are tuples of tuples of ints (rows), mutation indices are 0-based.
Cluster variables are stored as unreduced rationals in the initial
variables, never as abstract symbols, so they can be compared directly
against matching expansions via rf_eq.

Coefficient regime: seeds are coefficient-free (y = 1).  Principal
coefficients are realized where they are consumed, by substituting
yhat_j = prod_i x_i^{b_ij} into an F-polynomial (`substitute_yhat`) rather
than by a 2n x n seed recursion.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .poly import (
    Poly,
    PosRational,
    lp_monomial,
    lp_one,
    lp_substitute,
    rf_add,
    rf_from_poly,
    rf_inv,
    rf_mul,
    rf_one,
    rf_pow,
    rf_var,
)

Matrix = Tuple[Tuple[int, ...], ...]


def as_matrix(rows: Sequence[Sequence[int]]) -> Matrix:
    return tuple(tuple(int(v) for v in row) for row in rows)


def is_skew_symmetric(b: Matrix) -> bool:
    n = len(b)
    return all(len(row) == n for row in b) and all(
        b[i][j] == -b[j][i] for i in range(n) for j in range(n)
    )


def _check_index(n: int, k: int) -> None:
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for size {n}")


def _sgn(v: int) -> int:
    return (v > 0) - (v < 0)


def matrix_mutate(b: Matrix, k: int) -> Matrix:
    """b'_ij = -b_ij if k in {i,j}, else b_ij + sgn(b_ik)[b_ik*b_kj]+."""
    n = len(b)
    _check_index(n, k)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-b[i][j])
            else:
                row.append(b[i][j] + _sgn(b[i][k]) * max(0, b[i][k] * b[k][j]))
        out.append(tuple(row))
    return tuple(out)


def ext_matrix_mutate(m: Matrix, k: int) -> Matrix:
    """Same rule on a rectangular matrix (extra coefficient rows below).

    Rows beyond the square block mutate through the square block's row k;
    with top block -B(T) the bottom row transforms exactly as
    gamma_transform does (the shear transport law).
    """
    if not m:
        raise ValueError("empty matrix")
    n = len(m[0])
    _check_index(n, k)
    out = []
    for i in range(len(m)):
        row = []
        for j in range(n):
            if i == k or j == k:
                row.append(-m[i][j])
            else:
                row.append(m[i][j] + _sgn(m[i][k]) * max(0, m[i][k] * m[k][j]))
        out.append(tuple(row))
    return tuple(out)


def gamma_transform(g: Sequence[int], b: Matrix, k: int) -> Tuple[int, ...]:
    """g'_k = -g_k; g'_i = g_i + sgn(g_k)[b_ik*g_k]+ for i != k."""
    n = len(b)
    _check_index(n, k)
    gk = g[k]
    out = []
    for i in range(n):
        if i == k:
            out.append(-gk)
        else:
            out.append(g[i] + _sgn(gk) * max(0, b[i][k] * gk))
    return tuple(out)


def gvec_mutate_with_h(g: Sequence[int], h_k: int, b: Matrix, k: int) -> Tuple[int, ...]:
    """g'_k = -g_k; g'_j = g_j + [b_jk]+ g_k - b_jk*h_k for j != k."""
    n = len(b)
    _check_index(n, k)
    out = []
    for j in range(n):
        if j == k:
            out.append(-g[j])
        else:
            out.append(g[j] + max(0, b[j][k]) * g[k] - b[j][k] * h_k)
    return tuple(out)


# ---------------------------------------------------------------------------
# Y-seeds


def yseed_mutate(y: Sequence[PosRational], b: Matrix, k: int) -> Tuple[PosRational, ...]:
    """y'_k = 1/y_k; y'_j = y_j * y_k^{[b_kj]+} * (1+y_k)^{-b_kj}."""
    n = len(b)
    _check_index(n, k)
    yk = y[k]
    one_plus = rf_add(rf_one(_yarity(yk)), yk)
    out: List[PosRational] = []
    for j in range(n):
        if j == k:
            out.append(rf_inv(yk))
        else:
            v = rf_mul(y[j], rf_pow(yk, max(0, b[k][j])))
            v = rf_mul(v, rf_pow(one_plus, -b[k][j]))
            out.append(v)
    return tuple(out)


def initial_y(n: int) -> Tuple[PosRational, ...]:
    return tuple(rf_var(n, i) for i in range(n))


def _yarity(v: PosRational) -> int:
    for e in v.num:
        return len(e)
    for e in v.den:
        return len(e)
    return 0


# ---------------------------------------------------------------------------
# seeds


@dataclass(frozen=True)
class Seed:
    b: Matrix
    x: Tuple[PosRational, ...]

    @property
    def n(self) -> int:
        return len(self.b)


def initial_seed(b: Sequence[Sequence[int]]) -> Seed:
    bm = as_matrix(b)
    if not is_skew_symmetric(bm):
        raise ValueError("exchange matrix must be skew-symmetric")
    n = len(bm)
    return Seed(bm, tuple(rf_var(n, i) for i in range(n)))


def seed_mutate(s: Seed, k: int) -> Seed:
    """Coefficient-free exchange: x'_k * x_k = prod_+ + prod_-, B mutated."""
    n = s.n
    _check_index(n, k)
    plus = rf_one(n)
    minus = rf_one(n)
    for j in range(n):
        bjk = s.b[j][k]
        if bjk > 0:
            plus = rf_mul(plus, rf_pow(s.x[j], bjk))
        elif bjk < 0:
            minus = rf_mul(minus, rf_pow(s.x[j], -bjk))
    new_xk = rf_mul(rf_add(plus, minus), rf_inv(s.x[k]))
    x = list(s.x)
    x[k] = new_xk
    return Seed(matrix_mutate(s.b, k), tuple(x))


def seed_mutate_word(s: Seed, word: Sequence[int]) -> Seed:
    for k in word:
        s = seed_mutate(s, k)
    return s


def laurent_form(v: PosRational) -> Poly:
    """Clear the unreduced denominator, returning v as a Laurent polynomial.

    Every cluster variable admits this form (Laurent phenomenon); a value
    that does not raises InexactDivisionError, which test sweeps treat as a
    mutation-engine bug.
    """
    from .poly import lp_divexact

    return lp_divexact(v.num, v.den)


# ---------------------------------------------------------------------------
# principal coefficients via substitution


def yhat_monomial(b: Matrix, j: int) -> Poly:
    """yhat_j = prod_i x_i^{b_ij} as a monomial in the x-variables."""
    n = len(b)
    return lp_monomial([b[i][j] for i in range(n)])


def substitute_yhat(f: Poly, b: Matrix) -> PosRational:
    """Evaluate an F-polynomial in y at y_j = yhat_j(x)."""
    n = len(b)
    args = [rf_from_poly(yhat_monomial(b, j)) for j in range(n)]
    return lp_substitute(f, args) if f else rf_from_poly(lp_one(n))


# ---------------------------------------------------------------------------
# quiver dictionary (debugging aid only; nothing computes through it)


def quiver_arrows(b: Matrix) -> Tuple[Tuple[int, int], ...]:
    """Arrow list (j, i) repeated b_ij times whenever b_ij > 0 (0-based)."""
    n = len(b)
    arrows: List[Tuple[int, int]] = []
    for i in range(n):
        for j in range(n):
            if b[i][j] > 0:
                arrows.extend([(j, i)] * b[i][j])
    return tuple(sorted(arrows))


def matrix_from_arrows(n: int, arrows: Sequence[Tuple[int, int]]) -> Matrix:
    """Inverse of quiver_arrows: b_ij = #{j -> i} - #{i -> j}."""
    b = [[0] * n for _ in range(n)]
    for src, dst in arrows:
        b[dst][src] += 1
        b[src][dst] -= 1
    return as_matrix(b)
