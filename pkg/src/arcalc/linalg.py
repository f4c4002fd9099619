"""Exact dense linear algebra over a prime field GF(p).

Matrices are plain ``numpy`` int64 arrays whose entries are canonical
residues in ``[0, p)``.  Every routine here is deterministic: pivots are
chosen as the leftmost nonzero entry, and bases of kernels or solution
spaces are the ones read off from the reduced row echelon form.

Maps act on column vectors throughout the package, so a matrix of shape
``(m, n)`` represents a linear map from ``GF(p)^n`` to ``GF(p)^m``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import isprime

DEFAULT_P = 32003

# p**2 * (inner dimension) must stay below 2**63 in int64 matmul
_MAX_P = 1 << 20


class FieldError(ValueError):
    """Raised for an invalid characteristic or mismatched shapes."""


@lru_cache(maxsize=None)
def _check_prime(p: int) -> None:
    if not isinstance(p, int) or p < 2 or not isprime(p):
        raise FieldError(f"characteristic must be a prime, got {p!r}")
    if p >= _MAX_P:
        raise FieldError(f"characteristic {p} exceeds supported bound {_MAX_P}")


@dataclass(frozen=True)
class PrimeField:
    """The field GF(p) together with the matrix primitives used everywhere."""

    p: int = DEFAULT_P

    def __post_init__(self):
        _check_prime(self.p)

    # -- construction -----------------------------------------------------

    def array(self, data, shape=None) -> np.ndarray:
        a = np.asarray(data, dtype=np.int64)
        if shape is not None:
            a = a.reshape(shape)
        return a % self.p

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def eye(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def random(self, rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    # -- arithmetic -------------------------------------------------------

    def mul(self, *mats: np.ndarray) -> np.ndarray:
        out = mats[0]
        for m in mats[1:]:
            out = (out @ m) % self.p
        return out

    def inv_scalar(self, a: int) -> int:
        a %= self.p
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(int(a), self.p - 2, self.p)

    def power(self, M: np.ndarray, k: int) -> np.ndarray:
        result = self.eye(M.shape[0])
        base = M % self.p
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    # -- elimination ------------------------------------------------------

    def rref(self, M: np.ndarray, pivot_cols: int | None = None):
        """Reduced row echelon form.

        Returns ``(R, pivots, rank)``.  With ``pivot_cols`` set, pivots are
        only searched among the first ``pivot_cols`` columns (used for
        augmented systems).
        """
        p = self.p
        A = np.array(M, dtype=np.int64) % p
        rows, cols = A.shape
        limit = cols if pivot_cols is None else pivot_cols
        pivots: list[int] = []
        r = 0
        for c in range(limit):
            if r == rows:
                break
            nz = np.flatnonzero(A[r:, c])
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                A[[r, i]] = A[[i, r]]
            inv = pow(int(A[r, c]), p - 2, p)
            if inv != 1:
                A[r, c:] = (A[r, c:] * inv) % p
            col = A[:, c].copy()
            col[r] = 0
            others = np.flatnonzero(col)
            if others.size:
                A[others, c:] = (A[others, c:] - np.outer(col[others], A[r, c:])) % p
            pivots.append(c)
            r += 1
        return A, pivots, len(pivots)

    def rank(self, M: np.ndarray) -> int:
        if M.size == 0:
            return 0
        return self.rref(M)[2]

    def kernel(self, M: np.ndarray) -> np.ndarray:
        """Columns form a basis of ``{x : M x = 0}``.

        One basis vector per free column, with that free variable set to 1
        and the other free variables set to 0.
        """
        rows, cols = M.shape
        if rows == 0:
            return self.eye(cols)
        R, pivots, rank = self.rref(M)
        free = [j for j in range(cols) if j not in set(pivots)]
        K = np.zeros((cols, len(free)), dtype=np.int64)
        for k, j in enumerate(free):
            K[j, k] = 1
            for i, pc in enumerate(pivots):
                K[pc, k] = (-R[i, j]) % self.p
        return K

    def left_kernel(self, M: np.ndarray) -> np.ndarray:
        """Rows form a basis of ``{y : y M = 0}``."""
        return self.kernel(M.T).T

    def solve(self, A: np.ndarray, B: np.ndarray) -> np.ndarray | None:
        """Solve ``A X = B``; ``None`` if inconsistent.

        Free variables are set to zero, so the returned solution is unique
        for given inputs.  The result is checked by multiplication before it
        is returned.
        """
        A = np.asarray(A, dtype=np.int64)
        B = np.asarray(B, dtype=np.int64)
        vector = B.ndim == 1
        if vector:
            B = B[:, None]
        if A.shape[0] != B.shape[0]:
            raise FieldError(f"row mismatch: A is {A.shape}, B is {B.shape}")
        n = A.shape[1]
        if A.shape[0] == 0:
            X = np.zeros((n, B.shape[1]), dtype=np.int64)
            return X[:, 0] if vector else X
        R, pivots, rank = self.rref(np.hstack([A, B]), pivot_cols=n)
        if np.any(R[rank:, n:]):
            return None
        X = np.zeros((n, B.shape[1]), dtype=np.int64)
        for i, pc in enumerate(pivots):
            X[pc] = R[i, n:]
        if np.any((A @ X - B) % self.p):
            raise AssertionError("solve_linear produced an unverified solution")
        return X[:, 0] if vector else X

    def inv(self, M: np.ndarray) -> np.ndarray:
        n = M.shape[0]
        if M.shape != (n, n):
            raise FieldError(f"not square: {M.shape}")
        X = self.solve(M, self.eye(n))
        if X is None or self.rank(M) != n:
            raise FieldError("matrix is singular")
        return X

    def is_invertible(self, M: np.ndarray) -> bool:
        return M.shape[0] == M.shape[1] and self.rank(M) == M.shape[0]

    # -- subspaces --------------------------------------------------------

    def column_basis(self, M: np.ndarray) -> np.ndarray:
        """Independent columns of ``M`` spanning its column space (leftmost choice)."""
        if M.shape[1] == 0:
            return M.copy()
        pivots = self.rref(M)[1]
        return M[:, pivots] % self.p

    def colspace_rref(self, M: np.ndarray) -> np.ndarray:
        """Canonical basis of the column space: transpose of the nonzero rref rows."""
        R, _, rank = self.rref(M.T)
        return R[:rank].T.copy()

    def extend_basis(self, S: np.ndarray, V: np.ndarray) -> np.ndarray:
        """Columns of ``V`` independent modulo span(S), chosen left to right."""
        k = S.shape[1]
        if V.shape[1] == 0:
            return V.copy()
        pivots = self.rref(np.hstack([S, V]))[1]
        picked = [j - k for j in pivots if j >= k]
        return V[:, picked]

    def intersect(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """Basis of span(X) ∩ span(Y) (columns of X assumed independent)."""
        if X.shape[1] == 0 or Y.shape[1] == 0:
            return np.zeros((X.shape[0], 0), dtype=np.int64)
        N = self.kernel(np.hstack([X, (-Y) % self.p]))
        return self.column_basis(self.mul(X, N[: X.shape[1]]))

    def in_span(self, S: np.ndarray, v: np.ndarray) -> bool:
        return self.solve(S, v) is not None

    # -- polynomials ------------------------------------------------------

    def charpoly(self, M: np.ndarray) -> list[int]:
        """Characteristic polynomial, coefficients from highest degree down."""
        p = self.p
        H = self._hessenberg(M)
        n = H.shape[0]
        # polys stored low -> high
        polys = [[1]]
        for k in range(1, n + 1):
            prev = polys[k - 1]
            cur = [0] + prev[:]  # x * p_{k-1}
            hkk = int(H[k - 1, k - 1])
            for i, c in enumerate(prev):
                cur[i] = (cur[i] - hkk * c) % p
            prod = 1
            for i in range(k - 1, 0, -1):
                prod = (prod * int(H[i, i - 1])) % p
                if prod == 0:
                    break
                coef = (prod * int(H[i - 1, k - 1])) % p
                if coef:
                    for j, c in enumerate(polys[i - 1]):
                        cur[j] = (cur[j] - coef * c) % p
            polys.append(cur)
        return list(reversed(polys[n]))

    def _hessenberg(self, M: np.ndarray) -> np.ndarray:
        p = self.p
        H = np.array(M, dtype=np.int64) % p
        n = H.shape[0]
        for j in range(n - 2):
            nz = np.flatnonzero(H[j + 1 :, j])
            if nz.size == 0:
                continue
            i = j + 1 + int(nz[0])
            if i != j + 1:
                H[[i, j + 1]] = H[[j + 1, i]]
                H[:, [i, j + 1]] = H[:, [j + 1, i]]
            inv = pow(int(H[j + 1, j]), p - 2, p)
            for r in range(j + 2, n):
                f = (int(H[r, j]) * inv) % p
                if f:
                    H[r] = (H[r] - f * H[j + 1]) % p
                    H[:, j + 1] = (H[:, j + 1] + f * H[:, r]) % p
        return H

    def polyval_matrix(self, coeffs: list[int], M: np.ndarray) -> np.ndarray:
        """Evaluate a polynomial (highest degree first) at a square matrix."""
        n = M.shape[0]
        out = np.zeros((n, n), dtype=np.int64)
        for c in coeffs:
            out = self.mul(out, M)
            if c:
                out = (out + int(c) * self.eye(n)) % self.p
        return out

    def is_nilpotent(self, M: np.ndarray) -> bool:
        n = M.shape[0]
        if n == 0:
            return True
        return not np.any(self.power(M, n))
