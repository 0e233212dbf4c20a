"""Sign vectors, the recursive Hadamard basis, and digit bookkeeping.

All 2^r x 2^r objects in this package are indexed by a single fixed ordering
I_r of the sign vectors epsilon in {+-1}^r, built recursively: if I_{r-1} has
i-th element eps, then I_r places (1, *eps) at position i and (-1, *-eps) at
position 2^(r-1) + i.  The first half of I_r is exactly the vectors with
eps_1 = +1; that half indexes the cosine and sine blocks.

The normalized Hadamard matrix follows the same recursion,

    J(1) = [[1, 1], [1, -1]] / sqrt(2),      J(r) = kron(J(r-1), J(1)),

where kron(A, B) here means the Kronecker product in which the RIGHT operand
carries the outer 2x2 block structure (numpy's np.kron(B, A)).  That choice is
what makes the recursion consistent with the sign ordering above, and it is
load-bearing: every factorization in structured_factors is stated in this
convention.

Columns of J(r) are, up to the 2^(-r/2) normalization, the character vectors
k_a = (eps^a)_eps for binary digit vectors a in {0,1}^r.  Which digit vector
sits over which column is not assumed; digit_order(r) computes it by matching
columns, and all diagonal completion weights are laid out in that computed
order.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np


@lru_cache(maxsize=None)
def sign_order(r: int) -> tuple:
    """The ordering I_r of {+-1}^r as a tuple of tuples."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    if r == 1:
        return ((1,), (-1,))
    prev = sign_order(r - 1)
    first = tuple((1,) + e for e in prev)
    second = tuple((-1,) + tuple(-x for x in e) for e in prev)
    return first + second


def sign_order_array(r: int) -> np.ndarray:
    """I_r as a (2^r, r) integer array (rows are sign vectors)."""
    return np.array(sign_order(r), dtype=np.int64)


def kron(A, B) -> np.ndarray:
    """Kronecker product with the right operand as the outer block factor.

    kron(A, B)[ (i2,i1), (j2,j1) ] = A[i1,j1] * B[i2,j2]; equivalently
    np.kron(B, A).  Chains of kron() therefore grow block structure on the
    right, matching the sign-ordering recursion.
    """
    return np.kron(np.asarray(B), np.asarray(A))


@lru_cache(maxsize=None)
def _hadamard_cached(r: int):
    j1 = np.array([[1.0, 1.0], [1.0, -1.0]]) / np.sqrt(2.0)
    if r == 1:
        out = j1
    else:
        out = kron(_hadamard_cached(r - 1), j1)
    out.setflags(write=False)
    return out


def hadamard(r: int) -> np.ndarray:
    """Normalized Hadamard matrix J(r); symmetric and involutive."""
    if r < 1:
        raise ValueError("rank must be >= 1")
    return _hadamard_cached(r)


def k_vector(r: int, a) -> np.ndarray:
    """Character vector k_a = (prod_j eps_j^(a_j))_eps over I_r.

    Only the parity of each a_j matters.
    """
    a = np.asarray(a, dtype=np.int64) % 2
    if a.shape != (r,):
        raise ValueError(f"digit vector must have length {r}")
    eps = sign_order_array(r)
    # eps_j^(a_j) = 1 where a_j = 0, else eps_j
    cols = np.where(a[None, :] == 0, 1, eps)
    return np.prod(cols, axis=1).astype(np.float64)


@lru_cache(maxsize=None)
def digit_order(r: int) -> tuple:
    """Digit vectors a in the order their k_a appear as columns of J(r).

    Computed by exact column matching: column c of J(r) equals
    2^(-r/2) * k_(a(c)).  The result is the index convention for every
    diagonal matrix over digit vectors (completion weights, phase factors).
    """
    J = hadamard(r)
    scale = 2.0 ** (r / 2.0)
    col_index = {}
    for c in range(2**r):
        key = tuple(int(v) for v in np.round(J[:, c] * scale))
        col_index[key] = c
    order = [None] * 2**r
    for bits in range(2**r):
        a = tuple((bits >> (r - 1 - i)) & 1 for i in range(r))
        key = tuple(int(v) for v in np.round(k_vector(r, a)))
        order[col_index[key]] = a
    return tuple(order)


def digit_weights(r: int) -> np.ndarray:
    """|a| = sum of digits, per digit_order position."""
    return np.array([sum(a) for a in digit_order(r)], dtype=np.int64)


def permutation_W(r: int, sigma) -> np.ndarray:
    """Permutation matrix W of the digit map a -> a.sigma (mod 2).

    sigma is an r x r integer matrix acting on row vectors.  In digit-order
    indexing, W[pos(a.sigma mod 2), pos(a)] = 1.  The defining property,
    checked in the tests, is that the sigma-permuted character columns
    satisfy 2^(-r/2) * (k_(a sigma))_a = J(r) @ W.
    """
    sigma = np.asarray(sigma, dtype=np.int64)
    if sigma.shape != (r, r):
        raise ValueError(f"sigma must be {r} x {r}")
    order = digit_order(r)
    pos = {a: i for i, a in enumerate(order)}
    W = np.zeros((2**r, 2**r))
    for i, a in enumerate(order):
        image = tuple(int(v) for v in (np.asarray(a, dtype=np.int64) @ sigma) % 2)
        W[pos[image], i] = 1.0
    return W
