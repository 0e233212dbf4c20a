"""Sparse factor decompositions of the cosine block and the scaled gamma matrix.

The cosine block conjugated into the Hadamard basis factors into a reverse
ordered product of plane rotations and diagonal trig factors,

    J(r-1) C_r(alpha; Theta) J(r-1)
        = 2^(r-1) * prod_{j=r..1} [ ( prod_{k>j} P_kj(theta_kj) ) D_j(alpha_j) ],

where the j = r block is applied leftmost and D_1(alpha_1) is the rightmost
factor overall.  The diagonal factors follow the recursion

    D_1^(2) = diag(c, s)            D_2^(2) = diag(c, -s)
    D_1^(r) = diag(c 1, s 1)        (identity blocks of size 2^(r-2))
    D_2^(r) = blockdiag(D_1^(r-1)(a), D_1^(r-1)(a + 1))
    D_j^(r) = kron(D_{j-1}^(r-1), I_2)    for j >= 3,

with c = cos(pi a / 2), s = sin(pi a / 2) and kron growing blocks on the
right (see sign_algebra.kron).  The rotation generators are the Kronecker
words

    X_kj = kron chain of [I_2] * (r - k) + [A_2] * (k - j - 1) + [R_2] + [I_2] * (j - 1)

folded left to right, with R_2 = [[0, -1], [1, 0]] and A_2 = [[0, 1], [1, 0]];
each X_kj is real, skew, and squares to -I, and

    P_kj(theta) = cos(pi theta / 2) I + sin(pi theta / 2) X_kj,

so the rotation angle enters in the same half-angle normalization as every
other parameter.  Two deliberately wrong variants are kept alongside the
adopted one because the verification suites use them as negative controls:
"exp" drops the pi/2 (a literal matrix exponential exp(theta X)), and
"literal_word" builds the word with counts (r-k-j+1, k-2) where that is
defined.

Doubling everything gives the factorization of the full scaled matrix:

    script_A(r, alpha, Theta)
        = 2^r blockdiag(I, iI) prod_{j=r..1} [ (prod_{k>j} P~_kj) D~_j ],

with P~ = blockdiag(P, P), D~_j = g_j blockdiag(D_j, D_j) for j >= 2, and
D~_1 = g_1 blockdiag(D_1(a_1), D_1(a_1 - 1)), where g_j = Gamma(alpha_j)
(2 pi)^(-alpha_j) is carried in log space.  The identity
J(r) gamma_matrix_tilde J(r) = script_A is what verify_thm32 checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .sign_algebra import digit_order, digit_weights, kron
from .special_functions import LOG_TWO_PI, log_gamma

_R2 = np.array([[0.0, -1.0], [1.0, 0.0]])
_A2 = np.array([[0.0, 1.0], [1.0, 0.0]])

ROTATION_CONVENTIONS = ("adopted", "exp")
WORD_CONVENTIONS = ("adopted", "literal")


@dataclass
class Factor:
    """One labeled factor: exp(log_scale) * matrix."""

    label: str
    matrix: np.ndarray
    params: dict = field(default_factory=dict)
    log_scale: complex = 0.0 + 0.0j

    @property
    def size(self) -> int:
        return self.matrix.shape[0]


@dataclass
class FactorProduct:
    """An ordered matrix product with per-factor log-space scalars.

    factors[0] is applied last (leftmost in the written product); the flat
    field caches the assembled dense matrix.
    """

    size: int
    factors: list
    flat: Optional[np.ndarray] = None

    def __post_init__(self):
        if self.flat is None:
            self.flat = self.assemble()

    def assemble(self) -> np.ndarray:
        out = np.eye(self.size, dtype=complex)
        log_scale = 0.0 + 0.0j
        for f in self.factors:
            out = out @ f.matrix
            log_scale += f.log_scale
        return np.exp(log_scale) * out

    def assembly_residual(self) -> float:
        fresh = self.assemble()
        scale = max(np.max(np.abs(fresh)), np.max(np.abs(self.flat)))
        return float(np.max(np.abs(fresh - self.flat)) / (1.0 + scale))

    def to_json(self) -> list:
        """Factor list as [{label, size, entries}, ...]; entries are [re, im] pairs."""
        out = []
        for f in self.factors:
            mat = np.exp(f.log_scale) * f.matrix
            out.append(
                {
                    "label": f.label,
                    "size": f.size,
                    "params": {k: _jsonable(v) for k, v in f.params.items()},
                    "entries": [[[float(z.real), float(z.imag)] for z in row] for row in np.asarray(mat, dtype=complex)],
                }
            )
        return out


def _jsonable(v):
    if isinstance(v, complex):
        return [v.real, v.imag]
    if isinstance(v, (np.floating, np.integer)):
        return float(v)
    return v


def diag_D(r: int, j: int, alpha_j) -> np.ndarray:
    """Diagonal trig factor D_j^(r)(alpha_j), size 2^(r-1)."""
    if not 1 <= j <= r or r < 2:
        raise ValueError(f"need r >= 2 and 1 <= j <= r, got r={r}, j={j}")
    a = complex(alpha_j)
    c = np.cos(np.pi / 2 * a)
    s = np.sin(np.pi / 2 * a)
    if r == 2:
        return np.diag([c, s]) if j == 1 else np.diag([c, -s])
    if j == 1:
        half = 2 ** (r - 2)
        return np.diag(np.concatenate([np.full(half, c), np.full(half, s)]))
    if j == 2:
        top = diag_D(r - 1, 1, a)
        bot = diag_D(r - 1, 1, a + 1.0)
        out = np.zeros((2 ** (r - 1), 2 ** (r - 1)), dtype=complex)
        half = 2 ** (r - 2)
        out[:half, :half] = top
        out[half:, half:] = bot
        return out
    return kron(diag_D(r - 1, j - 1, a), np.eye(2))


def generator_X(r: int, k: int, j: int, convention: str = "adopted") -> np.ndarray:
    """Rotation generator X_kj, a real skew matrix with X^2 = -I, size 2^(r-1).

    The adopted Kronecker word is
    [I_2]*(r-k) + [A_2]*(k-j-1) + [R_2] + [I_2]*(j-1), folded left to right
    with the right-outer kron.  convention="literal" substitutes the counts
    (r-k-j+1, k-2); it only exists when r-k-j+1 >= 0 and differs from the
    adopted word exactly when j >= 2.  It is wrong (it breaks the cosine
    factorization) and is exposed only as a negative control.
    """
    if not (1 <= j < k <= r):
        raise ValueError(f"need 1 <= j < k <= r, got r={r}, k={k}, j={j}")
    if convention == "adopted":
        counts = (r - k, k - j - 1)
    elif convention == "literal":
        counts = (r - k - j + 1, k - 2)
        if counts[0] < 0:
            raise ValueError(f"literal word undefined for r={r}, k={k}, j={j}")
    else:
        raise ValueError(f"unknown word convention {convention!r}")
    word = [np.eye(2)] * counts[0] + [_A2] * counts[1] + [_R2] + [np.eye(2)] * (j - 1)
    X = word[0]
    for w in word[1:]:
        X = kron(X, w)
    return X


def rotation_P(r: int, k: int, j: int, theta, convention: str = "adopted", word: str = "adopted") -> np.ndarray:
    """Plane rotation P_kj(theta) = cos(pi theta/2) I + sin(pi theta/2) X_kj.

    convention="exp" is the negative control exp(theta X_kj) without the
    half-angle normalization.
    """
    X = generator_X(r, k, j, convention=word)
    n = X.shape[0]
    th = float(theta)
    if convention == "adopted":
        ang = math.pi / 2 * th
    elif convention == "exp":
        ang = th
    else:
        raise ValueError(f"unknown rotation convention {convention!r}")
    return math.cos(ang) * np.eye(n) + math.sin(ang) * X


def _theta_lookup(theta, k: int, j: int) -> float:
    if theta is None:
        return 0.0
    if isinstance(theta, dict):
        return float(theta.get((k, j), 0.0))
    return float(np.asarray(theta)[k - 1][j - 1])


def _literal_word_kind(r: int, k: int, j: int) -> str:
    # negative-control policy: literal counts where defined, adopted elsewhere
    return "literal" if r - k - j + 1 >= 0 else "adopted"


def decomposition_rhs(r: int, alpha, theta=None, rotation: str = "adopted", word: str = "adopted") -> FactorProduct:
    """Factorized right-hand side of the cosine-block identity.

    Returns a FactorProduct of 2^(r-1) x 2^(r-1) factors: a leading scalar
    factor 2^(r-1), then for j = r down to 1 the rotations P_kj (k descending)
    followed by D_j(alpha_j); the rightmost factor is D_1(alpha_1).

    rotation/word select the negative-control variants described in the
    module docstring ("exp" rotations, "literal" generator words).
    """
    if r < 2:
        raise ValueError("decomposition requires r >= 2")
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (r,):
        raise ValueError(f"alpha must have length {r}")
    n = 2 ** (r - 1)
    factors = [
        Factor(
            label="scalar",
            matrix=np.eye(n, dtype=complex),
            params={"value": f"2^{r - 1}"},
            log_scale=(r - 1) * math.log(2.0),
        )
    ]
    for j in range(r, 0, -1):
        for k in range(r, j, -1):
            th = _theta_lookup(theta, k, j)
            wkind = word if word == "adopted" else _literal_word_kind(r, k, j)
            factors.append(
                Factor(
                    label=f"P_{k}{j}",
                    matrix=rotation_P(r, k, j, th, convention=rotation, word=wkind).astype(complex),
                    params={"k": k, "j": j, "theta": th},
                )
            )
        factors.append(
            Factor(
                label=f"D_{j}",
                matrix=diag_D(r, j, alpha[j - 1]),
                params={"j": j, "alpha": complex(alpha[j - 1])},
            )
        )
    return FactorProduct(size=n, factors=factors)


def script_A(r: int, alpha, theta=None) -> FactorProduct:
    """Factorized scaled gamma matrix: 2^r blockdiag(I, iI) prod (P~ D~).

    Factor list: "blockPhase" (carrying the 2^r scalar in log space), then
    for j = r down to 1 the doubled rotations P~_kj and the doubled diagonal
    D~_j, each D~_j carrying log Gamma(alpha_j) - alpha_j log(2 pi) as its
    log-space scalar.  D~_1 pairs D_1(alpha_1) with D_1(alpha_1 - 1).
    Assembled, this equals J(r) gamma_matrix_tilde(r, alpha, Theta) J(r).
    """
    if r < 2:
        raise ValueError("script_A requires r >= 2")
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (r,):
        raise ValueError(f"alpha must have length {r}")
    n = 2**r
    half = n // 2
    phase = np.eye(n, dtype=complex)
    phase[half:, half:] *= 1j
    factors = [
        Factor(
            label="blockPhase",
            matrix=phase,
            params={"value": "2^r diag(1, i)"},
            log_scale=r * math.log(2.0),
        )
    ]
    for j in range(r, 0, -1):
        for k in range(r, j, -1):
            th = _theta_lookup(theta, k, j)
            P = rotation_P(r, k, j, th).astype(complex)
            tilde = np.zeros((n, n), dtype=complex)
            tilde[:half, :half] = P
            tilde[half:, half:] = P
            factors.append(Factor(label=f"P_{k}{j}", matrix=tilde, params={"k": k, "j": j, "theta": th}))
        aj = complex(alpha[j - 1])
        top = diag_D(r, j, aj)
        bot = diag_D(r, 1, aj - 1.0) if j == 1 else top
        tilde = np.zeros((n, n), dtype=complex)
        tilde[:half, :half] = top
        tilde[half:, half:] = bot
        factors.append(
            Factor(
                label=f"D_{j}",
                matrix=tilde,
                params={"j": j, "alpha": aj},
                log_scale=log_gamma(aj) - aj * LOG_TWO_PI,
            )
        )
    return FactorProduct(size=n, factors=factors)


def lambda_diag(r: int, alpha) -> np.ndarray:
    """Completion normalizer: diag over digit order of pi^(|alpha|/2) / prod_j Gamma((alpha_j + a_j)/2).

    Reciprocal gamma values are assembled in log space.  Raises PoleError if
    any (alpha_j + a_j)/2 sits on a gamma pole (the entry would be an exact
    zero, which the completion identity treats as degenerate).
    """
    alpha = np.asarray(alpha, dtype=complex)
    if alpha.shape != (r,):
        raise ValueError(f"alpha must have length {r}")
    total = complex(np.sum(alpha))
    entries = []
    for a in digit_order(r):
        lg = 0.0 + 0.0j
        for aj, dj in zip(alpha, a):
            lg += log_gamma((aj + dj) / 2.0)
        entries.append(np.exp(total / 2.0 * math.log(math.pi) - lg))
    return np.diag(np.array(entries, dtype=complex))


def epsilon_factor(r: int, m: int) -> np.ndarray:
    """Sign-phase diagonal (-1)^m diag(i^|a|) over digit order."""
    if m not in (0, 1):
        raise ValueError("m must be 0 or 1")
    w = digit_weights(r)
    return np.diag((-1.0) ** m * 1j**w)
