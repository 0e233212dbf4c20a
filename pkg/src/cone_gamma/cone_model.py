"""Combinatorial model of a homogeneous cone and the built-in catalog.

A cone of rank r is described by its structure constants n_kj >= 0 for
1 <= j < k <= r together with a pair of unimodular non-negative integer
matrices (sigma, sigma_star).  Everything acts on ROW vectors: s.sigma,
d.sigma^{-1}, a.sigma mod 2.  Derived data:

    p_k = sum_{j<k} n_kj          q_j = sum_{k>j} n_kj
    d   = 1 + (p + q) / 2         (componentwise, exact rationals)
    dim = r + sum n_kj

The shift map is tau(s) = (d - s.sigma).sigma_star^{-1} and its dual
tau_star uses the two matrices with roles swapped, so tau_star(tau(s)) = s
for any unimodular pair.  The measure exponents m = d.sigma^{-1} and
m_star = d.sigma_star^{-1} are computed with an exact inverse (unimodular
integer matrices have integer inverses).

Catalog entries additionally carry a coordinate chart: an explicit ambient
realization with principal minors Delta_j, an inner-product weight vector,
the triangular-group action, and the parametrization of the open orbits
used by the quadrature layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .sign_algebra import sign_order_array


def _as_int_matrix(M, r: int, name: str) -> np.ndarray:
    A = np.asarray(M)
    if A.shape != (r, r):
        raise ValueError(f"{name} must be {r} x {r}")
    Ai = np.round(np.asarray(A, dtype=np.float64)).astype(np.int64)
    if np.max(np.abs(np.asarray(A, dtype=np.float64) - Ai)) > 0:
        raise ValueError(f"{name} must have integer entries")
    if np.any(Ai < 0):
        raise ValueError(f"{name} must be non-negative")
    det = _exact_det(Ai)
    if abs(det) != 1:
        raise ValueError(f"{name} must be unimodular (det = +-1, got {det})")
    return Ai


def _exact_det(M: np.ndarray) -> int:
    # Bareiss elimination, exact over the integers.
    A = [[int(x) for x in row] for row in M]
    n = len(A)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[-1][-1]


def exact_int_inverse(M: np.ndarray) -> np.ndarray:
    """Exact inverse of a unimodular integer matrix (itself integer)."""
    r = M.shape[0]
    aug = [[Fraction(int(M[i][j])) for j in range(r)] + [Fraction(int(i == j)) for j in range(r)] for i in range(r)]
    for col in range(r):
        piv = next((row for row in range(col, r) if aug[row][col] != 0), None)
        if piv is None:
            raise ValueError("matrix is singular")
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for row in range(r):
            if row != col and aug[row][col] != 0:
                f = aug[row][col]
                aug[row] = [a - f * b for a, b in zip(aug[row], aug[col])]
    inv = [[aug[i][r + j] for j in range(r)] for i in range(r)]
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return np.array([[int(x) for x in row] for row in inv], dtype=np.int64)


@dataclass(frozen=True)
class ConeStructure:
    rank: int
    n: dict  # (k, j) -> n_kj for 1 <= j < k <= rank, zero entries may be omitted
    sigma: np.ndarray
    sigma_star: np.ndarray
    name: Optional[str] = None

    def n_value(self, k: int, j: int) -> int:
        return int(self.n.get((k, j), 0))

    @property
    def dim(self) -> int:
        return self.rank + sum(self.n.values())

    def __repr__(self):
        label = self.name or f"rank-{self.rank} cone"
        return f"ConeStructure({label}, dim={self.dim})"


def new_cone(rank: int, n, sigma, sigma_star, name: Optional[str] = None) -> ConeStructure:
    """Validate and build a ConeStructure.

    n maps (k, j) with 1 <= j < k <= rank to non-negative integers; sigma and
    sigma_star must be non-negative integer unimodular matrices.
    """
    if rank < 1:
        raise ValueError("rank must be >= 1")
    clean = {}
    for (k, j), v in dict(n).items():
        if not (1 <= j < k <= rank):
            raise ValueError(f"structure constant index ({k},{j}) out of range")
        iv = int(v)
        if iv != v or iv < 0:
            raise ValueError(f"n_{k}{j} must be a non-negative integer")
        if iv:
            clean[(k, j)] = iv
    s = _as_int_matrix(sigma, rank, "sigma")
    ss = _as_int_matrix(sigma_star, rank, "sigma_star")
    s.setflags(write=False)
    ss.setflags(write=False)
    return ConeStructure(rank=rank, n=clean, sigma=s, sigma_star=ss, name=name)


def derived_vectors(cone: ConeStructure):
    """(p, q, d) with p, q integer tuples and d a tuple of Fractions."""
    r = cone.rank
    p = [0] * r
    q = [0] * r
    for (k, j), v in cone.n.items():
        p[k - 1] += v
        q[j - 1] += v
    d = tuple(Fraction(1) + Fraction(p[i] + q[i], 2) for i in range(r))
    return tuple(p), tuple(q), d


def measure_exponents(cone: ConeStructure):
    """(m, m_star): exact rational exponent vectors d.sigma^{-1}, d.sigma_star^{-1}.

    The invariant measure on the chart is prod_j |Delta_j(x)|^(-m_j) dx and
    the local zeta integrals converge componentwise for Re s > m.
    """
    _, _, d = derived_vectors(cone)
    inv = exact_int_inverse(np.asarray(cone.sigma))
    inv_star = exact_int_inverse(np.asarray(cone.sigma_star))
    r = cone.rank
    m = tuple(sum(d[j] * int(inv[j][k]) for j in range(r)) for k in range(r))
    m_star = tuple(sum(d[j] * int(inv_star[j][k]) for j in range(r)) for k in range(r))
    return m, m_star


def tau(cone: ConeStructure, s) -> np.ndarray:
    """Shift map tau(s) = (d - s.sigma).sigma_star^{-1} on row vectors."""
    s = np.asarray(s, dtype=complex)
    _, _, d = derived_vectors(cone)
    dv = np.array([float(x) for x in d])
    inv_star = exact_int_inverse(np.asarray(cone.sigma_star)).astype(np.float64)
    return (dv - s @ np.asarray(cone.sigma, dtype=np.float64)) @ inv_star


def tau_star(cone: ConeStructure, s) -> np.ndarray:
    """Dual shift map, sigma and sigma_star swapped; tau_star(tau(s)) = s."""
    s = np.asarray(s, dtype=complex)
    _, _, d = derived_vectors(cone)
    dv = np.array([float(x) for x in d])
    inv = exact_int_inverse(np.asarray(cone.sigma)).astype(np.float64)
    return (dv - s @ np.asarray(cone.sigma_star, dtype=np.float64)) @ inv


def _condition_by_parity(cone: ConeStructure):
    # Even n_kj with p and q divisible by 4 is equivalent to the exhaustive check.
    p, q, _ = derived_vectors(cone)
    if any(v % 2 for v in cone.n.values()):
        return None
    if any(x % 4 for x in p) or any(x % 4 for x in q):
        return None
    total = sum(cone.n.values())
    return (total % 8) // 4


def check_condition_41(cone: ConeStructure) -> Optional[int]:
    """Diagonalizability parity m, or None.

    Returns m in {0, 1} when sum_{j<k} eps_j delta_k n_kj is congruent to
    4m mod 8 for every pair of sign vectors, else None.  Checked by exhaustive
    vectorized enumeration for rank <= 12 and cross-checked against the
    divisibility criterion (even n_kj, p and q divisible by 4).
    """
    r = cone.rank
    parity = _condition_by_parity(cone)
    if r > 12:
        return parity
    N = np.zeros((r, r), dtype=np.int64)
    for (k, j), v in cone.n.items():
        N[j - 1, k - 1] = v
    E = sign_order_array(r)
    T = (E @ N @ E.T) % 8
    vals = np.unique(T)
    if len(vals) == 1 and vals[0] in (0, 4):
        m = int(vals[0]) // 4
    else:
        m = None
    if m != parity:
        raise AssertionError("condition check disagrees with the divisibility criterion")
    return m


# ---------------------------------------------------------------------------
# serialization

def to_descriptor(cone: ConeStructure) -> dict:
    """JSON-ready descriptor: {"rank", "n": [[k, j, n_kj], ...], "sigma", "sigma_star", "name"}."""
    return {
        "rank": cone.rank,
        "n": [[k, j, v] for (k, j), v in sorted(cone.n.items())],
        "sigma": [[int(x) for x in row] for row in np.asarray(cone.sigma)],
        "sigma_star": [[int(x) for x in row] for row in np.asarray(cone.sigma_star)],
        "name": cone.name,
    }


def from_descriptor(obj) -> ConeStructure:
    """Inverse of to_descriptor; accepts a dict or a JSON string."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    n = {(int(k), int(j)): int(v) for k, j, v in obj.get("n", [])}
    return new_cone(int(obj["rank"]), n, obj["sigma"], obj["sigma_star"], name=obj.get("name"))


# ---------------------------------------------------------------------------
# coordinate charts for the catalog cones

@dataclass(frozen=True)
class CoordinateChart:
    """Ambient realization of a catalog cone.

    kind selects the geometry ("orthant", "sym2", "vinberg3"); dim is the
    ambient dimension; weights gives the diagonal inner product
    <x, y> = sum_i weights_i x_i y_i under which the Fourier transform and
    the Hermite test functions are defined.  jac_constant and jac_t_powers
    describe the Jacobian of the orbit parametrization: |Jac| =
    jac_constant * prod_k t_k^(jac_t_powers_k).  bump_center/bump_scale give
    a box well inside the positive orbit used by the invariance checks.
    """

    kind: str
    dim: int
    weights: Optional[tuple]
    jac_constant: float
    jac_t_powers: tuple
    bump_center: tuple
    bump_scale: float

    def delta(self, x: np.ndarray) -> tuple:
        """Principal minors (Delta_1, ..., Delta_r) evaluated on points x[..., dim]."""
        x = np.asarray(x)
        if self.kind == "orthant":
            return tuple(x[..., j] for j in range(self.dim))
        if self.kind == "sym2":
            return (x[..., 0], x[..., 0] * x[..., 2] - x[..., 1] ** 2)
        if self.kind == "vinberg3":
            return (
                x[..., 0],
                x[..., 0] * x[..., 2] - x[..., 1] ** 2,
                x[..., 0] * x[..., 4] - x[..., 3] ** 2,
            )
        raise ValueError(f"unknown chart kind {self.kind!r}")

    def group_matrix(self, params) -> np.ndarray:
        """Ambient matrix of the triangular-group element with the given parameters.

        Parameters are (t_1, ..) positive diagonal entries interleaved with the
        strictly-lower entries, chart dependent:
        orthant: (lam_1..lam_r); sym2: (t1, l, t2); vinberg3: (t1, l1, t2, l2, t3).
        """
        if self.kind == "orthant":
            lam = np.asarray(params, dtype=np.float64)
            return np.diag(lam)
        if self.kind == "sym2":
            t1, l, t2 = params
            return np.array(
                [
                    [t1 * t1, 0.0, 0.0],
                    [t1 * l, t1 * t2, 0.0],
                    [l * l, 2.0 * l * t2, t2 * t2],
                ]
            )
        if self.kind == "vinberg3":
            t1, l1, t2, l2, t3 = params
            return np.array(
                [
                    [t1 * t1, 0.0, 0.0, 0.0, 0.0],
                    [t1 * l1, t1 * t2, 0.0, 0.0, 0.0],
                    [l1 * l1, 2.0 * l1 * t2, t2 * t2, 0.0, 0.0],
                    [t1 * l2, 0.0, 0.0, t1 * t3, 0.0],
                    [l2 * l2, 0.0, 0.0, 2.0 * l2 * t3, t3 * t3],
                ]
            )
        raise ValueError(f"unknown chart kind {self.kind!r}")

    def sample_group(self, rng) -> np.ndarray:
        """A generic, moderately-sized group element for invariance tests."""
        if self.kind == "orthant":
            return self.group_matrix(rng.uniform(0.6, 1.6, size=self.dim))
        if self.kind == "sym2":
            return self.group_matrix((rng.uniform(0.75, 1.3), rng.uniform(-0.5, 0.5), rng.uniform(0.75, 1.3)))
        if self.kind == "vinberg3":
            return self.group_matrix(
                (
                    rng.uniform(0.8, 1.25),
                    rng.uniform(-0.35, 0.35),
                    rng.uniform(0.8, 1.25),
                    rng.uniform(-0.35, 0.35),
                    rng.uniform(0.8, 1.25),
                )
            )
        raise ValueError(f"unknown chart kind {self.kind!r}")


@dataclass(frozen=True)
class CatalogEntry:
    cone: ConeStructure
    chart: Optional[CoordinateChart] = None

    @property
    def name(self):
        return self.cone.name


def _orthant_entry(r: int) -> CatalogEntry:
    eye = np.eye(r, dtype=np.int64)
    cone = new_cone(r, {}, eye, eye, name=f"orthant{r}")
    center = tuple(2.0 + 0.3 * i for i in range(r))
    chart = CoordinateChart(
        kind="orthant",
        dim=r,
        weights=(1.0,) * r,
        jac_constant=float(2**r),
        jac_t_powers=(1,) * r,
        bump_center=center,
        bump_scale=0.8,
    )
    return CatalogEntry(cone=cone, chart=chart)


def _sym2_entry() -> CatalogEntry:
    cone = new_cone(
        2,
        {(2, 1): 1},
        [[1, 0], [1, 1]],
        [[1, 1], [0, 1]],
        name="sym2",
    )
    chart = CoordinateChart(
        kind="sym2",
        dim=3,
        weights=(1.0, 2.0, 1.0),
        jac_constant=4.0,
        jac_t_powers=(2, 1),
        bump_center=(3.0, 0.5, 2.5),
        bump_scale=0.7,
    )
    return CatalogEntry(cone=cone, chart=chart)


def _vinberg3_entry() -> CatalogEntry:
    cone = new_cone(
        3,
        {(2, 1): 1, (3, 1): 1},
        [[1, 0, 0], [1, 1, 0], [1, 0, 1]],
        [[1, 1, 1], [0, 1, 0], [0, 0, 1]],
        name="vinberg3",
    )
    chart = CoordinateChart(
        kind="vinberg3",
        dim=5,
        weights=(1.0, 2.0, 1.0, 2.0, 1.0),
        jac_constant=8.0,
        jac_t_powers=(3, 1, 1),
        bump_center=(3.0, 0.4, 2.8, 0.3, 2.6),
        bump_scale=0.5,
    )
    return CatalogEntry(cone=cone, chart=chart)


def _quat4_entry() -> CatalogEntry:
    # Quaternionic rank-3 cone: n_kj = 4 throughout.  Triangular unimodular
    # pair in the principal-minor pattern; no ambient chart is provided, the
    # cone exists for the matrix-level completion checks.
    cone = new_cone(
        3,
        {(2, 1): 4, (3, 1): 4, (3, 2): 4},
        [[1, 0, 0], [1, 1, 0], [1, 1, 1]],
        [[1, 1, 1], [0, 1, 1], [0, 0, 1]],
        name="quat4",
    )
    return CatalogEntry(cone=cone, chart=None)


_CATALOG_BUILDERS = {
    "orthant2": lambda: _orthant_entry(2),
    "orthant3": lambda: _orthant_entry(3),
    "sym2": _sym2_entry,
    "vinberg3": _vinberg3_entry,
    "quat4": _quat4_entry,
}


def catalog_names() -> tuple:
    return tuple(_CATALOG_BUILDERS)


def catalog(name: Optional[str] = None):
    """A named CatalogEntry, or the full {name: CatalogEntry} dict."""
    if name is None:
        return {k: b() for k, b in _CATALOG_BUILDERS.items()}
    try:
        return _CATALOG_BUILDERS[name]()
    except KeyError:
        raise KeyError(f"unknown catalog cone {name!r}; known: {', '.join(_CATALOG_BUILDERS)}") from None


def orbit_signs(cone: ConeStructure, eps) -> tuple:
    """Signs of (Delta_1 .. Delta_r) on the orbit labeled by eps: eps^(row_j(sigma))."""
    sig = np.asarray(cone.sigma)
    out = []
    for j in range(cone.rank):
        s = 1
        for i in range(cone.rank):
            if sig[j][i] % 2:
                s *= eps[i]
        out.append(s)
    return tuple(out)
