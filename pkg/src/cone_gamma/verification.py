"""Identity verification: residual reports and randomized sweep suites.

Every check produces a ResidualReport carrying the identity name, the exact
parameters used, the normalized residual max|L - R| / (1 + max scale), the
tolerance, a pass flag, and the wall time.  Reports serialize one-per-line as
JSON (JSON-lines), and sweeps are deterministic given the seed: parameters
are drawn up front from numpy's default_rng, so the report list is identical
run to run (wall_time aside).

Sampling follows one rule everywhere: Re alpha uniform in [-3, 3] resampled
away from 1e-3 neighborhoods of the integers, Im alpha uniform in [-3, 3],
theta uniform in [-2, 2].  Functional-equation arguments s are produced by
pulling alpha back through the cone's sigma.

Set CONE_GAMMA_THREADS to evaluate sweep points in a thread pool; results
are collected in submission order so the output does not depend on thread
scheduling.
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import asdict, dataclass

import numpy as np

from . import gamma_matrices as gm
from . import structured_factors as sf
from .cone_model import ConeStructure, check_condition_41, derived_vectors, exact_int_inverse
from .sign_algebra import hadamard, permutation_W


class ConditionError(ValueError):
    """Raised when a check requires the diagonalizability condition and the cone fails it."""


@dataclass
class ResidualReport:
    identity_name: str
    params: dict
    residual: float
    tolerance: float
    passed: bool
    wall_time: float

    def to_json_line(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @staticmethod
    def from_json_line(line: str) -> "ResidualReport":
        d = json.loads(line)
        return ResidualReport(
            identity_name=d["identity_name"],
            params=d["params"],
            residual=float(d["residual"]),
            tolerance=float(d["tolerance"]),
            passed=bool(d["passed"]),
            wall_time=float(d["wall_time"]),
        )


def write_reports(reports, stream) -> None:
    """Write reports as JSON-lines to a stream or path."""
    if isinstance(stream, (str, os.PathLike)):
        with open(stream, "w") as fh:
            for rep in reports:
                fh.write(rep.to_json_line() + "\n")
        return
    for rep in reports:
        stream.write(rep.to_json_line() + "\n")


def read_reports(stream):
    if isinstance(stream, (str, os.PathLike)):
        with open(stream) as fh:
            return [ResidualReport.from_json_line(line) for line in fh if line.strip()]
    return [ResidualReport.from_json_line(line) for line in stream if line.strip()]


def matrix_residual(L, R) -> float:
    """max|L - R| / (1 + max entry magnitude of either side)."""
    L = np.asarray(L)
    R = np.asarray(R)
    scale = max(float(np.max(np.abs(L))), float(np.max(np.abs(R))))
    return float(np.max(np.abs(L - R)) / (1.0 + scale))


def _alpha_params(alpha) -> list:
    return [[float(a.real), float(a.imag)] for a in np.asarray(alpha, dtype=complex)]


def _theta_params(theta) -> list:
    if not theta:
        return []
    return [[int(k), int(j), float(v)] for (k, j), v in sorted(theta.items())]


# ---------------------------------------------------------------------------
# single-point checks

def verify_prop31(
    r: int,
    alpha,
    theta=None,
    tolerance: float = 1e-11,
    rotation: str = "adopted",
    word: str = "adopted",
) -> ResidualReport:
    """Cosine-block factorization check at one parameter point.

    Compares J(r-1) C_r(alpha; Theta) J(r-1) against the assembled factor
    product.  rotation/word select the negative-control variants.
    """
    start = time.perf_counter()
    Jm = hadamard(r - 1)
    lhs = Jm @ gm.build_C(r, alpha, theta) @ Jm
    rhs = sf.decomposition_rhs(r, alpha, theta, rotation=rotation, word=word).flat
    residual = matrix_residual(lhs, rhs)
    return ResidualReport(
        identity_name="cosine-block-factorization",
        params={
            "r": r,
            "alpha": _alpha_params(alpha),
            "theta": _theta_params(theta),
            "rotation": rotation,
            "word": word,
        },
        residual=residual,
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
        wall_time=time.perf_counter() - start,
    )


def verify_thm32(cone: ConeStructure, s, tolerance: float = 1e-10) -> ResidualReport:
    """Scaled-matrix factorization check at one s, with W-conjugation consistency.

    With alpha = s.sigma - p/2 and theta = n/2, compares
    J(r) gamma_matrix_tilde(r, alpha, theta) J(r) against the assembled
    script_A, and repeats the comparison conjugated by the digit permutation
    matrices W_sigma / W_sigma_star (the form the distribution-level
    functional equation uses).  The residual is the max of the two.
    """
    start = time.perf_counter()
    r = cone.rank
    s = np.asarray(s, dtype=complex)
    alpha = gm.fe_alpha(cone, s)
    theta = gm.theta_from_cone(cone)
    J = hadamard(r)
    tilde = gm.gamma_matrix_tilde(r, alpha, theta)
    lhs = J @ tilde @ J
    rhs = sf.script_A(r, alpha, theta).flat
    res1 = matrix_residual(lhs, rhs)
    Wp = permutation_W(r, np.asarray(cone.sigma))
    Ws = permutation_W(r, np.asarray(cone.sigma_star))
    res2 = matrix_residual(Wp.T @ lhs @ Ws, Wp.T @ rhs @ Ws)
    residual = max(res1, res2)
    return ResidualReport(
        identity_name="scaled-matrix-factorization",
        params={
            "cone": cone.name or f"rank{r}",
            "s": _alpha_params(s),
            "alpha": _alpha_params(alpha),
            "direct": res1,
            "w-conjugated": res2,
        },
        residual=residual,
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
        wall_time=time.perf_counter() - start,
    )


def verify_det(r: int, alpha, theta=None, tolerance: float = 1e-8) -> ResidualReport:
    """Determinant closed-form check; see gamma_matrices.det_formula_check."""
    return gm.det_formula_check(r, alpha, theta, tolerance=tolerance)


def verify_completion(cone: ConeStructure, alpha, tolerance: float = 1e-12) -> ResidualReport:
    """Matrix-level completion check for cones satisfying the parity condition.

    At theta = n/2 the Hadamard conjugate of the phase matrix must be
    diagonal with entries (-1)^m 2^r i^|a| prod_j c(alpha_j - a_j); the
    residual is the max of the off-diagonal mass and the eigenvalue mismatch,
    both normalized by the 2^r scale.  Raises ConditionError when the cone
    does not satisfy the condition.
    """
    start = time.perf_counter()
    m = check_condition_41(cone)
    if m is None:
        raise ConditionError(f"cone {cone.name or cone!r} does not satisfy the diagonalizability condition")
    r = cone.rank
    alpha = np.asarray(alpha, dtype=complex)
    A = gm.build_A(r, alpha, gm.theta_from_cone(cone))
    J = hadamard(r)
    conj = J @ A @ J
    diag = np.diag(conj)
    off = conj - np.diag(diag)
    scale = 1.0 + float(np.max(np.abs(conj)))
    off_mass = float(np.max(np.abs(off))) / scale
    eig = gm.eigenvalue_diag(r, alpha, m)
    eig_err = float(np.max(np.abs(diag - eig))) / scale
    residual = max(off_mass, eig_err)
    return ResidualReport(
        identity_name="phase-matrix-diagonalization",
        params={
            "cone": cone.name or f"rank{r}",
            "alpha": _alpha_params(alpha),
            "m": m,
            "off_diagonal": off_mass,
            "eigenvalue": eig_err,
        },
        residual=residual,
        tolerance=float(tolerance),
        passed=bool(residual <= tolerance),
        wall_time=time.perf_counter() - start,
    )


# ---------------------------------------------------------------------------
# samplers

def sample_alpha(rng, r: int, im_scale: float = 3.0) -> np.ndarray:
    """Re uniform in [-3, 3] avoiding 1e-3 integer neighborhoods; Im uniform."""
    re = np.empty(r)
    for i in range(r):
        while True:
            x = rng.uniform(-3.0, 3.0)
            if abs(x - round(x)) > 1e-3:
                re[i] = x
                break
    im = rng.uniform(-im_scale, im_scale, size=r)
    return re + 1j * im


def sample_theta(rng, r: int) -> dict:
    return {(k, j): float(rng.uniform(-2.0, 2.0)) for j in range(1, r + 1) for k in range(j + 1, r + 1)}


def sample_s_for_cone(rng, cone: ConeStructure, im_scale: float = 3.0) -> np.ndarray:
    """s with alpha = s.sigma - p/2 drawn by sample_alpha (poles avoided by construction)."""
    alpha = sample_alpha(rng, cone.rank, im_scale=im_scale)
    p, _, _ = derived_vectors(cone)
    inv = exact_int_inverse(np.asarray(cone.sigma)).astype(np.float64)
    return (alpha + np.asarray(p, dtype=np.float64) / 2.0) @ inv


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("CONE_GAMMA_THREADS", "1")))
    except ValueError:
        return 1


def _run_points(fn, points):
    """Apply fn over pre-sampled points, optionally in a thread pool, order preserved."""
    n = thread_count()
    if n <= 1:
        return [fn(pt) for pt in points]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, points))


# ---------------------------------------------------------------------------
# sweep suites

def run_prop31_suite(
    r: int,
    count: int = 50,
    seed: int = 0,
    tolerance: float = 1e-11,
    rotation: str = "adopted",
    word: str = "adopted",
):
    rng = np.random.default_rng(seed)
    points = [(sample_alpha(rng, r), sample_theta(rng, r)) for _ in range(count)]
    return _run_points(
        lambda pt: verify_prop31(r, pt[0], pt[1], tolerance=tolerance, rotation=rotation, word=word),
        points,
    )


def run_thm32_suite(cone: ConeStructure, count: int = 20, seed: int = 0, tolerance: float = 1e-10):
    rng = np.random.default_rng(seed)
    points = [sample_s_for_cone(rng, cone) for _ in range(count)]
    return _run_points(lambda s: verify_thm32(cone, s, tolerance=tolerance), points)


def run_det_suite(r: int, count: int = 30, seed: int = 0, tolerance: float = 1e-8):
    rng = np.random.default_rng(seed)
    points = [(sample_alpha(rng, r, im_scale=1.0), sample_theta(rng, r)) for _ in range(count)]
    return _run_points(lambda pt: verify_det(r, pt[0], pt[1], tolerance=tolerance), points)


def run_completion_suite(cone: ConeStructure, count: int = 20, seed: int = 0, tolerance: float = 1e-12):
    rng = np.random.default_rng(seed)
    points = [sample_alpha(rng, cone.rank) for _ in range(count)]
    return _run_points(lambda a: verify_completion(cone, a, tolerance=tolerance), points)


def all_passed(reports) -> bool:
    return all(rep.passed for rep in reports)


def summarize(reports) -> dict:
    """Aggregate worst residual / total time over a report list."""
    if not reports:
        return {"count": 0, "max_residual": 0.0, "passed": True, "wall_time": 0.0}
    return {
        "count": len(reports),
        "max_residual": max(rep.residual for rep in reports),
        "passed": all_passed(reports),
        "wall_time": sum(rep.wall_time for rep in reports),
    }
