"""
Deviation and coverage of sampled orbit points against a predicted closure.
"""
import itertools
import logging
import math
from collections import defaultdict
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from src.closures.additive import AddVariant
from src.closures.multiplicative import MulVariant
from src.errors import UnresolvedClosureError
from src.models.data_model import DensityReport, DescriptionKind, OrbitClosureDescription

logger = logging.getLogger(__name__)

MAX_PROBES = 2_000_000


def _vec(values) -> np.ndarray:
    return np.array([float(v) for v in values], dtype=float)


def _orthonormal(directions: Sequence[Sequence], n: int) -> np.ndarray:
    """n x d matrix with orthonormal columns spanning the directions."""
    if not directions:
        return np.zeros((n, 0))
    q, _ = np.linalg.qr(np.array(directions, dtype=float).T)
    return q


def _residual(vectors: np.ndarray, q: np.ndarray) -> np.ndarray:
    """Component of each row orthogonal to span(q)."""
    if q.shape[1] == 0:
        return vectors
    return vectors - (vectors @ q) @ q.T


def _lam_or_raise(desc: OrbitClosureDescription):
    if desc.lam is None:
        raise UnresolvedClosureError("Ratio group closure unavailable for irrational ratios")
    return desc.lam


def _require_h(desc: OrbitClosureDescription):
    desc.H.require_resolved()
    return desc.H


# Deviation

def _lattice_distance(vectors: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Distance of each row to the lattice Z-spanned by the rows of basis."""
    if basis.shape[0] == 0:
        return np.linalg.norm(vectors, axis=1)
    coords, *_ = np.linalg.lstsq(basis.T, vectors.T, rcond=None)
    base = np.floor(coords.T)
    best = np.full(len(vectors), np.inf)
    for offsets in itertools.product((0, 1), repeat=basis.shape[0]):
        candidates = (base + np.array(offsets)) @ basis
        best = np.minimum(best, np.linalg.norm(vectors - candidates, axis=1))
    return best


def _coset_distance(vectors: np.ndarray, desc: OrbitClosureDescription) -> np.ndarray:
    H = _require_h(desc)
    if H.variant == AddVariant.DENSE_LINE:
        q = _orthonormal([_vec(H.direction)], desc.dimension)
        return np.linalg.norm(_residual(vectors, q), axis=1)
    basis = np.array([_vec(b) for b in H.basis], dtype=float).reshape(len(H.basis), desc.dimension)
    return _lattice_distance(vectors, basis)


def _feasible_ratios(lam, t_star: np.ndarray) -> List[np.ndarray]:
    """Candidate t values closest to each unconstrained optimum t_star."""
    candidates = [np.zeros_like(t_star)]
    if lam.variant == MulVariant.DENSE_ALL:
        return candidates + [t_star]
    if lam.variant == MulVariant.DENSE_POS:
        return candidates + [np.maximum(t_star, 0.0)]

    rho = float(lam.rho)
    magnitude = np.abs(t_star)
    with np.errstate(divide="ignore"):
        k0 = np.floor(np.log(np.where(magnitude > 0, magnitude, 1.0)) / math.log(rho))
    for shift in (-1, 0, 1, 2):
        k = k0 + shift
        value = rho ** k
        if lam.variant == MulVariant.CYCLIC_POS:
            candidates.append(value)
        elif lam.variant == MulVariant.CYCLIC_WITH_SIGN:
            candidates.extend([value, -value])
        else:
            candidates.append(np.where(k % 2 == 0, value, -value))
    return candidates


def _scaled_family_distance(points: np.ndarray, desc: OrbitClosureDescription) -> np.ndarray:
    lam = _lam_or_raise(desc)
    q = _orthonormal([_vec(d) for d in desc.E.directions], desc.dimension)
    w = _residual(points - _vec(desc.base), q)
    v = _residual(_vec(desc.direction)[None, :], q)[0]
    t_star = (w @ v) / float(v @ v)
    best = np.full(len(points), np.inf)
    for t in _feasible_ratios(lam, t_star):
        best = np.minimum(best, np.linalg.norm(w - t[:, None] * v, axis=1))
    return best


def deviation_from_prediction(samples: np.ndarray, desc: OrbitClosureDescription) -> float:
    """
    Largest Euclidean distance from a sample to the described closure.

    Raises:
        UnresolvedClosureError: the description rests on an unresolved closure
    """
    points = np.asarray(samples, dtype=float).reshape(-1, desc.dimension)
    if len(points) == 0:
        return 0.0
    if desc.kind == DescriptionKind.AFFINE_SET:
        q = _orthonormal([_vec(d) for d in desc.E.directions], desc.dimension)
        distances = np.linalg.norm(_residual(points - _vec(desc.E.base), q), axis=1)
    elif desc.kind == DescriptionKind.COSET_PAIR:
        x, a = _vec(desc.point), _vec(desc.base)
        distances = np.minimum(
            _coset_distance(points - x, desc),
            _coset_distance(points + x - a, desc),
        )
    else:
        distances = _scaled_family_distance(points, desc)
    return float(np.max(distances))


# Coverage

def _in_window(points: np.ndarray, window: float) -> np.ndarray:
    if len(points) == 0:
        return points
    return points[np.max(np.abs(points), axis=1) <= window + 1e-12]


def _grid(axis: np.ndarray, d: int) -> np.ndarray:
    if len(axis) ** d > MAX_PROBES:
        raise ValueError(f"Probe grid of {len(axis) ** d} points exceeds {MAX_PROBES}")
    return np.array(list(itertools.product(axis, repeat=d)), dtype=float).reshape(-1, d)


def _affine_probes(base: np.ndarray, directions: Sequence[np.ndarray], window: float,
                   step: float) -> np.ndarray:
    """Grid of step h on base + span(directions), clipped to the window."""
    n = len(base)
    q = _orthonormal(list(directions), n)
    d = q.shape[1]
    if d == n:
        return _grid(np.arange(-window, window + step / 2, step), n)
    # closest point of the subspace to the origin
    origin = base - q @ (q.T @ base)
    if d == 0:
        return _in_window(origin[None, :], window)
    radius = window * math.sqrt(n)
    coords = _grid(np.arange(-radius, radius + step / 2, step), d)
    return _in_window(origin + coords @ q.T, window)


def _lattice_points(offset: np.ndarray, basis: np.ndarray, window: float) -> np.ndarray:
    if basis.shape[0] == 0:
        return _in_window(offset[None, :], window)
    smallest = np.linalg.svd(basis, compute_uv=False).min()
    reach = (window * math.sqrt(len(offset)) + np.linalg.norm(offset)) / smallest
    bound = int(math.ceil(reach))
    if (2 * bound + 1) ** basis.shape[0] > MAX_PROBES:
        raise ValueError("Lattice too fine for the probe budget")
    coefficients = np.array(
        list(itertools.product(range(-bound, bound + 1), repeat=basis.shape[0])), dtype=float
    )
    return _in_window(offset + coefficients @ basis, window)


def _coset_probes(desc: OrbitClosureDescription, window: float, step: float) -> np.ndarray:
    H = _require_h(desc)
    x, a = _vec(desc.point), _vec(desc.base)
    pieces = []
    for offset in (x, a - x):
        if H.variant == AddVariant.DENSE_LINE:
            pieces.append(_affine_probes(offset, [_vec(H.direction)], window, step))
        else:
            basis = np.array([_vec(b) for b in H.basis], dtype=float).reshape(len(H.basis), len(x))
            pieces.append(_lattice_points(offset, basis, window))
    return np.concatenate(pieces)


def _scaled_family_probes(desc: OrbitClosureDescription, window: float, step: float) -> np.ndarray:
    lam = _lam_or_raise(desc)
    a, u = _vec(desc.base), _vec(desc.direction)
    directions = [_vec(d) for d in desc.E.directions]
    if lam.is_dense():
        probes = _affine_probes(a, directions + [u], window, step)
        if lam.variant == MulVariant.DENSE_POS and len(probes):
            q = _orthonormal(directions, len(a))
            v = _residual(u[None, :], q)[0]
            t = _residual(probes - a, q) @ v / float(v @ v)
            probes = probes[t >= -1e-12]
        return probes

    q = _orthonormal(directions, len(a))
    v_norm = float(np.linalg.norm(_residual(u[None, :], q)[0]))
    far = float(np.linalg.norm(_residual(a[None, :], q)[0])) + window * math.sqrt(len(a))
    rho = float(lam.rho)
    # slices closer than one grid step to E repeat its probes
    k_min = math.floor(math.log(step / v_norm) / math.log(rho))
    k_max = math.ceil(math.log(far / v_norm) / math.log(rho))
    ts = [0.0]
    for k in range(k_min, k_max + 1):
        value = rho ** k
        if value * v_norm < step:
            continue
        if lam.variant == MulVariant.CYCLIC_POS:
            ts.append(value)
        elif lam.variant == MulVariant.CYCLIC_WITH_SIGN:
            ts.extend([value, -value])
        else:
            ts.append(value if k % 2 == 0 else -value)
    pieces = [_affine_probes(a + t * u, directions, window, step) for t in ts]
    return np.concatenate(pieces)


def probe_points(desc: OrbitClosureDescription, window: float, step: float) -> np.ndarray:
    """Points of the described closure inside the window, on a grid of step h."""
    if desc.kind == DescriptionKind.AFFINE_SET:
        probes = _affine_probes(_vec(desc.E.base), [_vec(d) for d in desc.E.directions],
                                window, step)
    elif desc.kind == DescriptionKind.COSET_PAIR:
        probes = _coset_probes(desc, window, step)
    else:
        probes = _scaled_family_probes(desc, window, step)
    return probes.reshape(-1, desc.dimension)


class _CellIndex:
    """Samples bucketed into cubes of side eps."""

    def __init__(self, points: np.ndarray, eps: float):
        self.eps = eps
        self.points = points
        self.cells: Dict[Tuple[int, ...], List[int]] = defaultdict(list)
        for i, key in enumerate(map(tuple, np.floor(points / eps).astype(np.int64))):
            self.cells[key].append(i)

    def has_neighbour(self, probe: np.ndarray) -> bool:
        center = np.floor(probe / self.eps).astype(np.int64)
        for offset in itertools.product((-1, 0, 1), repeat=len(probe)):
            indices = self.cells.get(tuple(center + np.array(offset)))
            if indices and np.min(np.linalg.norm(self.points[indices] - probe, axis=1)) <= self.eps:
                return True
        return False


def coverage_of_prediction(samples: np.ndarray, desc: OrbitClosureDescription, window: float,
                           step: float, eps: float) -> Tuple[float, int]:
    """
    Fraction of closure probes with a sample within eps.

    Returns:
        Tuple of (coverage, number of probes); coverage is 1.0 without probes
    """
    probes = probe_points(desc, window, step)
    if len(probes) == 0:
        return 1.0, 0
    points = np.asarray(samples, dtype=float).reshape(-1, desc.dimension)
    if len(points) == 0:
        return 0.0, len(probes)
    index = _CellIndex(points, eps)
    hits = sum(1 for p in probes if index.has_neighbour(p))
    logger.debug(f"{hits} of {len(probes)} probes covered at eps={eps}")
    return hits / len(probes), len(probes)


def density_report(samples: np.ndarray, discarded: int, desc: OrbitClosureDescription,
                   window: float, step: float, eps: float, tol: float,
                   threshold: Optional[float] = None) -> DensityReport:
    """Deviation and coverage together, with the pass/fail decision."""
    deviation = deviation_from_prediction(samples, desc)
    coverage, probes = coverage_of_prediction(samples, desc, window, step, eps)
    passed = None
    if threshold is not None:
        passed = deviation <= tol and coverage >= threshold
    return DensityReport(
        max_deviation=deviation,
        coverage=coverage,
        retained=len(samples),
        discarded=discarded,
        probes=probes,
        passed=passed,
        parameters={"window": window, "grid_step": step, "epsilon": eps,
                    "tolerance": tol, "coverage_threshold": threshold},
    )
