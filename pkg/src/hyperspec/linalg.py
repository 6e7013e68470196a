"""Dense eigensolvers with residual certificates, Perron iteration, spectrum sets.

Eigenvalues come from LAPACK through numpy (Hessenberg reduction plus shifted
QR underneath); every returned pair is certified a posteriori by its residual,
with inverse-iteration refinement as a fallback.  The nonnegative power
iteration is written out longhand so it stays an independent cross-check of
the dense solvers.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "EigenPair",
    "SpectrumSet",
    "eig_real_symmetric",
    "eig_complex_pairs",
    "eig_complex_dense",
    "spectral_radius",
    "power_iteration_nonneg",
]

DEFAULT_DEDUP_TOL = 1e-8
SYMMETRIC_CAP = 256
COMPLEX_CAP = 64
SYMMETRIC_RESIDUAL_TOL = 1e-10
BACKWARD_ERROR_TOL = 1e-9


class ConvergenceError(RuntimeError):
    """An iterative solver exhausted its budget before meeting its tolerance."""


@dataclass(frozen=True)
class EigenPair:
    """One eigenvalue with a max-norm-1 eigenvector and its certified residual."""

    value: complex
    vector: np.ndarray
    residual: float


def _inf_norm(m: np.ndarray) -> float:
    if m.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(m), axis=1)))


def _normalize_inf(v: np.ndarray) -> np.ndarray:
    # divide by the largest-modulus entry: makes that entry exactly 1
    idx = int(np.argmax(np.abs(v)))
    if v[idx] == 0:
        raise ValueError("cannot normalize the zero vector")
    return v / v[idx]


def _pair_residual(m: np.ndarray, value: complex, vector: np.ndarray) -> float:
    r = m @ vector - value * vector
    return float(np.max(np.abs(r)) / max(1.0, _inf_norm(m)))


def eig_real_symmetric(m: np.ndarray, cap: int = SYMMETRIC_CAP) -> list[EigenPair]:
    """All eigenpairs of a real symmetric matrix, ascending by eigenvalue.

    Raises ValueError for non-symmetric input or dimension above ``cap``, and
    ConvergenceError if any residual misses the 1e-10 certificate.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    n = m.shape[0]
    if n > cap:
        raise ValueError(f"matrix dimension {n} exceeds cap {cap}")
    scale = max(1.0, _inf_norm(m))
    if n and np.max(np.abs(m - m.T)) > 1e-12 * scale:
        raise ValueError("matrix is not symmetric within 1e-12")
    values, vectors = np.linalg.eigh(m)
    pairs = []
    for i in range(n):
        vec = _normalize_inf(vectors[:, i].copy())
        res = _pair_residual(m, float(values[i]), vec)
        if res > SYMMETRIC_RESIDUAL_TOL:
            raise ConvergenceError(
                f"symmetric eigenpair residual {res:.3e} exceeds 1e-10"
            )
        vec.flags.writeable = False
        pairs.append(EigenPair(float(values[i]), vec, res))
    return pairs


def _refine_pair(
    m: np.ndarray, value: complex, vector: np.ndarray, sweeps: int
) -> tuple[np.ndarray, float]:
    """Inverse-iteration polish of an eigenvector for a fixed eigenvalue."""
    n = m.shape[0]
    scale = max(1.0, _inf_norm(m))
    best_vec, best_res = vector, _pair_residual(m, value, vector)
    shift = value
    jitter = 1e-13 * scale
    for _ in range(sweeps):
        try:
            w = np.linalg.solve(m - (shift + jitter) * np.eye(n), best_vec)
        except np.linalg.LinAlgError:
            jitter *= 10.0
            continue
        if not np.all(np.isfinite(w)) or np.max(np.abs(w)) == 0:
            jitter *= 10.0
            continue
        w = _normalize_inf(w)
        res = _pair_residual(m, value, w)
        if res < best_res:
            best_vec, best_res = w, res
        if best_res <= BACKWARD_ERROR_TOL:
            break
        jitter *= 10.0
    return best_vec, best_res


def eig_complex_pairs(m: np.ndarray, cap: int = COMPLEX_CAP) -> list[EigenPair]:
    """All eigenpairs of a general complex matrix, sorted by (real, imag).

    Each pair carries a certified residual below 1e-9 relative to the matrix
    norm; pairs failing that after inverse-iteration refinement raise
    ConvergenceError.
    """
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    n = m.shape[0]
    if n > cap:
        raise ValueError(f"matrix dimension {n} exceeds cap {cap}")
    if n and not np.all(np.isfinite(m)):
        raise ValueError("matrix entries must be finite")
    values, vectors = np.linalg.eig(m)
    order = sorted(range(n), key=lambda i: (values[i].real, values[i].imag))
    pairs = []
    for i in order:
        vec = _normalize_inf(vectors[:, i].copy())
        res = _pair_residual(m, values[i], vec)
        if res > BACKWARD_ERROR_TOL:
            vec, res = _refine_pair(m, complex(values[i]), vec, sweeps=100 * max(n, 1))
        if res > BACKWARD_ERROR_TOL:
            raise ConvergenceError(
                f"complex eigenpair residual {res:.3e} exceeds 1e-9"
            )
        vec.flags.writeable = False
        pairs.append(EigenPair(complex(values[i]), vec, res))
    return pairs


def eig_complex_dense(
    m: np.ndarray, dedup_tol: float = DEFAULT_DEDUP_TOL, cap: int = COMPLEX_CAP
) -> "SpectrumSet":
    """Deduplicated spectrum of a general complex matrix."""
    pairs = eig_complex_pairs(m, cap=cap)
    return SpectrumSet(values=[p.value for p in pairs], dedup_tol=dedup_tol)


def spectral_radius(m: np.ndarray, cap: int = COMPLEX_CAP) -> float:
    """Maximum eigenvalue modulus of a general complex matrix."""
    pairs = eig_complex_pairs(m, cap=cap)
    if not pairs:
        return 0.0
    return max(abs(p.value) for p in pairs)


def _strongly_connected(pattern: np.ndarray) -> bool:
    n = pattern.shape[0]
    if n <= 1:
        return True

    def reach(adj: np.ndarray) -> int:
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in np.nonzero(adj[u])[0]:
                if int(w) not in seen:
                    seen.add(int(w))
                    queue.append(int(w))
        return len(seen)

    return reach(pattern) == n and reach(pattern.T) == n


def power_iteration_nonneg(
    m: np.ndarray, tol: float = 1e-10, budget: int = 100_000
) -> EigenPair:
    """Perron eigenpair of an entrywise nonnegative irreducible matrix.

    Runs the power method on the (shifted) matrix with Collatz-Wielandt
    stopping bounds.  The returned vector is positive with max-norm 1 and the
    residual is certified below ``tol`` relative to the matrix norm.
    """
    m = np.asarray(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("expected a square matrix")
    if np.any(m < 0):
        raise ValueError("matrix must be entrywise nonnegative")
    n = m.shape[0]
    if n == 0:
        raise ValueError("empty matrix")
    if not _strongly_connected(m > 0):
        raise ValueError("matrix zero pattern is reducible")
    scale = max(1.0, _inf_norm(m))
    x = np.ones(n)
    value = 0.0
    converged = False
    # shifting by I keeps iterates positive and the pattern primitive
    for _ in range(budget):
        y = m @ x + x
        quotients = y / x
        lo, hi = float(np.min(quotients)), float(np.max(quotients))
        value = 0.5 * (lo + hi) - 1.0
        if hi - lo <= 1e-13 * max(1.0, hi):
            converged = True
            break
        x = y / np.max(y)
    if not converged:
        raise ConvergenceError(f"power iteration budget {budget} exhausted")
    x = x / np.max(x)
    res = _pair_residual(m, value, x)
    if res > tol:
        raise ConvergenceError(f"power iteration residual {res:.3e} exceeds {tol:g}")
    x.flags.writeable = False
    return EigenPair(value, x, res)


# -- spectrum sets ----------------------------------------------------------


def _single_linkage(values: Sequence[complex], threshold: float) -> list[list[int]]:
    """Union-find single-linkage clusters of complex values at ``threshold``."""
    count = len(values)
    parent = list(range(count))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[max(ri, rj)] = min(ri, rj)

    order = sorted(range(count), key=lambda i: (values[i].real, values[i].imag))
    for a in range(count):
        i = order[a]
        for b in range(a + 1, count):
            j = order[b]
            if values[j].real - values[i].real > threshold:
                break
            if abs(values[i] - values[j]) <= threshold:
                union(i, j)
    groups: dict[int, list[int]] = {}
    for i in range(count):
        groups.setdefault(find(i), []).append(i)
    return list(groups.values())


class SpectrumSet:
    """Deduplicated complex eigenvalues with tolerance clustering and witnesses.

    ``values`` holds one representative per cluster, sorted by (real, imag);
    representatives are pairwise separated by more than ``dedup_tol`` times
    the scale max(1, largest modulus).  ``witnesses[i]`` is the witness of the
    earliest input contributing to ``values[i]`` (None when not supplied).
    """

    def __init__(
        self,
        values: Iterable[complex],
        dedup_tol: float = DEFAULT_DEDUP_TOL,
        witnesses: Sequence[object] | None = None,
    ):
        raw = [complex(v) for v in values]
        if witnesses is not None and len(witnesses) != len(raw):
            raise ValueError("witnesses must parallel values")
        if dedup_tol <= 0:
            raise ValueError("dedup_tol must be positive")
        self.dedup_tol = float(dedup_tol)
        scale = max(1.0, max((abs(v) for v in raw), default=0.0))
        threshold = self.dedup_tol * scale

        vals = raw
        wits: list[object] = list(witnesses) if witnesses is not None else [None] * len(raw)
        prio = list(range(len(raw)))
        while True:
            clusters = _single_linkage(vals, threshold)
            if len(clusters) == len(vals):
                break
            merged_vals, merged_wits, merged_prio = [], [], []
            for group in clusters:
                group_sorted = sorted(
                    group, key=lambda i: (vals[i].real, vals[i].imag)
                )
                rep = sum(vals[i] for i in group_sorted) / len(group_sorted)
                lead = min(group, key=lambda i: prio[i])
                merged_vals.append(rep)
                merged_wits.append(wits[lead])
                merged_prio.append(prio[lead])
            vals, wits, prio = merged_vals, merged_wits, merged_prio

        order = sorted(range(len(vals)), key=lambda i: (vals[i].real, vals[i].imag))
        self.values: tuple[complex, ...] = tuple(vals[i] for i in order)
        self.witnesses: tuple[object, ...] = tuple(wits[i] for i in order)
        self._scale = max(1.0, max((abs(v) for v in self.values), default=0.0))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __repr__(self) -> str:
        return f"SpectrumSet({list(self.values)!r}, dedup_tol={self.dedup_tol!r})"

    def contains(self, z: complex, tol: float | None = None) -> bool:
        tol = self.dedup_tol if tol is None else tol
        threshold = tol * max(self._scale, abs(z), 1.0)
        return any(abs(v - z) <= threshold for v in self.values)

    def set_equal(self, other: "SpectrumSet", tol: float | None = None) -> bool:
        tol = max(self.dedup_tol, other.dedup_tol) if tol is None else tol
        scale = max(1.0, self._scale, other._scale)
        threshold = tol * scale
        return all(
            any(abs(v - w) <= threshold for w in other.values) for v in self.values
        ) and all(
            any(abs(v - w) <= threshold for v in self.values) for w in other.values
        )

    def max_modulus(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)

    def real_values(self, tol: float | None = None) -> list[float]:
        tol = self.dedup_tol if tol is None else tol
        threshold = tol * self._scale
        return [v.real for v in self.values if abs(v.imag) <= threshold]
