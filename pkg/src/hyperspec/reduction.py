"""Reduction of power-hypergraph tensor spectra to small complex matrices.

The spectrum of the Laplacian tensor of a half-blowup power is the union of
the eigenvalues of phase-reduced matrices D[U] - E A[U] E over all connected
vertex subsets U of the base graph and all assignments E of k-th roots of
unity, one representative per sign class; the H-spectrum is the identity-phase
slice.  This module enumerates those matrices and assembles deduplicated
spectra, spectral radii and largest H-eigenvalues with witnesses.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from hyperspec.graphs import LoopedGraph, as_subset, connected_subsets
from hyperspec.linalg import (
    SpectrumSet,
    eig_complex_pairs,
    eig_real_symmetric,
)

__all__ = [
    "DEDUP_TOL",
    "STRICT_MARGIN",
    "KIND_LETTER",
    "normalize_kind",
    "PhaseAssignment",
    "ReductionWitness",
    "SpectrumReport",
    "RhoResult",
    "reduced_matrix",
    "phase_classes",
    "spectrum_power",
    "h_spectrum_power",
    "lambda_max_laplacian",
    "rho_power",
    "uniform_phase_matrix",
]

DEDUP_TOL = 1e-8
STRICT_MARGIN = 1e-6
DEFAULT_MAX_SUBSET = 8
DEFAULT_BUDGET = 10**6

KIND_LETTER = {"adjacency": "A", "laplacian": "L", "signless": "Q"}
_LETTER_KIND = {v: k for k, v in KIND_LETTER.items()}


def normalize_kind(kind: str) -> str:
    if kind in KIND_LETTER:
        return kind
    if kind in _LETTER_KIND:
        return _LETTER_KIND[kind]
    raise ValueError(f"unknown matrix kind {kind!r}")


@dataclass(frozen=True)
class PhaseAssignment:
    """Integer phases l_u in [0, k) encoding the diagonal of k-th roots of unity."""

    k: int
    phases: tuple[int, ...]

    def __post_init__(self):
        if self.k < 2 or self.k % 2:
            raise ValueError("phase assignments need an even k >= 2")
        for p in self.phases:
            if not 0 <= p < self.k:
                raise ValueError(f"phase {p} out of range [0, {self.k})")

    def unit_values(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.array(self.phases) / self.k)


@dataclass(frozen=True)
class ReductionWitness:
    """Provenance of one reduced-matrix eigenvalue: the subset and phases."""

    subset: tuple[int, ...]
    phase: PhaseAssignment
    kind: str
    eigenvalue: complex

    def to_json_dict(self) -> dict:
        return {
            "subset": list(self.subset),
            "k": self.phase.k,
            "phases": list(self.phase.phases),
            "kind": KIND_LETTER[self.kind],
            "eigenvalue": [self.eigenvalue.real, self.eigenvalue.imag],
        }


def reduced_matrix(
    g: LoopedGraph,
    k: int,
    members: Sequence[int],
    phases: Sequence[int],
    kind: str = "laplacian",
) -> np.ndarray:
    """Phase-reduced matrix of a connected modified induced subgraph.

    For the Laplacian kind this is D(G)[U] - E A(G[U]) E with E the diagonal
    of k-th roots of unity given by ``phases``; the signless kind flips the
    sign of the adjacency block and the adjacency kind drops the diagonal.
    The result is complex symmetric, indexed by the sorted members of U.
    """
    kind = normalize_kind(kind)
    subset = as_subset(members, g.vertex_count)
    if len(phases) != len(subset):
        raise ValueError("one phase per subset member is required")
    sub = g.modified_induced_subgraph(subset)
    if not sub.is_connected():
        raise ValueError(f"subset {subset} does not induce a connected subgraph")
    assign = PhaseAssignment(k, tuple(int(p) % k for p in phases))
    units = assign.unit_values()
    phased_adjacency = np.outer(units, units) * sub.adjacency_matrix()
    if kind == "adjacency":
        return phased_adjacency
    diag = np.diag(sub.degree_vector()).astype(complex)
    if kind == "laplacian":
        return diag - phased_adjacency
    return diag + phased_adjacency


def phase_classes(size: int, k: int) -> Iterator[tuple[int, ...]]:
    """One representative per phase class, canonically l_u in [0, k/2).

    Adding k/2 to any single phase multiplies the corresponding unit by -1,
    which is a plain sign similarity; restricting to [0, k/2) picks exactly
    one representative per class, in lexicographic order.
    """
    if size < 1:
        raise ValueError("phase classes need at least one vertex")
    if k < 2 or k % 2:
        raise ValueError("phase classes need an even k >= 2")
    return itertools.product(range(k // 2), repeat=size)


@dataclass(frozen=True)
class SpectrumReport:
    """Deduplicated spectrum plus enumeration provenance."""

    kind: str
    k: int
    spectrum: SpectrumSet
    complete: bool
    budget_used: int

    @property
    def values(self) -> tuple[complex, ...]:
        return self.spectrum.values

    def to_json_dict(self) -> dict:
        witnesses = []
        for w in self.spectrum.witnesses:
            witnesses.append(w.to_json_dict() if w is not None else None)
        return {
            "kind": KIND_LETTER[self.kind],
            "k": self.k,
            "values": [[v.real, v.imag] for v in self.spectrum.values],
            "witnesses": witnesses,
            "complete": self.complete,
            "budget_used": self.budget_used,
        }


@dataclass(frozen=True)
class RhoResult:
    """Spectral radius over the enumerated reduction, with its witness.

    ``complete`` False marks a lower bound obtained under an exhausted budget.
    """

    value: float
    witness: ReductionWitness
    complete: bool
    budget_used: int

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": self.witness.to_json_dict(),
            "complete": self.complete,
            "budget_used": self.budget_used,
        }


def _check_power_inputs(g: LoopedGraph, k: int) -> None:
    if g.has_loops:
        raise ValueError("power reductions start from a loop-free base graph")
    if k < 4 or k % 2:
        raise ValueError("half blow-ups need an even k >= 4")
    if not g.is_connected():
        raise ValueError("base graph must be connected")


def _plan_work(
    g: LoopedGraph, k: int, max_subset: int, budget: int
) -> tuple[list[tuple[tuple[int, ...], int]], bool, int]:
    """Deterministic per-subset phase quotas under the matrix budget."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    subsets = list(connected_subsets(g, min(g.vertex_count, max_subset)))
    complete = g.vertex_count <= max_subset
    used = 0
    plan = []
    for subset in subsets:
        block = (k // 2) ** len(subset)
        take = min(block, budget - used)
        if take < block:
            complete = False
        if take > 0:
            plan.append((subset, take))
            used += take
    return plan, complete, used


def _eval_subset(
    g: LoopedGraph, k: int, kind: str, subset: tuple[int, ...], quota: int
) -> list[tuple[complex, ReductionWitness]]:
    out = []
    for phases in itertools.islice(phase_classes(len(subset), k), quota):
        matrix = reduced_matrix(g, k, subset, phases, kind)
        assign = PhaseAssignment(k, phases)
        for pair in eig_complex_pairs(matrix):
            out.append(
                (pair.value, ReductionWitness(subset, assign, kind, pair.value))
            )
    return out


def spectrum_power(
    g: LoopedGraph,
    k: int,
    kind: str = "laplacian",
    *,
    dedup_tol: float = DEDUP_TOL,
    max_subset: int = DEFAULT_MAX_SUBSET,
    budget: int = DEFAULT_BUDGET,
    parallel: int = 1,
) -> SpectrumReport:
    """Spectrum of the chosen tensor of the half blow-up of ``g``.

    Unions the eigenvalues of every reduced matrix over connected subsets and
    phase classes, deduplicated at ``dedup_tol``.  Results under an exhausted
    budget are flagged incomplete, never silently truncated.
    """
    kind = normalize_kind(kind)
    _check_power_inputs(g, k)
    plan, complete, used = _plan_work(g, k, max_subset, budget)
    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            chunks = list(
                pool.map(lambda item: _eval_subset(g, k, kind, *item), plan)
            )
    else:
        chunks = [_eval_subset(g, k, kind, *item) for item in plan]
    values: list[complex] = []
    witnesses: list[ReductionWitness] = []
    for chunk in chunks:
        for value, witness in chunk:
            values.append(value)
            witnesses.append(witness)
    spectrum = SpectrumSet(values, dedup_tol=dedup_tol, witnesses=witnesses)
    return SpectrumReport(kind, k, spectrum, complete, used)


def h_spectrum_power(
    g: LoopedGraph,
    k: int,
    kind: str = "laplacian",
    *,
    dedup_tol: float = DEDUP_TOL,
    max_subset: int = DEFAULT_MAX_SUBSET,
    budget: int = DEFAULT_BUDGET,
    parallel: int = 1,
) -> SpectrumReport:
    """H-spectrum of the chosen tensor of the half blow-up of ``g``.

    This is the identity-phase slice of the reduction: real symmetric matrices
    of modified induced subgraphs, one per connected subset.
    """
    kind = normalize_kind(kind)
    _check_power_inputs(g, k)
    subsets = list(connected_subsets(g, min(g.vertex_count, max_subset)))
    complete = g.vertex_count <= max_subset
    if budget <= 0:
        raise ValueError("budget must be positive")
    if len(subsets) > budget:
        subsets = subsets[:budget]
        complete = False

    def eval_subset(subset: tuple[int, ...]) -> list[tuple[complex, ReductionWitness]]:
        sub = g.modified_induced_subgraph(subset)
        if kind == "adjacency":
            matrix = sub.adjacency_matrix()
        elif kind == "laplacian":
            matrix = sub.laplacian_matrix()
        else:
            matrix = sub.signless_laplacian_matrix()
        assign = PhaseAssignment(k, (0,) * len(subset))
        return [
            (pair.value, ReductionWitness(subset, assign, kind, pair.value))
            for pair in eig_real_symmetric(matrix)
        ]

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(eval_subset, subsets))
    else:
        chunks = [eval_subset(subset) for subset in subsets]
    values: list[complex] = []
    witnesses: list[ReductionWitness] = []
    for chunk in chunks:
        for value, witness in chunk:
            values.append(value)
            witnesses.append(witness)
    spectrum = SpectrumSet(values, dedup_tol=dedup_tol, witnesses=witnesses)
    return SpectrumReport(kind, k, spectrum, complete, len(subsets))


def lambda_max_laplacian(g: LoopedGraph, k: int) -> float:
    """Largest H-eigenvalue of the Laplacian tensor of the half blow-up.

    Equals the largest Laplacian matrix eigenvalue of the base graph for every
    admissible k, so k only gates the preconditions.
    """
    _check_power_inputs(g, k)
    return float(eig_real_symmetric(g.laplacian_matrix())[-1].value)


def _witness_order_key(witness: ReductionWitness):
    return (len(witness.subset), witness.subset, witness.phase.phases)


def rho_power(
    g: LoopedGraph,
    k: int,
    kind: str = "laplacian",
    *,
    max_subset: int = DEFAULT_MAX_SUBSET,
    budget: int = DEFAULT_BUDGET,
    parallel: int = 1,
    tie_tol: float = 1e-9,
) -> RhoResult:
    """Spectral radius of the chosen tensor of the half blow-up of ``g``.

    The maximum eigenvalue modulus over the full reduction.  Ties within
    ``tie_tol`` (relative) resolve to the lexicographically smallest
    (|U|, U, phases) witness; among that matrix's top-modulus eigenvalues the
    one with nonnegative imaginary part is preferred.
    """
    kind = normalize_kind(kind)
    _check_power_inputs(g, k)
    plan, complete, used = _plan_work(g, k, max_subset, budget)

    def eval_subset(item: tuple[tuple[int, ...], int]):
        subset, quota = item
        best: list[tuple[float, ReductionWitness]] = []
        for phases in itertools.islice(phase_classes(len(subset), k), quota):
            matrix = reduced_matrix(g, k, subset, phases, kind)
            pairs = eig_complex_pairs(matrix)
            top = max(abs(p.value) for p in pairs)
            candidates = [
                p.value for p in pairs if abs(p.value) >= top - tie_tol * max(1.0, top)
            ]
            nonneg = [v for v in candidates if v.imag >= 0]
            value = min(nonneg or candidates, key=lambda v: (v.real, v.imag))
            best.append(
                (top, ReductionWitness(subset, PhaseAssignment(k, phases), kind, value))
            )
        return best

    if parallel > 1:
        with ThreadPoolExecutor(max_workers=parallel) as pool:
            chunks = list(pool.map(eval_subset, plan))
    else:
        chunks = [eval_subset(item) for item in plan]
    entries = [entry for chunk in chunks for entry in chunk]
    if not entries:
        raise ValueError("reduction produced no matrices")
    top = max(modulus for modulus, _ in entries)
    threshold = top - tie_tol * max(1.0, top)
    tied = [witness for modulus, witness in entries if modulus >= threshold]
    witness = min(tied, key=_witness_order_key)
    return RhoResult(top, witness, complete, used)


def uniform_phase_matrix(g: LoopedGraph, k: int) -> np.ndarray:
    """Reduced Laplacian for the uniform phase assignment at k = 4l + 2.

    With every phase equal to l the adjacency coefficient becomes
    -exp(i*2*pi*l/(2l+1)), which tends to +1 as k grows, so this matrix tends
    to the signless Laplacian of the base graph.  Requires k = 2 (mod 4).
    """
    if k % 4 != 2 or k < 6:
        raise ValueError("uniform phase matrix needs k = 2 (mod 4), k >= 6")
    _check_power_inputs(g, k)
    level = (k - 2) // 4
    coefficient = np.exp(2j * np.pi * level / (2 * level + 1))
    diag = np.diag(g.degree_vector()).astype(complex)
    return diag - coefficient * g.adjacency_matrix()
