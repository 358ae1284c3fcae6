"""Safety-aware oversampling variants: borderline, safe-level, density-adaptive.

Each variant reuses the simplex pipeline and changes exactly one knob:

* borderline restricts which simplices may be sampled,
* safe-level reshapes the Dirichlet parameters per simplex,
* the density-adaptive variant reweights simplex selection.

All three exist in graph form (p forced to 1) and simplicial form. Safety is
measured on the full dataset: for each minority point, the class mix of its k
nearest neighbors (self excluded).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import MAXIMAL, p_skeleton
from .datasets import Dataset, MINORITY
from .graphs import UNION, knn_graph, pairwise_distances, _neighbor_order
from .samplers import (
    INVERSE_SAFETY,
    Method,
    PLUS_ONE_SAFETY,
    SampleStreams,
    SamplerParameterError,
    SyntheticBatch,
    _resolve_m,
    _sample_from_simplices,
    dataset_level_simplices,
    minority_skeleton,
    oversample_random,
)


class EmptyBorderlineError(ValueError):
    """No minority point is majority-dominated; borderline sampling is undefined."""


@dataclass(frozen=True)
class NeighborhoodSafety:
    """Per-minority-point neighbor class counts on the full-dataset kNN relation.

    Counts are exact integers with k_plus + k_minus = k; the ratio properties
    derive from them.
    """

    minority_indices: np.ndarray  # dataset-level ids, ascending
    k: int
    k_plus: np.ndarray
    k_minus: np.ndarray

    def __post_init__(self):
        kp = np.asarray(self.k_plus, dtype=int)
        km = np.asarray(self.k_minus, dtype=int)
        idx = np.asarray(self.minority_indices, dtype=int)
        if not (kp.shape == km.shape == idx.shape):
            raise SamplerParameterError("safety arrays must be aligned")
        if np.any(kp < 0) or np.any(km < 0) or np.any(kp + km != self.k):
            raise SamplerParameterError("neighbor counts must be nonnegative and sum to k")
        object.__setattr__(self, "minority_indices", idx)
        object.__setattr__(self, "k_plus", kp)
        object.__setattr__(self, "k_minus", km)

    @property
    def delta_plus(self) -> np.ndarray:
        return self.k_plus / self.k

    @property
    def delta_minus(self) -> np.ndarray:
        return self.k_minus / self.k

    def position(self) -> dict[int, int]:
        """Dataset-level minority id -> row in the safety arrays."""
        return {int(v): i for i, v in enumerate(self.minority_indices)}

    def safe_level_ratio(self, i: int, j: int) -> float:
        """Ratio of minority-neighbor fractions of two minority points.

        Diagnostic only; inf when the second point has no minority neighbors.
        """
        pos = self.position()
        num = self.k_plus[pos[int(i)]]
        den = self.k_plus[pos[int(j)]]
        if den == 0:
            return float("inf") if num > 0 else float("nan")
        return float(num / den)


def compute_safety(ds: Dataset, k: int) -> NeighborhoodSafety:
    """Class mix of each minority point's k nearest neighbors in the whole dataset."""
    k = int(k)
    if k < 1:
        raise SamplerParameterError(f"safety neighborhood size must be >= 1, got {k}")
    if k >= ds.n:
        raise SamplerParameterError(
            f"safety neighborhood k={k} needs at least k+1={k + 1} points, dataset has {ds.n}"
        )
    dist = pairwise_distances(ds.features)
    idx_min = ds.minority_indices()
    k_plus = np.empty(idx_min.size, dtype=int)
    for row, i in enumerate(idx_min):
        neighbors = _neighbor_order(dist[i], int(i))[:k]
        k_plus[row] = int(np.sum(ds.labels[neighbors] == MINORITY))
    return NeighborhoodSafety(idx_min, k, k_plus, k - k_plus)


def borderline_subset(ds: Dataset, k: int,
                      safety: NeighborhoodSafety | None = None) -> set[int]:
    """Minority points that are majority-dominated but not pure noise.

    Membership: strictly fewer than half the neighbors are minority, and at
    least one is. Returned as dataset-level indices. Integer comparisons keep
    the half-threshold exact.
    """
    if safety is None:
        safety = compute_safety(ds, k)
    border = (2 * safety.k_plus < safety.k) & (safety.k_plus > 0)
    return {int(v) for v in safety.minority_indices[border]}


def safelevel_alphas(safety: NeighborhoodSafety, simplex: tuple[int, ...],
                     formula: str = INVERSE_SAFETY) -> np.ndarray:
    """Dirichlet parameters for one simplex from its vertices' safety levels.

    ``inverse``: alpha_i = 1 / max(delta_plus_i, 1/k) = k / max(k_plus_i, 1),
    so zero minority-neighbor counts clamp instead of dividing by zero.
    ``plus-one``: alpha_i = 1 + delta_plus_i.
    """
    pos = safety.position()
    kp = np.array([safety.k_plus[pos[int(v)]] for v in simplex], dtype=float)
    if formula == INVERSE_SAFETY:
        return safety.k / np.maximum(kp, 1.0)
    if formula == PLUS_ONE_SAFETY:
        return 1.0 + kp / safety.k
    raise SamplerParameterError(
        f"formula must be '{INVERSE_SAFETY}' or '{PLUS_ONE_SAFETY}', got {formula!r}"
    )


def adasyn_weights(safety: NeighborhoodSafety, simplices) -> np.ndarray:
    """Selection probabilities proportional to mean vertex un-safety per simplex.

    A simplex whose vertices sit deep in majority territory (high majority
    ratio) is sampled more often. All-safe input degenerates to uniform.
    """
    simplices = list(simplices)
    if not simplices:
        raise SamplerParameterError("need at least one simplex to weight")
    pos = safety.position()
    raw = np.array([
        float(np.mean([safety.k_minus[pos[int(v)]] for v in s])) / safety.k
        for s in simplices
    ])
    total = raw.sum()
    if total <= 0.0:
        return np.full(len(simplices), 1.0 / len(simplices))
    return raw / total


def _effective_k(ds: Dataset, k: int) -> int:
    if ds.n_minority < 2:
        raise SamplerParameterError("need at least 2 minority points")
    if int(k) < 1:
        raise SamplerParameterError(f"k must be >= 1, got {k}")
    return min(int(k), ds.n_minority - 1)


def oversample_safelevel(ds: Dataset, k: int, p: int | None = MAXIMAL,
                         m: int | None = None, seed: int = 0, *,
                         simplicial: bool = True, symmetrize: str = UNION,
                         formula: str = INVERSE_SAFETY) -> SyntheticBatch:
    """Simplex pipeline with safety-shaped Dirichlet parameters."""
    method = Method.S_SAFELEVEL if simplicial else Method.SAFELEVEL
    if not simplicial:
        p = 1
    if ds.n_minority == 1:
        batch = oversample_random(ds, m, seed)
        meta = dict(batch.meta, method=method.value,
                    warnings=("single minority point; duplicated instead of interpolating",))
        return SyntheticBatch(batch.points, batch.provenance, meta)
    m = _resolve_m(ds, m)
    sk, idx_min, info = minority_skeleton(ds, k, p, symmetrize)
    safety = compute_safety(ds, info["k_used"])
    simplices = dataset_level_simplices(sk, idx_min)
    meta = {"method": method.value, "seed": int(seed), "symmetrize": symmetrize,
            "p": "max" if p is MAXIMAL else int(p), "formula": formula, **info,
            "n_candidate_simplices": len(simplices)}
    return _sample_from_simplices(
        ds.features, simplices, m, SampleStreams(seed), meta,
        alpha_fn=lambda s: safelevel_alphas(safety, s, formula))


def oversample_adasyn(ds: Dataset, k: int, p: int | None = MAXIMAL,
                      m: int | None = None, seed: int = 0, *,
                      simplicial: bool = True, symmetrize: str = UNION) -> SyntheticBatch:
    """Simplex pipeline with selection biased toward majority-crowded simplices."""
    method = Method.S_ADASYN if simplicial else Method.ADASYN
    if not simplicial:
        p = 1
    if ds.n_minority == 1:
        batch = oversample_random(ds, m, seed)
        meta = dict(batch.meta, method=method.value,
                    warnings=("single minority point; duplicated instead of interpolating",))
        return SyntheticBatch(batch.points, batch.provenance, meta)
    m = _resolve_m(ds, m)
    sk, idx_min, info = minority_skeleton(ds, k, p, symmetrize)
    safety = compute_safety(ds, info["k_used"])
    simplices = dataset_level_simplices(sk, idx_min)
    weights = adasyn_weights(safety, simplices)
    meta = {"method": method.value, "seed": int(seed), "symmetrize": symmetrize,
            "p": "max" if p is MAXIMAL else int(p), **info,
            "n_candidate_simplices": len(simplices)}
    return _sample_from_simplices(
        ds.features, simplices, m, SampleStreams(seed), meta, weights=weights)


def oversample_borderline(ds: Dataset, k: int, p: int | None = MAXIMAL,
                          m: int | None = None, seed: int = 0, *,
                          simplicial: bool = True, symmetrize: str = UNION) -> SyntheticBatch:
    """Simplex pipeline restricted to majority-dominated minority territory.

    The complex is built over the borderline points together with the minority
    members of their safety neighborhoods; only simplices touching at least
    one borderline point are sampleable.
    """
    method = Method.S_BORDERLINE if simplicial else Method.BORDERLINE
    if not simplicial:
        p = 1
    if ds.n_minority < 2:
        raise EmptyBorderlineError(
            "no borderline minority points exist; use the plain edge or simplex sampler"
        )
    k_eff = _effective_k(ds, k)
    safety = compute_safety(ds, k_eff)
    border = borderline_subset(ds, k_eff, safety)
    if not border:
        raise EmptyBorderlineError(
            "every minority point is either safe or pure noise at this k; "
            "borderline oversampling has nothing to target, use the plain "
            "edge or simplex sampler instead"
        )
    m = _resolve_m(ds, m)
    # Support set: borderline points plus the minority members of their
    # full-dataset neighborhoods.
    dist = pairwise_distances(ds.features)
    support = set(border)
    for i in sorted(border):
        neighbors = _neighbor_order(dist[i], i)[:k_eff]
        support.update(int(v) for v in neighbors if ds.labels[v] == MINORITY)
    support_idx = np.array(sorted(support), dtype=int)
    k_graph = min(k_eff, support_idx.size - 1)
    graph = knn_graph(ds.features[support_idx], k_graph, symmetrize)
    sk = p_skeleton(graph, p)
    all_simplices = dataset_level_simplices(sk, support_idx)
    simplices = [s for s in all_simplices if any(v in border for v in s)]
    meta = {"method": method.value, "seed": int(seed), "symmetrize": symmetrize,
            "p": "max" if p is MAXIMAL else int(p),
            "k_requested": int(k), "k_used": k_graph,
            "k_clamped": k_graph != int(k), "safety_k": k_eff,
            "borderline": tuple(sorted(border)),
            "n_candidate_simplices": len(simplices)}
    return _sample_from_simplices(ds.features, simplices, m, SampleStreams(seed), meta)
