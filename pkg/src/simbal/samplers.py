"""Minority oversamplers: random, global, Gaussian, edge-based and simplex-based.

The simplex-based sampler builds a kNN graph over the minority points, takes
the maximal simplices of the p-skeleton of its clique complex, and synthesizes
each new point as a Dirichlet-weighted combination of one simplex's vertices.
The edge-based sampler is the same pipeline with p forced to 1.

Every sampler is a pure function of (dataset, parameters, seed). Synthetic
points carry provenance: the dataset-level vertex ids of the source simplex
and the barycentric weight vector, so each output row can be reconstructed
and audited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .complexes import MAXIMAL, Skeleton, p_skeleton
from .datasets import Dataset, DatasetError, MINORITY
from .geometry import sample_dirichlet
from .graphs import UNION, knn_graph

# Ridge added to the fitted covariance diagonal before factorization.
GAUSSIAN_RIDGE_REL = 1e-6
GAUSSIAN_RIDGE_ABS = 1e-12


class SamplerParameterError(ValueError):
    """Raised for invalid sampler configuration."""


class Method(Enum):
    RANDOM = "random"
    GLOBAL = "global"
    GAUSSIAN = "gaussian"
    SMOTE = "smote"
    SIMPLICIAL = "simplicial"
    BORDERLINE = "borderline"
    S_BORDERLINE = "s_borderline"
    SAFELEVEL = "safelevel"
    S_SAFELEVEL = "s_safelevel"
    ADASYN = "adasyn"
    S_ADASYN = "s_adasyn"


# Methods whose pipeline starts from a neighborhood graph.
GRAPH_METHODS = frozenset(Method) - {Method.RANDOM, Method.GLOBAL, Method.GAUSSIAN}
# Variant methods in simplex form; their graph twins force p=1.
SIMPLICIAL_VARIANTS = frozenset({Method.S_BORDERLINE, Method.S_SAFELEVEL, Method.S_ADASYN})

INVERSE_SAFETY = "inverse"
PLUS_ONE_SAFETY = "plus-one"


@dataclass(frozen=True)
class SamplerConfig:
    method: Method
    k: int | None = None
    p: int | None = MAXIMAL
    seed: int = 0
    target_count: int | None = None
    symmetrize: str = UNION
    safelevel_formula: str = INVERSE_SAFETY

    def __post_init__(self):
        if not isinstance(self.method, Method):
            raise SamplerParameterError(f"method must be a Method, got {self.method!r}")
        if self.method in GRAPH_METHODS:
            if self.k is None or int(self.k) < 1:
                raise SamplerParameterError(
                    f"method {self.method.value} needs a neighborhood size k >= 1, got {self.k!r}"
                )
            if self.p is not MAXIMAL:
                if int(self.p) < 1:
                    raise SamplerParameterError(f"p must be >= 1 or MAXIMAL, got {self.p}")
                if int(self.p) > int(self.k):
                    raise SamplerParameterError(
                        f"p={self.p} exceeds k={self.k}; a k-neighborhood cannot ask for "
                        f"higher-order simplices than it has neighbors"
                    )
        if not 0 <= int(self.seed) < 2 ** 64:
            raise SamplerParameterError(f"seed must fit in 64 unsigned bits, got {self.seed}")
        if self.target_count is not None and int(self.target_count) < 0:
            raise SamplerParameterError(f"target_count must be >= 0, got {self.target_count}")
        if self.safelevel_formula not in (INVERSE_SAFETY, PLUS_ONE_SAFETY):
            raise SamplerParameterError(
                f"safelevel_formula must be '{INVERSE_SAFETY}' or '{PLUS_ONE_SAFETY}'"
            )


@dataclass(frozen=True)
class Provenance:
    """Source record for one synthetic point."""

    simplex: tuple[int, ...]  # dataset-level vertex ids, ascending; () for gaussian
    lam: tuple[float, ...]    # barycentric weights, aligned with simplex
    kind: str = "barycentric"


@dataclass(frozen=True)
class SyntheticBatch:
    points: np.ndarray
    provenance: tuple[Provenance, ...]
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        if pts.ndim != 2:
            raise SamplerParameterError(f"points must be 2-d, got shape {pts.shape}")
        if len(self.provenance) != pts.shape[0]:
            raise SamplerParameterError("one provenance record per synthetic point required")
        object.__setattr__(self, "points", pts)

    @property
    def m(self) -> int:
        return self.points.shape[0]

    def labels(self) -> np.ndarray:
        return np.full(self.m, MINORITY)

    def augmented(self, ds: Dataset) -> Dataset:
        """Original dataset with the synthetic minority rows appended."""
        return Dataset(
            np.vstack([ds.features, self.points]),
            np.concatenate([ds.labels, self.labels()]),
        )


class SampleStreams:
    """Deterministic RNG streams for one sampler invocation.

    The base stream drives simplex selection; synthetic point i gets its own
    stream at a fixed jump offset of i+1, so per-point draws do not depend on
    generation order and parallel generation matches sequential generation.
    """

    def __init__(self, seed: int):
        self.seed = int(seed)
        self.selection = np.random.Generator(np.random.PCG64(self.seed))

    def point_stream(self, i: int) -> np.random.Generator:
        return np.random.Generator(np.random.PCG64(self.seed).jumped(i + 1))


def _resolve_m(ds: Dataset, target_count: int | None) -> int:
    if target_count is not None:
        return int(target_count)
    gap = ds.n_majority - ds.n_minority
    if gap < 0:
        raise DatasetError(
            f"minority class (+1, n={ds.n_minority}) is larger than the majority class "
            f"(n={ds.n_majority}); nothing to oversample"
        )
    return gap


def _empty_batch(d: int, meta: dict) -> SyntheticBatch:
    return SyntheticBatch(np.empty((0, d)), (), meta)


def oversample_random(ds: Dataset, m: int | None = None, seed: int = 0) -> SyntheticBatch:
    """Duplicate minority rows uniformly with replacement."""
    if ds.n_minority < 1:
        raise SamplerParameterError("need at least one minority point")
    m = _resolve_m(ds, m)
    meta = {"method": Method.RANDOM.value, "seed": int(seed)}
    if m == 0:
        return _empty_batch(ds.d, meta)
    streams = SampleStreams(seed)
    idx_min = ds.minority_indices()
    picks = idx_min[streams.selection.integers(0, idx_min.size, size=m)]
    prov = tuple(Provenance((int(j),), (1.0,)) for j in picks)
    return SyntheticBatch(ds.features[picks], prov, meta)


def oversample_global(ds: Dataset, m: int | None = None, seed: int = 0) -> SyntheticBatch:
    """Convex combinations of uniformly chosen distinct minority pairs."""
    if ds.n_minority < 2:
        batch = oversample_random(ds, m, seed)
        meta = dict(batch.meta, method=Method.GLOBAL.value,
                    warnings=("fewer than 2 minority points; duplicated instead of combining",))
        return SyntheticBatch(batch.points, batch.provenance, meta)
    m = _resolve_m(ds, m)
    meta = {"method": Method.GLOBAL.value, "seed": int(seed)}
    if m == 0:
        return _empty_batch(ds.d, meta)
    streams = SampleStreams(seed)
    idx_min = ds.minority_indices()
    n_plus = idx_min.size
    first = streams.selection.integers(0, n_plus, size=m)
    second = streams.selection.integers(0, n_plus - 1, size=m)
    second = second + (second >= first)  # distinct partner, still uniform
    points = np.empty((m, ds.d))
    prov = []
    for i in range(m):
        pair = (int(idx_min[first[i]]), int(idx_min[second[i]]))
        lam = sample_dirichlet((1.0, 1.0), streams.point_stream(i))
        if pair[0] > pair[1]:
            pair = (pair[1], pair[0])
            lam = lam[::-1]
        points[i] = lam @ ds.features[list(pair)]
        prov.append(Provenance(pair, tuple(lam.tolist())))
    return SyntheticBatch(points, tuple(prov), meta)


def oversample_gaussian(ds: Dataset, m: int | None = None, seed: int = 0) -> SyntheticBatch:
    """Draw from a Gaussian fitted to the minority class (mean + full covariance)."""
    if ds.n_minority < 2:
        batch = oversample_random(ds, m, seed)
        meta = dict(batch.meta, method=Method.GAUSSIAN.value,
                    warnings=("fewer than 2 minority points; duplicated instead of fitting",))
        return SyntheticBatch(batch.points, batch.provenance, meta)
    m = _resolve_m(ds, m)
    meta = {"method": Method.GAUSSIAN.value, "seed": int(seed)}
    if m == 0:
        return _empty_batch(ds.d, meta)
    minority = ds.minority_features()
    mu = minority.mean(axis=0)
    cov = np.cov(minority, rowvar=False).reshape(ds.d, ds.d)
    ridge = GAUSSIAN_RIDGE_REL * np.trace(cov) / ds.d + GAUSSIAN_RIDGE_ABS
    chol = np.linalg.cholesky(cov + ridge * np.eye(ds.d))
    streams = SampleStreams(seed)
    points = np.empty((m, ds.d))
    for i in range(m):
        z = streams.point_stream(i).standard_normal(ds.d)
        points[i] = mu + chol @ z
    prov = tuple(Provenance((), (), kind="gaussian") for _ in range(m))
    return SyntheticBatch(points, prov, meta)


def minority_skeleton(ds: Dataset, k: int, p: int | None = MAXIMAL,
                      symmetrize: str = UNION) -> tuple[Skeleton, np.ndarray, dict]:
    """Skeleton of the minority kNN clique complex, with k clamped to n_plus - 1.

    Returns (skeleton over minority-local vertex ids, minority dataset indices,
    clamp info).
    """
    idx_min = ds.minority_indices()
    n_plus = idx_min.size
    if n_plus < 2:
        raise SamplerParameterError("need at least 2 minority points to build a graph")
    k_used = min(int(k), n_plus - 1)
    graph = knn_graph(ds.features[idx_min], k_used, symmetrize)
    sk = p_skeleton(graph, p)
    info = {"k_requested": int(k), "k_used": k_used, "k_clamped": k_used != int(k)}
    return sk, idx_min, info


def _sample_from_simplices(features: np.ndarray, simplices: list[tuple[int, ...]],
                           m: int, streams: SampleStreams, meta: dict,
                           weights: np.ndarray | None = None,
                           alpha_fn=None) -> SyntheticBatch:
    """Shared back half of every simplex-based sampler.

    ``simplices`` hold dataset-level vertex ids in canonical order;
    ``weights`` switches selection from uniform to the given distribution;
    ``alpha_fn`` maps a simplex to its Dirichlet parameters (default all-ones).
    """
    if m == 0:
        return _empty_batch(features.shape[1], meta)
    if weights is None:
        sel = streams.selection.integers(0, len(simplices), size=m)
    else:
        sel = streams.selection.choice(len(simplices), size=m, p=weights)
    points = np.empty((m, features.shape[1]))
    prov = []
    for i in range(m):
        simplex = simplices[int(sel[i])]
        alpha = np.ones(len(simplex)) if alpha_fn is None else alpha_fn(simplex)
        lam = sample_dirichlet(alpha, streams.point_stream(i))
        points[i] = lam @ features[list(simplex)]
        prov.append(Provenance(simplex, tuple(lam.tolist())))
    return SyntheticBatch(points, tuple(prov), meta)


def dataset_level_simplices(sk: Skeleton, idx_min: np.ndarray) -> list[tuple[int, ...]]:
    """Map a minority-local skeleton to ascending dataset-level vertex tuples."""
    return sorted(tuple(int(idx_min[v]) for v in s) for s in sk.sorted_simplices())


def oversample_simplicial(ds: Dataset, k: int, p: int | None = MAXIMAL,
                          m: int | None = None, seed: int = 0,
                          symmetrize: str = UNION,
                          method: Method = Method.SIMPLICIAL) -> SyntheticBatch:
    """Synthesize from maximal simplices of the minority clique complex p-skeleton."""
    if ds.n_minority == 1:
        batch = oversample_random(ds, m, seed)
        meta = dict(batch.meta, method=method.value,
                    warnings=("single minority point; duplicated instead of interpolating",))
        return SyntheticBatch(batch.points, batch.provenance, meta)
    m = _resolve_m(ds, m)
    sk, idx_min, info = minority_skeleton(ds, k, p, symmetrize)
    meta = {"method": method.value, "seed": int(seed), "symmetrize": symmetrize,
            "p": "max" if p is MAXIMAL else int(p), **info,
            "n_candidate_simplices": len(sk.maximal_simplices)}
    simplices = dataset_level_simplices(sk, idx_min)
    return _sample_from_simplices(ds.features, simplices, m, SampleStreams(seed), meta)


def oversample_smote(ds: Dataset, k: int, m: int | None = None, seed: int = 0,
                     symmetrize: str = UNION) -> SyntheticBatch:
    """Edge-based special case: the simplex pipeline with p forced to 1."""
    return oversample_simplicial(ds, k, 1, m, seed, symmetrize, method=Method.SMOTE)


def oversample(ds: Dataset, config: SamplerConfig) -> SyntheticBatch:
    """Dispatch a configured oversampling run."""
    from . import variants  # graph/simplex safety variants layer on this module

    m = config.target_count
    if config.method is Method.RANDOM:
        return oversample_random(ds, m, config.seed)
    if config.method is Method.GLOBAL:
        return oversample_global(ds, m, config.seed)
    if config.method is Method.GAUSSIAN:
        return oversample_gaussian(ds, m, config.seed)
    if config.method is Method.SMOTE:
        return oversample_smote(ds, config.k, m, config.seed, config.symmetrize)
    if config.method is Method.SIMPLICIAL:
        return oversample_simplicial(ds, config.k, config.p, m, config.seed, config.symmetrize)
    simplicial = config.method in SIMPLICIAL_VARIANTS
    p = config.p if simplicial else 1
    if config.method in (Method.BORDERLINE, Method.S_BORDERLINE):
        return variants.oversample_borderline(
            ds, config.k, p, m, config.seed, simplicial=simplicial,
            symmetrize=config.symmetrize)
    if config.method in (Method.SAFELEVEL, Method.S_SAFELEVEL):
        return variants.oversample_safelevel(
            ds, config.k, p, m, config.seed, simplicial=simplicial,
            symmetrize=config.symmetrize, formula=config.safelevel_formula)
    if config.method in (Method.ADASYN, Method.S_ADASYN):
        return variants.oversample_adasyn(
            ds, config.k, p, m, config.seed, simplicial=simplicial,
            symmetrize=config.symmetrize)
    raise SamplerParameterError(f"unhandled method {config.method!r}")
