"""Shared test fixtures and independent oracles."""

from __future__ import annotations

from itertools import combinations

import numpy as np

from simbal import Dataset, NeighborhoodGraph


def random_imbalanced_dataset(seed: int) -> Dataset:
    """Two overlapping Gaussian clouds with n_plus in [5, 50] and d in [2, 10].

    The class means sit well under one standard deviation apart, so minority
    points routinely land in majority-dominated neighborhoods: the mixed
    regime every safety-aware sampler needs.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    n_plus = int(rng.integers(5, 51))
    d = int(rng.integers(2, 11))
    ratio = float(rng.uniform(2.0, 6.0))
    n_minus = max(n_plus + 1, int(round(n_plus * ratio)))
    shift = rng.normal(0.0, 0.25, size=d)
    mino = rng.normal(0.0, 1.0, size=(n_plus, d))
    maj = shift + rng.normal(0.0, 1.1, size=(n_minus, d))
    feats = np.vstack([mino, maj])
    labels = np.concatenate([np.ones(n_plus, dtype=int), -np.ones(n_minus, dtype=int)])
    perm = rng.permutation(feats.shape[0])
    return Dataset(feats[perm], labels[perm])


def random_graph(seed: int, max_n: int = 12, edge_prob: float = 0.5) -> NeighborhoodGraph:
    """Erdos-Renyi graph with 1..max_n vertices."""
    rng = np.random.Generator(np.random.PCG64(seed))
    n = int(rng.integers(1, max_n + 1))
    edges = {(u, v) for u in range(n) for v in range(u + 1, n)
             if rng.uniform() < edge_prob}
    return NeighborhoodGraph(n, frozenset(edges))


def brute_force_cliques(g: NeighborhoodGraph) -> set[tuple[int, ...]]:
    """All cliques by subset enumeration (n <= ~15 only)."""
    adj = g.adjacency()
    cliques = set()
    verts = range(g.n_vertices)
    for size in range(1, g.n_vertices + 1):
        for sub in combinations(verts, size):
            if all(v in adj[u] for u, v in combinations(sub, 2)):
                cliques.add(sub)
    return cliques


def brute_force_maximal_cliques(g: NeighborhoodGraph) -> set[tuple[int, ...]]:
    cliques = brute_force_cliques(g)
    return {c for c in cliques
            if not any(set(c) < set(other) for other in cliques)}


def brute_force_skeleton(g: NeighborhoodGraph, p) -> set[tuple[int, ...]]:
    """Maximal simplices of the p-skeleton by direct definition.

    A clique of size <= p+1 is maximal in the skeleton iff no strictly larger
    clique within the size cap contains it.
    """
    cliques = brute_force_cliques(g)
    if p is None:
        capped = cliques
    else:
        capped = {c for c in cliques if len(c) <= p + 1}
    return {c for c in capped
            if not any(set(c) < set(other) for other in capped)}


def in_convex_hull(point, vertices, tol: float = 1e-7) -> bool:
    """Feasibility of barycentric weights via linear programming."""
    from scipy.optimize import linprog

    verts = np.asarray(vertices, dtype=float)
    q = np.asarray(point, dtype=float)
    k = verts.shape[0]
    a_eq = np.vstack([verts.T, np.ones(k)])
    b_eq = np.concatenate([q, [1.0]])
    res = linprog(np.zeros(k), A_eq=a_eq, b_eq=b_eq, bounds=[(0, None)] * k,
                  method="highs")
    if res.status == 0:
        return True
    # HiGHS declares infeasibility exactly; re-check with a slack objective so
    # borderline points within tol still count as inside.
    n = verts.shape[1]
    a_ub = None
    c = np.concatenate([np.zeros(k), np.ones(2 * n)])
    a_eq2 = np.vstack([
        np.hstack([verts.T, np.eye(n), -np.eye(n)]),
        np.concatenate([np.ones(k), np.zeros(2 * n)]),
    ])
    res2 = linprog(c, A_eq=a_eq2, b_eq=b_eq, A_ub=a_ub,
                   bounds=[(0, None)] * (k + 2 * n), method="highs")
    return res2.status == 0 and res2.fun <= tol


def reconstruction_error(batch, features) -> float:
    """Worst-case |lam @ X - point| over barycentric provenance records."""
    worst = 0.0
    for pt, pr in zip(batch.points, batch.provenance):
        if pr.kind != "barycentric":
            continue
        rec = np.asarray(pr.lam) @ features[list(pr.simplex)]
        worst = max(worst, float(np.max(np.abs(rec - pt))))
    return worst
