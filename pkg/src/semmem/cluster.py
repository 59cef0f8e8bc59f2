"""Document clustering in the enriched concept space, quality metrics,
classical multidimensional scaling, and plot emission.

Clustering is agglomerative average-link over cosine distance with a
fully deterministic merge order.  The MDS eigen-solve uses power
iteration with deflation; adequate at desk scale (n <= 500).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coset import ConceptVector
from .errors import ConvergenceError

SVG_WIDTH = 800
SVG_HEIGHT = 600

# One glyph per cluster: (fill, shape) pairs cycle when clusters exceed the palette.
GLYPH_PALETTE = (
    ("#1f77b4", "circle"),
    ("#ff7f0e", "square"),
    ("#2ca02c", "triangle"),
    ("#d62728", "diamond"),
    ("#9467bd", "circle"),
    ("#8c564b", "square"),
    ("#e377c2", "triangle"),
    ("#7f7f7f", "diamond"),
)

_POWER_TOL = 1e-10
_POWER_MAX_ITER = 1000


@dataclass
class ClusterResult:
    labels: dict[str, int]
    k: int
    purity: float | None = None
    ari: float | None = None


def validate_distance_matrix(D: np.ndarray) -> None:
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ValueError("distance matrix must be square")
    if np.any(D < 0):
        raise ValueError("distances must be >= 0")
    if np.max(np.abs(D - D.T), initial=0.0) > 1e-12:
        raise ValueError("distance matrix must be symmetric to 1e-12")
    if np.any(np.diag(D) != 0.0):
        raise ValueError("distance matrix diagonal must be zero")


def cosine_distance_matrix(vectors: list[ConceptVector]) -> np.ndarray:
    """1 - cosine over unit vectors; diagonal forced to exact zero."""
    n = len(vectors)
    D = np.zeros((n, n), dtype=np.float64)
    for i in range(n):
        for j in range(i + 1, n):
            d = max(0.0, 1.0 - vectors[i].dot(vectors[j]))
            D[i, j] = D[j, i] = d
    return D


def purity_score(assigned: dict[str, int], gold: dict[str, str]) -> float:
    """Fraction of documents in the majority gold class of their cluster."""
    clusters: dict[int, list[str]] = {}
    for doc_id, c in assigned.items():
        clusters.setdefault(c, []).append(gold[doc_id])
    total = sum(
        max(labels.count(cls) for cls in set(labels)) for labels in clusters.values()
    )
    return total / len(assigned)


def adjusted_rand_index(assigned: dict[str, int], gold: dict[str, str]) -> float:
    """Standard ARI over the shared document ids."""
    ids = sorted(assigned)
    a = [assigned[i] for i in ids]
    b = [gold[i] for i in ids]
    n = len(ids)
    contingency: dict[tuple[int, str], int] = {}
    a_marg: dict[int, int] = {}
    b_marg: dict[str, int] = {}
    for x, y in zip(a, b):
        contingency[(x, y)] = contingency.get((x, y), 0) + 1
        a_marg[x] = a_marg.get(x, 0) + 1
        b_marg[y] = b_marg.get(y, 0) + 1
    comb2 = lambda m: m * (m - 1) / 2.0
    sum_cells = sum(comb2(v) for v in contingency.values())
    sum_a = sum(comb2(v) for v in a_marg.values())
    sum_b = sum(comb2(v) for v in b_marg.values())
    total = comb2(n)
    expected = sum_a * sum_b / total if total else 0.0
    max_index = (sum_a + sum_b) / 2.0
    if max_index == expected:
        return 1.0
    return (sum_cells - expected) / (max_index - expected)


def cluster_documents(
    vectors: dict[str, ConceptVector],
    k: int,
    gold: dict[str, str] | None = None,
) -> ClusterResult:
    """Agglomerative average-link clustering down to k clusters.

    Merge order is deterministic: the closest pair wins, ties broken by
    the smallest pair of cluster indices (a cluster's index is its
    smallest member's position in sorted doc-id order).
    """
    doc_ids = sorted(vectors)
    n = len(doc_ids)
    if k < 1 or k > n:
        raise ValueError(f"k={k} must be in [1, {n}]")
    D = cosine_distance_matrix([vectors[d] for d in doc_ids])

    # Upper triangle holds inter-cluster distances; everything else is inf.
    # Flattened argmin scans row-major, which is exactly the smallest-(i,j)
    # tie-break the contract requires.
    work = np.full((n, n), np.inf)
    iu = np.triu_indices(n, k=1)
    work[iu] = D[iu]
    members: dict[int, list[int]] = {i: [i] for i in range(n)}
    active = np.ones(n, dtype=bool)
    sizes = np.ones(n, dtype=np.int64)

    for _ in range(n - k):
        flat = int(np.argmin(work))
        i, j = divmod(flat, n)
        ni, nj = sizes[i], sizes[j]
        # Lance-Williams average-linkage update against every other cluster
        for m in np.nonzero(active)[0]:
            if m == i or m == j:
                continue
            a = work[min(i, m), max(i, m)]
            b = work[min(j, m), max(j, m)]
            work[min(i, m), max(i, m)] = (ni * a + nj * b) / (ni + nj)
        work[j, :] = np.inf
        work[:, j] = np.inf
        active[j] = False
        sizes[i] += sizes[j]
        members[i] = members[i] + members.pop(j)

    labels: dict[str, int] = {}
    for cluster_index, root in enumerate(sorted(members)):
        for pos in members[root]:
            labels[doc_ids[pos]] = cluster_index

    purity = ari = None
    if gold is not None:
        purity = purity_score(labels, gold)
        ari = adjusted_rand_index(labels, gold)
    return ClusterResult(labels=labels, k=k, purity=purity, ari=ari)


def _power_iteration(
    B: np.ndarray,
    found: list[np.ndarray],
    index: int,
    rng: np.random.Generator,
    scale: float,
) -> tuple[float, np.ndarray]:
    """Algebraically largest eigenpair of B restricted to the complement of
    the already found eigenvectors.

    Deflation is by projection (matrix subtraction builds a noise floor
    that blocks tight tolerances).  The iterate is a plain power step; each
    step additionally checks a 2-dimensional Rayleigh-Ritz vector built on
    span{v, residual}, which is what converges when the top eigenvalues are
    nearly degenerate or form a +/- pair that stalls the plain iteration.
    """
    n = B.shape[0]

    def deflate(w: np.ndarray) -> np.ndarray:
        for u in found:
            w = w - (u @ w) * u
        return w

    def residual_norm(vec: np.ndarray, image: np.ndarray, lam: float) -> float:
        return float(np.max(np.abs(image - lam * vec)))

    v = deflate(rng.standard_normal(n))
    norm = np.linalg.norm(v)
    if norm < 1e-300:
        return 0.0, np.zeros(n)
    v /= norm
    for _ in range(_POWER_MAX_ITER):
        w = deflate(B @ v)
        wnorm = float(np.linalg.norm(w))
        if wnorm < _POWER_TOL * scale:
            return 0.0, np.zeros(n)
        lam = float(v @ w)
        r = w - lam * v
        if residual_norm(v, w, lam) <= _POWER_TOL * scale:
            return lam, v
        # Rayleigh-Ritz on span{v, r}: the algebraically largest Ritz vector
        # converges even when the plain iterate cannot decide between two
        # near-equal (or opposite-sign) dominant eigenvalues.
        rnorm = float(np.linalg.norm(r))
        if rnorm > 1e-300:
            rhat = deflate(r / rnorm)
            rh_norm = float(np.linalg.norm(rhat))
            if rh_norm > 1e-12:
                rhat /= rh_norm
                rhat -= (v @ rhat) * v  # keep the 2D basis orthonormal
                rh_norm = float(np.linalg.norm(rhat))
            if rh_norm > 1e-12:
                rhat /= rh_norm
                z = deflate(B @ rhat)
                m01 = float(v @ z)
                m11 = float(rhat @ z)
                # symmetric 2x2 eigenproblem, closed form, larger root
                half_tr = (lam + m11) / 2.0
                disc = math.sqrt(((lam - m11) / 2.0) ** 2 + m01 * m01)
                theta = half_tr + disc
                y0, y1 = m01, theta - lam
                ynorm = math.hypot(y0, y1)
                if ynorm > 1e-300:
                    u = (y0 * v + y1 * rhat) / ynorm
                    unorm = float(np.linalg.norm(u))
                    if unorm > 1e-12:
                        u /= unorm
                        Bu = deflate(B @ u)
                        theta_u = float(u @ Bu)
                        if residual_norm(u, Bu, theta_u) <= _POWER_TOL * scale:
                            return theta_u, u
        v = w / wnorm
    raise ConvergenceError(f"power iteration failed to converge for eigenpair {index}")


def mds_embed(D: np.ndarray, dim: int) -> np.ndarray:
    """Classical scaling: double-center the squared distances and take the
    top-dim eigenpairs by power iteration with deflation.

    Negative eigenvalues are clipped to zero; output is centered at the
    origin.  Raises ConvergenceError naming the eigen index when power
    iteration stalls.
    """
    validate_distance_matrix(D)
    n = D.shape[0]
    if not 1 <= dim <= max(1, n - 1):
        raise ValueError(f"dim={dim} must be in [1, n-1]")
    J = np.eye(n) - np.ones((n, n)) / n
    B = -0.5 * J @ (D**2) @ J
    B = (B + B.T) / 2.0

    rng = np.random.default_rng(0x5EED)
    coords = np.zeros((n, dim))
    found: list[np.ndarray] = []
    scale = 1.0
    exhausted = False
    for idx in range(dim):
        # Power iteration surfaces eigenpairs by magnitude; MDS keeps the
        # positive spectrum, so converged negative pairs are deflated away
        # and the search continues until a positive one (or nothing) is left.
        while not exhausted:
            lam, v = _power_iteration(B, found, idx, rng, scale)
            if not found and not np.any(v):
                exhausted = True
                break
            scale = max(scale, abs(lam))
            if not np.any(v) or abs(lam) <= _POWER_TOL * scale:
                exhausted = True
                break
            found.append(v)
            if lam > 0:
                coords[:, idx] = v * math.sqrt(lam)
                break
            if len(found) >= n:
                exhausted = True
                break
    coords -= coords.mean(axis=0)
    return coords


def _svg_glyph(shape: str, x: float, y: float, fill: str) -> str:
    r = 5.0
    if shape == "circle":
        return f'<circle cx="{x:.2f}" cy="{y:.2f}" r="{r}" fill="{fill}"/>'
    if shape == "square":
        return (
            f'<rect x="{x - r:.2f}" y="{y - r:.2f}" width="{2 * r}" height="{2 * r}" '
            f'fill="{fill}"/>'
        )
    if shape == "triangle":
        pts = f"{x:.2f},{y - r:.2f} {x - r:.2f},{y + r:.2f} {x + r:.2f},{y + r:.2f}"
        return f'<polygon points="{pts}" fill="{fill}"/>'
    pts = f"{x:.2f},{y - r:.2f} {x + r:.2f},{y:.2f} {x:.2f},{y + r:.2f} {x - r:.2f},{y:.2f}"
    return f'<polygon points="{pts}" fill="{fill}"/>'


def emit_plot(
    coords: np.ndarray,
    labels: dict[str, int],
    path_prefix: str,
    gold: dict[str, str] | None = None,
    doc_ids: list[str] | None = None,
) -> list[str]:
    """Write <prefix>.csv and a self-contained <prefix>.svg scatter.

    Output is byte-deterministic for identical inputs; one glyph class
    per cluster.
    """
    ids = doc_ids if doc_ids is not None else sorted(labels)
    rows = []
    for i, doc_id in enumerate(ids):
        x = coords[i, 0] if coords.size else 0.0
        y = coords[i, 1] if coords.shape[1] > 1 else 0.0
        rows.append((doc_id, x, y, labels[doc_id], gold.get(doc_id, "") if gold else ""))

    csv_path = f"{path_prefix}.csv"
    svg_path = f"{path_prefix}.svg"
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("doc_id,x,y,cluster,gold\n")
        for doc_id, x, y, cluster, g in rows:
            fh.write(f"{doc_id},{x:.6f},{y:.6f},{cluster},{g}\n")

    margin = 40.0
    if rows:
        xs = [r[1] for r in rows]
        ys = [r[2] for r in rows]
        x_lo, x_hi = min(xs), max(xs)
        y_lo, y_hi = min(ys), max(ys)
        x_span = (x_hi - x_lo) or 1.0
        y_span = (y_hi - y_lo) or 1.0

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="white"/>',
    ]
    for doc_id, x, y, cluster, _ in rows:
        px = margin + (x - x_lo) / x_span * (SVG_WIDTH - 2 * margin)
        py = SVG_HEIGHT - margin - (y - y_lo) / y_span * (SVG_HEIGHT - 2 * margin)
        fill, shape = GLYPH_PALETTE[cluster % len(GLYPH_PALETTE)]
        parts.append(_svg_glyph(shape, px, py, fill))
    parts.append("</svg>")
    with open(svg_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("\n".join(parts) + "\n")
    return [csv_path, svg_path]
