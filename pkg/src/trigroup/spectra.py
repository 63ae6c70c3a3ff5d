"""Normalized Laplacians, dense symmetric spectra, and spectral certificates.

The normalized Laplacian of a multigraph has b_vv = 1 on vertices of positive
degree (0 on isolated ones) and b_vw = -a_vw / sqrt(d_v d_w) on edges.  Its
spectrum lies in [0, 2] and the vector with entries sqrt(d_v) spans the
kernel direction on the non-isolated part.  A connected link graph whose
second-smallest eigenvalue clears 1/2 certifies property (T) for the
presented group.
"""

from dataclasses import dataclass

import numpy as np

from .linkgraph import build_link_graph, is_connected, Multigraph

DEFAULT_TOL = 1e-10
ZUK_MARGIN = 1e-8


class SolverError(RuntimeError):
    """Eigensolver failed to converge or missed its accuracy contract."""


def normalized_laplacian(graph):
    """Dense normalized Laplacian; symmetric exactly, by construction."""
    adj = graph.adjacency().astype(float)
    deg = adj.sum(axis=1)
    with np.errstate(divide="ignore"):
        inv_sqrt = np.where(deg > 0, 1.0 / np.sqrt(deg), 0.0)
    lap = -adj * np.outer(inv_sqrt, inv_sqrt)
    np.fill_diagonal(lap, np.where(deg > 0, 1.0, 0.0))
    return lap


@dataclass(frozen=True)
class EigenSolution:
    eigenvalues: np.ndarray   # ascending
    vectors: np.ndarray       # columns, aligned with eigenvalues
    residual: float           # max_i ||M v_i - lambda_i v_i||_2
    scale: float              # max |entry| of M


def sym_eigs(matrix, tol=DEFAULT_TOL):
    """Full spectrum of a symmetric matrix, with accuracy checks.

    Delegates to LAPACK's dense symmetric solver and then verifies its own
    output: per-pair residuals and the trace identity must hold within
    tol * scale, and non-convergence raises instead of returning garbage.
    """
    m = np.asarray(matrix, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.array_equal(m, m.T):
        raise ValueError("matrix is not exactly symmetric")
    size = m.shape[0]
    if size == 0:
        raise ValueError("empty matrix")
    scale = float(np.max(np.abs(m)))
    try:
        values, vectors = np.linalg.eigh(m)
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"eigensolver did not converge: {exc}") from exc
    residual = float(np.max(np.linalg.norm(m @ vectors - vectors * values, axis=0)))
    if residual > tol * scale:
        raise SolverError(f"residual {residual:.3e} exceeds {tol:.1e} * scale")
    trace_gap = abs(float(values.sum()) - float(np.trace(m)))
    if trace_gap > size * tol * scale:
        raise SolverError(f"trace identity off by {trace_gap:.3e}")
    return EigenSolution(values, vectors, residual, scale)


@dataclass(frozen=True)
class SpectralReport:
    eigenvalues: tuple[float, ...]
    lambda2: float
    residual: float
    connected: bool


def spectral_gap(graph, tol=DEFAULT_TOL):
    """Second-smallest normalized-Laplacian eigenvalue plus a full report."""
    if graph.m < 2:
        raise ValueError("spectral gap needs at least two vertices")
    sol = sym_eigs(normalized_laplacian(graph), tol=tol)
    lam2 = float(sol.eigenvalues[1])
    report = SpectralReport(
        eigenvalues=tuple(float(v) for v in sol.eigenvalues),
        lambda2=lam2,
        residual=sol.residual,
        connected=is_connected(graph),
    )
    return lam2, report


@dataclass(frozen=True)
class ZukResult:
    certified: bool
    lambda2: float
    connected: bool
    margin: float


def zuk_certificate(pres, tol=DEFAULT_TOL, margin=ZUK_MARGIN, link=None):
    """Certify property (T): link graph connected and lambda2 > 1/2 + margin.

    Inconclusive results still carry lambda2 and connectivity.  The
    connectivity check is structural and independent of the eigensolve, so a
    disconnected graph can never certify, whatever lambda2 says.
    """
    graph = build_link_graph(pres) if link is None else link
    connected = is_connected(graph)
    lam2, _ = spectral_gap(graph, tol=tol)
    certified = bool(connected and lam2 > 0.5 + margin)
    return ZukResult(certified, lam2, connected, margin)


# --- spectral inequalities, checked numerically ---

@dataclass(frozen=True)
class PerturbationCheck:
    holds: bool
    lhs: float        # lambda2 of the union
    rhs: float        # lambda2 of the base minus eps/(1-eps)
    slack: float


def check_perturbation_inequality(base, extra, eps, d, tol=DEFAULT_TOL):
    """Check lambda2(L(G u H)) >= lambda2(L(G)) - eps/(1-eps).

    Preconditions (violations raise, they are never skipped silently):
    G connected, every G-degree within eps*d of d, every H-degree at most
    eps*d, 0 < eps < 1, matching vertex sets.  d is the caller's reference
    degree; it is not inferred.
    """
    if base.m != extra.m:
        raise ValueError("vertex counts differ")
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    if d <= 0:
        raise ValueError(f"reference degree must be positive, got {d}")
    if not is_connected(base):
        raise ValueError("base graph is not connected")
    base_degs = base.degrees()
    worst = max(abs(deg - d) for deg in base_degs)
    if worst > eps * d:
        raise ValueError(f"base degree deviates by {worst} > eps*d = {eps * d}")
    top = max(extra.degrees())
    if top > eps * d:
        raise ValueError(f"perturbation degree {top} exceeds eps*d = {eps * d}")
    lhs, _ = spectral_gap(base.union(extra), tol=tol)
    lam2_base, _ = spectral_gap(base, tol=tol)
    rhs = lam2_base - eps / (1.0 - eps)
    slack = lhs - rhs
    return PerturbationCheck(slack >= -1e-12, lhs, rhs, slack)


@dataclass(frozen=True)
class CombinationCheck:
    holds: bool
    lhs: float                    # 1 - lambda2 of the union
    rhs: float                    # sum of 1 - lambda2 over the parts
    terms: tuple[float, ...]


def check_combination_inequality(part1, part2, part3, tol=DEFAULT_TOL):
    """Check 1 - lambda2(L(union)) <= sum_i (1 - lambda2(L(part_i))).

    Requires minimum degree >= 1 in every part.  The function only records
    both sides; whether the inequality is meaningful depends on the instance
    class (each right-hand term must be nonnegative), which is the caller's
    concern.
    """
    parts = (part1, part2, part3)
    if len({p.m for p in parts}) != 1:
        raise ValueError("vertex counts differ")
    for i, p in enumerate(parts):
        if p.m == 0 or min(p.degrees()) < 1:
            raise ValueError(f"part {i + 1} has an isolated vertex")
    union = parts[0].union(parts[1]).union(parts[2])
    lam2_union, _ = spectral_gap(union, tol=tol)
    terms = tuple(1.0 - spectral_gap(p, tol=tol)[0] for p in parts)
    lhs = 1.0 - lam2_union
    rhs = sum(terms)
    return CombinationCheck(lhs <= rhs + 1e-12, lhs, rhs, terms)


def format_spectrum_csv(graph, tol=DEFAULT_TOL):
    """CSV dump of a graph's normalized-Laplacian spectrum."""
    sol = sym_eigs(normalized_laplacian(graph), tol=tol)
    lines = [f"# m={graph.m} tol={tol!r} residual={sol.residual!r}"]
    lines.append("index,eigenvalue")
    for i, value in enumerate(sol.eigenvalues):
        lines.append(f"{i},{float(value)!r}")
    return "\n".join(lines) + "\n"


def complete_graph(m):
    """K_m as a Multigraph; its Laplacian spectrum is {0, m/(m-1) x (m-1)}."""
    g = Multigraph(m)
    for u in range(m):
        for w in range(u + 1, m):
            g.add_edge(u, w)
    return g
