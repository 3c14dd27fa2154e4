"""Minimal smoothed-aggregation multigrid built on cluster memberships.

Coarse grids come from a clustering of the matrix graph; interpolation is
the per-cluster localized near-nullspace smoothed with one weighted-Jacobi
step; coarse operators are Galerkin triple products. Includes convergence
metrics and a per-cluster localization of the approximation-quality
constant.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .balanced import balanced_lloyd_cluster
from .baselines import greedy_cluster, mis2_cluster
from .errors import (
    DivergentRhoError,
    NotSPDError,
    RankDeficientClusterError,
    SingularCoarseSolveError,
    SingularDiagonalError,
    TooLargeError,
    UnassignedNodeError,
)
from .graphs import strength_to_distance
from .lloyd import lloyd_cluster
from .rebalance import rebalanced_lloyd_cluster

__all__ = [
    "Hierarchy",
    "ConvergenceResult",
    "tentative_restriction",
    "smoothed_interpolation",
    "sa_setup",
    "v_cycle",
    "convergence_factor",
    "rho_from_residuals",
    "cycle_complexity",
    "work_per_digit",
    "beta_localization",
    "poisson_grid",
    "poisson_path",
]

CLUSTER_METHODS = ("standard", "balanced", "rebalanced", "greedy", "mis2")

_DENSE_COARSE_LIMIT = 500
_POWER_ITERATIONS = 30


def poisson_path(n):
    """1D Dirichlet Laplacian: tridiagonal (-1, 2, -1)."""
    return sp.diags([-1.0, 2.0, -1.0], [-1, 0, 1], shape=(n, n)).tocsr()


def poisson_grid(nx, ny):
    """2D Dirichlet 5-point Laplacian on an nx-by-ny grid."""
    return (
        sp.kron(sp.eye(ny), poisson_path(nx)) + sp.kron(poisson_path(ny), sp.eye(nx))
    ).tocsr()


def tentative_restriction(m):
    """0/1 matrix with one row per cluster and one nonzero per column.

    Parameters
    ----------
    m : ndarray
        Covering membership (length n_node+1, slot 0 ignored).

    Returns
    -------
    scipy.sparse.csr_matrix of shape (n_cluster, n_node).
    """
    m = np.asarray(m, dtype=np.int64)
    body = m[1:]
    n = body.shape[0]
    if np.any(body < 1):
        node = int(np.nonzero(body < 1)[0][0]) + 1
        raise UnassignedNodeError(node)
    n_cluster = int(body.max())
    return sp.csr_matrix(
        (np.ones(n), (body - 1, np.arange(n))), shape=(n_cluster, n)
    )


def _localized_nullspace(m, c_vecs):
    """Per-cluster orthonormalized near-nullspace blocks.

    Returns the tentative interpolation (sparse, one k-column block per
    cluster) and the coarse-level near-nullspace that it reproduces.
    """
    body = np.asarray(m, dtype=np.int64)[1:]
    n = body.shape[0]
    c_vecs = np.atleast_2d(np.asarray(c_vecs, dtype=np.float64))
    if c_vecs.shape[0] != n:
        c_vecs = c_vecs.T
    k = c_vecs.shape[1]
    n_cluster = int(body.max())

    rows = []
    cols = []
    data = []
    coarse = np.zeros((n_cluster * k, k))
    for a in range(1, n_cluster + 1):
        nodes = np.nonzero(body == a)[0]
        block = c_vecs[nodes, :]
        q, r = np.linalg.qr(block)
        signs = np.sign(np.diag(r))
        signs[signs == 0.0] = 1.0
        q = q * signs[None, :]
        r = r * signs[:, None]
        if np.any(np.abs(np.diag(r)) <= 1e-12 * max(1.0, np.abs(r).max())):
            raise RankDeficientClusterError(a)
        for t in range(k):
            rows.extend(nodes.tolist())
            cols.extend([(a - 1) * k + t] * nodes.shape[0])
            data.extend(q[:, t].tolist())
        coarse[(a - 1) * k:a * k, :] = r
    z_hat = sp.csr_matrix((data, (rows, cols)), shape=(n, n_cluster * k))
    return z_hat, coarse


def _spectral_radius_estimate(a, d_inv, seed=8675309):
    """Power-iteration estimate of the spectral radius of diag(a)^-1 a."""
    rng = np.random.default_rng(seed)
    x = rng.standard_normal(a.shape[0])
    x /= np.linalg.norm(x)
    lam = 1.0
    for _ in range(_POWER_ITERATIONS):
        y = d_inv * (a @ x)
        norm = np.linalg.norm(y)
        if norm == 0.0:
            break
        lam = norm
        x = y / norm
    return lam


def smoothed_interpolation(a, m, c_vecs=None, omega=None):
    """One weighted-Jacobi smoothing step applied to the localized
    near-nullspace interpolation.

    Parameters
    ----------
    a : scipy sparse matrix
        SPD fine-level operator.
    m : ndarray
        Covering membership (length n_node+1).
    c_vecs : ndarray, optional
        Near-nullspace vectors, shape (n, k); defaults to the constant.
    omega : float, optional
        Smoothing weight; defaults to 4/3 divided by a power-iteration
        estimate of the spectral radius of diag(a)^-1 a.

    Returns
    -------
    scipy.sparse.csr_matrix of shape (n, n_cluster * k).
    """
    a = sp.csr_matrix(a)
    n = a.shape[0]
    if c_vecs is None:
        c_vecs = np.ones((n, 1))
    diag = a.diagonal()
    if np.any(diag == 0.0):
        raise SingularDiagonalError("matrix has a zero diagonal entry")
    d_inv = 1.0 / diag
    z_hat, _ = _localized_nullspace(m, c_vecs)
    if omega is None:
        omega = 4.0 / (3.0 * _spectral_radius_estimate(a, d_inv))
    smoothed = z_hat - omega * sp.diags(d_inv) @ (a @ z_hat)
    return sp.csr_matrix(smoothed)


@dataclass
class Hierarchy:
    """Multigrid hierarchy: operators A_0..A_L and interpolations Z_0..Z_{L-1}."""

    operators: list
    interpolations: list
    memberships: list
    relax_omega: float = 2.0 / 3.0
    _diag_inv: list = field(default_factory=list, repr=False)
    _coarse_solve: object = field(default=None, repr=False)

    @property
    def n_levels(self):
        return len(self.operators)

    def level_sizes(self):
        return [op.shape[0] for op in self.operators]

    def to_dict(self):
        """JSON-ready structural summary of the hierarchy."""
        return {
            "n_levels": self.n_levels,
            "relax_omega": float(self.relax_omega),
            "levels": [
                {"n": int(op.shape[0]), "nnz": int(op.nnz)}
                for op in self.operators
            ],
            "interpolations": [
                {"rows": int(z.shape[0]), "cols": int(z.shape[1]), "nnz": int(z.nnz)}
                for z in self.interpolations
            ],
        }

    def _prepare(self):
        if self._diag_inv:
            return
        for op in self.operators:
            diag = op.diagonal()
            if np.any(diag == 0.0):
                raise SingularDiagonalError("level operator has a zero diagonal")
            self._diag_inv.append(1.0 / diag)
        coarse = self.operators[-1]
        try:
            if coarse.shape[0] < _DENSE_COARSE_LIMIT:
                lu = scipy.linalg.lu_factor(coarse.toarray())
                self._coarse_solve = lambda b: scipy.linalg.lu_solve(lu, b)
            else:
                solver = spla.splu(sp.csc_matrix(coarse))
                self._coarse_solve = solver.solve
        except (RuntimeError, scipy.linalg.LinAlgError, ValueError) as exc:
            raise SingularCoarseSolveError(str(exc)) from exc


def sa_setup(a0, n_level=2, cluster_method="rebalanced", *,
             points_per_cluster=10, seed=0, strength="abs-offdiag",
             padding=0.1, coarse_size_floor=100, near_nullspace=None,
             omega=None, t_max=5, t_outer_max=4, t_bf_max=None, tol=1e-12):
    """Build a smoothed-aggregation hierarchy from a sparse SPD matrix.

    Each level turns the operator into a distance graph, clusters it with
    the chosen method (random distinct seeds for the Lloyd family, sized at
    n / points_per_cluster), smooths the localized near-nullspace into the
    interpolation, and forms the Galerkin coarse operator. Coarsening stops
    early once a level has at most coarse_size_floor nodes.

    Returns
    -------
    Hierarchy
    """
    if n_level < 1:
        raise ValueError("n_level must be at least 1")
    if cluster_method not in CLUSTER_METHODS:
        raise ValueError(f"cluster_method must be one of {CLUSTER_METHODS}")
    a = sp.csr_matrix(a0).astype(np.float64)
    n = a.shape[0]
    c_vecs = np.ones((n, 1)) if near_nullspace is None else np.atleast_2d(
        np.asarray(near_nullspace, dtype=np.float64)
    ).reshape(n, -1)

    rng = np.random.default_rng(seed)
    operators = [a]
    interpolations = []
    memberships = []
    for _ in range(n_level - 1):
        n_cur = a.shape[0]
        if n_cur <= coarse_size_floor:
            break
        g = strength_to_distance(a, strength, padding)
        m = _cluster_level(g, cluster_method, points_per_cluster, rng,
                           t_max, t_outer_max, t_bf_max, tol)
        z_hat, coarse_c = _localized_nullspace(m, c_vecs)
        diag = a.diagonal()
        if np.any(diag == 0.0):
            raise SingularDiagonalError("matrix has a zero diagonal entry")
        d_inv = 1.0 / diag
        omega_level = omega
        if omega_level is None:
            omega_level = 4.0 / (3.0 * _spectral_radius_estimate(a, d_inv))
        z = sp.csr_matrix(z_hat - omega_level * sp.diags(d_inv) @ (a @ z_hat))
        a_next = sp.csr_matrix(z.T @ a @ z)
        if a_next.shape[0] == a.shape[0]:
            warnings.warn("coarsening made no progress (identity clustering)")
        operators.append(a_next)
        interpolations.append(z)
        memberships.append(m)
        a = a_next
        c_vecs = coarse_c
    return Hierarchy(operators, interpolations, memberships)


def _cluster_level(g, method, points_per_cluster, rng, t_max, t_outer_max,
                   t_bf_max, tol):
    n = g.n_node
    if method in ("greedy", "mis2"):
        m, _ = greedy_cluster(g) if method == "greedy" else mis2_cluster(g)
        return m
    n_cluster = max(1, n // int(points_per_cluster))
    seeds = np.sort(rng.choice(n, size=min(n_cluster, n), replace=False)) + 1
    if method == "standard":
        m, _ = lloyd_cluster(g, seeds, t_max)
        return m
    if method == "balanced":
        st, _ = balanced_lloyd_cluster(g, seeds, t_max, t_bf_max, tol)
        return st.m
    st, _ = rebalanced_lloyd_cluster(g, seeds, t_max, t_outer_max, t_bf_max, tol)
    return st.m


def _relax_jacobi(a, d_inv, u, f, omega, sweeps):
    for _ in range(sweeps):
        u = u + omega * d_inv * (f - a @ u)
    return u


def v_cycle(h, u, f, nu=2):
    """One V-cycle: pre-relax, restrict the residual, recurse, correct,
    post-relax; the coarsest level is solved directly."""
    h._prepare()
    return _cycle(h, 0, np.asarray(u, dtype=np.float64),
                  np.asarray(f, dtype=np.float64), nu)


def _cycle(h, level, u, f, nu):
    a = h.operators[level]
    if level == h.n_levels - 1:
        return np.asarray(h._coarse_solve(f), dtype=np.float64)
    d_inv = h._diag_inv[level]
    u = _relax_jacobi(a, d_inv, u, f, h.relax_omega, nu)
    z = h.interpolations[level]
    coarse_f = z.T @ (f - a @ u)
    coarse_u = _cycle(h, level + 1, np.zeros(z.shape[1]), coarse_f, nu)
    u = u + z @ coarse_u
    return _relax_jacobi(a, d_inv, u, f, h.relax_omega, nu)


@dataclass
class ConvergenceResult:
    """Outcome of iterating V-cycles on the homogeneous problem."""

    rho: float
    residuals: list
    converged: bool
    iterations: int


def rho_from_residuals(residuals):
    """Geometric mean of the residual reductions over the last five cycles
    (fewer if the history is shorter)."""
    window = min(5, len(residuals) - 1)
    if window <= 0:
        raise ValueError("need at least two residual norms")
    if residuals[-1 - window] == 0.0:
        return 0.0
    return (residuals[-1] / residuals[-1 - window]) ** (1.0 / window)


def convergence_factor(h, seed=0, max_iters=50, rtol=1e-10, nu=2):
    """Asymptotic convergence factor from a zero-right-hand-side solve.

    Starts from a seeded random vector and iterates until the relative
    residual drops below rtol or max_iters cycles elapse. The factor is the
    geometric mean of the last five residual reductions.
    """
    if max_iters <= 5:
        raise ValueError("max_iters must exceed 5")
    a = h.operators[0]
    n = a.shape[0]
    rng = np.random.default_rng(seed)
    u = rng.standard_normal(n)
    f = np.zeros(n)
    residuals = [float(np.linalg.norm(a @ u))]
    converged = False
    for _ in range(max_iters):
        u = v_cycle(h, u, f, nu)
        residuals.append(float(np.linalg.norm(a @ u)))
        if residuals[-1] / residuals[0] < rtol:
            converged = True
            break
    return ConvergenceResult(
        rho_from_residuals(residuals), residuals, converged, len(residuals) - 1
    )


def cycle_complexity(h, nu=2):
    """Nonzeros touched by one V-cycle, normalized by nnz of the finest
    operator: 2*nu relaxations plus one residual per level, both transfer
    products per interpolation, and the coarsest operator once."""
    total = 0
    for level in range(h.n_levels - 1):
        a_nnz = h.operators[level].nnz
        total += 2 * nu * a_nnz + a_nnz
        total += 2 * h.interpolations[level].nnz
    total += h.operators[-1].nnz
    return total / h.operators[0].nnz


def work_per_digit(chi, rho):
    """Cycle work divided by digits of accuracy gained per cycle."""
    if rho >= 1.0:
        raise DivergentRhoError(f"convergence factor {rho} is not below 1")
    if rho <= 0.0:
        return 0.0
    return float(chi / (-np.log10(rho)))


def beta_localization(a, p_interp, m, dense_threshold=2000):
    """Approximation-quality constant and its per-cluster decomposition.

    Forms the diagonal-weighted least-squares projection error operator for
    the interpolation, solves the dense generalized symmetric eigenproblem
    against ``a``, and splits the resulting constant into per-cluster
    contributions that sum to it exactly.

    Returns
    -------
    (beta, beta_per_cluster)
        beta_per_cluster is a slot-0 array of length n_cluster+1.
    """
    a = sp.csr_matrix(a)
    n = a.shape[0]
    if n > dense_threshold:
        raise TooLargeError(f"{n} unknowns exceeds dense threshold {dense_threshold}")
    a_dense = a.toarray()
    if not np.allclose(a_dense, a_dense.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(a_dense).max())):
        raise NotSPDError("matrix is not symmetric")
    try:
        np.linalg.cholesky(a_dense)
    except np.linalg.LinAlgError as exc:
        raise NotSPDError("matrix is not positive definite") from exc

    p = p_interp.toarray() if sp.issparse(p_interp) else np.asarray(p_interp, dtype=np.float64)
    diag = a.diagonal()
    ptdp = p.T @ (diag[:, None] * p)
    try:
        g = np.linalg.solve(ptdp, p.T * diag[None, :])
    except np.linalg.LinAlgError as exc:
        raise NotSPDError("interpolation is rank deficient") from exc
    t_d = np.eye(n) - p @ g
    m_op = t_d.T @ (diag[:, None] * t_d)
    m_op = 0.5 * (m_op + m_op.T)

    eigvals, eigvecs = scipy.linalg.eigh(m_op, a_dense)
    beta = float(eigvals[-1])
    e = eigvecs[:, -1]

    te = t_d @ e
    dte = diag * te
    denom = float(e @ (a_dense @ e))
    body = np.asarray(m, dtype=np.int64)[1:]
    n_cluster = int(body.max())
    beta_per = np.zeros(n_cluster + 1)
    contrib = dte * te
    for a_id in range(1, n_cluster + 1):
        beta_per[a_id] = float(contrib[body == a_id].sum()) / denom
    return beta, beta_per
