"""Geometry of the cone Pos(n) of positive-definite symmetric matrices.

Pos(n) carries the affine-invariant metric

    d(P, Q) = || log(P^{-1/2} Q P^{-1/2}) ||_F,

which is invariant under the congruence action  g . P = g P g^T  of
GL(n, R) and makes Pos(n) a complete, nonpositively curved space.  The
det = 1 slice Conf(n) is totally geodesic; GL(n, R) acts on it through
the normalized congruence  g . P = (det g^T g)^{-1/n} g P g^T.

All spectral computations route through :func:`sym_eigen`, a cyclic
Jacobi eigensolver (closed-form single rotation when n = 2).  It is
self-contained and accurate for the dimensions this package supports
(2 <= n <= 8).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatch,
    NotPositiveDefinite,
    NotSymmetric,
    NotUnitDeterminant,
    SingularMatrix,
)

SYMMETRY_TOL = 1e-12
UNIT_DET_TOL = 1e-10
SINGULAR_TOL = 1e-12
MIN_DIM = 2
MAX_DIM = 8

# Off-diagonal stopping threshold of the Jacobi sweeps.  Measured relative
# to the Frobenius norm of the input: an absolute target is not reachable
# in float64 once ||P|| >> 1.
JACOBI_OFF_TOL = 1e-13
JACOBI_SWEEP_CAP = 100


def symmetry_defect(a: np.ndarray) -> float:
    return float(np.max(np.abs(a - a.T))) if a.size else 0.0


def symmetrize(a: np.ndarray) -> np.ndarray:
    return 0.5 * (a + a.T)


def require_square(a: np.ndarray, *, check_dim: bool = True) -> np.ndarray:
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    if check_dim and not (MIN_DIM <= a.shape[0] <= MAX_DIM):
        raise DimensionMismatch(
            f"dimension {a.shape[0]} outside supported range "
            f"[{MIN_DIM}, {MAX_DIM}]"
        )
    return a


def require_symmetric(a: np.ndarray, tol: float = SYMMETRY_TOL) -> np.ndarray:
    a = require_square(a)
    defect = symmetry_defect(a)
    scale = max(1.0, float(np.max(np.abs(a)))) if a.size else 1.0
    if defect > tol * scale:
        raise NotSymmetric(f"symmetry defect {defect:.3e} exceeds {tol:g}")
    return symmetrize(a)


@dataclass(frozen=True)
class EigenDecomposition:
    """Spectral factorization P = rotation @ diag(values) @ rotation.T.

    ``values`` are sorted in descending order; ``rotation`` is orthogonal
    with the matching eigenvector columns.
    """

    values: np.ndarray
    rotation: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return self.rotation @ np.diag(self.values) @ self.rotation.T


def _eig_2x2(A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # One exact Jacobi rotation diagonalizes a symmetric 2x2.
    a, b, c = A[0, 0], A[0, 1], A[1, 1]
    if b == 0.0:
        return np.array([a, c]), np.eye(2)
    tau = (c - a) / (2.0 * b)
    if tau >= 0.0:
        t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
    else:
        t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
    c0 = 1.0 / np.sqrt(1.0 + t * t)
    s0 = t * c0
    values = np.array([a - t * b, c + t * b])
    rotation = np.array([[c0, s0], [-s0, c0]])
    return values, rotation


def _eig_jacobi(A: np.ndarray, sweep_cap: int) -> tuple[np.ndarray, np.ndarray]:
    A = A.copy()
    n = A.shape[0]
    Q = np.eye(n)
    norm = float(np.sqrt(np.sum(A * A)))
    threshold = JACOBI_OFF_TOL * max(1.0, norm)

    for _ in range(sweep_cap):
        # Off-diagonal Frobenius mass, summed directly (the difference of
        # global sums cancels catastrophically near convergence).
        off_entries = A - np.diag(np.diag(A))
        off = float(np.sqrt(np.sum(off_entries * off_entries)))
        if off <= threshold:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                tau = (A[q, q] - A[p, p]) / (2.0 * apq)
                if tau >= 0.0:
                    t = 1.0 / (tau + np.sqrt(1.0 + tau * tau))
                else:
                    t = -1.0 / (-tau + np.sqrt(1.0 + tau * tau))
                c0 = 1.0 / np.sqrt(1.0 + t * t)
                s0 = t * c0

                rp = A[:, p] * c0 - A[:, q] * s0
                rq = A[:, p] * s0 + A[:, q] * c0
                A[:, p] = rp
                A[:, q] = rq
                rp = A[p, :] * c0 - A[q, :] * s0
                rq = A[p, :] * s0 + A[q, :] * c0
                A[p, :] = rp
                A[q, :] = rq
                A[p, q] = 0.0
                A[q, p] = 0.0

                gp = Q[:, p] * c0 - Q[:, q] * s0
                gq = Q[:, p] * s0 + Q[:, q] * c0
                Q[:, p] = gp
                Q[:, q] = gq
    return np.diag(A).copy(), Q


def sym_eigen(P: np.ndarray, *, sweep_cap: int = JACOBI_SWEEP_CAP) -> EigenDecomposition:
    """Diagonalize a symmetric matrix by cyclic Jacobi rotations.

    Sweeps until the off-diagonal Frobenius mass falls below
    ``JACOBI_OFF_TOL`` relative to the input norm, or ``sweep_cap`` sweeps
    have run.  Deterministic for a fixed input; eigenvalues descend.
    """
    A = require_symmetric(P)
    if A.shape[0] == 2:
        values, Q = _eig_2x2(A)
    else:
        values, Q = _eig_jacobi(A, sweep_cap)
    order = np.argsort(-values, kind="stable")
    values = values[order]
    Q = Q[:, order]
    # Canonical sign: largest-magnitude entry of each eigenvector positive.
    for j in range(Q.shape[1]):
        k = int(np.argmax(np.abs(Q[:, j])))
        if Q[k, j] < 0:
            Q[:, j] = -Q[:, j]
    return EigenDecomposition(values=values, rotation=Q)


def is_positive_definite(P: np.ndarray) -> bool:
    try:
        require_spd(P)
    except (NotPositiveDefinite, NotSymmetric, DimensionMismatch):
        return False
    return True


def require_spd(P: np.ndarray) -> np.ndarray:
    P = require_symmetric(P)
    values = sym_eigen(P).values
    if values[-1] <= 0.0:
        raise NotPositiveDefinite(f"smallest eigenvalue {values[-1]:.3e} <= 0")
    return P


def _spectral(eig: EigenDecomposition, fn) -> np.ndarray:
    return symmetrize(eig.rotation @ (fn(eig.values)[:, None] * eig.rotation.T))


def spd_log(P: np.ndarray) -> np.ndarray:
    """Matrix logarithm Pos(n) -> Sym(n); inverse of :func:`spd_exp`."""
    eig = sym_eigen(P)
    if eig.values[-1] <= 0.0:
        raise NotPositiveDefinite(f"smallest eigenvalue {eig.values[-1]:.3e} <= 0")
    return _spectral(eig, np.log)


def spd_exp(S: np.ndarray) -> np.ndarray:
    """Matrix exponential Sym(n) -> Pos(n)."""
    return _spectral(sym_eigen(S), np.exp)


def spd_sqrt(P: np.ndarray) -> np.ndarray:
    eig = sym_eigen(P)
    if eig.values[-1] <= 0.0:
        raise NotPositiveDefinite(f"smallest eigenvalue {eig.values[-1]:.3e} <= 0")
    return _spectral(eig, np.sqrt)


def spd_power(P: np.ndarray, t: float) -> np.ndarray:
    eig = sym_eigen(P)
    if eig.values[-1] <= 0.0:
        raise NotPositiveDefinite(f"smallest eigenvalue {eig.values[-1]:.3e} <= 0")
    return _spectral(eig, lambda v: np.power(v, t))


def spd_distance(P: np.ndarray, Q: np.ndarray) -> float:
    """Affine-invariant distance: Frobenius norm of log(P^{-1/2} Q P^{-1/2})."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if P.shape != Q.shape:
        raise DimensionMismatch(f"shapes {P.shape} and {Q.shape} differ")
    P = require_spd(P)
    Q = require_spd(Q)
    if P.shape[0] == 2:
        return float(_distance_2x2_batch(P, Q[np.newaxis])[0])
    eigp = sym_eigen(P)
    rp = _spectral(eigp, lambda v: 1.0 / np.sqrt(v))
    inner = sym_eigen(symmetrize(rp @ Q @ rp))
    if inner.values[-1] <= 0.0:
        raise NotPositiveDefinite("inner term lost positivity")
    logs = np.log(inner.values)
    return float(np.sqrt(np.sum(logs * logs)))


def _eig_2x2_scalars(a: float, b: float, c: float):
    if b == 0.0:
        return a, c, 1.0, 0.0
    tau = (c - a) / (2.0 * b)
    if tau >= 0.0:
        t = 1.0 / (tau + (1.0 + tau * tau) ** 0.5)
    else:
        t = -1.0 / (-tau + (1.0 + tau * tau) ** 0.5)
    c0 = 1.0 / (1.0 + t * t) ** 0.5
    return a - t * b, c + t * b, c0, t * c0


def _spectral_2x2(a, b, c, fn):
    # fn applied to the eigenvalues of [[a, b], [b, c]]; rebuilt in place.
    l1, l2, c0, s0 = _eig_2x2_scalars(a, b, c)
    f1, f2 = fn(l1), fn(l2)
    return (
        f1 * c0 * c0 + f2 * s0 * s0,
        (f2 - f1) * c0 * s0,
        f1 * s0 * s0 + f2 * c0 * c0,
    )


def _geodesic_2x2(P: np.ndarray, Q: np.ndarray, t: float) -> np.ndarray:
    pa, pb, pc = P[0, 0], 0.5 * (P[0, 1] + P[1, 0]), P[1, 1]
    if pa * pc - pb * pb <= 0.0 or pa <= 0.0:
        raise NotPositiveDefinite("geodesic endpoint is not positive definite")
    ra, rb, rc = _spectral_2x2(pa, pb, pc, lambda v: v ** -0.5)
    qa, qb, qc = Q[0, 0], 0.5 * (Q[0, 1] + Q[1, 0]), Q[1, 1]
    # inner = rp @ Q @ rp with rp = [[ra, rb], [rb, rc]] symmetric.
    m00 = ra * qa + rb * qb
    m01 = ra * qb + rb * qc
    m10 = rb * qa + rc * qb
    m11 = rb * qb + rc * qc
    ia = m00 * ra + m01 * rb
    ib = m00 * rb + m01 * rc
    ic = m10 * rb + m11 * rc
    ib = 0.5 * (ib + (m10 * ra + m11 * rb))
    if ia * ic - ib * ib <= 0.0 or ia <= 0.0:
        raise NotPositiveDefinite("geodesic endpoint is not positive definite")
    ma, mb, mc = _spectral_2x2(ia, ib, ic, lambda v: v ** t)
    sa, sb, sc = _spectral_2x2(pa, pb, pc, lambda v: v ** 0.5)
    n00 = sa * ma + sb * mb
    n01 = sa * mb + sb * mc
    n10 = sb * ma + sc * mb
    n11 = sb * mb + sc * mc
    ga = n00 * sa + n01 * sb
    gb = 0.5 * ((n00 * sb + n01 * sc) + (n10 * sa + n11 * sb))
    gc = n10 * sb + n11 * sc
    return np.array([[ga, gb], [gb, gc]])


def spd_geodesic(P: np.ndarray, Q: np.ndarray, t: float) -> np.ndarray:
    """Point P^{1/2} (P^{-1/2} Q P^{-1/2})^t P^{1/2} on the geodesic P -> Q."""
    P = np.asarray(P, dtype=float)
    Q = np.asarray(Q, dtype=float)
    if P.shape != Q.shape:
        raise DimensionMismatch(f"shapes {P.shape} and {Q.shape} differ")
    if P.shape[0] == 2:
        return _geodesic_2x2(P, Q, t)
    eigp = sym_eigen(P)
    if eigp.values[-1] <= 0.0:
        raise NotPositiveDefinite("geodesic endpoint is not positive definite")
    sp = _spectral(eigp, np.sqrt)
    rp = _spectral(eigp, lambda v: 1.0 / np.sqrt(v))
    inner = sym_eigen(symmetrize(rp @ Q @ rp))
    if inner.values[-1] <= 0.0:
        raise NotPositiveDefinite("geodesic endpoint is not positive definite")
    mid = _spectral(inner, lambda v: np.power(v, t))
    return symmetrize(sp @ mid @ sp)


def gl_action(g: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Congruence action g . P = g P g^T; an isometry of Pos(n)."""
    g = require_square(g)
    P = np.asarray(P, dtype=float)
    if g.shape != P.shape:
        raise DimensionMismatch(f"shapes {g.shape} and {P.shape} differ")
    if abs(np.linalg.det(g)) <= SINGULAR_TOL:
        raise SingularMatrix("|det g| below invertibility tolerance")
    return symmetrize(g @ P @ g.T)


def conf_normalizer(A: np.ndarray) -> float:
    """Scalar (det A^T A)^{-1/2n} making |det(lambda A)| = 1."""
    A = require_square(A)
    n = A.shape[0]
    det = np.linalg.det(A.T @ A)
    if det <= SINGULAR_TOL ** 2:
        raise SingularMatrix("det A^T A below invertibility tolerance")
    return float(det ** (-1.0 / (2.0 * n)))


def conf_action(g: np.ndarray, P: np.ndarray) -> np.ndarray:
    """Normalized congruence g . P = (det g^T g)^{-1/n} g P g^T on Conf(n).

    The result is renormalized to determinant one to suppress drift.
    """
    P = require_unit_determinant(P)
    lam = conf_normalizer(g)
    out = symmetrize((lam * lam) * (g @ P @ g.T))
    return _renormalize_det(out)


def require_unit_determinant(P: np.ndarray, tol: float = UNIT_DET_TOL) -> np.ndarray:
    P = np.asarray(P, dtype=float)
    det = np.linalg.det(P)
    if abs(det - 1.0) > tol:
        raise NotUnitDeterminant(f"|det P - 1| = {abs(det - 1.0):.3e} > {tol:g}")
    return P


def _renormalize_det(P: np.ndarray) -> np.ndarray:
    n = P.shape[0]
    det = np.linalg.det(P)
    if det <= 0.0:
        raise NotPositiveDefinite("determinant lost positivity")
    return P / det ** (1.0 / n)


def unit_determinant(P: np.ndarray) -> np.ndarray:
    """Project an SPD matrix onto the det = 1 slice."""
    return _renormalize_det(require_spd(P))


def quasiconformal_distortion(A: np.ndarray) -> float:
    """Operator-norm condition number ||A|| * ||A^{-1}||; 1 iff conformal."""
    A = require_square(A)
    if abs(np.linalg.det(A)) <= SINGULAR_TOL:
        raise SingularMatrix("|det A| below invertibility tolerance")
    sv = sym_eigen(symmetrize(A.T @ A)).values
    return float(np.sqrt(sv[0] / sv[-1]))


def operator_norm(A: np.ndarray) -> float:
    sv = sym_eigen(symmetrize(np.asarray(A, float).T @ A)).values
    return float(np.sqrt(max(sv[0], 0.0)))


# -- batched kernels ---------------------------------------------------------
#
# The center searches scan distances from one candidate point to every
# sample of a fiber; for n = 2 the eigenvalues of P^{-1} Q have a closed
# form, so the scan is a handful of vectorized array operations.

def _distance_2x2_batch(P: np.ndarray, batch: np.ndarray) -> np.ndarray:
    a, b, c = P[0, 0], P[0, 1], P[1, 1]
    det_p = a * c - b * b
    if det_p <= 0.0:
        raise NotPositiveDefinite("reference point is not positive definite")
    qa = batch[:, 0, 0]
    qb = batch[:, 0, 1]
    qc = batch[:, 1, 1]
    det_q = qa * qc - qb * qb
    # trace(P^{-1} Q) and det(P^{-1} Q); eigenvalues from the quadratic.
    tr = (c * qa - 2.0 * b * qb + a * qc) / det_p
    dt = det_q / det_p
    disc = np.sqrt(np.maximum(tr * tr - 4.0 * dt, 0.0))
    lam1 = 0.5 * (tr + disc)
    lam2 = 0.5 * (tr - disc)
    if np.any(dt <= 0.0) or np.any(lam1 <= 0.0):
        raise NotPositiveDefinite("batch entry is not positive definite")
    lam2 = np.maximum(lam2, 1e-300)
    l1 = np.log(lam1)
    l2 = np.log(lam2)
    return np.sqrt(l1 * l1 + l2 * l2)


def spd_distances_from(P: np.ndarray, batch: np.ndarray) -> np.ndarray:
    """Distances from ``P`` to every matrix of a (m, n, n) batch."""
    P = np.asarray(P, dtype=float)
    batch = np.asarray(batch, dtype=float)
    if batch.ndim != 3 or batch.shape[1:] != P.shape:
        raise DimensionMismatch(
            f"batch shape {batch.shape} incompatible with point {P.shape}"
        )
    if P.shape[0] == 2:
        return _distance_2x2_batch(P, batch)
    return np.array([spd_distance(P, q) for q in batch])


def pairwise_spd_distances(batch: np.ndarray) -> np.ndarray:
    """Condensed upper-triangle distances of a batch; empty for m < 2."""
    batch = np.asarray(batch, dtype=float)
    m = batch.shape[0]
    if m < 2:
        return np.zeros(0)
    if batch.shape[1] == 2:
        iu, ju = np.triu_indices(m, k=1)
        a = batch[:, 0, 0]
        b = batch[:, 0, 1]
        c = batch[:, 1, 1]
        det = a * c - b * b
        if np.any(det <= 0.0):
            raise NotPositiveDefinite("batch entry is not positive definite")
        ai, bi, ci, di = a[iu], b[iu], c[iu], det[iu]
        aj, bj, cj, dj = a[ju], b[ju], c[ju], det[ju]
        tr = (ci * aj - 2.0 * bi * bj + ai * cj) / di
        dt = dj / di
        disc = np.sqrt(np.maximum(tr * tr - 4.0 * dt, 0.0))
        l1 = np.log(np.maximum(0.5 * (tr + disc), 1e-300))
        l2 = np.log(np.maximum(0.5 * (tr - disc), 1e-300))
        return np.sqrt(l1 * l1 + l2 * l2)
    out = []
    for i in range(m - 1):
        out.append(spd_distances_from(batch[i], batch[i + 1:]))
    return np.concatenate(out) if out else np.zeros(0)
