"""Unitary representations on finite-dimensional complex spaces.

Irreducibility is decided through the commutant: the linear space of matrices
commuting with every representation matrix. Dimension one is the Schur
criterion, and a Hermitian commutant element supplies the invariant subspaces
needed by the joining construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import GroupMismatch, IrreducibleInput
from .groups import FiniteGroup, GroupAction

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True, eq=False)
class UnitaryRepresentation:
    group: FiniteGroup
    dim: int
    matrices: np.ndarray        # (n, d, d) complex
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        mats = self.matrices
        if mats.shape != (self.group.order, self.dim, self.dim):
            raise ValueError("matrix stack has wrong shape")
        eye = np.eye(self.dim)
        if _maxabs(mats[self.group.identity] - eye) > self.tolerance:
            raise ValueError("identity element is not represented by the identity")
        for g, u in enumerate(mats):
            if _maxabs(u @ u.conj().T - eye) > self.tolerance:
                raise ValueError(f"matrix for element {g} is not unitary")
        cay = self.group.cayley
        for a in range(self.group.order):
            for b in range(self.group.order):
                if _maxabs(mats[cay[a, b]] - mats[a] @ mats[b]) > self.tolerance:
                    raise ValueError(f"not a homomorphism at pair ({a}, {b})")

    def matrix(self, g: int) -> np.ndarray:
        return self.matrices[g]


@dataclass(frozen=True, eq=False)
class Operator:
    dim: int
    matrix: np.ndarray
    hermitian: bool
    source_variable: str | None = None
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.matrix.shape != (self.dim, self.dim):
            raise ValueError("operator matrix has wrong shape")
        if self.hermitian and _maxabs(self.matrix - self.matrix.conj().T) > self.tolerance:
            raise ValueError("matrix declared hermitian but is not")


def _maxabs(a: np.ndarray) -> float:
    return float(np.abs(a).max()) if a.size else 0.0


def permutation_representation(action: GroupAction) -> UnitaryRepresentation:
    """0/1 matrices with U(g)[g.x, x] = 1."""
    n, m = action.group.order, action.space_size
    mats = np.zeros((n, m, m), dtype=complex)
    for g in range(n):
        mats[g, action.act[g], np.arange(m)] = 1.0
    mats.setflags(write=False)
    return UnitaryRepresentation(action.group, m, mats)


def regular_representation(group: FiniteGroup) -> UnitaryRepresentation:
    """Left translation on coordinate functions over the group itself."""
    from .groups import build_action

    action = build_action(group, group.cayley)
    return permutation_representation(action)


def commutant_basis(rep: UnitaryRepresentation) -> list[np.ndarray]:
    """Deterministic basis of {X : X U(g) = U(g) X for all g}.

    Solves the stacked linear system with an SVD; rank decisions use the
    scale-free threshold tolerance * largest singular value.
    """
    d = rep.dim
    eye = np.eye(d)
    rows = []
    for u in rep.matrices:
        # vec(UX - XU) = (U (x) I - I (x) U^T) vec(X), row-major vec
        rows.append(np.kron(u, eye) - np.kron(eye, u.T))
    system = np.concatenate(rows, axis=0)
    _, sigma, vh = np.linalg.svd(system)
    if sigma.size == 0 or sigma[0] == 0.0:
        null_rows = vh
    else:
        threshold = rep.tolerance * sigma[0]
        rank = int(np.sum(sigma > threshold))
        null_rows = vh[rank:]
    return [row.conj().reshape(d, d) for row in null_rows]


def commutant_dimension(rep: UnitaryRepresentation) -> int:
    return len(commutant_basis(rep))


def is_irreducible(rep: UnitaryRepresentation) -> bool:
    return commutant_dimension(rep) == 1


def _canonical_phase(v: np.ndarray, tolerance: float) -> np.ndarray:
    """Rotate so the first component above tolerance is real positive."""
    idx = np.nonzero(np.abs(v) > tolerance)[0]
    if idx.size == 0:
        return v
    phase = v[idx[0]] / abs(v[idx[0]])
    return v / phase


def invariant_subspace_split(rep: UnitaryRepresentation):
    """Two orthogonal proper invariant subspaces of a reducible representation.

    Uses the eigenspaces of a Hermitian non-scalar commutant element: the
    first basis element whose Hermitian (or, failing that, anti-Hermitian)
    part is non-scalar, eigenvalues ascending. Returns (basis0, basis1) as
    column matrices.
    """
    basis = commutant_basis(rep)
    if len(basis) <= 1:
        raise IrreducibleInput("representation has a trivial commutant")
    d = rep.dim
    tol = rep.tolerance
    herm = None
    for c in basis:
        for cand in ((c + c.conj().T) / 2, (c - c.conj().T) / 2j):
            scale = max(_maxabs(cand), 1.0)
            if _maxabs(cand - (np.trace(cand) / d) * np.eye(d)) > tol * scale:
                herm = cand
                break
        if herm is not None:
            break
    if herm is None:
        raise IrreducibleInput("no non-scalar Hermitian commutant element found")
    evals, evecs = np.linalg.eigh(herm)
    scale = max(float(np.abs(evals).max()), 1.0)
    clusters: list[list[int]] = [[0]]
    for i in range(1, d):
        if evals[i] - evals[clusters[-1][-1]] <= tol * scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    if len(clusters) < 2:
        raise IrreducibleInput("commutant element has a single eigenvalue")
    cols0 = np.column_stack(
        [_canonical_phase(evecs[:, i], tol) for i in clusters[0]]
    )
    cols1 = np.column_stack(
        [_canonical_phase(evecs[:, i], tol) for i in clusters[1]]
    )
    for cols in (cols0, cols1):
        proj = cols @ cols.conj().T
        for u in rep.matrices:
            if _maxabs(u @ proj - proj @ u) > 10 * tol:
                raise IrreducibleInput("split subspace is not invariant")
    return cols0, cols1


def direct_sum(rep1: UnitaryRepresentation, rep2: UnitaryRepresentation) -> UnitaryRepresentation:
    if rep1.group is not rep2.group:
        raise GroupMismatch("direct sum requires a common group")
    n = rep1.group.order
    d = rep1.dim + rep2.dim
    mats = np.zeros((n, d, d), dtype=complex)
    mats[:, : rep1.dim, : rep1.dim] = rep1.matrices
    mats[:, rep1.dim :, rep1.dim :] = rep2.matrices
    mats.setflags(write=False)
    return UnitaryRepresentation(rep1.group, d, mats, min(rep1.tolerance, rep2.tolerance))


def restricted_representation(
    rep: UnitaryRepresentation, basis_cols: np.ndarray
) -> UnitaryRepresentation:
    """Restriction of the representation to an invariant subspace."""
    mats = np.stack(
        [basis_cols.conj().T @ u @ basis_cols for u in rep.matrices]
    )
    return UnitaryRepresentation(rep.group, basis_cols.shape[1], mats, rep.tolerance)
