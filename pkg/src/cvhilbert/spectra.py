"""Spectral decomposition, conjugation covariance, and question labeling.

Eigenvalues within the tolerance of each other are clustered into one
projector so discrete multiplicity claims survive floating arithmetic.
Eigenvectors carry a canonical phase (first sizable component real positive)
so basis-change coefficients are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSpectrum, DimensionMismatch, NotHermitian
from .representations import Operator, _maxabs
from .variables import ConceptualVariable, Context, is_maximally_accessible


@dataclass(frozen=True, eq=False)
class EigenSystem:
    operator: Operator
    eigenvalues: tuple[float, ...]          # distinct, ascending
    multiplicities: tuple[int, ...]
    projectors: np.ndarray                  # (k, d, d) Hermitian idempotents
    vectors: np.ndarray                     # (d, d) canonical-phase eigenvector columns

    @property
    def degenerate(self) -> bool:
        return any(m > 1 for m in self.multiplicities)

    def vector_for(self, cluster: int) -> np.ndarray:
        start = sum(self.multiplicities[:cluster])
        return self.vectors[:, start]


@dataclass(frozen=True, eq=False)
class QuestionAnswer:
    variable: str
    value_label: str
    numeric_value: float
    eigenvector: np.ndarray | None          # None when the answer labels a subspace
    rank: int = 1


def _canonical_phase(v: np.ndarray, tol: float) -> np.ndarray:
    idx = np.nonzero(np.abs(v) > tol)[0]
    if idx.size == 0:
        return v
    return v / (v[idx[0]] / abs(v[idx[0]]))


def eigensystem(op: Operator) -> EigenSystem:
    """Hermitian eigendecomposition with tolerance clustering."""
    tol = op.tolerance
    if _maxabs(op.matrix - op.matrix.conj().T) > tol:
        raise NotHermitian("operator is not Hermitian at tolerance")
    evals, evecs = np.linalg.eigh(op.matrix)
    d = op.dim
    scale = max(float(np.abs(evals).max()), 1.0)
    clusters: list[list[int]] = [[0]]
    for i in range(1, d):
        if evals[i] - evals[clusters[-1][-1]] <= tol * scale:
            clusters[-1].append(i)
        else:
            clusters.append([i])
    cols = np.column_stack([_canonical_phase(evecs[:, i], tol) for i in range(d)])
    distinct, mults, projs = [], [], []
    for cl in clusters:
        distinct.append(float(np.mean(evals[cl])))
        mults.append(len(cl))
        block = cols[:, cl]
        projs.append(block @ block.conj().T)
    projectors = np.stack(projs)
    recon = sum(l * p for l, p in zip(distinct, projectors))
    if _maxabs(recon - op.matrix) > 100 * tol * scale:
        raise NotHermitian("spectral reconstruction failed")
    return EigenSystem(op, tuple(distinct), tuple(mults), projectors, cols)


def verify_conjugation_covariance(
    transport: np.ndarray, a: Operator, a_moved: Operator, tolerance: float | None = None
):
    """residual and pass flag for transport^dagger A transport == A_moved."""
    tol = tolerance if tolerance is not None else a.tolerance
    residual = _maxabs(transport.conj().T @ a.matrix @ transport - a_moved.matrix)
    return residual, residual <= tol


def verify_values_are_eigenvalues(op: Operator, variable: ConceptualVariable) -> bool:
    """Clustered spectrum must equal the attained numeric value set."""
    eig = eigensystem(op)
    values = sorted(set(variable.numeric()))
    if len(values) != len(eig.eigenvalues):
        return False
    scale = max(max(abs(v) for v in values), 1.0)
    return all(
        abs(l - v) <= op.tolerance * scale
        for l, v in zip(eig.eigenvalues, values)
    )


def verify_maximality_iff_nondegenerate(
    context: Context, variable: ConceptualVariable, op: Operator
) -> bool:
    """The biconditional: maximal accessibility vs a multiplicity-free spectrum."""
    eig = eigensystem(op)
    return is_maximally_accessible(context, variable) == (not eig.degenerate)


def question_answer_labels(op: Operator, variable: ConceptualVariable) -> list[QuestionAnswer]:
    """One labeled record per distinct eigenvalue.

    Non-degenerate eigenvalues get a canonical-phase eigenvector; degenerate
    ones label their eigenspace, with the rank recorded and no vector.
    """
    eig = eigensystem(op)
    numeric = variable.numeric()
    scale = max(max(abs(v) for v in numeric), 1.0)
    out = []
    for ci, (lam, mult) in enumerate(zip(eig.eigenvalues, eig.multiplicities)):
        label = None
        for idx, nv in enumerate(numeric):
            if abs(nv - lam) <= op.tolerance * scale:
                label = variable.value_labels[idx]
                break
        if label is None:
            label = f"{lam!r}"
        vec = eig.vector_for(ci) if mult == 1 else None
        out.append(QuestionAnswer(variable.name, label, lam, vec, mult))
    return out


def transition_matrix(eig_a: EigenSystem, eig_b: EigenSystem) -> np.ndarray:
    """Coefficients <a; j | b; i> between two non-degenerate eigenbases."""
    if eig_a.operator.dim != eig_b.operator.dim:
        raise DimensionMismatch("operators act on different spaces")
    if eig_a.degenerate or eig_b.degenerate:
        raise DegenerateSpectrum("transition coefficients need non-degenerate spectra")
    t = eig_a.vectors.conj().T @ eig_b.vectors
    d = eig_a.operator.dim
    tol = max(eig_a.operator.tolerance, eig_b.operator.tolerance)
    if _maxabs(t @ t.conj().T - np.eye(d)) > 100 * tol:
        raise ValueError("transition matrix is not unitary at tolerance")
    return t


def operator_for_coarsening(eig: EigenSystem, value_map) -> Operator:
    """Spectral pushforward: apply a value function to the eigenvalues.

    value_map takes a numeric eigenvalue to a numeric value; projectors with
    equal images merge in the resulting operator's spectrum. Chained
    coarsenings pass through degenerate intermediates, which stay well
    defined because the map acts on distinct eigenvalues only.
    """
    a = sum(
        float(value_map(l)) * p for l, p in zip(eig.eigenvalues, eig.projectors)
    )
    return Operator(eig.operator.dim, a, hermitian=True,
                    source_variable=eig.operator.source_variable,
                    tolerance=eig.operator.tolerance)


def find_question_for_vector(vector: np.ndarray, operators: list[Operator]):
    """Search a family for an operator having the vector as an eigenvector.

    Returns (operator index, eigenvalue) for the first match, None otherwise.
    No completeness claim: only the supplied family is searched.
    """
    vector = np.asarray(vector, dtype=complex)
    vector = vector / np.linalg.norm(vector)
    for idx, op in enumerate(operators):
        image = op.matrix @ vector
        lam = complex(vector.conj() @ image)
        if _maxabs(image - lam * vector) <= op.tolerance * max(1.0, abs(lam)):
            return idx, float(lam.real)
    return None
