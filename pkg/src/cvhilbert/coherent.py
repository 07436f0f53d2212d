"""Coherent-state systems: fiducial orbits, resolution of identity, operators.

A system is the orbit of a fiducial vector under a representation, collapsed
to one state per left coset of the fiducial's isotropy subgroup. Summing the
state projectors against the counting measure and normalizing by the trace
either reproduces the identity (guaranteed for irreducible representations)
or reports a residual.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NoResolution, NumericalAmbiguity
from .groups import CosetSpace, Subgroup, left_cosets, subgroup
from .representations import Operator, UnitaryRepresentation, _maxabs


@dataclass(frozen=True, eq=False)
class ResolutionResult:
    constant: float
    residual: float
    ok: bool


@dataclass(frozen=True, eq=False)
class CoherentStateSystem:
    rep: UnitaryRepresentation
    fiducial: np.ndarray
    isotropy: Subgroup                  # elements fixing the fiducial up to phase
    alpha: tuple[float, ...]            # phase per isotropy member
    cosets: CosetSpace
    states: np.ndarray                  # (|X|, d), one unit vector per coset
    weight: float                       # c with c * sum |x><x| tested against I

    @property
    def tolerance(self) -> float:
        return self.rep.tolerance

    def state_projectors(self) -> np.ndarray:
        return np.einsum("xi,xj->xij", self.states, self.states.conj())


def isotropy_of_state(rep: UnitaryRepresentation, fiducial: np.ndarray):
    """Subgroup fixing the fiducial up to a unit-modulus scalar, with phases.

    Parallelism is decided by |<fiducial|U(g)|fiducial>| >= 1 - tolerance for
    unit vectors; overlaps inside the tolerance band around that boundary
    raise NumericalAmbiguity rather than silently classifying.
    """
    tol = rep.tolerance
    fiducial = np.asarray(fiducial, dtype=complex)
    if abs(np.linalg.norm(fiducial) - 1.0) > tol:
        raise ValueError("fiducial must be a unit vector")
    members, phases = [], []
    for g in range(rep.group.order):
        overlap = complex(fiducial.conj() @ (rep.matrices[g] @ fiducial))
        mag = abs(overlap)
        if mag >= 1.0 - tol:
            members.append(g)
            phases.append(float(np.angle(overlap)) if g != rep.group.identity else 0.0)
        elif mag > 1.0 - 2.0 * tol:
            raise NumericalAmbiguity(
                f"overlap modulus {mag!r} for element {g} is too close to the boundary"
            )
    sub = subgroup(rep.group, members)
    ordered = [phases[members.index(m)] for m in sub.members]
    return sub, tuple(ordered)


def build_coherent_system(
    rep: UnitaryRepresentation, fiducial=None
) -> CoherentStateSystem:
    """Assemble the coset states for a fiducial (default: first basis vector)."""
    if fiducial is None:
        fiducial = np.zeros(rep.dim, dtype=complex)
        fiducial[0] = 1.0
    fiducial = np.asarray(fiducial, dtype=complex)
    iso, alpha = isotropy_of_state(rep, fiducial)
    cosets = left_cosets(rep.group, iso)
    states = np.stack([rep.matrices[g] @ fiducial for g in cosets.representatives])
    # phase condition U(e) psi = exp(i alpha(e)) psi, checked exactly here
    for m, a in zip(iso.members, alpha):
        moved = rep.matrices[m] @ fiducial
        if _maxabs(moved - np.exp(1j * a) * fiducial) > 10 * rep.tolerance:
            raise NumericalAmbiguity(f"isotropy phase inconsistent for element {m}")
    states.setflags(write=False)
    weight = rep.dim / len(cosets)
    return CoherentStateSystem(rep, fiducial, iso, alpha, cosets, states, weight)


def resolution_of_identity(system: CoherentStateSystem) -> ResolutionResult:
    """Test c * sum_x |x><x| against the identity.

    c is computed from the trace, never assumed. A reducible representation
    typically fails here; that outcome is reported, not raised.
    """
    b = np.einsum("xi,xj->ij", system.states, system.states.conj())
    c = system.rep.dim / float(np.trace(b).real)
    residual = _maxabs(c * b - np.eye(system.rep.dim))
    return ResolutionResult(c, residual, residual <= system.tolerance)


def one_to_one_check(system: CoherentStateSystem):
    """Injectivity of the state assignment.

    Trivial isotropy: the vectors U(g) fiducial must be pairwise distinct.
    Nontrivial isotropy: coset states must be pairwise non-parallel, and a
    fiducial fixed by the whole group fails outright. Returns (ok, witness).
    """
    rep = system.rep
    tol = system.tolerance
    if system.isotropy.order == rep.group.order and rep.group.order > 1:
        return False, (rep.group.identity, system.isotropy.members[1])
    if system.isotropy.order == 1:
        vectors = [rep.matrices[g] @ system.fiducial for g in range(rep.group.order)]
        for i in range(len(vectors)):
            for j in range(i + 1, len(vectors)):
                if _maxabs(vectors[i] - vectors[j]) <= tol:
                    return False, (i, j)
        return True, None
    for i in range(len(system.states)):
        for j in range(i + 1, len(system.states)):
            overlap = abs(complex(system.states[i].conj() @ system.states[j]))
            if overlap >= 1.0 - tol:
                return False, (
                    system.cosets.representatives[i],
                    system.cosets.representatives[j],
                )
    return True, None


def operator_from_variable(
    system: CoherentStateSystem, values, name: str | None = None
) -> Operator:
    """A = c * sum_x values[x] |x><x| over the coset states."""
    values = np.asarray(values, dtype=float)
    if values.shape != (len(system.cosets),):
        raise ValueError("need one numeric value per coset state")
    res = resolution_of_identity(system)
    if not res.ok:
        raise NoResolution(
            f"resolution of identity fails with residual {res.residual:.3e}"
        )
    mats = system.state_projectors()
    a = res.constant * np.einsum("x,xij->ij", values, mats)
    return Operator(system.rep.dim, a, hermitian=True, source_variable=name,
                    tolerance=system.tolerance)
