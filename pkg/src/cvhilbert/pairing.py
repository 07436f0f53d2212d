"""Joining two related maximal variables into one operator-bearing system.

Given a transitive free group on the first variable's value set, an
independent copy acts on the second value set and a swap generator joins
them into a group N on the value product. A representation of N is grown
from matrices assigned to the generators; nothing guarantees in advance that
the assignment extends to a homomorphism, so the extension is verified per
instance and rejected with a witness when it fails.

The coset structure of N modulo the fiducial's isotropy carries the (x, y)
labels used to marginalize state projectors into the two operators. The
labeling, its injectivity, and the covariance of the resulting operators are
all checked rather than assumed; structural obstructions (distinct value
motions represented by matrices equal up to a scalar) are detected and
reported explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coherent import isotropy_of_state
from .errors import (
    CosetLabelingError,
    InvolutionViolation,
    NoResolution,
    NontrivialIsotropy,
    NotMaximal,
    NotRelated,
    NotTransitive,
    NotWellDefined,
    UndefinedTransport,
)
from .groups import (
    CosetSpace,
    FiniteGroup,
    GroupAction,
    Subgroup,
    bfs_words,
    generate_permutation_group,
    is_transitive,
    isotropy_subgroup,
    left_cosets,
)
from .representations import (
    Operator,
    UnitaryRepresentation,
    _maxabs,
    invariant_subspace_split,
    is_irreducible,
)
from .variables import (
    ConceptualVariable,
    Context,
    is_maximally_accessible,
    joint_variable,
)


@dataclass(frozen=True, eq=False)
class RelatedPair:
    context: Context
    theta: ConceptualVariable
    xi: ConceptualVariable
    k_perm: tuple[int, ...]
    k_in_group: int | None              # index in the context group, if it lies there
    k_squared_identity: bool
    product_structure: bool             # underlying space is exactly the value product


@dataclass(frozen=True, eq=False)
class JointGroup:
    group: FiniteGroup
    action: GroupAction                 # on the value product
    value_size: int                     # points per axis of the product
    gen_slots: tuple[tuple, ...]        # ('first', idx) | ('second', idx) | ('swap',)
    gen_elements: tuple[int, ...]       # joined-group index per slot
    first_embed: tuple[int, ...]        # joined-group index of each first-axis copy
    second_embed: tuple[int, ...]
    swap_element: int

    def product_point(self, a: int, b: int) -> int:
        return a * self.value_size + b

    def split_point(self, p: int) -> tuple[int, int]:
        return divmod(p, self.value_size)


@dataclass(frozen=True, eq=False)
class JointSystem:
    pair: RelatedPair
    joint: JointGroup
    base_rep: UnitaryRepresentation     # representation feeding the join
    swap_matrix: np.ndarray
    joint_rep: UnitaryRepresentation    # representation of the joined group
    words: tuple[tuple[int, ...], ...]
    fiducial: np.ndarray
    isotropy: Subgroup                  # fixes fiducial up to phase
    alpha: tuple[float, ...]
    cosets: CosetSpace                  # joined group modulo the isotropy
    states: np.ndarray                  # one unit vector per coset
    x_index: tuple[int, ...]            # first-axis label per coset
    y_index: tuple[int, ...]
    base_point: int

    @property
    def dim(self) -> int:
        return self.base_rep.dim

    @property
    def tolerance(self) -> float:
        return self.joint_rep.tolerance


@dataclass(frozen=True, eq=False)
class CovarianceRecord:
    element: int
    residual: float
    ok: bool
    obstructed: bool        # matrix equals a scalar multiple of another element's
                            # matrix that moves the values differently


def build_related_pair(
    context: Context, theta: ConceptualVariable, xi: ConceptualVariable, k
) -> RelatedPair:
    """Validate maximality, the relating identity xi = theta o k, and the
    involution condition that applies when the space is the value product.

    `k` is an element index of the context group or an explicit permutation.
    """
    if isinstance(k, (int, np.integer)):
        k_in_group = int(k)
        k_perm = context.acting_group.permutation(k_in_group)
    else:
        k_perm = tuple(int(v) for v in k)
        rows = {context.acting_group.permutation(g): g
                for g in range(context.acting_group.group.order)}
        k_in_group = rows.get(k_perm)
    if sorted(k_perm) != list(range(context.phi_size)):
        raise ValueError("k is not a permutation of the underlying space")
    for var in (theta, xi):
        if not is_maximally_accessible(context, var):
            raise NotMaximal(var.name)
    for p in range(context.phi_size):
        lhs = theta.value_labels[theta.values[k_perm[p]]]
        rhs = xi.value_labels[xi.values[p]]
        if lhs != rhs:
            raise NotRelated(p)
    k_squared = tuple(k_perm[k_perm[p]] for p in range(len(k_perm)))
    k_squared_identity = k_squared == tuple(range(len(k_perm)))
    joint = joint_variable(theta, xi)
    product_structure = (
        context.phi_size == theta.value_count * xi.value_count
        and joint.value_count == context.phi_size
    )
    if product_structure and not k_squared_identity:
        raise InvolutionViolation(
            "underlying space is the value product but k squared is not the identity"
        )
    return RelatedPair(context, theta, xi, k_perm, k_in_group,
                       k_squared_identity, product_structure)


def build_joint_group(
    pair: RelatedPair,
    g_group: FiniteGroup,
    g_action: GroupAction,
    order_bound: int = 1024,
) -> JointGroup:
    """Close the first-axis copies, second-axis copies and the swap into N.

    The supplied group must be transitive with trivial isotropy on the value
    set, so group elements match values one to one.
    """
    if not is_transitive(g_action):
        raise NotTransitive("the supplied group is not transitive on the values")
    if isotropy_subgroup(g_action, 0).order != 1:
        raise NontrivialIsotropy("the supplied group has a nontrivial point stabilizer")
    m = g_action.space_size
    if m != pair.theta.value_count:
        raise ValueError("group acts on the wrong number of values")
    size = m * m
    gens, slots = [], []
    for g in range(g_group.order):
        if g == g_group.identity:
            continue
        row = g_action.act[g]
        gens.append(tuple(int(row[p // m]) * m + (p % m) for p in range(size)))
        slots.append(("first", g))
    for g in range(g_group.order):
        if g == g_group.identity:
            continue
        row = g_action.act[g]
        gens.append(tuple((p // m) * m + int(row[p % m]) for p in range(size)))
        slots.append(("second", g))
    swap = tuple((p % m) * m + (p // m) for p in range(size))
    if swap != tuple(range(size)):
        gens.append(swap)
        slots.append(("swap",))
    n_group, n_action = generate_permutation_group(
        gens, space_size=size, order_bound=order_bound
    )
    perm_index = {n_action.permutation(n): n for n in range(n_group.order)}
    gen_elements = tuple(perm_index[p] for p in gens)
    ident = tuple(range(size))
    first_embed, second_embed = [], []
    for g in range(g_group.order):
        row = g_action.act[g]
        pg = tuple(int(row[p // m]) * m + (p % m) for p in range(size))
        ph = tuple((p // m) * m + int(row[p % m]) for p in range(size))
        first_embed.append(perm_index[pg])
        second_embed.append(perm_index[ph])
    swap_element = perm_index.get(swap, n_group.identity)
    if m > 1:
        if not is_transitive(n_action):
            raise NotTransitive("joined group is not transitive on the product")
        if n_group.is_abelian():
            raise NotTransitive("joined group is unexpectedly abelian")
    return JointGroup(n_group, n_action, m, tuple(slots), gen_elements,
                      tuple(first_embed), tuple(second_embed), swap_element)


def build_swap_matrix(base_rep: UnitaryRepresentation) -> np.ndarray:
    """Unitary involution exchanging vectors drawn from two invariant subspaces.

    Irreducible input forces a scalar, and the identity is the canonical
    choice. Otherwise the first basis vectors of the two split subspaces are
    exchanged and everything orthogonal to them is fixed.
    """
    if is_irreducible(base_rep):
        return np.eye(base_rep.dim, dtype=complex)
    cols0, cols1 = invariant_subspace_split(base_rep)
    v0 = cols0[:, 0]
    v1 = cols1[:, 0]
    eye = np.eye(base_rep.dim, dtype=complex)
    j = (
        eye
        - np.outer(v0, v0.conj())
        - np.outer(v1, v1.conj())
        + np.outer(v1, v0.conj())
        + np.outer(v0, v1.conj())
    )
    if _maxabs(j @ j - eye) > base_rep.tolerance:
        raise ValueError("constructed swap is not an involution")
    return j


def build_joint_representation(
    joint: JointGroup, base_rep: UnitaryRepresentation, swap_matrix: np.ndarray
):
    """Extend the generator assignment to all of N and verify it.

    Each element receives the matrix product along its breadth-first shortest
    word. The extension is accepted only if the full multiplication table is
    respected; otherwise NotWellDefined carries an element with two words
    whose products disagree.
    """
    d = base_rep.dim
    tol = base_rep.tolerance
    swap_matrix = np.asarray(swap_matrix, dtype=complex)
    if _maxabs(swap_matrix @ swap_matrix - np.eye(d)) > tol:
        raise NotWellDefined(joint.swap_element, ("swap", "swap"), ())
    gen_mats = []
    for slot in joint.gen_slots:
        if slot[0] == "first":
            gen_mats.append(base_rep.matrices[slot[1]])
        elif slot[0] == "second":
            gen_mats.append(swap_matrix @ base_rep.matrices[slot[1]] @ swap_matrix)
        else:
            gen_mats.append(swap_matrix)
    words = bfs_words(joint.group, list(joint.gen_elements))
    mats = np.empty((joint.group.order, d, d), dtype=complex)
    for n, word in enumerate(words):
        acc = np.eye(d, dtype=complex)
        for slot_idx in word:
            acc = acc @ gen_mats[slot_idx]
        mats[n] = acc
    cay = joint.group.cayley
    for a in range(joint.group.order):
        for b in range(joint.group.order):
            c = int(cay[a, b])
            if _maxabs(mats[c] - mats[a] @ mats[b]) > tol:
                raise NotWellDefined(c, words[a] + words[b], words[c])
    mats.setflags(write=False)
    joint_rep = UnitaryRepresentation(joint.group, d, mats, tol)
    # defining relation: the second-axis copy is the swap conjugate of the first
    for g in range(base_rep.group.order):
        expected = swap_matrix @ base_rep.matrices[g] @ swap_matrix
        if _maxabs(joint_rep.matrices[joint.second_embed[g]] - expected) > tol:
            raise NotWellDefined(joint.second_embed[g], ("conjugation",), words[joint.second_embed[g]])
    return joint_rep, tuple(words)


def verify_joint_irreducibility(joint_rep: UnitaryRepresentation):
    """Schur test for the joined representation; returns (ok, commutant dim)."""
    from .representations import commutant_dimension

    dim = commutant_dimension(joint_rep)
    return dim == 1, dim


def joint_coset_structure(
    pair: RelatedPair,
    joint: JointGroup,
    base_rep: UnitaryRepresentation,
    swap_matrix: np.ndarray,
    joint_rep: UnitaryRepresentation,
    words,
    fiducial=None,
) -> JointSystem:
    """Cosets of the fiducial isotropy with consistent, injective (x, y) labels.

    A coset's x label is read off its members lying in the first-axis copy,
    its y label off members in the second-axis copy. Subgroup elements whose
    matrices are scalar can merge cosets; the labeling survives exactly when
    every coset still meets both copies consistently and no two cosets share
    a label pair. Violations raise CosetLabelingError with a witness.
    """
    d = base_rep.dim
    if fiducial is None:
        fiducial = np.zeros(d, dtype=complex)
        fiducial[0] = 1.0
    fiducial = np.asarray(fiducial, dtype=complex)
    isotropy, alpha = isotropy_of_state(joint_rep, fiducial)
    cosets = left_cosets(joint.group, isotropy)
    states = np.stack(
        [joint_rep.matrices[r] @ fiducial for r in cosets.representatives]
    )
    states.setflags(write=False)
    base = joint.product_point(0, 0)
    g_set = {n: g for g, n in enumerate(joint.first_embed)}
    h_set = {n: g for g, n in enumerate(joint.second_embed)}
    x_index, y_index = [], []
    for ci, block in enumerate(cosets.cosets):
        xs = sorted({joint.split_point(joint.action.apply(n, base))[0]
                     for n in block if n in g_set})
        ys = sorted({joint.split_point(joint.action.apply(n, base))[1]
                     for n in block if n in h_set})
        if not xs or not ys:
            raise CosetLabelingError("coset meets no axis copy", block)
        if len(xs) > 1 or len(ys) > 1:
            raise CosetLabelingError("inconsistent axis labels", (block, xs, ys))
        x_index.append(xs[0])
        y_index.append(ys[0])
    labels = list(zip(x_index, y_index))
    if len(set(labels)) != len(labels):
        dup = next(l for l in labels if labels.count(l) > 1)
        raise CosetLabelingError("label collision", dup)
    return JointSystem(
        pair, joint, base_rep, np.asarray(swap_matrix, dtype=complex), joint_rep,
        tuple(words), fiducial, isotropy, alpha, cosets, states,
        tuple(x_index), tuple(y_index), base,
    )


def build_joint_system(
    pair: RelatedPair,
    g_group: FiniteGroup,
    g_action: GroupAction,
    base_rep: UnitaryRepresentation | None = None,
    swap_matrix: np.ndarray | None = None,
    fiducial=None,
    order_bound: int = 1024,
) -> JointSystem:
    """One-shot pipeline: join the groups, extend the representation, label cosets."""
    from .representations import regular_representation

    joint = build_joint_group(pair, g_group, g_action, order_bound)
    if base_rep is None:
        base_rep = regular_representation(g_group)
    if swap_matrix is None:
        swap_matrix = build_swap_matrix(base_rep)
    joint_rep, words = build_joint_representation(joint, base_rep, swap_matrix)
    return joint_coset_structure(pair, joint, base_rep, swap_matrix, joint_rep, words, fiducial)


def _resolution_constant(system: JointSystem) -> tuple[float, float]:
    b = np.einsum("xi,xj->ij", system.states, system.states.conj())
    c = system.dim / float(np.trace(b).real)
    residual = _maxabs(c * b - np.eye(system.dim))
    return c, residual


def resolution_of_identity(system: JointSystem):
    from .coherent import ResolutionResult

    c, residual = _resolution_constant(system)
    return ResolutionResult(c, residual, residual <= system.tolerance)


def _marginal_projectors(system: JointSystem, labels, c: float, count: int) -> np.ndarray:
    out = np.zeros((count, system.dim, system.dim), dtype=complex)
    for z, lab in enumerate(labels):
        out[lab] += c * np.outer(system.states[z], system.states[z].conj())
    return out


def joint_operators(
    system: JointSystem, theta_values, xi_values
) -> tuple[Operator, Operator]:
    """Marginalize labeled state projectors into the two variable operators.

    theta_values and xi_values are numeric, one per value-set point. The
    normalization constant comes from the full projector sum, which must
    resolve the identity.
    """
    m = system.joint.value_size
    theta_values = np.asarray(theta_values, dtype=float)
    xi_values = np.asarray(xi_values, dtype=float)
    if theta_values.shape != (m,) or xi_values.shape != (m,):
        raise ValueError("need one numeric value per value-set point")
    c, residual = _resolution_constant(system)
    if residual > system.tolerance:
        raise NoResolution(f"projector sum fails to resolve identity: {residual:.3e}")
    p_x = _marginal_projectors(system, system.x_index, c, m)
    q_y = _marginal_projectors(system, system.y_index, c, m)
    a_theta = np.einsum("x,xij->ij", theta_values, p_x)
    a_xi = np.einsum("y,yij->ij", xi_values, q_y)
    return (
        Operator(system.dim, a_theta, hermitian=True,
                 source_variable=system.pair.theta.name, tolerance=system.tolerance),
        Operator(system.dim, a_xi, hermitian=True,
                 source_variable=system.pair.xi.name, tolerance=system.tolerance),
    )


def marginal_projectors(system: JointSystem) -> tuple[np.ndarray, np.ndarray]:
    """(P(x), Q(y)) stacks; each sums to the identity when labels are total."""
    m = system.joint.value_size
    c, residual = _resolution_constant(system)
    if residual > system.tolerance:
        raise NoResolution(f"projector sum fails to resolve identity: {residual:.3e}")
    return (
        _marginal_projectors(system, system.x_index, c, m),
        _marginal_projectors(system, system.y_index, c, m),
    )


def find_element_for_transformation(system: JointSystem, perm) -> int:
    """Index in the joined group whose action equals the given permutation.

    UndefinedTransport when the transformation has no image in the group.
    """
    perm = tuple(int(v) for v in perm)
    for n in range(system.joint.group.order):
        if system.joint.action.permutation(n) == perm:
            return n
    raise UndefinedTransport("transformation has no image in the joined group")


def transported_operator(
    system: JointSystem, theta_values, xi_values, element
) -> Operator:
    """Operator of the moved variable p -> theta(t . p), built the same way.

    `element` is a joined-group index or an explicit permutation of the
    product space. The moved table must factor through one of the two axes
    of the product; every element of the joined group satisfies this, an
    arbitrary permutation need not. UndefinedTransport otherwise.
    """
    m = system.joint.value_size
    theta_values = np.asarray(theta_values, dtype=float)
    size = m * m
    if isinstance(element, (int, np.integer)):
        act = system.joint.action.act[int(element)]
    else:
        act = np.asarray([int(v) for v in element], dtype=np.int64)
        if sorted(act.tolist()) != list(range(size)):
            raise ValueError("transformation must permute the product space")
    table = np.array([theta_values[int(act[p]) // m] for p in range(size)])
    by_x = table.reshape(m, m)
    if np.all(by_x == by_x[:, :1]):
        values, labels = by_x[:, 0], system.x_index
    elif np.all(by_x == by_x[:1, :]):
        values, labels = by_x[0, :], system.y_index
    else:
        raise UndefinedTransport(
            f"moved variable does not factor through either axis for element {element}"
        )
    c, residual = _resolution_constant(system)
    if residual > system.tolerance:
        raise NoResolution(f"projector sum fails to resolve identity: {residual:.3e}")
    proj = _marginal_projectors(system, labels, c, m)
    a = np.einsum("x,xij->ij", np.asarray(values, dtype=float), proj)
    return Operator(system.dim, a, hermitian=True, tolerance=system.tolerance)


def _projective_classes(system: JointSystem) -> list[int]:
    """Class label per element; two elements share a class when their matrices
    differ only by a unit scalar."""
    n = system.joint.group.order
    tol = system.tolerance
    classes = [-1] * n
    reps: list[int] = []
    for a in range(n):
        for ci, r in enumerate(reps):
            prod = system.joint_rep.matrices[a] @ system.joint_rep.matrices[r].conj().T
            lam = np.trace(prod) / system.dim
            if abs(abs(lam) - 1.0) < 1e-6 and _maxabs(prod - lam * np.eye(system.dim)) <= 10 * tol:
                classes[a] = ci
                break
        if classes[a] < 0:
            classes[a] = len(reps)
            reps.append(a)
    return classes


def covariance_records(
    system: JointSystem, theta_values, xi_values
) -> list[CovarianceRecord]:
    """Conjugation covariance of the first operator under every element of N.

    residual = || W(n)^dagger A W(n) - A' || with A' built for the moved
    variable. When two elements whose matrices agree up to a scalar move the
    values differently, no operator assignment can satisfy both; such
    elements are flagged obstructed, which explains any failures they cause.
    """
    a_theta, _ = joint_operators(system, theta_values, xi_values)
    n = system.joint.group.order
    size = system.joint.value_size ** 2
    act = system.joint.action.act
    theta_arr = np.asarray(theta_values, dtype=float)
    moved_tables = [
        tuple(theta_arr[int(act[t, p]) // system.joint.value_size] for p in range(size))
        for t in range(n)
    ]
    classes = _projective_classes(system)
    obstructed_class = set()
    for ci in set(classes):
        tables = {moved_tables[t] for t in range(n) if classes[t] == ci}
        if len(tables) > 1:
            obstructed_class.add(ci)
    records = []
    for t in range(n):
        w = system.joint_rep.matrices[t]
        a_moved = transported_operator(system, theta_values, xi_values, t)
        residual = _maxabs(w.conj().T @ a_theta.matrix @ w - a_moved.matrix)
        records.append(
            CovarianceRecord(t, residual, residual <= system.tolerance,
                             classes[t] in obstructed_class)
        )
    return records
