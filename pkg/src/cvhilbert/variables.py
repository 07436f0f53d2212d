"""Variables on a finite underlying space, accessibility, and induced groups.

A variable is a value table over the points of an underlying space. A context
declares which variables an agent can in principle evaluate, through a family
of maximal accessible variables; everything accessible is a coarsening of a
family member, which makes the accessibility notions decidable.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import NotAccessible, NotPermissible
from .groups import GroupAction, build_group, verify_homomorphism


@dataclass(frozen=True, eq=False)
class ConceptualVariable:
    name: str
    values: tuple[int, ...]                 # per point: index into value_labels
    value_labels: tuple[str, ...]
    numeric_values: tuple[float, ...] | None = None

    def __post_init__(self):
        attained = set(self.values)
        if not attained <= set(range(len(self.value_labels))):
            raise ValueError(f"{self.name}: value index out of range")
        if attained != set(range(len(self.value_labels))):
            raise ValueError(f"{self.name}: every value label must be attained")
        if self.numeric_values is not None and len(self.numeric_values) != len(self.value_labels):
            raise ValueError(f"{self.name}: numeric_values length mismatch")

    @property
    def domain_size(self) -> int:
        return len(self.values)

    @property
    def value_count(self) -> int:
        return len(self.value_labels)

    def numeric(self) -> tuple[float, ...]:
        if self.numeric_values is None:
            raise ValueError(f"{self.name}: numeric values required but not declared")
        return self.numeric_values


@dataclass(frozen=True, eq=False)
class Partition:
    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        flat = sorted(p for b in self.blocks for p in b)
        if flat != list(range(len(flat))):
            raise ValueError("blocks must partition 0..m-1")

    def __eq__(self, other) -> bool:
        return isinstance(other, Partition) and self.blocks == other.blocks

    def __hash__(self) -> int:
        return hash(self.blocks)

    def block_of(self, p: int) -> int:
        for i, b in enumerate(self.blocks):
            if p in b:
                return i
        raise ValueError(f"point {p} not covered")


@dataclass(frozen=True, eq=False)
class Context:
    phi_size: int
    acting_group: GroupAction                       # K acting on the underlying space
    maximal_accessible_family: tuple[ConceptualVariable, ...]

    def __post_init__(self):
        if self.acting_group.space_size != self.phi_size:
            raise ValueError("acting group must act on the underlying space")
        for var in self.maximal_accessible_family:
            if var.domain_size != self.phi_size:
                raise ValueError(f"family member {var.name} has wrong domain")


def make_variable(
    name: str,
    values,
    numeric_values=None,
    value_labels=None,
) -> ConceptualVariable:
    """Build a variable from a raw value list, relabeling to dense indices.

    Raw values may be arbitrary hashables; distinct raw values become distinct
    value indices in order of first appearance.
    """
    raw = list(values)
    seen: dict = {}
    table = []
    for v in raw:
        if v not in seen:
            seen[v] = len(seen)
        table.append(seen[v])
    labels = value_labels
    if labels is None:
        labels = tuple(str(v) for v in seen)
    if numeric_values is not None:
        numeric_values = tuple(float(x) for x in numeric_values)
        if len(numeric_values) != len(seen):
            raise ValueError("numeric_values must have one entry per distinct value")
    return ConceptualVariable(name, tuple(table), tuple(labels), numeric_values)


def induced_partition(variable: ConceptualVariable) -> Partition:
    """Level sets of the value table, blocks ordered by smallest point."""
    blocks: dict[int, list[int]] = {}
    for p, v in enumerate(variable.values):
        blocks.setdefault(v, []).append(p)
    ordered = sorted(blocks.values(), key=lambda b: b[0])
    return Partition(tuple(tuple(b) for b in ordered))


def is_permissible(variable: ConceptualVariable, action: GroupAction):
    """Decide whether level sets map into level sets under every element.

    Returns (True, None) or (False, (k, p1, p2)) with the first witnessing
    triple in scan order: variable(p1) == variable(p2) but the images differ.
    """
    if action.space_size != variable.domain_size:
        raise ValueError("action and variable live on different spaces")
    part = induced_partition(variable)
    vals = variable.values
    for k in range(action.group.order):
        row = action.act[k]
        for block in part.blocks:
            first = vals[row[block[0]]]
            for p in block[1:]:
                if vals[row[p]] != first:
                    return False, (k, block[0], int(p))
    return True, None


def induced_group(variable: ConceptualVariable, action: GroupAction):
    """Value-set maps induced by a permissible variable.

    Returns (G, G_action on the value set, hom) where hom[k] is the index in
    G of the map induced by k. The identity map gets index 0; the remaining
    maps are ordered by first appearance over k.
    """
    ok, witness = is_permissible(variable, action)
    if not ok:
        raise NotPermissible(witness)
    vals = variable.values
    nv = variable.value_count
    pick = [variable.values.index(v) for v in range(nv)]
    induced: list[tuple[int, ...]] = []
    for k in range(action.group.order):
        row = action.act[k]
        induced.append(tuple(vals[row[p]] for p in pick))
    ident = tuple(range(nv))
    distinct = [ident]
    for vmap in induced:
        if vmap not in distinct:
            distinct.append(vmap)
    index = {vmap: i for i, vmap in enumerate(distinct)}
    hom = [index[vmap] for vmap in induced]
    n = len(distinct)
    cayley = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(distinct):
        for j, q in enumerate(distinct):
            composed = tuple(p[q[v]] for v in range(nv))
            if composed not in index:
                raise NotPermissible(("induced maps not closed", i, j))
            cayley[i, j] = index[composed]
    group = build_group(cayley, assume_associative=True)
    from .groups import build_action

    g_action = build_action(group, np.array(distinct, dtype=np.int64))
    if not verify_homomorphism(hom, action.group, group):
        raise NotPermissible(("induced map is not a homomorphism",))
    return group, g_action, tuple(hom)


def refines(xi: ConceptualVariable, theta: ConceptualVariable):
    """If theta factors through xi, return (f, strict) with theta = f(xi).

    f is a value-index table on xi's value set; strict means f is not
    one-to-one. Returns None when no such f exists.
    """
    if xi.domain_size != theta.domain_size:
        raise ValueError("variables live on different spaces")
    f: list[int | None] = [None] * xi.value_count
    for p in range(xi.domain_size):
        v, w = xi.values[p], theta.values[p]
        if f[v] is None:
            f[v] = w
        elif f[v] != w:
            return None
    table = tuple(int(v) for v in f)  # total: every xi value is attained
    strict = len(set(table)) < len(table)
    return table, strict


def is_accessible(context: Context, variable: ConceptualVariable) -> bool:
    """Accessible means: a coarsening of some declared maximal variable."""
    return any(refines(member, variable) is not None
               for member in context.maximal_accessible_family)


def is_maximally_accessible(context: Context, variable: ConceptualVariable) -> bool:
    """Accessible with no accessible strict refinement.

    With the declared-family model this holds exactly when the variable's
    partition coincides with some family member's partition.
    """
    if not is_accessible(context, variable):
        raise NotAccessible(variable.name)
    part = induced_partition(variable)
    return any(induced_partition(member) == part
               for member in context.maximal_accessible_family)


def joint_variable(theta: ConceptualVariable, xi: ConceptualVariable) -> ConceptualVariable:
    if theta.domain_size != xi.domain_size:
        raise ValueError("variables live on different spaces")
    pairs = list(zip(theta.values, xi.values))
    return make_variable(
        f"({theta.name},{xi.name})",
        pairs,
        value_labels=None,
    )


def are_complementary(
    theta1: ConceptualVariable, theta2: ConceptualVariable, context: Context
) -> bool:
    """True iff both are accessible but their joint variable is not."""
    if not (is_accessible(context, theta1) and is_accessible(context, theta2)):
        raise NotAccessible("both variables must be accessible")
    return not is_accessible(context, joint_variable(theta1, theta2))


def find_relating_transformations(
    theta: ConceptualVariable, xi: ConceptualVariable, action: GroupAction
) -> list[int]:
    """All k in the acting group with xi(p) = theta(k . p) for every p.

    Comparison is by value label, so variables with unrelated label sets give
    an empty list.
    """
    if theta.domain_size != xi.domain_size or action.space_size != theta.domain_size:
        raise ValueError("domain mismatch")
    out = []
    for k in range(action.group.order):
        row = action.act[k]
        if all(
            theta.value_labels[theta.values[row[p]]] == xi.value_labels[xi.values[p]]
            for p in range(theta.domain_size)
        ):
            out.append(k)
    return out
