"""Role-transformation formula schemas over group-valued assignments.

A formula side is the formal ratio F_f(a):F_g(b) built from four role terms;
a variant rewrites roles through a fixed substitution.  The F symbol itself
carries no algebra: everything checkable happens once roles take values in a
finite group.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Optional

from .errors import (
    ConflictingPairs,
    InconsistentRule,
    InvalidAssignment,
    NonCommutativeGroup,
    UnknownKind,
    UnsatisfiableConstraint,
)
from .groups import FiniteGroup, inverse_of, structure_flags
from .morphisms import GroupMap, enumerate_symmetries

ROLES = ("x", "y", "a", "b")


@dataclass(frozen=True)
class RoleTerm:
    """One of the roles x, y, a, b, optionally marked as inverted."""

    role: str
    inverted: bool = False

    def __post_init__(self) -> None:
        if self.role not in ROLES:
            raise ValueError(f"role must be one of {ROLES}, got {self.role!r}")

    def __str__(self) -> str:
        return self.role + ("^-1" if self.inverted else "")


@dataclass(frozen=True)
class FormulaSide:
    """The pair F_first[0](first[1]) : F_second[0](second[1])."""

    first: tuple[RoleTerm, RoleTerm]
    second: tuple[RoleTerm, RoleTerm]

    def terms(self) -> tuple[RoleTerm, RoleTerm, RoleTerm, RoleTerm]:
        return (self.first[0], self.first[1], self.second[0], self.second[1])

    def __str__(self) -> str:
        f1, a1 = self.first
        f2, a2 = self.second
        return f"F_{f1}({a1}):F_{f2}({a2})"


Rule = Mapping[str, RoleTerm]


def apply_rule(rule: Rule, term: RoleTerm) -> RoleTerm:
    """Rewrite a term; inversion marks compose and double inversion cancels."""
    image = rule[term.role]
    return RoleTerm(image.role, image.inverted ^ term.inverted)


def rewrite_side(rule: Rule, side: FormulaSide) -> FormulaSide:
    f1, a1 = side.first
    f2, a2 = side.second
    return FormulaSide(
        (apply_rule(rule, f1), apply_rule(rule, a1)),
        (apply_rule(rule, f2), apply_rule(rule, a2)),
    )


@dataclass(frozen=True)
class CFVariant:
    """A formula schema: left side, right side, and the substitution between them."""

    name: str
    lhs: FormulaSide
    rhs: FormulaSide
    rule: dict[str, RoleTerm]

    def __post_init__(self) -> None:
        if set(self.rule) != set(ROLES):
            raise InconsistentRule(f"rule must cover exactly the roles {ROLES}")
        if rewrite_side(self.rule, self.lhs) != self.rhs:
            raise InconsistentRule("right side is not the rule-image of the left side")


def _builtin(name: str, rule: dict[str, RoleTerm]) -> CFVariant:
    lhs = FormulaSide((RoleTerm("x"), RoleTerm("a")), (RoleTerm("y"), RoleTerm("b")))
    return CFVariant(name, lhs, rewrite_side(rule, lhs), rule)


CLASSIC = _builtin(
    "classic",
    {"x": RoleTerm("x"), "a": RoleTerm("b"), "y": RoleTerm("a", True), "b": RoleTerm("y")},
)
DUAL = _builtin(
    "dual",
    {"x": RoleTerm("y"), "a": RoleTerm("x"), "y": RoleTerm("a", True), "b": RoleTerm("b")},
)
MOSKO = _builtin(
    "mosko",
    {"x": RoleTerm("x"), "y": RoleTerm("y"), "a": RoleTerm("b"), "b": RoleTerm("a")},
)

BUILTIN_VARIANTS = {"classic": CLASSIC, "dual": DUAL, "mosko": MOSKO}


def variant_by_name(name: str) -> CFVariant:
    try:
        return BUILTIN_VARIANTS[name]
    except KeyError:
        known = ", ".join(sorted(BUILTIN_VARIANTS))
        raise UnknownKind(f"unknown variant {name!r} (built-ins: {known})") from None


# ---------------------------------------------------------------------------
# Assignments and induced transformations.


@dataclass(frozen=True)
class RoleAssignment:
    """Element values for the four roles.

    Values must be pairwise distinct unless allow_repeats is set.
    """

    group: FiniteGroup
    values: dict[str, int]
    allow_repeats: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", dict(self.values))
        if set(self.values) != set(ROLES):
            raise InvalidAssignment(f"assignment must cover exactly the roles {ROLES}")
        for role in ROLES:
            self.group.check_index(self.values[role])
        if not self.allow_repeats and len(set(self.values.values())) != len(ROLES):
            raise InvalidAssignment(
                "role values must be pairwise distinct (set allow_repeats to relax)"
            )

    def labels(self) -> dict[str, str]:
        return {role: self.group.label(self.values[role]) for role in ROLES}


def evaluate_role_term(assignment: RoleAssignment, term: RoleTerm) -> int:
    """The assigned element, or its group inverse for an inverted term."""
    value = assignment.values[term.role]
    return inverse_of(assignment.group, value) if term.inverted else value


@dataclass(frozen=True)
class PartialMap:
    """A functional set of (source, target) pairs on part of a group."""

    group: FiniteGroup
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        seen: dict[int, int] = {}
        for src, dst in self.pairs:
            self.group.check_index(src)
            self.group.check_index(dst)
            if src in seen and seen[src] != dst:
                raise ConflictingPairs(
                    f"element {self.group.label(src)!r} mapped to both "
                    f"{self.group.label(seen[src])!r} and {self.group.label(dst)!r}"
                )
            seen[src] = dst

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def agrees_with(self, m: GroupMap) -> bool:
        return all(m.images[src] == dst for src, dst in self.pairs)


def induced_partial_map(assignment: RoleAssignment, variant: CFVariant) -> PartialMap:
    """The transformation each role's value undergoes under the variant's rule."""
    mapping: dict[int, int] = {}
    origin: dict[int, str] = {}
    for role in ROLES:
        src = assignment.values[role]
        dst = evaluate_role_term(assignment, variant.rule[role])
        if src in mapping and mapping[src] != dst:
            g = assignment.group
            raise ConflictingPairs(
                f"roles {origin[src]!r} and {role!r} share element {g.label(src)!r} "
                f"but are sent to {g.label(mapping[src])!r} and {g.label(dst)!r}"
            )
        mapping.setdefault(src, dst)
        origin.setdefault(src, role)
    return PartialMap(assignment.group, tuple(sorted(mapping.items())))


def realizations(
    assignment: RoleAssignment, variant: CFVariant, allow_anti: bool = True
) -> tuple[GroupMap, ...]:
    """Symmetries whose restriction to the assigned elements matches the rule."""
    partial = induced_partial_map(assignment, variant)
    maps = enumerate_symmetries(assignment.group, include_anti=allow_anti)
    return tuple(m for m in maps if partial.agrees_with(m))


def enumerate_assignments(
    G: FiniteGroup,
    variant: CFVariant,
    allow_anti: bool = True,
    constraints: Mapping[str, int] | None = None,
    allow_repeats: bool = False,
) -> tuple[tuple[RoleAssignment, int], ...]:
    """All assignments with at least one realization, with their counts.

    Output is lexicographic over (x, y, a, b) value indices.  Pins fix roles
    to elements; under the relaxed-distinctness policy, assignments whose
    induced pairs conflict are skipped rather than reported.
    """
    pins = dict(constraints or {})
    for role, value in pins.items():
        if role not in ROLES:
            raise UnsatisfiableConstraint(f"cannot pin unknown role {role!r}")
        G.check_index(value)
    if not allow_repeats and len(set(pins.values())) != len(pins):
        raise UnsatisfiableConstraint("pinned roles collide but values must be distinct")

    maps = enumerate_symmetries(G, include_anti=allow_anti)
    domains = [(pins[role],) if role in pins else tuple(range(G.order)) for role in ROLES]
    results: list[tuple[RoleAssignment, int]] = []
    for combo in itertools.product(*domains):
        if not allow_repeats and len(set(combo)) != len(ROLES):
            continue
        assignment = RoleAssignment(G, dict(zip(ROLES, combo)), allow_repeats=allow_repeats)
        try:
            partial = induced_partial_map(assignment, variant)
        except ConflictingPairs:
            continue
        count = sum(1 for m in maps if partial.agrees_with(m))
        if count:
            results.append((assignment, count))
    return tuple(results)


# ---------------------------------------------------------------------------
# Chains: repeated application of a variant's rule.


@dataclass(frozen=True)
class ChainStep:
    """One state of the chain; values follow the role order x, y, a, b."""

    step: int
    side: FormulaSide
    values: Optional[tuple[int, int, int, int]] = None


@dataclass(frozen=True)
class ChainResult:
    steps: tuple[ChainStep, ...]
    symbolic_period: Optional[int]
    element_period: Optional[int]
    assignment: Optional[RoleAssignment] = None


_IDENTITY_RULE: dict[str, RoleTerm] = {role: RoleTerm(role) for role in ROLES}


def _advance_subst(rule: Rule, subst: dict[str, RoleTerm]) -> dict[str, RoleTerm]:
    return {role: apply_rule(rule, subst[role]) for role in ROLES}


def _detect_period(state0, advance, encode, max_states: int) -> Optional[int]:
    """Least p >= 1 with state_p = state_0, or None if the start never recurs."""
    start = encode(state0)
    seen = {start}
    state = state0
    for step in range(1, max_states + 2):
        state = advance(state)
        key = encode(state)
        if key == start:
            return step
        if key in seen:
            return None
        seen.add(key)
    return None


def iterate_chain(
    variant: CFVariant, steps: int, assignment: RoleAssignment | None = None
) -> ChainResult:
    """Apply the variant's rule repeatedly, starting from its left side.

    Step t is the left side rewritten t times.  With an assignment, each step
    also carries the concrete (x, y, a, b) element values, and the least
    period of that value sequence is reported alongside the symbolic one.
    """
    if steps < 1:
        raise ValueError("steps must be >= 1")
    rule = variant.rule

    def values_of(subst: dict[str, RoleTerm]) -> Optional[tuple[int, int, int, int]]:
        if assignment is None:
            return None
        return tuple(evaluate_role_term(assignment, subst[role]) for role in ROLES)

    side = variant.lhs
    subst = dict(_IDENTITY_RULE)
    chain = [ChainStep(0, side, values_of(subst))]
    for t in range(1, steps + 1):
        side = rewrite_side(rule, side)
        subst = _advance_subst(rule, subst)
        chain.append(ChainStep(t, side, values_of(subst)))

    def encode_subst(s: dict[str, RoleTerm]) -> tuple:
        return tuple((s[role].role, s[role].inverted) for role in ROLES)

    # A substitution state is one of at most 8^4 values, so recurrence (or its
    # impossibility) is always decided within that many steps.
    symbolic_period = _detect_period(
        dict(_IDENTITY_RULE),
        lambda s: _advance_subst(rule, s),
        encode_subst,
        max_states=(2 * len(ROLES)) ** len(ROLES),
    )
    element_period = None
    if assignment is not None:
        G = assignment.group

        def advance_values(vals: tuple[int, ...]) -> tuple[int, ...]:
            by_role = dict(zip(ROLES, vals))
            out = []
            for role in ROLES:
                image = rule[role]
                v = by_role[image.role]
                out.append(inverse_of(G, v) if image.inverted else v)
            return tuple(out)

        element_period = _detect_period(
            tuple(assignment.values[role] for role in ROLES),
            advance_values,
            lambda v: v,
            max_states=G.order ** len(ROLES),
        )
    return ChainResult(tuple(chain), symbolic_period, element_period, assignment)


# ---------------------------------------------------------------------------
# The two degenerate readings.


def verify_fraction_rule(G: FiniteGroup, assignment: RoleAssignment) -> bool:
    """Check (x*a^-1)*(y*b^-1)^-1 = (x*y^-1)*(b^-1*a)^-1 at the assignment.

    This is the fraction identity (x/a)/(y/b) = (x/y)/(b^-1/a^-1) read with
    ratios in G; it only makes sense when G is commutative.
    """
    if assignment.group != G:
        raise InvalidAssignment("assignment belongs to a different group")
    if not structure_flags(G).commutative:
        raise NonCommutativeGroup(
            f"group {G.name!r} is not commutative; the ratio reading is undefined"
        )
    v = assignment.values

    def inv(g: int) -> int:
        return inverse_of(G, g)

    lhs = G.mul(G.mul(v["x"], inv(v["a"])), inv(G.mul(v["y"], inv(v["b"]))))
    rhs = G.mul(G.mul(v["x"], inv(v["y"])), inv(G.mul(inv(v["b"]), v["a"])))
    return lhs == rhs


def mosko_degeneration_check(G: FiniteGroup) -> bool:
    """True when inversion is invisible: every element is its own inverse."""
    return all(inverse_of(G, g) == g for g in range(G.order))


# ---------------------------------------------------------------------------
# Wire forms.


def assignment_to_json(assignment: RoleAssignment) -> dict:
    out: dict[str, str] = {"group": assignment.group.name}
    out.update(assignment.labels())
    return out


def chain_to_json(result: ChainResult) -> dict:
    steps = []
    for s in result.steps:
        entry: dict = {"step": s.step, "side": str(s.side)}
        if s.values is None:
            entry["tuple"] = None
        else:
            group = result.assignment.group
            entry["tuple"] = [group.label(v) for v in s.values]
        steps.append(entry)
    return {
        "steps": steps,
        "symbolic_period": result.symbolic_period,
        "element_period": result.element_period,
    }
