"""Cube sets, cubing ratios, coset traces, and the ratio-above-half
structure classifier with its three explicit automorphism constructors.

All ratios are exact fractions end to end; the thresholds 1/2 and 4/15
are compared symbolically. No floating point enters any comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import product
from typing import Optional

from .automorphisms import (
    AutomorphismGroup,
    GroupMap,
    check_automorphism,
    enumerate_automorphisms,
    power_map,
)
from .errors import (
    BadDecomposition,
    BadIndex,
    KNotAbelian,
    NotAbelian,
    NotClass2,
    OrderDivisibleBy3,
    PreconditionViolated,
    SylowCondition,
    XInK,
)
from .groups import FiniteGroup, Subgroup, abelian_basis, element_vector_table

HALF = Fraction(1, 2)
SOLVABILITY_BOUND = Fraction(4, 15)


def ratio_json(r: Fraction) -> dict:
    return {"num": r.numerator, "den": r.denominator}


# ---------------------------------------------------------------------------
# Cube sets


@dataclass(frozen=True)
class CubeReport:
    """The set of elements sent to their n-th power, with its exact ratio."""

    group: FiniteGroup
    automorphism: GroupMap
    power: int
    members: tuple
    ratio: Fraction

    def to_json(self) -> dict:
        return {
            "group": self.group.name,
            "order": self.group.order,
            "power": self.power,
            "size": len(self.members),
            "ratio": ratio_json(self.ratio),
            "members": list(self.members),
        }


def cube_set(group: FiniteGroup, alpha: GroupMap, n: int = 3,
             trusted: bool = False) -> CubeReport:
    """All g with alpha(g) = g^n, and the exact ratio |T| / |G|."""
    if not trusted:
        check_automorphism(alpha)
    targets = [group.pow(x, n) for x in group.elements()]
    img = alpha.images
    members = tuple(x for x in group.elements() if img[x] == targets[x])
    return CubeReport(group, alpha, n, members, Fraction(len(members), group.order))


def max_cube_ratio(group: FiniteGroup, n: int = 3,
                   auts: Optional[AutomorphismGroup] = None) -> tuple:
    """Exact maximum of the cubing ratio over all of Aut(G).

    Returns (ratio, witness map); the witness is the lexicographically
    least maximizing image array. Pass ``auts`` to reuse an enumeration.
    """
    if auts is None:
        auts = enumerate_automorphisms(group)
    targets = [group.pow(x, n) for x in group.elements()]
    best_count = -1
    best = None
    for member in auts.members:  # already sorted by image array
        img = member.images
        count = sum(1 for x in range(group.order) if img[x] == targets[x])
        if count > best_count:
            best_count, best = count, member
    return Fraction(best_count, group.order), best


# ---------------------------------------------------------------------------
# Coset traces


@dataclass(frozen=True)
class CosetTrace:
    """Image of Hx intersected with the cube set inside H / C_H(x).

    For a cyclic quotient the trace is a tuple of residues modulo
    ``quotient_order``; otherwise a tuple of exponent vectors over
    ``basis_orders``.
    """

    subgroup: Subgroup
    x: int
    quotient_order: int
    centralizer_order: int
    trace: tuple
    basis_orders: tuple
    cyclic: bool


def coset_trace(group: FiniteGroup, alpha: GroupMap, sub: Subgroup, x: int,
                trusted: bool = False) -> CosetTrace:
    """The trace of the coset Hx in the abelian quotient H / C_H(x).

    Preconditions (each checked): H abelian, H inside the cube set,
    x in the cube set.
    """
    report = cube_set(group, alpha, trusted=trusted)
    inside = set(report.members)
    if not sub.is_abelian:
        raise PreconditionViolated("H is not abelian")
    for h in sub.elements:
        if h not in inside:
            raise PreconditionViolated("H is not inside the cube set", witness=h)
    if x not in inside:
        raise PreconditionViolated("x is not in the cube set", witness=x)
    cent = [h for h in sub.elements if group.table[h][x] == group.table[x][h]]
    hgrp, embed = sub.as_group()
    back = {g: i for i, g in enumerate(embed)}
    cgrp = hgrp.subgroup(sorted(back[c] for c in cent))
    qgrp, proj = hgrp.quotient(cgrp)
    hits = {proj[back[h]] for h in sub.elements if group.table[h][x] in inside}
    # membership is constant on centralizer cosets, so sizes must agree
    raw = sum(1 for h in sub.elements if group.table[h][x] in inside)
    assert raw == len(hits) * len(cent), "trace is not a union of centralizer cosets"
    basis = abelian_basis(qgrp)
    orders = tuple(qgrp.element_orders[b] for b in basis)
    vectors = element_vector_table(qgrp, basis)
    if len(basis) <= 1:
        residues = tuple(sorted(vectors[c][0] if basis else 0 for c in hits))
        return CosetTrace(sub, x, qgrp.order, len(cent), residues, orders, True)
    encoded = tuple(sorted(vectors[c] for c in hits))
    return CosetTrace(sub, x, qgrp.order, len(cent), encoded, orders, False)


# ---------------------------------------------------------------------------
# The three constructors


def build_type_I(group: FiniteGroup) -> GroupMap:
    """g -> g^3 on an abelian group of order coprime to 3; ratio 1."""
    if not group.is_abelian:
        raise NotAbelian("type I needs an abelian group")
    if group.order % 3 == 0:
        raise OrderDivisibleBy3("type I needs gcd(|G|, 3) = 1")
    alpha = power_map(group, 3)
    check_automorphism(alpha)
    return alpha


def build_type_II(group: FiniteGroup, k_sub: Subgroup, x: int) -> tuple:
    """The index-2 construction k -> k^2 x^-1 k x, x -> x^3.

    Preconditions: (G:K) = 2 with K abelian; the Sylow 3-subgroup S is
    normal, sits inside K and meets the center trivially (all vacuous
    when 3 does not divide |G|); x lies outside K.

    Returns (automorphism, ratio) with ratio (n+1)/2n for
    n = (K : C_K(x)); the cube set is exactly Kx together with C_K(x).
    """
    if 2 * k_sub.order != group.order:
        raise BadIndex("K must have index 2")
    if not k_sub.is_abelian:
        raise KNotAbelian("K must be abelian")
    sylow3 = group.sylow(3)
    if not group.is_normal(sylow3):
        raise SylowCondition("Sylow 3-subgroup is not normal")
    if any(s not in k_sub for s in sylow3.elements):
        raise SylowCondition("Sylow 3-subgroup is not inside K")
    center = group.center
    if any(s != 0 and s in center for s in sylow3.elements):
        raise SylowCondition("Sylow 3-subgroup meets the center nontrivially")
    if x in k_sub:
        raise XInK(f"x = {x} lies in K")
    t = group.table
    xinv = group.inv(x)
    x3 = group.pow(x, 3)
    images = [0] * group.order
    for k in k_sub.elements:
        images[k] = t[t[k][k]][t[t[xinv][k]][x]]
    for g in group.elements():
        if g not in k_sub:
            k = t[g][xinv]
            images[g] = t[images[k]][x3]
    alpha = GroupMap(group, group, tuple(images))
    check_automorphism(alpha)
    cent_k = [k for k in k_sub.elements if t[k][x] == t[x][k]]
    n = k_sub.order // len(cent_k)
    ratio = Fraction(n + 1, 2 * n)
    report = cube_set(group, alpha, trusted=True)
    expected = {t[k][x] for k in k_sub.elements} | set(cent_k)
    assert set(report.members) == expected and report.ratio == ratio, \
        "type II postcondition failed"
    return alpha, ratio


@dataclass(frozen=True)
class Type3Decomposition:
    """Witness for the class-2 construction: commuting generators a_i
    paired with x_i so that [a_i, x_i] generate the derived subgroup and
    everything else commutes."""

    shape: str  # "i" or "ii"
    a_elements: tuple
    x_elements: tuple
    z_elements: tuple


def build_type_III(group: FiniteGroup, decomposition) -> tuple:
    """The class-2 construction (a x1^e1 ... xk^ek) -> a^3 x1^3e1 ... xk^3ek.

    ``decomposition`` provides the a- and x-generators (as a
    Type3Decomposition or a plain (a_list, x_list) pair). A is the
    subgroup generated by the center and the a-generators; every group
    element must factor uniquely as a * x1^e1 ... xk^ek with e in {0,1}.

    Returns (automorphism, ratio) with the exact measured ratio. An
    element a*X lies in the cube set iff X commutes with a, so the
    ratio is sum_X |C_A(X)| / |G|. When the derived subgroup is C2
    (shape (i)) every nontrivial X has centralizer index 2 in A and the
    ratio collapses to (2^k + 1) / 2^(k+1); with a C2 x C2 derived
    subgroup (shape (ii)) the mixed word x1 x2 has centralizer index 4
    and the ratio is 9/16.
    """
    if isinstance(decomposition, Type3Decomposition):
        a_gens, x_gens = decomposition.a_elements, decomposition.x_elements
    else:
        a_gens, x_gens = decomposition
    if group.order % 3 == 0:
        raise OrderDivisibleBy3("type III needs gcd(|G|, 3) = 1")
    derived = group.derived_subgroup
    center = group.center
    if derived.order == 1 or any(d not in center for d in derived.elements):
        raise NotClass2("group is not nilpotent of class exactly 2")
    a_part = group.subgroup_generated(list(center.elements) + list(a_gens))
    if not a_part.is_abelian:
        raise BadDecomposition("A = <Z(G), a_1..a_k> is not abelian")
    k = len(x_gens)
    if a_part.order * (1 << k) != group.order:
        raise BadDecomposition(
            f"|A| * 2^k = {a_part.order * (1 << k)} does not match |G| = {group.order}")
    t = group.table
    cubes = {a: group.pow(a, 3) for a in a_part.elements}
    x_cubes = [group.pow(xg, 3) for xg in x_gens]
    images = [-1] * group.order
    for a in a_part.elements:
        for eps in product((0, 1), repeat=k):
            g = a
            target = cubes[a]
            for xg, xc, e in zip(x_gens, x_cubes, eps):
                if e:
                    g = t[g][xg]
                    target = t[target][xc]
            if images[g] != -1:
                raise BadDecomposition(f"element {g} factors twice")
            images[g] = target
    if any(v == -1 for v in images):
        raise BadDecomposition("factorization does not cover the group")
    alpha = GroupMap(group, group, tuple(images))
    check_automorphism(alpha)
    report = cube_set(group, alpha, trusted=True)
    if derived.order == 2:
        assert report.ratio == Fraction((1 << k) + 1, 1 << (k + 1)), \
            "type III shape (i) postcondition failed"
    return alpha, report.ratio


def find_type3_decomposition(group: FiniteGroup) -> tuple:
    """Hunt for a type III pairing on a 2-group of class at most 2.

    Returns (decomposition, reason): the decomposition is None when the
    group does not have one, with the reason naming the failing shape
    condition. Shape (i) extracts a symplectic basis of the commutator
    form on G/Z over F2; shape (ii) searches exhaustively for a basis
    splitting the form into two planes hitting the two derived
    generators separately.
    """
    order = group.order
    if order & (order - 1):
        return None, "not a 2-group"
    if group.is_abelian:
        return None, "abelian group has trivial derived subgroup"
    derived = group.derived_subgroup
    center = group.center
    if any(d not in center for d in derived.elements):
        return None, "class exceeds 2"
    if any(group.pow(g, 2) not in center for g in group.elements()):
        return None, "central quotient is not elementary abelian"
    if derived.order == 2:
        return _split_symplectic(group, derived, center)
    if derived.order == 4 and all(
            group.element_orders[d] <= 2 for d in derived.elements):
        return _split_two_planes(group, derived, center)
    return None, f"derived subgroup of order {derived.order} is not C2 or C2xC2"


def _coset_reps(group: FiniteGroup, center: Subgroup) -> list:
    qgrp, proj = group.quotient(center)
    reps = [None] * qgrp.order
    for g in group.elements():
        if reps[proj[g]] is None:
            reps[proj[g]] = g
    return reps


def _split_symplectic(group: FiniteGroup, derived: Subgroup, center: Subgroup) -> tuple:
    z = derived.elements[1]
    reps = [g for g in _coset_reps(group, center) if g != 0]
    # seed with an independent generating set of G/Z: greedily extend
    basis = []
    span = center.elements
    span_set = set(span)
    for g in reps:
        if g not in span_set:
            basis.append(g)
            span_set = group.closure(list(span_set) + [g])
    if len(basis) % 2:
        return None, "commutator form has odd rank"

    def beta(u, v):
        return 0 if group.commutator(u, v) == 0 else 1

    pairs = []
    vectors = basis
    while vectors:
        u = vectors[0]
        partner = next((j for j in range(1, len(vectors)) if beta(u, vectors[j])), None)
        if partner is None:
            return None, "commutator form is degenerate"
        v = vectors[partner]
        rest = []
        for idx, w in enumerate(vectors[1:], start=1):
            if idx == partner:
                continue
            # project w into the orthogonal complement of the (u, v) plane
            if beta(w, v):
                w = group.table[w][u]
            if beta(w, u):
                w = group.table[w][v]
            rest.append(w)
        pairs.append((u, v))
        vectors = rest
    a_elems = tuple(u for u, _ in pairs)
    x_elems = tuple(v for _, v in pairs)
    return Type3Decomposition("i", a_elems, x_elems, (z,)), "shape (i)"


def _split_two_planes(group: FiniteGroup, derived: Subgroup, center: Subgroup) -> tuple:
    if group.order // center.order != 16:
        return None, "central quotient does not have order 16"
    reps = [g for g in _coset_reps(group, center) if g != 0]
    involutions = [d for d in derived.elements if d != 0]
    comm = {(u, v): group.commutator(u, v) for u in reps for v in reps}
    for z1 in involutions:
        for z2 in involutions:
            if z2 == z1:
                continue
            for a1 in reps:
                for x1 in reps:
                    if comm[(a1, x1)] != z1:
                        continue
                    for a2 in reps:
                        if comm[(a2, a1)] or comm[(a2, x1)]:
                            continue
                        for x2 in reps:
                            if (comm[(a2, x2)] != z2 or comm[(x2, a1)]
                                    or comm[(x2, x1)]):
                                continue
                            span = group.closure(
                                list(center.elements) + [a1, x1, a2, x2])
                            if len(span) == group.order:
                                return (Type3Decomposition(
                                    "ii", (a1, a2), (x1, x2), (z1, z2)),
                                    "shape (ii)")
    return None, "no basis splits the form into two planes"


# ---------------------------------------------------------------------------
# Classification


class Kind(str, Enum):
    TYPE_I = "TypeI"
    TYPE_II = "TypeII"
    TYPE_III_I = "TypeIII(i)"
    TYPE_III_II = "TypeIII(ii)"
    NONE = "None"


@dataclass(frozen=True)
class ClassificationVerdict:
    kind: Kind
    witnesses: dict
    constructed_alpha: Optional[GroupMap]
    predicted_ratio: Optional[Fraction]
    reason: str

    def to_json(self) -> dict:
        out = {"kind": self.kind.value, "reason": self.reason}
        if self.predicted_ratio is not None:
            out["predicted_ratio"] = ratio_json(self.predicted_ratio)
        witnesses = {}
        for key, value in self.witnesses.items():
            if isinstance(value, Subgroup):
                witnesses[key] = list(value.elements)
            elif isinstance(value, (tuple, list)):
                witnesses[key] = list(value)
            else:
                witnesses[key] = value
        if witnesses:
            out["witnesses"] = witnesses
        return out


def classify_cubing_structure(group: FiniteGroup) -> ClassificationVerdict:
    """Structural test for a cubing ratio above one half.

    Type I: abelian with order coprime to 3. Type III: nilpotent of
    class 2, order coprime to 3, odd Sylows abelian, and the Sylow
    2-subgroup splits as shape (i) or (ii). Type II: an abelian
    subgroup of index 2 containing a normal Sylow 3-subgroup that
    misses the center (vacuously so when 3 does not divide the order).
    Groups that are simultaneously II and III report as III.

    Whenever the verdict is not None the matching constructor runs and
    its automorphism and exact predicted ratio are attached.
    """
    order = group.order
    if group.is_abelian:
        if order % 3 == 0:
            return ClassificationVerdict(
                Kind.NONE, {}, None, None, "abelian but order divisible by 3")
        alpha = build_type_I(group)
        return ClassificationVerdict(
            Kind.TYPE_I, {}, alpha, Fraction(1), "abelian, order coprime to 3")

    verdict = _try_type_iii(group)
    if verdict is not None:
        return verdict
    verdict = _try_type_ii(group)
    if verdict is not None:
        return verdict
    return ClassificationVerdict(Kind.NONE, {}, None, None, "no structure matched")


def _try_type_iii(group: FiniteGroup) -> Optional[ClassificationVerdict]:
    if group.order % 3 == 0 or group.nilpotency_class != 2:
        return None
    remaining = group.order
    for p in range(3, group.order + 1, 2):
        if remaining % p == 0:
            while remaining % p == 0:
                remaining //= p
            if not group.sylow(p).is_abelian:
                return None
    sylow2 = group.sylow(2)
    s2grp, embed = sylow2.as_group()
    decomposition, _ = find_type3_decomposition(s2grp)
    if decomposition is None:
        return None
    mapped = Type3Decomposition(
        decomposition.shape,
        tuple(embed[a] for a in decomposition.a_elements),
        tuple(embed[x] for x in decomposition.x_elements),
        tuple(embed[z] for z in decomposition.z_elements),
    )
    alpha, ratio = build_type_III(group, mapped)
    kind = Kind.TYPE_III_I if mapped.shape == "i" else Kind.TYPE_III_II
    witnesses = {
        "a_elements": mapped.a_elements,
        "x_elements": mapped.x_elements,
        "z_elements": mapped.z_elements,
        "center": group.center,
    }
    return ClassificationVerdict(kind, witnesses, alpha, ratio,
                                 f"class 2 with shape ({mapped.shape}) Sylow 2-subgroup")


def _try_type_ii(group: FiniteGroup) -> Optional[ClassificationVerdict]:
    for k_sub in _index_two_subgroups(group):
        if not k_sub.is_abelian:
            continue
        x = next(g for g in group.elements() if g not in k_sub)
        try:
            alpha, ratio = build_type_II(group, k_sub, x)
        except (SylowCondition, KNotAbelian, BadIndex, XInK):
            continue
        witnesses = {"K": k_sub, "S": group.sylow(3), "x": x}
        return ClassificationVerdict(Kind.TYPE_II, witnesses, alpha, ratio,
                                     "abelian subgroup of index 2 with the Sylow conditions")
    return None


def _index_two_subgroups(group: FiniteGroup) -> list:
    """All subgroups of index 2: preimages of hyperplanes of the
    elementary abelian quotient G / (G' G^2)."""
    squares = [group.table[g][g] for g in group.elements()]
    m_sub = group.subgroup_generated(
        list(group.derived_subgroup.elements) + squares)
    if m_sub.order == group.order:
        return []
    egrp, proj = group.quotient(m_sub)
    basis = abelian_basis(egrp)
    vectors = element_vector_table(egrp, basis)
    subs = []
    for functional in product((0, 1), repeat=len(basis)):
        if not any(functional):
            continue
        kernel = {c for c in egrp.elements()
                  if sum(f * v for f, v in zip(functional, vectors[c])) % 2 == 0}
        elems = sorted(g for g in group.elements() if proj[g] in kernel)
        subs.append(group.subgroup(elems))
    subs.sort(key=lambda s: s.elements)
    return subs
