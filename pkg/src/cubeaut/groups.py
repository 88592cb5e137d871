"""Finite groups as element-indexed Cayley tables.

Elements are the integers 0..n-1 and the identity is always element 0.
Tables are validated at construction: closure, identity, Latin-square
rows and columns, associativity and inverses. Associativity is checked
exactly at every order: small tables by the cubic triple loop, larger
ones by Light's test over a generating set (which proves the same
property). ``strict=True`` forces the cubic loop at any order.

All structural queries are exact exhaustive computations; nothing here
is randomized or approximate.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import (
    CapExceeded,
    FileFormatError,
    NoIdentity,
    NoInverse,
    NotAbelian,
    NotAssociative,
    NotASubgroup,
    NotClosed,
    NotLatin,
    NotNormal,
    UnsupportedParameter,
)

BRUTE_ASSOC_LIMIT = 40  # below this, the O(n^3) loop is cheap enough to be the default


class FiniteGroup:
    """A finite group given by its full multiplication table.

    Instances are immutable after construction; all queries are pure.
    """

    def __init__(self, table: Sequence[Sequence[int]], name: Optional[str] = None,
                 strict: bool = False, relabeling: Optional[tuple] = None):
        rows = tuple(tuple(int(v) for v in row) for row in table)
        _validate_table(rows, strict=strict)
        self.table = rows
        self.order = len(rows)
        self.name = name
        self.identity = 0
        self.relabeling = relabeling

    # -- basic operations ---------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inverses[a]

    def pow(self, a: int, k: int) -> int:
        """a**k for any integer k (negative powers via the inverse)."""
        if k < 0:
            a, k = self.inv(a), -k
        result = 0
        base = a
        while k:
            if k & 1:
                result = self.table[result][base]
            base = self.table[base][base]
            k >>= 1
        return result

    def conjugate(self, a: int, g: int) -> int:
        """g^-1 * a * g."""
        t = self.table
        return t[t[self.inv(g)][a]][g]

    def commutator(self, a: int, b: int) -> int:
        """a^-1 * b^-1 * a * b."""
        t = self.table
        return t[t[t[self.inv(a)][self.inv(b)]][a]][b]

    def element_order(self, a: int) -> int:
        x, k = a, 1
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def elements(self) -> range:
        return range(self.order)

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        label = self.name or "group"
        return f"FiniteGroup({label}, order={self.order})"

    # -- cached structure ---------------------------------------------------

    @cached_property
    def _inverses(self) -> tuple:
        return tuple(row.index(0) for row in self.table)

    @cached_property
    def element_orders(self) -> tuple:
        return tuple(self.element_order(a) for a in self.elements())

    @cached_property
    def is_abelian(self) -> bool:
        t = self.table
        n = self.order
        return all(t[a][b] == t[b][a] for a in range(n) for b in range(a + 1, n))

    @cached_property
    def exponent(self) -> int:
        return math.lcm(*self.element_orders)

    @cached_property
    def commuting_masks(self) -> tuple:
        """Per element, a bitmask of all elements commuting with it."""
        t = self.table
        n = self.order
        masks = []
        for a in range(n):
            row = t[a]
            m = 0
            for b in range(n):
                if row[b] == t[b][a]:
                    m |= 1 << b
            masks.append(m)
        return tuple(masks)

    @cached_property
    def table_hash(self) -> str:
        """Canonical hash of the row-major table, used as a cache key."""
        payload = json.dumps([list(r) for r in self.table], separators=(",", ":"))
        return hashlib.sha256(payload.encode()).hexdigest()

    # -- subgroups ----------------------------------------------------------

    def subgroup(self, elements: Iterable[int]) -> "Subgroup":
        """Validate an element list as a subgroup and wrap it."""
        elems = sorted(set(int(e) for e in elements))
        if not elems or elems[0] != 0:
            raise NotASubgroup("subgroup must contain the identity 0")
        inside = set(elems)
        for a in elems:
            if a < 0 or a >= self.order:
                raise NotASubgroup(f"element {a} out of range")
            if self.inv(a) not in inside:
                raise NotASubgroup(f"inverse of {a} missing")
            for b in elems:
                if self.table[a][b] not in inside:
                    raise NotASubgroup(f"product {a}*{b} escapes the element set")
        if self.order % len(elems) != 0:
            raise NotASubgroup("size does not divide the group order")
        return Subgroup(self, tuple(elems))

    def subgroup_generated(self, gens: Iterable[int]) -> "Subgroup":
        return Subgroup(self, tuple(sorted(self.closure(gens))))

    def closure(self, gens: Iterable[int]) -> set:
        """Element set of the subgroup generated by ``gens``."""
        gens = [g for g in gens if g != 0]
        seen = {0}
        queue = [0]
        for g in gens:
            if g not in seen:
                seen.add(g)
                queue.append(g)
        i = 0
        while i < len(queue):
            a = queue[i]
            i += 1
            row = self.table[a]
            for g in gens:
                c = row[g]
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
        return seen

    @cached_property
    def center(self) -> "Subgroup":
        n = self.order
        full = (1 << n) - 1
        members = [a for a in range(n) if self.commuting_masks[a] == full]
        return Subgroup(self, tuple(members))

    def centralizer(self, target) -> "Subgroup":
        """Centralizer of an element or of a Subgroup."""
        if isinstance(target, Subgroup):
            mask = -1
            for x in target.elements:
                mask &= self.commuting_masks[x]
        else:
            mask = self.commuting_masks[int(target)]
        members = [a for a in self.elements() if (mask >> a) & 1]
        return Subgroup(self, tuple(members))

    def normalizer(self, sub: "Subgroup") -> "Subgroup":
        sub._check_parent(self)
        inside = set(sub.elements)
        members = []
        for g in self.elements():
            if all(self.conjugate(h, g) in inside for h in sub.elements):
                members.append(g)
        return Subgroup(self, tuple(members))

    def right_cosets(self, sub: "Subgroup") -> tuple:
        """Partition into right cosets H*g; identity coset first, then by
        ascending least element. Returns (representatives, cosets)."""
        sub._check_parent(self)
        seen = [False] * self.order
        reps, cosets = [], []
        for g in self.elements():
            if seen[g]:
                continue
            coset = sorted(self.table[h][g] for h in sub.elements)
            for x in coset:
                seen[x] = True
            reps.append(coset[0])
            cosets.append(tuple(coset))
        return tuple(reps), tuple(cosets)

    @cached_property
    def derived_subgroup(self) -> "Subgroup":
        gens = {self.commutator(a, b) for a in self.elements() for b in self.elements()}
        return self.subgroup_generated(gens)

    @cached_property
    def derived_series(self) -> tuple:
        """(G, G', G'', ...) until the series stabilizes."""
        series = [self.subgroup(range(self.order))]
        while True:
            last = series[-1]
            nxt = _mutual_commutator(self, last.elements, last.elements)
            if nxt.elements == last.elements:
                break
            series.append(nxt)
            if nxt.order == 1:
                break
        return tuple(series)

    @cached_property
    def is_solvable(self) -> bool:
        return self.derived_series[-1].order == 1

    @cached_property
    def lower_central_series(self) -> tuple:
        """(G, [G,G], [[G,G],G], ...) until stable."""
        whole = self.subgroup(range(self.order))
        series = [whole]
        while True:
            last = series[-1]
            nxt = _mutual_commutator(self, last.elements, whole.elements)
            if nxt.elements == last.elements:
                break
            series.append(nxt)
            if nxt.order == 1:
                break
        return tuple(series)

    @cached_property
    def nilpotency_class(self) -> Optional[int]:
        series = self.lower_central_series
        if series[-1].order != 1:
            return None
        return len(series) - 1

    def quotient(self, normal: "Subgroup") -> tuple:
        """Factor group G/N with its projection.

        Returns (FiniteGroup, projection) where projection[g] is the
        index of the coset of g. Coset 0 is N itself; the others are
        ordered by ascending least element.
        """
        normal._check_parent(self)
        if not self.is_normal(normal):
            raise NotNormal(f"subgroup of order {normal.order} is not normal")
        reps, cosets = self.right_cosets(normal)
        proj = [0] * self.order
        for idx, coset in enumerate(cosets):
            for x in coset:
                proj[x] = idx
        m = len(reps)
        table = [[proj[self.table[reps[i]][reps[j]]] for j in range(m)] for i in range(m)]
        label = f"{self.name or 'G'}/N{normal.order}"
        return FiniteGroup(table, name=label), tuple(proj)

    def is_normal(self, sub: "Subgroup") -> bool:
        sub._check_parent(self)
        inside = set(sub.elements)
        return all(self.conjugate(h, g) in inside for g in self.elements() for h in sub.elements)

    def sylow(self, p: int) -> "Subgroup":
        """A Sylow p-subgroup, by normalizer ascent.

        Starting from a cyclic p-subgroup, repeatedly adjoin an element
        whose image has order p in N(P)/P. In a finite group this
        always reaches the full p-part.
        """
        if p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise UnsupportedParameter(f"{p} is not prime")
        p_part = 1
        n = self.order
        while n % p == 0:
            p_part *= p
            n //= p
        if p_part == 1:
            return Subgroup(self, (0,))
        seed = 0
        for x in self.elements():
            if self.element_orders[x] % p == 0:
                seed = self.pow(x, self.element_orders[x] // p)
                break
        current = self.subgroup_generated([seed])
        while current.order < p_part:
            norm = self.normalizer(current)
            ngrp, embed = norm.as_group()
            back = {g: i for i, g in enumerate(embed)}
            inner = ngrp.subgroup(sorted(back[h] for h in current.elements))
            qgrp, qproj = ngrp.quotient(inner)
            lift = None
            for c in qgrp.elements():
                if qgrp.element_order(c) == p:
                    lift = next(g for g in range(ngrp.order) if qproj[g] == c)
                    break
            current = self.subgroup_generated(list(current.elements) + [embed[lift]])
        return current

    @cached_property
    def generating_set(self) -> tuple:
        """Greedy small generating set: repeatedly adjoin the element
        that most enlarges the generated subgroup (ties to the least
        index). Each step at least doubles the subgroup, so the result
        has at most log2 |G| members."""
        gens: list = []
        size = 1
        while size < self.order:
            best_x, best_size = None, 0
            for x in self.elements():
                closure = self.closure(gens + [x])
                if len(closure) > best_size:
                    best_x, best_size = x, len(closure)
            gens.append(best_x)
            size = best_size
        return tuple(gens)

    @cached_property
    def conjugacy_classes(self) -> tuple:
        """Classes as sorted tuples, ordered by ascending least element."""
        seen = [False] * self.order
        classes = []
        for x in self.elements():
            if seen[x]:
                continue
            orbit = sorted({self.conjugate(x, g) for g in self.elements()})
            for y in orbit:
                seen[y] = True
            classes.append(tuple(orbit))
        return tuple(classes)

    @cached_property
    def normal_subgroups(self) -> tuple:
        """All normal subgroups, as joins of element normal closures."""
        base = []
        seen = set()
        for cls in self.conjugacy_classes:
            closure = frozenset(self.closure(cls))
            if closure not in seen:
                seen.add(closure)
                base.append(closure)
        lattice = {frozenset({0})}
        queue = [frozenset({0})]
        while queue:
            current = queue.pop()
            for b in base:
                if b <= current:
                    continue
                joined = frozenset(self.closure(current | b))
                if joined not in lattice:
                    lattice.add(joined)
                    queue.append(joined)
        subs = [Subgroup(self, tuple(sorted(s))) for s in lattice]
        subs.sort(key=lambda s: (s.order, s.elements))
        return tuple(subs)


@dataclass(frozen=True)
class Subgroup:
    """A subgroup of a FiniteGroup, stored as a sorted element tuple."""

    parent: FiniteGroup
    elements: tuple

    @property
    def order(self) -> int:
        return len(self.elements)

    def __contains__(self, x: int) -> bool:
        return x in self._element_set

    @cached_property
    def _element_set(self) -> frozenset:
        return frozenset(self.elements)

    @property
    def is_abelian(self) -> bool:
        t = self.parent.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in self.elements)

    def _check_parent(self, group: FiniteGroup) -> None:
        if self.parent is not group:
            raise NotASubgroup("subgroup belongs to a different group")

    def as_group(self) -> tuple:
        """Realize the subgroup as its own FiniteGroup.

        Returns (group, embedding) where embedding[i] is the parent
        element of the subgroup's element i. Element 0 stays 0.
        """
        index = {g: i for i, g in enumerate(self.elements)}
        table = [[index[self.parent.table[a][b]] for b in self.elements] for a in self.elements]
        name = f"{self.parent.name or 'G'}<{self.order}>"
        return FiniteGroup(table, name=name), tuple(self.elements)


# ---------------------------------------------------------------------------
# Construction and validation


def from_cayley_table(table: Sequence[Sequence[int]], name: Optional[str] = None,
                      strict: bool = False) -> FiniteGroup:
    """Validate a raw table as a group.

    If the table is a group but its identity is some element e != 0,
    the labels 0 and e are swapped so the identity lands at index 0;
    the relabeling permutation (old index -> new index) is recorded on
    the returned group.
    """
    rows = [list(int(v) for v in row) for row in table]
    n = len(rows)
    if n < 1:
        raise NoIdentity("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotClosed(i, len(row), None)
        for j, v in enumerate(row):
            if not (0 <= v < n):
                raise NotClosed(i, j, v)
    ident = _find_identity(rows)
    if ident is None:
        raise NoIdentity("no two-sided identity element")
    relabeling = None
    if ident != 0:
        sigma = list(range(n))
        sigma[0], sigma[ident] = ident, 0
        relabeled = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                relabeled[sigma[a]][sigma[b]] = sigma[rows[a][b]]
        rows = relabeled
        relabeling = tuple(sigma)
    return FiniteGroup(rows, name=name, strict=strict, relabeling=relabeling)


def _find_identity(rows) -> Optional[int]:
    n = len(rows)
    for e in range(n):
        if all(rows[e][b] == b for b in range(n)) and all(rows[a][e] == a for a in range(n)):
            return e
    return None


def _validate_table(rows: tuple, strict: bool) -> None:
    n = len(rows)
    if n == 0:
        raise NoIdentity("empty table")
    for i, row in enumerate(rows):
        if len(row) != n:
            raise NotClosed(i, len(row), None)
        for j, v in enumerate(row):
            if not (0 <= v < n):
                raise NotClosed(i, j, v)
    if any(rows[0][b] != b for b in range(n)) or any(rows[a][0] != a for a in range(n)):
        raise NoIdentity("element 0 is not a two-sided identity")
    full = set(range(n))
    for i, row in enumerate(rows):
        if set(row) != full:
            if 0 not in row:
                raise NoInverse(i)
            raise NotLatin("row", i)
    for j in range(n):
        if {rows[i][j] for i in range(n)} != full:
            raise NotLatin("column", j)
    if strict or n <= BRUTE_ASSOC_LIMIT:
        for a in range(n):
            ra = rows[a]
            for b in range(n):
                ab = ra[b]
                rb = rows[b]
                rab = rows[ab]
                for c in range(n):
                    if rab[c] != ra[rb[c]]:
                        raise NotAssociative(a, b, c)
    else:
        _light_associativity(rows)
    for a in range(n):
        b = rows[a].index(0)
        if rows[b][a] != 0:
            raise NoInverse(a)


def _light_associativity(rows: tuple) -> None:
    """Light's test: verifying (a*s)*c == a*(s*c) for s in a generating
    set proves associativity for all triples (the set of middle elements
    satisfying the law is closed under the product and contains 0)."""
    n = len(rows)
    gens = []
    seen = {0}
    for x in range(1, n):
        if x in seen:
            continue
        gens.append(x)
        # closure under the raw table; needs no associativity assumption
        queue = [0]
        seen = {0}
        for g in gens:
            if g not in seen:
                seen.add(g)
                queue.append(g)
        i = 0
        while i < len(queue):
            a = queue[i]
            i += 1
            for g in gens:
                c = rows[a][g]
                if c not in seen:
                    seen.add(c)
                    queue.append(c)
                d = rows[g][a]
                if d not in seen:
                    seen.add(d)
                    queue.append(d)
    for s in gens:
        col_s = [rows[x][s] for x in range(n)]
        row_s = rows[s]
        for a in range(n):
            as_ = col_s[a]
            row_a = rows[a]
            row_as = rows[as_]
            for c in range(n):
                if row_as[c] != row_a[row_s[c]]:
                    raise NotAssociative(a, s, c)


def from_permutation_generators(generators: Sequence[Sequence[int]], degree: int,
                                cap: int, name: Optional[str] = None) -> FiniteGroup:
    """Group generated by permutations of 0..degree-1, by BFS closure.

    Element order is the BFS discovery order with the identity first;
    the product a*b is "apply a, then b". Raises CapExceeded once the
    closure grows past ``cap``.
    """
    degree = int(degree)
    if degree < 1:
        raise UnsupportedParameter("degree must be positive")
    gens = []
    for k, g in enumerate(generators):
        perm = tuple(int(v) for v in g)
        if sorted(perm) != list(range(degree)):
            raise UnsupportedParameter(f"generator {k} is not a permutation of 0..{degree - 1}")
        gens.append(perm)
    ident = tuple(range(degree))
    elems = [ident]
    index = {ident: 0}
    i = 0
    while i < len(elems):
        current = elems[i]
        i += 1
        for g in gens:
            product = tuple(g[current[pt]] for pt in range(degree))
            if product not in index:
                if len(elems) >= cap:
                    raise CapExceeded("permutation closure exceeded cap", len(elems))
                index[product] = len(elems)
                elems.append(product)
    n = len(elems)
    # column-by-word construction: col_b[a] = index(a*b), built by composing
    # generator columns along each element's BFS word
    gen_cols = []
    for g in gens:
        col = [index[tuple(g[e[pt]] for pt in range(degree))] for e in elems]
        gen_cols.append(col)
    cols = [None] * n
    cols[0] = list(range(n))
    queue = [0]
    qi = 0
    while qi < len(queue):
        b = queue[qi]
        qi += 1
        col_b = cols[b]
        for gi, g in enumerate(gens):
            target = gen_cols[gi][b]
            if cols[target] is None:
                gen_col = gen_cols[gi]
                cols[target] = [gen_col[v] for v in col_b]
                queue.append(target)
    table = [[cols[b][a] for b in range(n)] for a in range(n)]
    return FiniteGroup(table, name=name)


# ---------------------------------------------------------------------------
# Abelian structure


def abelian_basis(group: FiniteGroup) -> list:
    """Independent generators b_1..b_k with G = <b_1> x ... x <b_k>.

    Greedy: repeatedly take a maximal-order element of the remaining
    quotient and lift it to an element of equal order (one exists
    because the span so far is a direct summand).
    """
    if not group.is_abelian:
        raise NotAbelian("abelian_basis needs an abelian group")
    basis = []
    while True:
        span = group.subgroup_generated(basis)
        if span.order == group.order:
            return basis
        qgrp, proj = group.quotient(span)
        best = max(qgrp.elements(), key=lambda c: (qgrp.element_order(c), -c))
        target = qgrp.element_order(best)
        lift = next(g for g in group.elements()
                    if proj[g] == best and group.element_orders[g] == target)
        basis.append(lift)


def element_vector_table(group: FiniteGroup, basis: Sequence[int]) -> dict:
    """Map each element to its exponent vector over ``basis``."""
    vectors = {0: tuple(0 for _ in basis)}
    for coords in _mixed_radix([group.element_orders[b] for b in basis]):
        g = 0
        for b, e in zip(basis, coords):
            g = group.table[g][group.pow(b, e)]
        vectors.setdefault(g, tuple(coords))
    return vectors


def _mixed_radix(limits):
    total = math.prod(limits) if limits else 1
    for k in range(total):
        coords = []
        rem = k
        for lim in reversed(limits):
            coords.append(rem % lim)
            rem //= lim
        yield tuple(reversed(coords))


def _mutual_commutator(group: FiniteGroup, left: tuple, right: tuple) -> Subgroup:
    gens = {group.commutator(a, b) for a in left for b in right}
    return group.subgroup_generated(gens)


# ---------------------------------------------------------------------------
# Maximum abelian subgroup (branch and bound)


@dataclass(frozen=True)
class MaxAbelianResult:
    size: int
    witness: Subgroup
    exact: bool
    nodes: int


def max_abelian_subgroup_order(group: FiniteGroup, budget: int = 2_000_000) -> MaxAbelianResult:
    """Exact maximum order of an abelian subgroup.

    Branch and bound over commuting generator chains: candidates are
    added in a fixed priority order (descending centralizer size), the
    running subgroup is closed under generation, and a branch is cut
    when |current| + |still-commuting outsiders| cannot beat the best.
    Every maximal abelian subgroup contains the center, so the search
    starts there. If the node budget runs out the best value found so
    far is returned with ``exact=False``.
    """
    n = group.order
    comm = group.commuting_masks
    priority = sorted(range(n), key=lambda x: (-bin(comm[x]).count("1"), x))
    position = [0] * n
    for pos, x in enumerate(priority):
        position[x] = pos

    center = group.center
    center_mask = _mask_of(center.elements)
    compat0 = -1
    for z in center.elements:
        compat0 &= comm[z]
    compat0 &= ~center_mask & ((1 << n) - 1)

    best_size = center.order
    best_set = center.elements
    x0 = max(group.elements(), key=lambda x: (group.element_orders[x], -x))
    cyc = group.subgroup_generated([x0])
    if cyc.order > best_size:
        best_size, best_set = cyc.order, cyc.elements

    nodes = 0
    exact = True
    stack = [(center.elements, center_mask, compat0, -1)]
    while stack:
        elems, mask, compat, last_pos = stack.pop()
        if len(elems) + compat.bit_count() <= best_size:
            continue
        children = []
        cand = compat
        while cand:
            low = cand & -cand
            cand ^= low
            x = low.bit_length() - 1
            if position[x] <= last_pos:
                continue
            nodes += 1
            if nodes > budget:
                exact = False
                stack.clear()
                children = []
                break
            closed = group.closure(list(elems) + [x])
            new_mask = _mask_of(closed)
            new_elems = tuple(sorted(closed))
            if len(new_elems) > best_size:
                best_size = len(new_elems)
                best_set = new_elems
            new_compat = compat & comm[x] & ~new_mask
            children.append((new_elems, new_mask, new_compat, position[x]))
        stack.extend(reversed(children))
    return MaxAbelianResult(best_size, Subgroup(group, best_set), exact, nodes)


def _mask_of(elems) -> int:
    m = 0
    for e in elems:
        m |= 1 << e
    return m


# ---------------------------------------------------------------------------
# File formats


def group_to_json(group: FiniteGroup) -> dict:
    return {
        "name": group.name or "group",
        "order": group.order,
        "table": [list(row) for row in group.table],
    }


def load_group_json(data: dict, strict: bool = False, cap: int = 20000) -> FiniteGroup:
    """Build a group from either supported JSON shape.

    Cayley form: {"name":..., "order": n, "table": [[...], ...]}
    Generator form: {"degree": d, "generators": [[...], ...]}
    """
    if not isinstance(data, dict):
        raise FileFormatError("$", "expected a JSON object")
    if "table" in data:
        table = data["table"]
        if not isinstance(table, list):
            raise FileFormatError("table", "expected a list of rows")
        order = data.get("order", len(table))
        if order != len(table):
            raise FileFormatError("order", f"declared {order} but table has {len(table)} rows")
        for i, row in enumerate(table):
            if not isinstance(row, list) or len(row) != len(table):
                raise FileFormatError(f"table[{i}]", "row length differs from table size")
            for j, v in enumerate(row):
                if not isinstance(v, int) or not (0 <= v < len(table)):
                    raise FileFormatError(f"table[{i}][{j}]", f"entry {v!r} not an index in 0..{len(table) - 1}")
        return from_cayley_table(table, name=data.get("name"), strict=strict)
    if "generators" in data:
        degree = data.get("degree")
        if not isinstance(degree, int) or degree < 1:
            raise FileFormatError("degree", "expected a positive integer")
        gens = data["generators"]
        if not isinstance(gens, list):
            raise FileFormatError("generators", "expected a list of permutations")
        for k, g in enumerate(gens):
            if not isinstance(g, list) or sorted(g) != list(range(degree)):
                raise FileFormatError(f"generators[{k}]", f"not a permutation of 0..{degree - 1}")
        return from_permutation_generators(gens, degree, cap=cap, name=data.get("name"))
    raise FileFormatError("$", "object has neither 'table' nor 'generators'")


def load_group_file(path, strict: bool = False, cap: int = 20000) -> FiniteGroup:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileFormatError(str(path), f"cannot read file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FileFormatError(f"line {exc.lineno}, column {exc.colno}", exc.msg) from exc
    group = load_group_json(data, strict=strict, cap=cap)
    if group.name is None:
        group.name = Path(path).stem
    return group
