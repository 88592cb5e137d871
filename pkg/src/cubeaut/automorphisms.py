"""Maps between finite groups and full automorphism-group enumeration.

Automorphisms are enumerated by backtracking over the images of a small
generating set. Candidate images are pre-filtered by a cheap invariant
fingerprint (element order, centralizer size, number of square and cube
roots), partial assignments are extended by closure over the generated
subgroup, and any contradiction or collision prunes the branch. A
complete consistent closure over a generating set of G is already a
verified automorphism, so no post-validation is needed.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Optional

from .errors import CapExceeded, NotAutomorphism, NotInvariant
from .groups import FiniteGroup, Subgroup


@dataclass(frozen=True)
class GroupMap:
    """A total map on element indices; images[x] is the image of x."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __post_init__(self):
        if len(self.images) != self.source.order:
            raise NotAutomorphism("image array length differs from the source order")

    @property
    def is_identity(self) -> bool:
        return all(self.images[x] == x for x in range(self.source.order))

    def homomorphism_witness(self) -> Optional[tuple]:
        """None if the map respects products, else a violating pair."""
        src, tgt, img = self.source.table, self.target.table, self.images
        n = self.source.order
        for a in range(n):
            ia = img[a]
            row = src[a]
            trow = tgt[ia]
            for b in range(n):
                if img[row[b]] != trow[img[b]]:
                    return (a, b)
        return None

    @property
    def is_bijective(self) -> bool:
        return len(set(self.images)) == self.source.order


def is_homomorphism(m: GroupMap) -> bool:
    return m.homomorphism_witness() is None


def is_automorphism(m: GroupMap) -> bool:
    return (m.source is m.target and m.is_bijective
            and m.homomorphism_witness() is None)


def identity_map(group: FiniteGroup) -> GroupMap:
    return GroupMap(group, group, tuple(range(group.order)))


def power_map(group: FiniteGroup, n: int) -> GroupMap:
    """The map x -> x^n (negative n goes through the inverse)."""
    return GroupMap(group, group, tuple(group.pow(x, n) for x in group.elements()))


def is_n_abelian(group: FiniteGroup, n: int) -> bool:
    """True iff x -> x^n is an endomorphism."""
    return is_homomorphism(power_map(group, n))


def inner_automorphism(group: FiniteGroup, g: int) -> GroupMap:
    """Conjugation x -> g^-1 x g."""
    return GroupMap(group, group, tuple(group.conjugate(x, g) for x in group.elements()))


def compose(first: GroupMap, then: GroupMap) -> GroupMap:
    """Apply ``first``, then ``then`` (matching right-action notation)."""
    if first.target is not then.source:
        raise NotAutomorphism("maps are not composable")
    return GroupMap(first.source, then.target,
                    tuple(then.images[first.images[x]] for x in range(first.source.order)))


def invert(m: GroupMap) -> GroupMap:
    if not m.is_bijective:
        raise NotAutomorphism("cannot invert a non-bijective map")
    inverse = [0] * len(m.images)
    for x, y in enumerate(m.images):
        inverse[y] = x
    return GroupMap(m.target, m.source, tuple(inverse))


def restrict(m: GroupMap, sub: Subgroup) -> GroupMap:
    """Restriction of m to an invariant subgroup, on the subgroup-as-group."""
    if m.source is not sub.parent:
        raise NotInvariant("subgroup belongs to a different group")
    image_set = {m.images[x] for x in sub.elements}
    if image_set != set(sub.elements):
        raise NotInvariant("subgroup is not mapped onto itself")
    sgrp, embed = sub.as_group()
    back = {g: i for i, g in enumerate(embed)}
    return GroupMap(sgrp, sgrp, tuple(back[m.images[g]] for g in embed))


def induced_on_quotient(m: GroupMap, normal: Subgroup,
                        quotient_pair: Optional[tuple] = None) -> GroupMap:
    """The automorphism induced on G/N by an N-invariant map.

    ``quotient_pair`` may carry a precomputed (quotient, projection) for
    reuse across many maps.
    """
    if m.source is not normal.parent:
        raise NotInvariant("subgroup belongs to a different group")
    if {m.images[x] for x in normal.elements} != set(normal.elements):
        raise NotInvariant("subgroup is not mapped onto itself")
    if quotient_pair is None:
        quotient_pair = m.source.quotient(normal)
    qgrp, proj = quotient_pair
    images = [0] * qgrp.order
    seen = [False] * qgrp.order
    for g in m.source.elements():
        c = proj[g]
        if not seen[c]:
            seen[c] = True
            images[c] = proj[m.images[g]]
    return GroupMap(qgrp, qgrp, tuple(images))


# ---------------------------------------------------------------------------
# Enumeration


@dataclass(frozen=True)
class AutomorphismGroup:
    """All automorphisms of a group, in canonical (image-array) order."""

    base: FiniteGroup
    members: tuple
    generating_set: tuple = ()
    nodes: int = 0

    @property
    def order(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @cached_property
    def image_arrays(self) -> tuple:
        return tuple(m.images for m in self.members)


def small_generating_set(group: FiniteGroup) -> list:
    """Greedy generating set of size at most log2 |G| (cached on the group)."""
    return list(group.generating_set)


def check_automorphism(m: GroupMap) -> None:
    """Raise NotAutomorphism unless m is a verified automorphism.

    Bijectivity plus the homomorphism law against a generating set is
    checked; by induction over words that implies the law for all pairs.
    """
    if m.source is not m.target:
        raise NotAutomorphism("source and target differ")
    if not m.is_bijective:
        raise NotAutomorphism("map is not a bijection")
    img = m.images
    table = m.source.table
    for a in range(m.source.order):
        row = table[a]
        trow = table[img[a]]
        for g in m.source.generating_set:
            if img[row[g]] != trow[img[g]]:
                raise NotAutomorphism("map is not a homomorphism", witness=(a, g))


def _fingerprints(group: FiniteGroup) -> tuple:
    n = group.order
    orders = group.element_orders
    cent = [group.commuting_masks[x].bit_count() for x in range(n)]
    sqrt_count = [0] * n
    cbrt_count = [0] * n
    for y in range(n):
        sqrt_count[group.table[y][y]] += 1
        cbrt_count[group.pow(y, 3)] += 1
    return tuple((orders[x], cent[x], sqrt_count[x], cbrt_count[x]) for x in range(n))


def enumerate_automorphisms(group: FiniteGroup, cap: Optional[int] = None) -> AutomorphismGroup:
    """Complete Aut(G) by backtracking over generator images.

    Deterministic: members are sorted by their image arrays. Raises
    CapExceeded if more than ``cap`` automorphisms are found.
    """
    n = group.order
    if n == 1:
        return AutomorphismGroup(group, (identity_map(group),), (), 0)
    gens = small_generating_set(group)
    fp = _fingerprints(group)
    candidates = [[x for x in range(n) if fp[x] == fp[g]] for g in gens]
    order_of = group.element_orders
    table = group.table
    inv = group.inv
    # assign the most-constrained generators first
    ranked = sorted(range(len(gens)), key=lambda i: (len(candidates[i]), i))
    gens = [gens[i] for i in ranked]
    candidates = [candidates[i] for i in ranked]

    found = []
    nodes = 0
    assigned: list = []

    def extend() -> Optional[list]:
        img = [-1] * n
        img[0] = 0
        used = bytearray(n)
        used[0] = 1
        for g, h in assigned:
            if img[g] == -1:
                if used[h]:
                    return None
                img[g] = h
                used[h] = 1
            elif img[g] != h:
                return None
        queue = [0]
        enqueued = bytearray(n)
        enqueued[0] = 1
        qi = 0
        while qi < len(queue):
            a = queue[qi]
            qi += 1
            ia = img[a]
            row = table[a]
            trow = table[ia]
            for g, h in assigned:
                c = row[g]
                tc = trow[h]
                if img[c] == -1:
                    if used[tc]:
                        return None
                    img[c] = tc
                    used[tc] = 1
                elif img[c] != tc:
                    return None
                if not enqueued[c]:
                    enqueued[c] = 1
                    queue.append(c)
        if len(assigned) == len(gens) and qi < n:
            return None  # generating set must reach everything
        return img if len(assigned) == len(gens) else []

    def backtrack(level: int):
        nonlocal nodes
        if level == len(gens):
            return
        g = gens[level]
        for h in candidates[level]:
            ok = True
            for gj, hj in assigned:
                if (order_of[table[gj][g]] != order_of[table[hj][h]]
                        or order_of[table[gj][inv(g)]] != order_of[table[hj][inv(h)]]):
                    ok = False
                    break
            if not ok:
                continue
            assigned.append((g, h))
            nodes += 1
            result = extend()
            if result is not None:
                if result:
                    found.append(tuple(result))
                    if cap is not None and len(found) > cap:
                        raise CapExceeded("automorphism count exceeded cap", len(found))
                else:
                    backtrack(level + 1)
            assigned.pop()

    backtrack(0)
    found.sort()
    members = tuple(GroupMap(group, group, images) for images in found)
    return AutomorphismGroup(group, members, tuple(gens), nodes)


# ---------------------------------------------------------------------------
# Disk cache (advisory: every cached member is re-verified on load)


def default_cache_dir() -> Path:
    env = os.environ.get("CUBEAUT_CACHE_DIR")
    if env:
        return Path(env)
    xdg = os.environ.get("XDG_CACHE_HOME", os.path.expanduser("~/.cache"))
    return Path(xdg) / "cubeaut"


def automorphism_group(group: FiniteGroup, cache_dir=None, use_cache: bool = True,
                       rebuild: bool = False, cap: Optional[int] = None) -> AutomorphismGroup:
    """Aut(G), consulting a JSON disk cache keyed by the table hash.

    Cached image arrays are re-verified (bijectivity plus the
    homomorphism law over a generating set, which implies it globally)
    so a stale or corrupt cache can only cost time, not correctness.
    """
    directory = Path(cache_dir) if cache_dir is not None else default_cache_dir()
    path = directory / f"aut-{group.table_hash}.json"
    if use_cache and not rebuild:
        cached = _load_cache(path, group)
        if cached is not None:
            return cached
    result = enumerate_automorphisms(group, cap=cap)
    if use_cache:
        _store_cache(path, group, result)
    return result


def _load_cache(path: Path, group: FiniteGroup) -> Optional[AutomorphismGroup]:
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError):
        return None
    if data.get("table_hash") != group.table_hash:
        return None
    members = data.get("members")
    if not isinstance(members, list) or data.get("aut_order") != len(members):
        return None
    n = group.order
    gens = small_generating_set(group)
    table = group.table
    verified = []
    for images in members:
        if not isinstance(images, list) or len(images) != n or len(set(images)) != n:
            return None
        img = tuple(images)
        for a in range(n):
            row = table[a]
            trow = table[img[a]]
            if any(img[row[g]] != trow[img[g]] for g in gens):
                return None
        verified.append(img)
    verified.sort()
    maps = tuple(GroupMap(group, group, img) for img in verified)
    return AutomorphismGroup(group, maps, tuple(gens), 0)


def _store_cache(path: Path, group: FiniteGroup, result: AutomorphismGroup) -> None:
    payload = {
        "table_hash": group.table_hash,
        "aut_order": result.order,
        "members": [list(m.images) for m in result.members],
    }
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(payload, separators=(",", ":")), encoding="utf-8")
        os.replace(tmp, path)
    except OSError:
        pass  # cache is best-effort
