"""Property verification over concrete (group, automorphism) instances.

Each check asserts a commutation or counting statement over every pair
or coset meeting its hypothesis; a failing instance is re-validated
from the raw multiplication table before it is reported, and a
non-revalidating failure aborts the run as an internal bug.

Scans run exhaustively over all automorphisms of all catalog groups up
to a small order cap, plus a seeded sample of larger instances. The
sample list is derived once from the seed, so reports are identical at
any worker count.
"""

from __future__ import annotations

import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .automorphisms import GroupMap, automorphism_group
from .catalog import Catalog, built_in_catalog
from .cubing import (
    HALF,
    SOLVABILITY_BOUND,
    classify_cubing_structure,
    coset_trace,
    cube_set,
    max_cube_ratio,
    ratio_json,
    Kind,
)
from .errors import HypothesisNotMet
from .groups import FiniteGroup, load_group_file, max_abelian_subgroup_order
from .sfs import DEFAULT_EQUATIONS, find_nontrivial_solution

CHECK_IDS = (
    "quotient_ratio_monotone",
    "cube_centralizer",
    "elementary_two_coset",
    "pattern_abba",
    "pattern_ap",
    "pattern_ap2",
    "pattern_a2b",
    "pattern_a3b",
    "trace_avoidance",
    "coset_bound_half",
)

EXPECTED_ABELIAN_INDEX = {5: 12, 7: 24, 9: 40, 8: 56, 11: 60, 13: 84}
BOUNDARY_GROUPS = ("A5", "S5", "L2(7)", "PGL2(7)", "A6")


@dataclass
class CheckReport:
    check: str
    instances: int = 0
    failures: list = field(default_factory=list)
    skipped: int = 0
    scope: dict = field(default_factory=dict)
    seed: Optional[int] = None
    elapsed_ms: int = 0

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "scope": self.scope,
            "instances": self.instances,
            "failures": self.failures,
            "skipped": self.skipped,
            "seed": self.seed,
            "elapsed_ms": self.elapsed_ms,
        }


# ---------------------------------------------------------------------------
# Per-group context


class GroupContext:
    """Everything the per-automorphism checks reuse across a group."""

    def __init__(self, group: FiniteGroup, name: str):
        self.group = group
        self.name = name
        n = group.order
        self.pow3 = tuple(group.pow(x, 3) for x in range(n))
        self.squares = tuple(group.table[x][x] for x in range(n))
        self.inverses = tuple(group.inv(x) for x in range(n))
        self.comm = group.commuting_masks
        # distinct cyclic subgroups, each as (mask, power list h^0..h^(s-1))
        cyclic = {}
        for h in range(n):
            powers = [0]
            x = h
            while x != 0:
                powers.append(x)
                x = group.table[x][h]
            mask = 0
            for p in powers:
                mask |= 1 << p
            cyclic.setdefault(mask, powers)
        self.cyclic_subgroups = tuple(sorted(cyclic.items(), key=lambda kv: kv[1]))
        self.normal_data = None  # built on demand

    def ensure_normal_data(self):
        if self.normal_data is not None:
            return
        group = self.group
        data = []
        for sub in group.normal_subgroups:
            if sub.order == group.order:
                qgrp, proj = None, None
                reps = (0,)
                q_pow3 = (0,)
                data.append((sub._element_set, reps, proj, q_pow3, 1))
                continue
            qgrp, proj = group.quotient(sub)
            reps = [None] * qgrp.order
            for g in range(group.order):
                if reps[proj[g]] is None:
                    reps[proj[g]] = g
            q_pow3 = tuple(qgrp.pow(c, 3) for c in range(qgrp.order))
            data.append((sub._element_set, tuple(reps), proj, q_pow3, qgrp.order))
        self.normal_data = data


def _cube_members(ctx: GroupContext, img) -> tuple:
    members = [x for x in range(ctx.group.order) if img[x] == ctx.pow3[x]]
    mask = 0
    for x in members:
        mask |= 1 << x
    return members, mask


# ---------------------------------------------------------------------------
# Raw revalidation (independent of every fast path above)


def revalidate(group: FiniteGroup, img, check: str, witness: dict) -> bool:
    """Recompute a reported counterexample from the raw table."""
    t = group.table

    def in_cube(x):
        return img[x] == group.pow(x, 3)

    if check.startswith("pattern_"):
        a, b = witness["a"], witness["b"]
        pattern = {
            "pattern_abba": t[b][a],
            "pattern_ap": t[group.inv(a)][b],
            "pattern_ap2": t[group.inv(t[a][a])][b],
            "pattern_a2b": t[t[a][a]][b],
            "pattern_a3b": t[group.pow(a, 3)][b],
        }[check]
        required = [a, b, t[a][b], pattern]
        return all(in_cube(x) for x in required) and group.commutator(a, b) != 0
    if check == "cube_centralizer":
        if "x" in witness and "index" not in witness:
            x = witness["x"]
            cube = group.pow(x, 3)
            cx = {g for g in range(group.order) if t[g][x] == t[x][g]}
            c3 = {g for g in range(group.order) if t[g][cube] == t[cube][g]}
            return in_cube(x) and cx != c3
        h_elems, x = witness["subgroup"], witness["x"]
        cent = sum(1 for u in h_elems if t[u][x] == t[x][u])
        return (all(in_cube(u) for u in h_elems) and in_cube(x)
                and (len(h_elems) // cent) % 3 == 0)
    if check == "elementary_two_coset":
        h_elems, x, h = witness["subgroup"], witness["x"], witness["h"]
        if not (all(in_cube(u) for u in h_elems) and in_cube(x)):
            return False
        x2 = t[x][x]
        cent2 = {u for u in h_elems if t[u][x2] == t[x2][u]}
        if any(t[u][u] not in cent2 for u in h_elems):
            return False  # hypothesis fails, not a counterexample
        commutes = t[h][x] == t[x][h]
        return (t[h][x] in {g for g in range(group.order) if in_cube(g)}) != commutes
    if check == "quotient_ratio_monotone":
        n_elems = witness["normal"]
        sub = group.subgroup(n_elems)
        if {img[x] for x in n_elems} != set(n_elems):
            return False
        qgrp, proj = group.quotient(sub)
        reps = [None] * qgrp.order
        for g in range(group.order):
            if reps[proj[g]] is None:
                reps[proj[g]] = g
        t_count = sum(1 for x in range(group.order) if in_cube(x))
        tq = sum(1 for c in range(qgrp.order)
                 if proj[img[reps[c]]] == qgrp.pow(c, 3))
        return t_count * qgrp.order > tq * group.order
    if check == "trace_avoidance":
        residues, modulus, eq_index = (witness["trace"], witness["modulus"],
                                       witness["equation"])
        return find_nontrivial_solution(
            residues, modulus, DEFAULT_EQUATIONS[eq_index]) is not None
    if check == "coset_bound_half":
        h_elems = witness["subgroup"]
        cube = {g for g in range(group.order) if in_cube(g)}
        if not set(h_elems) <= cube:
            return False
        if "x" in witness:
            x = witness["x"]
            hit = sum(1 for u in h_elems if t[u][x] in cube)
            return x in cube and x not in set(h_elems) and 2 * hit > len(h_elems)
        rep = witness["coset_rep"]
        return all(t[u][rep] not in cube for u in h_elems)
    raise ValueError(f"unknown check id {check!r}")


class _Acc:
    """Accumulator for one check over many (group, map) instances."""

    __slots__ = ("instances", "failures", "skipped")

    def __init__(self):
        self.instances = 0
        self.failures = []
        self.skipped = 0


def _record(acc: _Acc, ctx: GroupContext, img, check: str, witness: dict):
    if not revalidate(ctx.group, img, check, witness):
        raise RuntimeError(
            f"non-revalidating counterexample for {check} on {ctx.name}: {witness}")
    acc.failures.append({"group": ctx.name, "alpha": list(img), **witness})


# ---------------------------------------------------------------------------
# The per-(group, automorphism) checks


def _check_patterns(ctx: GroupContext, img, members, mask, accs):
    t = ctx.group.table
    comm = ctx.comm
    inv = ctx.inverses
    squares = ctx.squares
    pow3 = ctx.pow3
    names = ("pattern_abba", "pattern_ap", "pattern_ap2", "pattern_a2b", "pattern_a3b")
    for a in members:
        row = t[a]
        row_ba_col = a
        inv_a = inv[a]
        sq_a = squares[a]
        cu_a = pow3[a]
        comm_a = comm[a]
        for b in members:
            ab = row[b]
            if not (mask >> ab) & 1:
                continue
            commutes = (comm_a >> b) & 1
            fourth = (t[b][row_ba_col], t[inv_a][b], t[inv[sq_a]][b],
                      t[sq_a][b], t[cu_a][b])
            for name, d in zip(names, fourth):
                if (mask >> d) & 1:
                    acc = accs[name]
                    acc.instances += 1
                    if not commutes:
                        _record(acc, ctx, img, name, {"a": a, "b": b})


def _check_cube_centralizer(ctx: GroupContext, img, members, mask, acc: _Acc):
    comm = ctx.comm
    pow3 = ctx.pow3
    for x in members:
        acc.instances += 1
        if comm[x] != comm[pow3[x]]:
            _record(acc, ctx, img, "cube_centralizer", {"x": x})
    for sub_mask, powers in ctx.cyclic_subgroups:
        if sub_mask & ~mask:
            continue
        size = len(powers)
        for x in members:
            cent = (sub_mask & comm[x]).bit_count()
            acc.instances += 1
            if (size // cent) % 3 == 0:
                _record(acc, ctx, img, "cube_centralizer",
                        {"subgroup": list(powers), "x": x, "index": size // cent})


def _check_elementary_two_coset(ctx: GroupContext, img, members, mask, acc: _Acc):
    t = ctx.group.table
    comm = ctx.comm
    squares = ctx.squares
    for sub_mask, powers in ctx.cyclic_subgroups:
        if sub_mask & ~mask:
            continue
        for x in members:
            x2 = squares[x]
            cent2_mask = sub_mask & comm[x2]
            if any(not (cent2_mask >> squares[u]) & 1 for u in powers):
                continue  # quotient by C_H(x^2) is not elementary abelian of exponent 2
            comm_x = comm[x]
            for h in powers:
                acc.instances += 1
                in_cube = (mask >> t[h][x]) & 1
                commutes = (comm_x >> h) & 1
                if in_cube != commutes:
                    _record(acc, ctx, img, "elementary_two_coset",
                            {"subgroup": list(powers), "x": x, "h": h})


def _check_quotient_monotone(ctx: GroupContext, img, members, mask, acc: _Acc):
    ctx.ensure_normal_data()
    n = ctx.group.order
    t_count = len(members)
    for elem_set, reps, proj, q_pow3, m in ctx.normal_data:
        if any(img[x] not in elem_set for x in elem_set):
            continue
        acc.instances += 1
        if m == 1:
            continue  # quotient ratio is computed over the trivial factor: 1
        tq = sum(1 for c in range(m) if proj[img[reps[c]]] == q_pow3[c])
        if t_count * m > tq * n:
            _record(acc, ctx, img, "quotient_ratio_monotone",
                    {"normal": sorted(elem_set), "quotient_cube_count": tq})


def _check_trace_avoidance(ctx: GroupContext, img, members, mask, acc: _Acc):
    t = ctx.group.table
    comm = ctx.comm
    for sub_mask, powers in ctx.cyclic_subgroups:
        if sub_mask & ~mask:
            continue
        size = len(powers)
        for x in members:
            cent = (sub_mask & comm[x]).bit_count()
            m = size // cent
            # cyclic quotient: the coset of h^k is k mod m
            residues = {k % m for k, h in enumerate(powers) if (mask >> t[h][x]) & 1}
            raw = sum(1 for h in powers if (mask >> t[h][x]) & 1)
            assert raw == len(residues) * cent, \
                "trace is not a union of centralizer cosets"
            residue_list = sorted(residues)
            for eq_index, eq in enumerate(DEFAULT_EQUATIONS):
                acc.instances += 1
                if find_nontrivial_solution(residue_list, m, eq) is not None:
                    _record(acc, ctx, img, "trace_avoidance",
                            {"subgroup": list(powers), "x": x, "modulus": m,
                             "trace": residue_list, "equation": eq_index})


def _max_subgroup_inside(group: FiniteGroup, members, mask) -> frozenset:
    """Largest subgroup contained in the member set, by exhaustive
    closure search (every subgroup inside the set is visited once)."""
    best = frozenset({0})
    seen = {best}
    stack = [best]
    while stack:
        current = stack.pop()
        if len(current) > len(best):
            best = current
        for x in members:
            if x in current:
                continue
            closed = frozenset(group.closure(list(current) + [x]))
            if closed in seen:
                continue
            closed_mask = 0
            for e in closed:
                closed_mask |= 1 << e
            if closed_mask & ~mask:
                continue
            seen.add(closed)
            stack.append(closed)
    return best


def _check_coset_bound(ctx: GroupContext, img, members, mask, acc: _Acc):
    group = ctx.group
    n = group.order
    if 2 * len(members) <= n:
        acc.skipped += 1
        return
    if len(members) > 40:
        # the bound needs a certified-maximum subgroup; above this size
        # the exhaustive search is not attempted and the pair is skipped
        acc.skipped += 1
        return
    h_set = _max_subgroup_inside(group, members, mask)
    h_elems = sorted(h_set)
    h_size = len(h_elems)
    t = group.table
    for x in members:
        if x in h_set:
            continue
        acc.instances += 1
        hit = sum(1 for u in h_elems if (mask >> t[u][x]) & 1)
        if 2 * hit > h_size:
            _record(acc, ctx, img, "coset_bound_half",
                    {"subgroup": h_elems, "x": x, "intersection": hit})
    seen = bytearray(n)
    for g in range(n):
        if seen[g]:
            continue
        coset = [t[u][g] for u in h_elems]
        for y in coset:
            seen[y] = 1
        acc.instances += 1
        if not any((mask >> y) & 1 for y in coset):
            _record(acc, ctx, img, "coset_bound_half",
                    {"subgroup": h_elems, "coset_rep": min(coset)})


def _run_all_checks(ctx: GroupContext, img, accs: dict):
    members, mask = _cube_members(ctx, img)
    _check_quotient_monotone(ctx, img, members, mask, accs["quotient_ratio_monotone"])
    _check_cube_centralizer(ctx, img, members, mask, accs["cube_centralizer"])
    _check_elementary_two_coset(ctx, img, members, mask,
                                accs["elementary_two_coset"])
    _check_patterns(ctx, img, members, mask, accs)
    _check_trace_avoidance(ctx, img, members, mask, accs["trace_avoidance"])
    _check_coset_bound(ctx, img, members, mask, accs["coset_bound_half"])


# ---------------------------------------------------------------------------
# Public single-instance checks


def _single_report(group: FiniteGroup, alpha: GroupMap, check: str,
                   runner) -> CheckReport:
    started = time.monotonic()
    ctx = GroupContext(group, group.name or "group")
    accs = {name: _Acc() for name in CHECK_IDS}
    members, mask = _cube_members(ctx, alpha.images)
    runner(ctx, alpha.images, members, mask, accs)
    acc = accs[check]
    report = CheckReport(check, acc.instances, acc.failures, acc.skipped,
                         scope={"group": group.name, "order": group.order})
    report.elapsed_ms = int((time.monotonic() - started) * 1000)
    return report


def check_quotient_inequality(group: FiniteGroup, alpha: GroupMap,
                              normal=None) -> CheckReport:
    """Cube ratio of G never exceeds that of any invariant factor group."""
    if normal is not None:
        started = time.monotonic()
        from .automorphisms import induced_on_quotient
        pair = group.quotient(normal)
        induced = induced_on_quotient(alpha, normal, pair)
        whole = cube_set(group, alpha).ratio
        factor = cube_set(pair[0], induced).ratio
        report = CheckReport("quotient_ratio_monotone", 1,
                             scope={"group": group.name, "normal": list(normal.elements)})
        if whole > factor:
            report.failures.append({
                "group": group.name, "alpha": list(alpha.images),
                "normal": list(normal.elements),
            })
        report.elapsed_ms = int((time.monotonic() - started) * 1000)
        return report
    return _single_report(
        group, alpha, "quotient_ratio_monotone",
        lambda ctx, img, members, mask, accs: _check_quotient_monotone(
            ctx, img, members, mask, accs["quotient_ratio_monotone"]))


def check_centralizer_cube(group: FiniteGroup, alpha: GroupMap) -> CheckReport:
    """Centralizers of x and x^3 agree for x in the cube set, and the
    centralizer index in any cyclic subgroup of the cube set is never a
    multiple of three."""
    return _single_report(
        group, alpha, "cube_centralizer",
        lambda ctx, img, members, mask, accs: _check_cube_centralizer(
            ctx, img, members, mask, accs["cube_centralizer"]))


def _pattern_report(group, alpha, name) -> CheckReport:
    return _single_report(
        group, alpha, name,
        lambda ctx, img, members, mask, accs: _check_patterns(
            ctx, img, members, mask, accs))


def check_abba(group, alpha):
    """a, b, ab, ba all cubed forces [a, b] = 1."""
    return _pattern_report(group, alpha, "pattern_abba")


def check_ap(group, alpha):
    """a, b, ab, a^-1 b all cubed forces [a, b] = 1."""
    return _pattern_report(group, alpha, "pattern_ap")


def check_ap2(group, alpha):
    """a, b, ab, a^-2 b all cubed forces [a, b] = 1."""
    return _pattern_report(group, alpha, "pattern_ap2")


def check_a2b(group, alpha):
    """a, b, ab, a^2 b all cubed forces [a, b] = 1."""
    return _pattern_report(group, alpha, "pattern_a2b")


def check_a3b(group, alpha):
    """a, b, ab, a^3 b all cubed forces [a, b] = 1."""
    return _pattern_report(group, alpha, "pattern_a3b")


def check_eltwoab(group, alpha):
    """When H/C_H(x^2) is elementary 2-abelian, hx is cubed iff h and x
    commute."""
    return _single_report(
        group, alpha, "elementary_two_coset",
        lambda ctx, img, members, mask, accs: _check_elementary_two_coset(
            ctx, img, members, mask, accs["elementary_two_coset"]))


def check_trace_avoidance(group: FiniteGroup, alpha: GroupMap) -> CheckReport:
    """Every cyclic-subgroup coset trace avoids both default equations.

    This public form goes through coset_trace (the general machinery);
    the bulk scans use an equivalent direct cyclic-residue path.
    """
    started = time.monotonic()
    report = CheckReport("trace_avoidance",
                         scope={"group": group.name, "order": group.order})
    cube = cube_set(group, alpha)
    inside = set(cube.members)
    seen_masks = set()
    for h in cube.members:
        elements = sorted(group.closure([h]))
        if not set(elements) <= inside:
            continue
        key = tuple(elements)
        if key in seen_masks:
            continue
        seen_masks.add(key)
        sub = group.subgroup(elements)
        for x in cube.members:
            trace = coset_trace(group, alpha, sub, x, trusted=True)
            for eq_index, eq in enumerate(DEFAULT_EQUATIONS):
                report.instances += 1
                witness = find_nontrivial_solution(
                    trace.trace, trace.quotient_order, eq)
                if witness is not None:
                    failure = {
                        "group": group.name, "alpha": list(alpha.images),
                        "subgroup": elements, "x": x,
                        "modulus": trace.quotient_order,
                        "trace": list(trace.trace), "equation": eq_index,
                    }
                    if not revalidate(group, alpha.images, "trace_avoidance", failure):
                        raise RuntimeError("non-revalidating counterexample")
                    report.failures.append(failure)
    report.elapsed_ms = int((time.monotonic() - started) * 1000)
    return report


def check_coset_bound(group: FiniteGroup, alpha: GroupMap) -> CheckReport:
    """With cube ratio above one half: every coset of a maximum
    subgroup inside the cube set meets it, in at most half the coset."""
    cube = cube_set(group, alpha)
    if cube.ratio <= HALF:
        raise HypothesisNotMet(
            f"cube ratio {cube.ratio} is not above 1/2; check skipped")
    return _single_report(
        group, alpha, "coset_bound_half",
        lambda ctx, img, members, mask, accs: _check_coset_bound(
            ctx, img, members, mask, accs["coset_bound_half"]))


# ---------------------------------------------------------------------------
# Suite scans (parallelizable, deterministic)


def _group_from_source(source) -> FiniteGroup:
    kind, ref = source
    if kind == "builtin":
        return built_in_catalog().build(ref)
    return load_group_file(ref)


def _property_task(task: dict) -> dict:
    group = _group_from_source(tuple(task["source"]))
    ctx = GroupContext(group, task["name"])
    auts = automorphism_group(group, cache_dir=task["cache_dir"],
                              use_cache=task["use_cache"], rebuild=task.get("rebuild", False))
    accs = {name: _Acc() for name in CHECK_IDS}
    pairs = 0
    if task["kind"] == "exhaustive":
        for member in auts.members:
            pairs += 1
            _run_all_checks(ctx, member.images, accs)
    else:
        for draw in task["draws"]:
            member = auts.members[draw % auts.order]
            pairs += 1
            _run_all_checks(ctx, member.images, accs)
    return {
        "pairs": pairs,
        "checks": {name: {"instances": acc.instances, "failures": acc.failures,
                          "skipped": acc.skipped}
                   for name, acc in accs.items()},
    }


def _parallel(tasks: list, worker, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        return [worker(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, tasks))


def verify_properties(catalog: Optional[Catalog] = None, exhaustive_cap: int = 24,
                  sample_count: int = 500, sample_min: int = 25,
                  sample_max: int = 360, seed: int = 0, jobs: int = 1,
                  cache_dir=None, use_cache: bool = True,
                  rebuild: bool = False) -> dict:
    """Run every check over the exhaustive scope plus a seeded sample.

    Exhaustive: all automorphisms of all catalog groups of order at
    most ``exhaustive_cap``. Sampled: ``sample_count`` draws of
    (group, automorphism) with group order in [sample_min, sample_max].
    """
    started = time.monotonic()
    cat = catalog if catalog is not None else built_in_catalog()
    entries = {name: next(e for e in cat.entries if e.name == name)
               for name, _ in cat.groups(order_cap=max(exhaustive_cap, sample_max))}

    tasks = []
    exhaustive_names = cat.names(order_cap=exhaustive_cap)
    for name in exhaustive_names:
        tasks.append({"kind": "exhaustive", "name": name,
                      "source": entries[name].source,
                      "cache_dir": str(cache_dir) if cache_dir else None,
                      "use_cache": use_cache, "rebuild": rebuild})
    eligible = cat.names(order_cap=sample_max, min_order=sample_min)
    rng = random.Random(seed)
    draws_by_name: dict = {}
    for _ in range(sample_count):
        name = eligible[rng.randrange(len(eligible))]
        draws_by_name.setdefault(name, []).append(rng.getrandbits(48))
    for name in eligible:
        if name in draws_by_name:
            tasks.append({"kind": "sampled", "name": name,
                          "source": entries[name].source,
                          "draws": draws_by_name[name],
                          "cache_dir": str(cache_dir) if cache_dir else None,
                          "use_cache": use_cache, "rebuild": rebuild})

    results = _parallel(tasks, _property_task, jobs)
    exhaustive_pairs = sum(r["pairs"] for r, t in zip(results, tasks)
                           if t["kind"] == "exhaustive")
    sampled_pairs = sum(r["pairs"] for r, t in zip(results, tasks)
                        if t["kind"] == "sampled")
    reports = []
    scope = {
        "exhaustive_order_cap": exhaustive_cap,
        "exhaustive_groups": len(exhaustive_names),
        "exhaustive_pairs": exhaustive_pairs,
        "sample_window": [sample_min, sample_max],
        "sampled_pairs": sampled_pairs,
    }
    for name in CHECK_IDS:
        report = CheckReport(name, scope=dict(scope), seed=seed)
        for result in results:
            part = result["checks"][name]
            report.instances += part["instances"]
            report.failures.extend(part["failures"])
            report.skipped += part["skipped"]
        reports.append(report)
    elapsed = int((time.monotonic() - started) * 1000)
    for report in reports:
        report.elapsed_ms = elapsed
    return {
        "suite": "property-checks",
        "seed": seed,
        "scope": scope,
        "checks": [r.to_json() for r in reports],
        "pass": all(not r.failures for r in reports),
        "elapsed_ms": elapsed,
    }


# ---------------------------------------------------------------------------
# Classification equivalence


def _classification_task(task: dict) -> dict:
    group = _group_from_source(tuple(task["source"]))
    verdict = classify_cubing_structure(group)
    auts = automorphism_group(group, cache_dir=task["cache_dir"],
                              use_cache=task["use_cache"], rebuild=task.get("rebuild", False))
    ratio, witness = max_cube_ratio(group, auts=auts)
    row = {
        "group": task["name"],
        "order": group.order,
        "verdict": verdict.kind.value,
        "max_ratio": ratio_json(ratio),
        "aut_order": auts.order,
        "equivalent": (verdict.kind != Kind.NONE) == (ratio > HALF),
        "attains_max": verdict.kind == Kind.NONE or verdict.predicted_ratio == ratio,
    }
    if verdict.predicted_ratio is not None:
        row["predicted_ratio"] = ratio_json(verdict.predicted_ratio)
    return row


def verify_classification(catalog: Optional[Catalog] = None, order_cap: int = 64,
                     jobs: int = 1, cache_dir=None, use_cache: bool = True,
                     rebuild: bool = False, seed: int = 0) -> dict:
    """On every catalog group up to the cap: a structural verdict exists
    iff the brute-force maximum ratio exceeds 1/2, and when it does the
    constructed automorphism attains the maximum."""
    started = time.monotonic()
    cat = catalog if catalog is not None else built_in_catalog()
    tasks = []
    for name, group in cat.groups(order_cap=order_cap):
        entry = next(e for e in cat.entries if e.name == name)
        tasks.append({"name": name, "source": entry.source,
                      "cache_dir": str(cache_dir) if cache_dir else None,
                      "use_cache": use_cache, "rebuild": rebuild})
    rows = _parallel(tasks, _classification_task, jobs)
    mismatches = [r for r in rows if not (r["equivalent"] and r["attains_max"])]
    return {
        "suite": "classification-equivalence",
        "order_cap": order_cap,
        "seed": seed,
        "groups": len(rows),
        "rows": rows,
        "mismatches": mismatches,
        "pass": not mismatches,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
    }


# ---------------------------------------------------------------------------
# Solvability boundary


def _boundary_task(task: dict) -> dict:
    group = _group_from_source(tuple(task["source"]))
    auts = automorphism_group(group, cache_dir=task["cache_dir"],
                              use_cache=task["use_cache"], rebuild=task.get("rebuild", False))
    ratio, _ = max_cube_ratio(group, auts=auts)
    return {
        "group": task["name"],
        "order": group.order,
        "max_ratio": ratio_json(ratio),
        "solvable": group.is_solvable,
        "aut_order": auts.order,
    }


def verify_solvability_boundary(catalog: Optional[Catalog] = None,
                                order_cap: int = 64, jobs: int = 1,
                                cache_dir=None, use_cache: bool = True,
                                rebuild: bool = False, seed: int = 0) -> dict:
    """The named boundary groups max out at 4/15 (A5 exactly), and on
    the whole scanned catalog a ratio above 4/15 forces solvability."""
    started = time.monotonic()
    cat = catalog if catalog is not None else built_in_catalog()
    names = list(cat.names(order_cap=order_cap))
    for name in BOUNDARY_GROUPS:
        if name not in names:
            names.append(name)
    tasks = []
    for name in names:
        entry = next(e for e in cat.entries if e.name == name)
        tasks.append({"name": name, "source": entry.source,
                      "cache_dir": str(cache_dir) if cache_dir else None,
                      "use_cache": use_cache, "rebuild": rebuild})
    rows = _parallel(tasks, _boundary_task, jobs)
    by_name = {r["group"]: r for r in rows}
    failures = []
    a5 = Fraction(by_name["A5"]["max_ratio"]["num"], by_name["A5"]["max_ratio"]["den"])
    if a5 != SOLVABILITY_BOUND:
        failures.append({"group": "A5", "reason": "maximum ratio is not exactly 4/15",
                         "max_ratio": by_name["A5"]["max_ratio"]})
    for name in ("S5", "L2(7)", "PGL2(7)", "A6"):
        r = Fraction(by_name[name]["max_ratio"]["num"], by_name[name]["max_ratio"]["den"])
        if r > SOLVABILITY_BOUND:
            failures.append({"group": name, "reason": "maximum ratio exceeds 4/15",
                             "max_ratio": by_name[name]["max_ratio"]})
    for row in rows:
        r = Fraction(row["max_ratio"]["num"], row["max_ratio"]["den"])
        if r > SOLVABILITY_BOUND and not row["solvable"]:
            failures.append({"group": row["group"],
                             "reason": "ratio above 4/15 on an insolvable group",
                             "max_ratio": row["max_ratio"]})
    return {
        "suite": "solvability-boundary",
        "order_cap": order_cap,
        "seed": seed,
        "rows": rows,
        "failures": failures,
        "pass": not failures,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
    }


# ---------------------------------------------------------------------------
# Maximum abelian subgroup table


def verify_abelian_indices(qs=(5, 7, 9, 8, 11, 13), budget: int = 2_000_000,
                  jobs: int = 1, seed: int = 0) -> dict:
    """Indices of maximum abelian subgroups in the small projective
    simple groups, against the expected column."""
    from .builders import psl2
    started = time.monotonic()
    rows = []
    failures = []
    for q in qs:
        group = psl2(q)
        result = max_abelian_subgroup_order(group, budget=budget)
        index = group.order // result.size
        expected = EXPECTED_ABELIAN_INDEX[q]
        row = {
            "q": q,
            "order": group.order,
            "max_abelian": result.size,
            "index": index,
            "expected_index": expected,
            "exact": result.exact,
            "nodes": result.nodes,
        }
        rows.append(row)
        if not result.exact or index != expected:
            failures.append(row)
    return {
        "suite": "max-abelian-indices",
        "seed": seed,
        "rows": rows,
        "failures": failures,
        "pass": not failures,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
    }


# ---------------------------------------------------------------------------
# Commutation-pattern search for other exponents


KNOWN_COMMUTING_EXPONENTS = (-2, -1, 2, 3)


def pattern_witness(group: FiniteGroup, members, mask, n: int) -> tuple:
    """First (a, b) in the member set with ab and a^n b also members
    yet [a, b] != 1, plus the count of pattern-complete pairs scanned."""
    t = group.table
    comm = group.commuting_masks
    power_n = tuple(group.pow(a, n) for a in range(group.order))
    pairs = 0
    witness = None
    for a in members:
        an = power_n[a]
        row = t[a]
        comm_a = comm[a]
        for b in members:
            if not (mask >> row[b]) & 1:
                continue
            if not (mask >> t[an][b]) & 1:
                continue
            pairs += 1
            if witness is None and not (comm_a >> b) & 1:
                witness = (a, b)
    return witness, pairs


def power_pattern_search(n: int, catalog: Optional[Catalog] = None,
                    order_cap: int = 24, jobs: int = 1, cache_dir=None,
                    use_cache: bool = True, rebuild: bool = False,
                    seed: int = 0) -> dict:
    """Search all (G, alpha, a, b) in scope for a, b, ab, a^n b all in
    the cube set with [a, b] != 1.

    Returns the first witness in deterministic order, or a coverage
    record. This is an experiment: absence of a witness at this scope
    is data, not a theorem.
    """
    started = time.monotonic()
    cat = catalog if catalog is not None else built_in_catalog()
    counterexample = None
    pairs_scanned = 0
    groups_scanned = 0
    for name, group in cat.groups(order_cap=order_cap):
        groups_scanned += 1
        ctx = GroupContext(group, name)
        auts = automorphism_group(group, cache_dir=cache_dir,
                                  use_cache=use_cache, rebuild=rebuild)
        for member in auts.members:
            img = member.images
            members, mask = _cube_members(ctx, img)
            witness, pairs = pattern_witness(group, members, mask, n)
            pairs_scanned += pairs
            if witness is not None and counterexample is None:
                counterexample = {
                    "group": name, "alpha": list(img),
                    "a": witness[0], "b": witness[1], "n": n,
                }
        if counterexample:
            break
    return {
        "suite": "power-pattern-search",
        "n": n,
        "order_cap": order_cap,
        "seed": seed,
        "known_commuting_pattern": n in KNOWN_COMMUTING_EXPONENTS,
        "groups_scanned": groups_scanned,
        "pairs_scanned": pairs_scanned,
        "counterexample": counterexample,
        "elapsed_ms": int((time.monotonic() - started) * 1000),
    }
