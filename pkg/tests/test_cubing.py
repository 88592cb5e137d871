from fractions import Fraction

import pytest

from cubeaut import builders
from cubeaut.automorphisms import (
    enumerate_automorphisms,
    identity_map,
    power_map,
)
from cubeaut.catalog import frobenius20, heisenberg27, special_linear_2_3
from cubeaut.cubing import (
    HALF,
    Kind,
    build_type_I,
    build_type_II,
    build_type_III,
    classify_cubing_structure,
    coset_trace,
    cube_set,
    find_type3_decomposition,
    max_cube_ratio,
)
from cubeaut.errors import (
    BadIndex,
    KNotAbelian,
    NotAbelian,
    NotAutomorphism,
    OrderDivisibleBy3,
    PreconditionViolated,
    XInK,
)


# ---------------------------------------------------------------------------
# Cube sets


def test_a5_identity_ratio():
    a5 = builders.alternating(5)
    report = cube_set(a5, identity_map(a5))
    assert report.ratio == Fraction(4, 15)
    assert len(report.members) == 16  # identity plus the 15 involutions
    assert all(a5.element_orders[x] in (1, 2) for x in report.members)


def test_abelian_cube_map_full_ratio():
    for build in (lambda: builders.cyclic(5),
                  lambda: builders.direct_product(builders.cyclic(4), builders.cyclic(4))):
        g = build()
        report = cube_set(g, power_map(g, 3))
        assert report.ratio == 1


def test_cyclic3_both_automorphisms():
    z3 = builders.cyclic(3)
    ratios = {cube_set(z3, m).ratio for m in enumerate_automorphisms(z3).members}
    assert ratios == {Fraction(1, 3)}


def test_cube_set_invariants():
    g = builders.symmetric(4)
    for m in enumerate_automorphisms(g).members:
        report = cube_set(g, m, trusted=True)
        members = set(report.members)
        assert 0 in members
        assert all(g.inv(x) in members for x in members)


def test_cube_set_rejects_non_automorphism():
    s3 = builders.symmetric(3)
    with pytest.raises(NotAutomorphism):
        cube_set(s3, power_map(s3, 2))


def test_generic_power_cube_set():
    # exponent -1: fixed points of inversion-composed maps
    q8 = builders.quaternion8()
    report = cube_set(q8, identity_map(q8), n=-1)
    assert set(report.members) == {x for x in q8.elements()
                                   if q8.element_orders[x] <= 2}
    # cubing equals inversion on elements of 2-power order
    for m in enumerate_automorphisms(q8).members:
        assert cube_set(q8, m, n=3, trusted=True).members == \
            cube_set(q8, m, n=-1, trusted=True).members


@pytest.mark.parametrize("build, expected", [
    (lambda: builders.symmetric(3), Fraction(2, 3)),
    (lambda: builders.quaternion8(), Fraction(3, 4)),
    (lambda: builders.dihedral(4), Fraction(3, 4)),
    (lambda: builders.alternating(4), Fraction(1, 3)),
    (lambda: builders.cyclic(9), Fraction(1, 9)),
])
def test_max_cube_ratio(build, expected):
    ratio, witness = max_cube_ratio(build())
    assert ratio == expected
    assert witness is not None


def test_max_ratio_witness_is_lex_least():
    g = builders.cyclic(5)
    ratio, witness = max_cube_ratio(g)
    assert ratio == 1
    # the cube map is the unique maximizer here
    assert witness.images == tuple(g.pow(x, 3) for x in g.elements())


# ---------------------------------------------------------------------------
# Coset traces


def test_trace_of_x_inside_h():
    z12 = builders.cyclic(12)
    alpha = identity_map(z12)
    report = cube_set(z12, alpha)
    h = z12.subgroup_generated([6])  # {0, 6} inside T for the identity map
    assert set(h.elements) <= set(report.members)
    trace = coset_trace(z12, alpha, h, 6)
    assert trace.quotient_order == 1
    assert trace.trace == (0,)


def test_trace_contains_zero_and_coset_sizes():
    a5 = builders.alternating(5)
    alpha = identity_map(a5)
    members = cube_set(a5, alpha).members
    involution = next(x for x in members if x != 0)
    h = a5.subgroup_generated([involution])
    other = next(x for x in members if x not in set(h.elements) and x != 0)
    trace = coset_trace(a5, alpha, h, other)
    assert 0 in trace.trace
    assert trace.cyclic
    raw = sum(1 for u in h.elements if a5.table[u][other] in set(members))
    assert raw == len(trace.trace) * trace.centralizer_order


def test_trace_precondition_errors():
    s3 = builders.symmetric(3)
    alpha = identity_map(s3)
    rotations = s3.subgroup_generated(
        [next(x for x in s3.elements() if s3.element_orders[x] == 3)])
    # the 3-cycles are not in T for the identity map
    with pytest.raises(PreconditionViolated):
        coset_trace(s3, alpha, rotations, 0)


def test_trace_on_s3_type_ii():
    s3 = builders.symmetric(3)
    verdict = classify_cubing_structure(s3)
    alpha = verdict.constructed_alpha
    members = set(cube_set(s3, alpha, trusted=True).members)
    reflection = next(x for x in members if s3.element_orders[x] == 2)
    trivial = s3.subgroup([0])
    trace = coset_trace(s3, alpha, trivial, reflection)
    assert trace.trace == (0,)
    assert trace.quotient_order == 1


# ---------------------------------------------------------------------------
# Constructors


def test_type_i():
    z5 = builders.cyclic(5)
    alpha = build_type_I(z5)
    assert cube_set(z5, alpha).ratio == 1
    trivial = builders.cyclic(1)
    assert cube_set(trivial, build_type_I(trivial)).ratio == 1
    with pytest.raises(OrderDivisibleBy3):
        build_type_I(builders.cyclic(6))
    with pytest.raises(NotAbelian):
        build_type_I(builders.symmetric(3))


def test_type_ii_on_s3():
    s3 = builders.symmetric(3)
    k = s3.subgroup_generated(
        [next(x for x in s3.elements() if s3.element_orders[x] == 3)])
    x = next(g for g in s3.elements() if g not in k)
    alpha, ratio = build_type_II(s3, k, x)
    assert ratio == Fraction(2, 3)
    report = cube_set(s3, alpha, trusted=True)
    assert report.ratio == ratio
    expected = {s3.table[kk][x] for kk in k.elements} | {0}
    assert set(report.members) == expected


def test_type_ii_on_d5():
    # order 10, coprime to 3: abelian index-2 subgroup suffices
    d5 = builders.dihedral(5)
    k = d5.subgroup_generated([1])
    x = 5
    alpha, ratio = build_type_II(d5, k, x)
    assert ratio == Fraction(3, 5)  # n = (K : C_K(x)) = 5


def test_type_ii_errors():
    s3 = builders.symmetric(3)
    k = s3.subgroup_generated(
        [next(x for x in s3.elements() if s3.element_orders[x] == 3)])
    with pytest.raises(XInK):
        build_type_II(s3, k, k.elements[1])
    with pytest.raises(BadIndex):
        build_type_II(s3, s3.subgroup([0]), 1)
    d6 = builders.dihedral(6)
    nonabelian = d6.subgroup_generated([2, 6])  # S3 inside D6
    assert nonabelian.order == 6
    with pytest.raises(KNotAbelian):
        build_type_II(d6, nonabelian, 1)


def test_type_ii_center_condition():
    # Z3 x S3: the Sylow 3-subgroup meets the center, so no construction
    g = builders.direct_product(builders.cyclic(3), builders.symmetric(3))
    verdict = classify_cubing_structure(g)
    assert verdict.kind == Kind.NONE
    ratio, _ = max_cube_ratio(g)
    assert ratio <= HALF


def test_type_iii_constructions():
    for build, k, expected in [
        (lambda: builders.type3_group_i(1), 1, Fraction(3, 4)),
        (lambda: builders.type3_group_i(2), 2, Fraction(5, 8)),
        (lambda: builders.type3_group_i(3), 3, Fraction(9, 16)),
    ]:
        g = build()
        dec, reason = find_type3_decomposition(g)
        assert dec is not None, reason
        assert dec.shape == "i"
        assert len(dec.x_elements) == k
        alpha, ratio = build_type_III(g, dec)
        assert ratio == expected
        assert cube_set(g, alpha, trusted=True).ratio == expected


def test_type_iii_shape_ii_exact_ratio():
    g = builders.type3_group_ii()
    dec, reason = find_type3_decomposition(g)
    assert dec is not None, reason
    assert dec.shape == "ii"
    alpha, ratio = build_type_III(g, dec)
    # measured exactly, and exhaustively maximal over Aut(G)
    assert ratio == Fraction(9, 16)
    brute, _ = max_cube_ratio(g)
    assert brute == ratio


def test_find_decomposition_on_q8():
    dec, _ = find_type3_decomposition(builders.quaternion8())
    assert dec is not None
    assert dec.shape == "i"
    assert len(dec.x_elements) == 1


def test_find_decomposition_rejects_elementary_abelian():
    g = builders.direct_product(
        builders.direct_product(builders.cyclic(2), builders.cyclic(2)),
        builders.cyclic(2))
    dec, reason = find_type3_decomposition(g)
    assert dec is None
    assert "abelian" in reason


def test_find_decomposition_rejects_class_three():
    dec, reason = find_type3_decomposition(builders.dihedral(8))
    assert dec is None


def test_type_iii_validates_order():
    with pytest.raises(OrderDivisibleBy3):
        build_type_III(builders.direct_product(builders.cyclic(3), builders.quaternion8()),
                       ((), ()))


# ---------------------------------------------------------------------------
# Classification


@pytest.mark.parametrize("build, kind, ratio", [
    (lambda: builders.cyclic(5), Kind.TYPE_I, Fraction(1)),
    (lambda: builders.cyclic(1), Kind.TYPE_I, Fraction(1)),
    (lambda: builders.cyclic(9), Kind.NONE, None),
    (lambda: builders.symmetric(3), Kind.TYPE_II, Fraction(2, 3)),
    (lambda: builders.dihedral(4), Kind.TYPE_III_I, Fraction(3, 4)),
    (lambda: builders.dihedral(8), Kind.TYPE_II, Fraction(5, 8)),
    (lambda: builders.dihedral(9), Kind.TYPE_II, Fraction(5, 9)),
    (lambda: builders.quaternion8(), Kind.TYPE_III_I, Fraction(3, 4)),
    (lambda: builders.alternating(4), Kind.NONE, None),
    (lambda: builders.symmetric(4), Kind.NONE, None),
    (lambda: builders.type3_group_i(2), Kind.TYPE_III_I, Fraction(5, 8)),
    (lambda: builders.type3_group_ii(), Kind.TYPE_III_II, Fraction(9, 16)),
    (lambda: heisenberg27(), Kind.NONE, None),
    (lambda: special_linear_2_3(), Kind.NONE, None),
    (lambda: frobenius20(), Kind.NONE, None),
])
def test_classification(build, kind, ratio):
    verdict = classify_cubing_structure(build())
    assert verdict.kind == kind
    assert verdict.predicted_ratio == ratio
    if kind != Kind.NONE:
        assert verdict.constructed_alpha is not None


def test_classification_equivalence_on_slice():
    groups = [builders.cyclic(n) for n in range(1, 16)]
    groups += [builders.dihedral(n) for n in range(3, 8)]
    groups += [builders.quaternion8(), builders.alternating(4),
               builders.symmetric(4), builders.type3_group_i(1)]
    for g in groups:
        verdict = classify_cubing_structure(g)
        brute, _ = max_cube_ratio(g)
        assert (verdict.kind != Kind.NONE) == (brute > HALF), g.name
        if verdict.kind != Kind.NONE:
            assert verdict.predicted_ratio == brute, g.name


def test_verdict_json():
    verdict = classify_cubing_structure(builders.symmetric(3))
    payload = verdict.to_json()
    assert payload["kind"] == "TypeII"
    assert payload["predicted_ratio"] == {"num": 2, "den": 3}
    assert "K" in payload["witnesses"]


def test_relabeling_invariance():
    """Conjugating the table by a permutation fixing 0 must not change
    the automorphism count, the maximum ratio, or the verdict kind."""
    import random
    from cubeaut.groups import from_cayley_table

    rng = random.Random(99)
    for build in (lambda: builders.symmetric(3), lambda: builders.dihedral(4),
                  lambda: builders.cyclic(10), lambda: builders.quaternion8()):
        g = build()
        n = g.order
        sigma = [0] + rng.sample(range(1, n), n - 1)
        table = [[0] * n for _ in range(n)]
        for a in range(n):
            for b in range(n):
                table[sigma[a]][sigma[b]] = sigma[g.table[a][b]]
        relabeled = from_cayley_table(table)
        assert enumerate_automorphisms(relabeled).order == \
            enumerate_automorphisms(g).order
        assert max_cube_ratio(relabeled)[0] == max_cube_ratio(g)[0]
        assert classify_cubing_structure(relabeled).kind == classify_cubing_structure(g).kind


def test_quotient_ratio_inequality_instances():
    # the cube ratio of the group never beats an invariant factor group
    from cubeaut.automorphisms import induced_on_quotient
    s3 = builders.symmetric(3)
    verdict = classify_cubing_structure(s3)
    alpha = verdict.constructed_alpha
    sylow3 = s3.sylow(3)
    assert {alpha.images[x] for x in sylow3.elements} == set(sylow3.elements)
    induced = induced_on_quotient(alpha, sylow3)
    whole = cube_set(s3, alpha, trusted=True).ratio
    factor = cube_set(induced.source, induced, trusted=True).ratio
    assert whole <= factor
    assert factor == 1
