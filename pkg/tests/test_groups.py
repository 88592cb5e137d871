import json

import pytest
from hypothesis import given, settings, strategies as st

from cubeaut import builders
from cubeaut.errors import (
    CapExceeded,
    FileFormatError,
    GroupTableError,
    NoIdentity,
    NoInverse,
    NotASubgroup,
    NotNormal,
    UnsupportedParameter,
)
from cubeaut.groups import (
    FiniteGroup,
    abelian_basis,
    from_cayley_table,
    from_permutation_generators,
    group_to_json,
    load_group_file,
    load_group_json,
    max_abelian_subgroup_order,
)


# ---------------------------------------------------------------------------
# Construction and validation


def test_trivial_group():
    g = from_cayley_table([[0]])
    assert g.order == 1
    assert g.is_abelian


def test_order_two():
    g = from_cayley_table([[0, 1], [1, 0]])
    assert g.order == 2
    assert g.inv(1) == 1


def test_non_latin_row_rejected():
    with pytest.raises((NoInverse, GroupTableError)):
        from_cayley_table([[0, 1], [1, 1]])


def test_out_of_range_entry_rejected():
    with pytest.raises(GroupTableError):
        from_cayley_table([[0, 1], [1, 2]])


def test_no_identity_rejected():
    # Latin square with no two-sided identity element
    with pytest.raises(NoIdentity):
        from_cayley_table([[0, 1, 2], [2, 0, 1], [1, 2, 0]])


def test_identity_elsewhere_is_relabeled():
    g = from_cayley_table([[1, 0], [0, 1]])  # Z2 with identity at index 1
    assert g.relabeling == (1, 0)
    assert g.table == ((0, 1), (1, 0))


def test_identity_relabeled_to_zero():
    # Z3 written with the identity at index 1
    z3 = builders.cyclic(3)
    sigma = [1, 0, 2]
    scrambled = [[0] * 3 for _ in range(3)]
    for a in range(3):
        for b in range(3):
            scrambled[sigma[a]][sigma[b]] = sigma[z3.table[a][b]]
    g = from_cayley_table(scrambled)
    assert g.relabeling is not None
    assert g.table == z3.table


def test_associativity_witness():
    # break one entry of Z5 far enough to dodge the Latin checks
    table = [[(a + b) % 5 for b in range(5)] for a in range(5)]
    table[2] = [3, 4, 1, 2, 0]  # still a permutation, identity column intact?
    table[2][0] = 2  # keep column 0 and row 0 identity-consistent
    try:
        from_cayley_table(table)
    except GroupTableError:
        pass
    else:
        pytest.fail("corrupted table accepted")


def test_light_test_matches_brute_on_corruption():
    # a 48-element Latin square with broken associativity must be rejected
    # by the generating-set path exactly like the cubic loop
    base = builders.dihedral(24)
    rows = [list(r) for r in base.table]
    # swap two entries inside one row, keeping it a permutation
    r = rows[5]
    r[7], r[11] = r[11], r[7]
    with pytest.raises(GroupTableError):
        FiniteGroup(rows)
    with pytest.raises(GroupTableError):
        FiniteGroup(rows, strict=True)


def test_strict_mode_accepts_valid_large_group():
    g = FiniteGroup(builders.dihedral(30).table, strict=True)
    assert g.order == 60


# ---------------------------------------------------------------------------
# Permutation closure


def test_s3_from_generators():
    g = from_permutation_generators([[1, 2, 0], [1, 0, 2]], 3, cap=10)
    assert g.order == 6
    assert not g.is_abelian


def test_cyclic_from_single_cycle():
    g = from_permutation_generators([[1, 2, 3, 0]], 4, cap=10)
    assert g.order == 4
    assert g.is_abelian


def test_empty_generators_give_trivial_group():
    g = from_permutation_generators([], 5, cap=10)
    assert g.order == 1


def test_closure_cap_enforced():
    with pytest.raises(CapExceeded):
        from_permutation_generators([[1, 2, 0], [1, 0, 2]], 3, cap=3)


def test_bad_generator_rejected():
    with pytest.raises(UnsupportedParameter):
        from_permutation_generators([[0, 0, 1]], 3, cap=10)


# ---------------------------------------------------------------------------
# Builders


@pytest.mark.parametrize("build, order", [
    (lambda: builders.cyclic(1), 1),
    (lambda: builders.cyclic(12), 12),
    (lambda: builders.dihedral(3), 6),
    (lambda: builders.dihedral(17), 34),
    (lambda: builders.quaternion8(), 8),
    (lambda: builders.symmetric(4), 24),
    (lambda: builders.symmetric(6), 720),
    (lambda: builders.alternating(5), 60),
    (lambda: builders.type3_group_i(1), 8),
    (lambda: builders.type3_group_i(2), 32),
    (lambda: builders.type3_group_ii(), 64),
])
def test_builder_orders(build, order):
    assert build().order == order


@pytest.mark.parametrize("q, order", [
    (2, 6), (3, 12), (4, 60), (5, 60), (7, 168), (8, 504), (9, 360),
    (11, 660), (13, 1092),
])
def test_psl2_orders(q, order):
    assert builders.psl2(q).order == order


@pytest.mark.parametrize("q, order", [(3, 24), (5, 120), (7, 336)])
def test_pgl2_orders(q, order):
    assert builders.pgl2(q).order == order


def test_unsupported_parameters():
    with pytest.raises(UnsupportedParameter):
        builders.dihedral(2)
    with pytest.raises(UnsupportedParameter):
        builders.symmetric(9)
    with pytest.raises(UnsupportedParameter):
        builders.psl2(6)
    with pytest.raises(UnsupportedParameter):
        builders.type3_group_i(0)


def test_direct_product_structure():
    g = builders.direct_product(builders.cyclic(3), builders.symmetric(3))
    assert g.order == 18
    assert not g.is_abelian
    assert g.center.order == 3


def test_semidirect_product_validates_action():
    c3 = builders.cyclic(3)
    c2 = builders.cyclic(2)
    inversion = [0, 2, 1]
    g = builders.semidirect_product(c3, c2, [[0, 1, 2], inversion])
    assert g.order == 6
    assert not g.is_abelian  # this is S3
    with pytest.raises(UnsupportedParameter):
        builders.semidirect_product(c3, c2, [[0, 1, 2], [1, 2, 0]])  # not order 2


def test_type3_group_structure():
    g1 = builders.type3_group_i(1)
    assert g1.derived_subgroup.order == 2
    assert not g1.is_abelian
    g2 = builders.type3_group_i(2)
    assert g2.center.order == 2
    assert g2.nilpotency_class == 2
    gii = builders.type3_group_ii()
    derived = gii.derived_subgroup
    assert derived.order == 4
    assert all(gii.element_orders[d] <= 2 for d in derived.elements)
    assert gii.order // gii.center.order == 16


# ---------------------------------------------------------------------------
# Structural queries


def test_element_orders_and_exponent():
    q8 = builders.quaternion8()
    assert sorted(q8.element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert q8.exponent == 4
    assert builders.cyclic(12).exponent == 12


def test_center_and_centralizer():
    d4 = builders.dihedral(4)
    assert d4.center.order == 2
    a5 = builders.alternating(5)
    assert a5.center.order == 1
    x = next(x for x in a5.elements() if a5.element_orders[x] == 5)
    assert a5.centralizer(x).order == 5


def test_normalizer_contains_subgroup():
    s4 = builders.symmetric(4)
    syl = s4.sylow(2)
    norm = s4.normalizer(syl)
    assert set(syl.elements) <= set(norm.elements)


def test_containment_invariants():
    for build in (lambda: builders.symmetric(4), lambda: builders.dihedral(6),
                  lambda: builders.quaternion8()):
        g = build()
        assert g.order % g.center.order == 0
        for x in g.elements():
            generated = set(g.subgroup_generated([x]).elements)
            assert generated <= set(g.centralizer(x).elements)
        for sub in g.normal_subgroups:
            assert set(sub.elements) <= set(g.normalizer(sub).elements)


def test_series_iff_properties():
    for build in (lambda: builders.symmetric(4), lambda: builders.alternating(5),
                  lambda: builders.cyclic(12), lambda: builders.dihedral(5)):
        g = build()
        assert (g.derived_series[-1].order == 1) == g.is_solvable
        if g.order > 1:
            assert (g.nilpotency_class == 1) == g.is_abelian


def test_cosets_partition():
    s4 = builders.symmetric(4)
    sub = s4.sylow(3)
    reps, cosets = s4.right_cosets(sub)
    assert len(reps) == 8
    assert sorted(x for c in cosets for x in c) == list(range(24))
    assert reps[0] == 0


def test_derived_series_and_solvability():
    s4 = builders.symmetric(4)
    assert s4.is_solvable
    assert len(s4.derived_series) == 4  # S4 > A4 > V4 > 1
    a5 = builders.alternating(5)
    assert not a5.is_solvable
    assert a5.derived_series[-1].order == 60


def test_nilpotency():
    assert builders.quaternion8().nilpotency_class == 2
    assert builders.cyclic(9).nilpotency_class == 1
    assert builders.cyclic(1).nilpotency_class == 0
    assert builders.symmetric(3).nilpotency_class is None
    assert builders.dihedral(8).nilpotency_class == 3


def test_quotient():
    a4 = builders.alternating(4)
    v4 = a4.sylow(2)
    q, proj = a4.quotient(v4)
    assert q.order == 3
    # projection is a homomorphism onto the factor group
    for a in a4.elements():
        for b in a4.elements():
            assert proj[a4.table[a][b]] == q.table[proj[a]][proj[b]]


def test_quotient_requires_normal():
    s3 = builders.symmetric(3)
    sub = next(s3.subgroup_generated([x]) for x in s3.elements()
               if s3.element_orders[x] == 2)
    with pytest.raises(NotNormal):
        s3.quotient(sub)


def test_subgroup_validation():
    s3 = builders.symmetric(3)
    with pytest.raises(NotASubgroup):
        s3.subgroup([0, 1])  # not closed unless 1 has order 2 with no products
    with pytest.raises(NotASubgroup):
        s3.subgroup([1, 2])  # missing identity


@pytest.mark.parametrize("build, p, expected", [
    (lambda: builders.symmetric(4), 2, 8),
    (lambda: builders.symmetric(4), 3, 3),
    (lambda: builders.alternating(5), 2, 4),
    (lambda: builders.alternating(5), 5, 5),
    (lambda: builders.cyclic(12), 2, 4),
    (lambda: builders.cyclic(12), 3, 3),
    (lambda: builders.cyclic(12), 5, 1),
    (lambda: builders.psl2(7), 2, 8),
    (lambda: builders.psl2(7), 7, 7),
])
def test_sylow_orders(build, p, expected):
    group = build()
    assert group.sylow(p).order == expected


def test_sylow_order_is_exact_p_part():
    for build in (lambda: builders.symmetric(5), lambda: builders.dihedral(12)):
        group = build()
        for p in (2, 3, 5):
            n = group.order
            p_part = 1
            while n % p == 0:
                p_part *= p
                n //= p
            assert group.sylow(p).order == p_part


def test_normal_subgroups():
    s4 = builders.symmetric(4)
    orders = sorted(sub.order for sub in s4.normal_subgroups)
    assert orders == [1, 4, 12, 24]
    a5 = builders.alternating(5)
    assert sorted(s.order for s in a5.normal_subgroups) == [1, 60]


@pytest.mark.parametrize("q", [5, 7, 8, 9, 11, 13])
def test_psl2_simple(q):
    group = builders.psl2(q)
    assert sorted(s.order for s in group.normal_subgroups) == [1, group.order]


def test_conjugacy_classes():
    s3 = builders.symmetric(3)
    sizes = sorted(len(c) for c in s3.conjugacy_classes)
    assert sizes == [1, 2, 3]
    assert sum(len(c) for c in builders.alternating(5).conjugacy_classes) == 60


def test_abelian_basis_reconstructs_group():
    for build in (lambda: builders.cyclic(12),
                  lambda: builders.direct_product(builders.cyclic(2), builders.cyclic(4)),
                  lambda: builders.direct_product(
                      builders.direct_product(builders.cyclic(2), builders.cyclic(2)),
                      builders.cyclic(9))):
        group = build()
        basis = abelian_basis(group)
        total = 1
        for b in basis:
            total *= group.element_orders[b]
        assert total == group.order
        assert len(group.closure(basis)) == group.order


# ---------------------------------------------------------------------------
# Maximum abelian subgroup (oracle values from the full subgroup lattice)


@pytest.mark.parametrize("build, expected", [
    (lambda: builders.alternating(4), 4),
    (lambda: builders.symmetric(4), 4),
    (lambda: builders.dihedral(6), 6),
    (lambda: builders.quaternion8(), 4),
    (lambda: builders.alternating(5), 5),
    (lambda: builders.dihedral(4), 4),
    (lambda: builders.type3_group_i(2), 8),
    (lambda: builders.cyclic(12), 12),
])
def test_max_abelian_subgroup(build, expected):
    group = build()
    result = max_abelian_subgroup_order(group)
    assert result.exact
    assert result.size == expected
    witness = result.witness
    assert witness.is_abelian
    assert witness.order == expected


def test_max_abelian_budget_flag():
    group = builders.symmetric(4)
    result = max_abelian_subgroup_order(group, budget=2)
    assert not result.exact
    assert result.size >= 4  # greedy seeding already finds a cyclic witness


# ---------------------------------------------------------------------------
# File formats


def test_group_json_roundtrip(tmp_path):
    g = builders.dihedral(5)
    path = tmp_path / "d5.json"
    path.write_text(json.dumps(group_to_json(g)))
    loaded = load_group_file(path)
    assert loaded.table == g.table
    assert loaded.name == "D5"


def test_generator_format(tmp_path):
    path = tmp_path / "s3gen.json"
    path.write_text(json.dumps({"degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}))
    assert load_group_file(path).order == 6


def test_file_errors_carry_locations():
    with pytest.raises(FileFormatError) as info:
        load_group_json({"order": 2, "table": [[0, 1], [1, 7]]})
    assert "table[1][1]" in str(info.value)
    with pytest.raises(FileFormatError) as info:
        load_group_json({"degree": 3, "generators": [[0, 0, 1]]})
    assert "generators[0]" in str(info.value)
    with pytest.raises(FileFormatError):
        load_group_json({"widgets": 3})


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{\n  broken")
    with pytest.raises(FileFormatError) as info:
        load_group_file(path)
    assert "line" in str(info.value)


# ---------------------------------------------------------------------------
# Properties


@given(n=st.integers(min_value=1, max_value=30), m=st.integers(min_value=1, max_value=12))
@settings(max_examples=25, deadline=None)
def test_direct_product_properties(n, m):
    g = builders.direct_product(builders.cyclic(n), builders.cyclic(m))
    assert g.order == n * m
    assert g.is_abelian
    import math
    assert g.exponent == math.lcm(n, m)


@given(st.integers(min_value=2, max_value=40))
@settings(max_examples=20, deadline=None)
def test_cyclic_structure(n):
    g = builders.cyclic(n)
    assert g.element_orders[1 % n] == n if n > 1 else True
    assert g.center.order == n
    assert g.nilpotency_class == (1 if n > 1 else 0)


@given(st.integers(min_value=3, max_value=20))
@settings(max_examples=15, deadline=None)
def test_dihedral_structure(n):
    g = builders.dihedral(n)
    assert g.order == 2 * n
    assert g.center.order == (2 if n % 2 == 0 else 1)
    assert g.is_solvable
    reps, cosets = g.right_cosets(g.subgroup_generated([1]))
    assert len(reps) == 2
