"""Group completion, K0 groups and classes, tensor products, the
external pairing, and the ring structure on product forms."""

import itertools

import pytest

from moritacat.completion import ProjObject, zero_proj_object
from moritacat.homotopy import (
    class_of_functor,
    ho_add,
    ho_compose,
    ho_identity,
    ho_morphism,
    hom_monoid,
)
from moritacat.ktheory import (
    GcMorphism,
    K0Group,
    NotCommutativeProductForm,
    gc_add,
    gc_compose,
    gc_identity,
    gc_inverse,
    gc_is_iso,
    gc_morphism,
    gc_negate,
    gc_subtract,
    gc_zero,
    group_complete,
    group_complete_monoid,
    is_commutative_product_form,
    k0,
    k0_class,
    k0_map,
    k0_pairing,
    k0_ring,
    tensor,
    tensor_category,
)
from moritacat.scalar import ExactMatrix, kron, matrix
from moritacat.semisimple import are_morita_equivalent, decompose
from moritacat.starcat import (
    coproduct_of_grounds,
    disjoint_union,
    ground_category,
    matrix_category,
    star_category,
    zero_category,
)

GROUND = ground_category()
TWO_POINTS = coproduct_of_grounds(2)
M2 = matrix_category(2)

F_GROUND = decompose(GROUND).form
F_TWO = decompose(TWO_POINTS).form


def embedded(small, total, offset):
    rows = [[0] * total for _ in range(total)]
    for i in range(small.rows):
        for j in range(small.cols):
            rows[offset + i][offset + j] = small.entry(i, j)
    return matrix(rows)


def m2_plus_m3():
    """One object with endomorphisms M2 (+) M3 inside M5."""
    basis = []
    for i in range(2):
        for j in range(2):
            e = ExactMatrix.zeros(2, 2) + matrix(
                [[1 if (r, c) == (i, j) else 0 for c in range(2)] for r in range(2)]
            )
            basis.append(embedded(e, 5, 0))
    for i in range(3):
        for j in range(3):
            e = matrix(
                [[1 if (r, c) == (i, j) else 0 for c in range(3)] for r in range(3)]
            )
            basis.append(embedded(e, 5, 2))
    return star_category([("x", 5)], {("x", "x"): basis})


def diag_category():
    return star_category(
        [("x", 2)],
        {("x", "x"): [matrix([[1, 0], [0, 0]]), matrix([[0, 0], [0, 1]])]},
    )


# --- group completion of morphisms -------------------------------------


def test_completion_embeds_the_monoid():
    f = ho_morphism(F_TWO, F_TWO, [[1, 2], [0, 3]])
    assert group_complete(f).mult == f.mult
    assert group_complete(f).is_effective()


def test_completion_of_zero_is_zero():
    assert group_complete(
        ho_morphism(F_GROUND, F_TWO, [[0], [0]])
    ) == gc_zero(F_GROUND, F_TWO)


def test_group_law():
    f = group_complete(ho_morphism(F_GROUND, F_TWO, [[2], [5]]))
    assert gc_add(f, gc_negate(f)) == gc_zero(F_GROUND, F_TWO)
    assert not gc_negate(f).is_effective()


def test_integer_entries_enforced():
    with pytest.raises(ValueError):
        GcMorphism(F_GROUND, F_GROUND, ((1.5,),))
    with pytest.raises(ValueError):
        gc_morphism(F_GROUND, F_TWO, [[1]])


def test_gc_identity_neutral():
    f = gc_morphism(F_TWO, F_TWO, [[1, -2], [0, 4]])
    assert gc_compose(gc_identity(F_TWO), f) == f
    assert gc_compose(f, gc_identity(F_TWO)) == f


def test_gc_composition_is_integer_matrix_product():
    f = gc_morphism(F_GROUND, F_TWO, [[2], [-1]])
    g = gc_morphism(F_TWO, F_GROUND, [[1, 3]])
    assert gc_compose(g, f).mult == ((-1,),)


def test_completion_commutes_with_composition_and_sum():
    f = ho_morphism(F_GROUND, F_TWO, [[1], [2]])
    f2 = ho_morphism(F_GROUND, F_TWO, [[0], [3]])
    g = ho_morphism(F_TWO, F_TWO, [[1, 1], [2, 0]])
    assert group_complete(ho_compose(g, f)) == gc_compose(
        group_complete(g), group_complete(f)
    )
    assert group_complete(ho_add(f, f2)) == gc_add(
        group_complete(f), group_complete(f2)
    )


def test_z_linear_extension_on_differences():
    # The unique extension to formal differences agrees with integer
    # matrix algebra: g composed with (f1 - f2) is g f1 - g f2.
    f1 = ho_morphism(F_GROUND, F_TWO, [[3], [1]])
    f2 = ho_morphism(F_GROUND, F_TWO, [[1], [2]])
    g = ho_morphism(F_TWO, F_TWO, [[1, 1], [0, 2]])
    diff = gc_subtract(group_complete(f1), group_complete(f2))
    assert gc_compose(group_complete(g), diff) == gc_subtract(
        group_complete(ho_compose(g, f1)), group_complete(ho_compose(g, f2))
    )
    assert diff.mult == ((2,), (-1,))


def test_gc_iso_detection():
    assert gc_is_iso(gc_identity(F_TWO))
    assert not gc_is_iso(gc_morphism(F_GROUND, F_GROUND, [[2]]))
    shear = gc_morphism(F_TWO, F_TWO, [[1, 1], [0, 1]])
    assert gc_is_iso(shear)
    inv = gc_inverse(shear)
    assert inv.mult == ((1, -1), (0, 1))
    assert gc_compose(inv, shear) == gc_identity(F_TWO)
    assert not gc_is_iso(gc_morphism(F_GROUND, F_TWO, [[1], [0]]))


def test_gc_inverse_rejects_non_iso():
    with pytest.raises(ValueError):
        gc_inverse(gc_morphism(F_GROUND, F_GROUND, [[3]]))


def test_hom_group_completion():
    grp = group_complete_monoid(hom_monoid(F_GROUND, F_TWO))
    assert grp.rank == 2
    assert grp.shape == (2, 1)
    f = ho_morphism(F_GROUND, F_TWO, [[1], [4]])
    g = ho_morphism(F_GROUND, F_TWO, [[2], [1]])
    assert grp.difference(f, g).mult == ((-1,), (3,))
    with pytest.raises(ValueError):
        grp.complete(ho_identity(F_TWO))


# --- K0 groups ---------------------------------------------------------


def test_k0_of_the_point():
    g = k0(GROUND)
    assert g.rank == 1
    assert g.class_of("x") == (1,)
    assert g.generators == ((1,),)


def test_k0_of_the_zero_category():
    g = k0(zero_category())
    assert g.rank == 0
    assert g.class_of("z") == ()
    assert g.generators == ()


def test_k0_of_m2_plus_m3():
    g = k0(m2_plus_m3())
    assert g.rank == 2
    assert g.class_of("x") == (2, 3)


def test_k0_cone_and_elements():
    g = k0(TWO_POINTS)
    assert g.is_element((3, -2)) and not g.in_cone((3, -2))
    assert g.in_cone((0, 4))
    assert not g.is_element((1,))
    assert g.object_classes == (("x1", (1, 0)), ("x2", (0, 1)))


def test_k0_is_the_co_represented_group():
    g = k0(m2_plus_m3())
    assert g.monoid.shape == (2, 1)
    assert g.monoid.source_form == decompose(GROUND).form


def test_k0_additivity_on_disjoint_unions():
    union = disjoint_union(M2, TWO_POINTS)
    g = k0(union)
    assert g.rank == 3
    assert g.class_of("x") == (2, 0, 0)
    assert g.class_of("x1") == (0, 1, 0)
    assert g.class_of("x2") == (0, 0, 1)


# --- K0 classes of projections -----------------------------------------


def test_zero_projection_class():
    assert k0_class(GROUND, zero_proj_object()) == (0,)
    p = ProjObject(("x", "x"), ExactMatrix.zeros(2, 2))
    assert k0_class(GROUND, p) == (0,)


def test_rank_three_in_a_length_three_word():
    p = ProjObject(("x", "x", "x"), ExactMatrix.identity(3))
    assert k0_class(GROUND, p) == (3,)


def test_class_is_additive_on_direct_sums():
    d = diag_category()
    p = ProjObject(("x",), matrix([[1, 0], [0, 0]]))
    q = ProjObject(("x",), matrix([[1, 0], [0, 1]]))
    direct_sum = ProjObject(
        ("x", "x"),
        matrix(
            [
                [1, 0, 0, 0],
                [0, 0, 0, 0],
                [0, 0, 1, 0],
                [0, 0, 0, 1],
            ]
        ),
    )
    assert k0_class(d, direct_sum) == tuple(
        a + b for a, b in zip(k0_class(d, p), k0_class(d, q))
    )


def test_class_invariant_under_unitary_conjugation():
    u = matrix([["3/5", "4/5"], ["-4/5", "3/5"]])
    assert u @ u.adjoint() == ExactMatrix.identity(2)
    p = ProjObject(("x", "x"), ExactMatrix.diagonal([1, 0]))
    conj = ProjObject(("x", "x"), u @ p.proj @ u.adjoint())
    assert k0_class(GROUND, conj) == k0_class(GROUND, p) == (1,)


def test_class_invariant_under_corner_inclusion():
    p = ProjObject(("x",), ExactMatrix.identity(1))
    corner = ProjObject(("x", "x", "x"), ExactMatrix.diagonal([1, 0, 0]))
    assert k0_class(GROUND, corner) == k0_class(GROUND, p)


def test_invalid_projection_rejected():
    with pytest.raises(ValueError):
        k0_class(GROUND, ProjObject(("x",), matrix([[2]])))
    with pytest.raises(ValueError):
        k0_class(GROUND, ProjObject(("x", "x"), matrix([[0, 1], [0, 0]])))


# --- naturality and Morita invariance ----------------------------------


def test_functor_induces_integer_matrix():
    ok, witness = are_morita_equivalent(M2, GROUND)
    assert ok
    induced = k0_map(witness)
    assert induced.mult == ((1,),)
    assert gc_is_iso(induced)


def test_morita_witness_induces_permutation():
    ok, witness = are_morita_equivalent(diag_category(), TWO_POINTS)
    assert ok
    induced = k0_map(witness)
    assert gc_is_iso(induced)
    assert sorted(e for row in induced.mult for e in row) == [0, 0, 1, 1]
    assert gc_inverse(induced).mult == tuple(
        zip(*induced.mult)
    )  # permutation inverse = transpose


# --- tensor products ---------------------------------------------------


def test_tensor_with_the_point_preserves_shape():
    form = decompose(m2_plus_m3()).form
    t = tensor(form, F_GROUND)
    assert t.k == form.k
    assert [c for _, c in t.object_classes] == [c for _, c in form.object_classes]


def test_tensor_of_point_sets_multiplies():
    t = tensor(decompose(coproduct_of_grounds(2)).form,
               decompose(coproduct_of_grounds(3)).form)
    assert t.k == 6
    classes = dict(t.object_classes)
    assert classes["(x1,x1)"] == (1, 0, 0, 0, 0, 0)
    assert classes["(x2,x3)"] == (0, 0, 0, 0, 0, 1)
    for c in classes.values():
        assert sum(c) == 1


def test_tensor_of_matrix_algebras_is_one_block():
    m3 = matrix_category(3)
    t = tensor(decompose(M2).form, decompose(m3).form)
    assert t.k == 1
    assert dict(t.object_classes)["(x,x)"] == (6,)


def test_concrete_kronecker_realization_decomposes_to_the_form():
    m3 = matrix_category(3)
    concrete = tensor_category(M2, m3)
    assert concrete.dim("(x,x)") == 6
    d = decompose(concrete)
    assert d.form.k == 1
    assert d.object_mult["(x,x)"] == (6,)


def test_concrete_tensor_matches_form_tensor_on_mixed_input():
    concrete = tensor_category(TWO_POINTS, m2_plus_m3())
    d = decompose(concrete)
    t = tensor(F_TWO, decompose(m2_plus_m3()).form)
    assert d.form.k == t.k == 4
    assert sorted(d.object_mult.values()) == sorted(c for _, c in t.object_classes)


# --- the external pairing ----------------------------------------------


def test_pairing_of_units():
    assert k0_pairing(k0(GROUND), (1,), k0(GROUND), (1,)) == (1,)


def test_pairing_is_the_kronecker_product():
    ga, gb = k0(TWO_POINTS), k0(GROUND)
    assert k0_pairing(ga, (1, 2), gb, (3,)) == (3, 6)


def test_pairing_with_zero():
    ga, gb = k0(TWO_POINTS), k0(TWO_POINTS)
    assert k0_pairing(ga, (0, 0), gb, (5, 7)) == (0, 0, 0, 0)


def test_pairing_is_biadditive():
    ga, gb = k0(TWO_POINTS), k0(TWO_POINTS)
    a1, a2, b = (1, -2), (0, 3), (2, 1)
    left = k0_pairing(ga, tuple(x + y for x, y in zip(a1, a2)), gb, b)
    split = tuple(
        x + y
        for x, y in zip(k0_pairing(ga, a1, gb, b), k0_pairing(ga, a2, gb, b))
    )
    assert left == split


def test_pairing_rank_mismatch():
    with pytest.raises(ValueError):
        k0_pairing(k0(TWO_POINTS), (1,), k0(GROUND), (1,))


def test_pairing_agrees_with_kronecker_projections():
    # Representative projections: kron of class (1,2) over two points
    # with class (2,) over the point, inside the concrete tensor.
    concrete = tensor_category(TWO_POINTS, GROUND)
    p = ExactMatrix.diagonal([1, 1, 1])  # word (x1, x2, x2)
    q = ExactMatrix.diagonal([1, 1, 0])  # word (x, x, x), class 2
    pair_word = tuple(
        f"({a},x)" for a in ("x1", "x2", "x2") for _ in range(3)
    )
    pq = ProjObject(pair_word, kron(p, q))
    got = k0_class(concrete, pq)
    # compare against the form-level pairing up to block ordering
    expected = k0_pairing(k0(TWO_POINTS), (1, 2), k0(GROUND), (2,))
    assert sorted(got) == sorted(expected)
    assert sum(got) == sum(expected) == 6


# --- the ring structure ------------------------------------------------


def test_recognition_of_product_forms():
    assert is_commutative_product_form(GROUND)
    assert is_commutative_product_form(TWO_POINTS)
    assert is_commutative_product_form(diag_category())
    assert is_commutative_product_form(zero_category())
    assert not is_commutative_product_form(M2)
    assert not is_commutative_product_form(m2_plus_m3())


def test_single_point_ring_is_the_integers():
    ring = k0_ring(GROUND)
    assert ring.rank == 1
    assert ring.unit() == (1,)
    assert ring.multiply((3,), (-4,)) == (-12,)


def test_three_point_ring_is_pointwise():
    ring = k0_ring(coproduct_of_grounds(3))
    assert ring.multiply((1, 2, 3), (2, 0, 1)) == (2, 0, 3)
    assert ring.unit() == (1, 1, 1)


def test_unit_law():
    ring = k0_ring(coproduct_of_grounds(3))
    for b in [(0, 0, 0), (1, 2, 3), (-1, 5, 0)]:
        assert ring.multiply(ring.unit(), b) == b
        assert ring.multiply(b, ring.unit()) == b


def test_ring_on_single_object_product_form():
    ring = k0_ring(diag_category())
    assert ring.rank == 2
    assert ring.multiply((2, 3), (1, -1)) == (2, -3)


def test_ring_multiplication_class_is_the_diagonal_selector():
    ring = k0_ring(TWO_POINTS)
    assert ring.multiplication_class.shape == (2, 4)
    assert ring.multiplication_class.mult == ((1, 0, 0, 0), (0, 0, 0, 1))


def test_ring_rejected_on_matrix_blocks():
    with pytest.raises(NotCommutativeProductForm):
        k0_ring(M2)
    with pytest.raises(NotCommutativeProductForm):
        k0_ring(disjoint_union(M2, GROUND))


def test_ring_is_commutative_and_associative():
    ring = k0_ring(coproduct_of_grounds(3))
    a, b, c = (1, 2, 3), (2, 0, 1), (-1, 1, 4)
    assert ring.multiply(a, b) == ring.multiply(b, a)
    assert ring.multiply(ring.multiply(a, b), c) == ring.multiply(
        a, ring.multiply(b, c)
    )


# --- the amplification oracle ------------------------------------------


def diagonal_classes(cat, max_length):
    """All K0 classes realized by 0/1-diagonal projections on words of
    bounded length."""
    out = set()
    names = list(cat.object_names())
    for length in range(max_length + 1):
        for word in itertools.product(names, repeat=length):
            total = sum(cat.dim(x) for x in word)
            for bits in itertools.product((0, 1), repeat=total):
                proj = (
                    ExactMatrix.diagonal(list(bits))
                    if total
                    else ExactMatrix.zeros(0, 0)
                )
                out.add(k0_class(cat, ProjObject(tuple(word), proj)))
    return out


def test_k0_agrees_with_amplification_enumeration():
    # Direct projection enumeration in amplifications of bounded size
    # realizes exactly the truncated positive cone, whose differences
    # generate the co-represented K0 group.
    cat = m2_plus_m3()
    classes = diagonal_classes(cat, 2)
    assert classes == {
        (c1, c2) for c1 in range(5) for c2 in range(7)
    }  # word length 2: up to 2 copies of (2, 3) split arbitrarily
    g = k0(cat)
    assert g.class_of("x") in classes
    for gen in g.generators:
        assert gen in classes  # each generator is an honest class
    assert all(g.in_cone(c) for c in classes)


def test_k0_amplification_oracle_on_the_point():
    classes = diagonal_classes(GROUND, 3)
    assert classes == {(0,), (1,), (2,), (3,)}
