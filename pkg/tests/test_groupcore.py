"""Permutation engine: arithmetic, enumeration, conjugacy classes, relator
checking, model constructions, the fusion oracle, and class matching."""

import pytest

from classfusion.data import load_table
from classfusion.groupcore import (
    Permutation,
    PermGroup,
    ResourceLimit,
    WordSyntaxError,
    alternating_group,
    build_affine,
    build_projective,
    check_relators,
    evaluate_word,
    fusion_oracle,
    match_classes,
    model_11sq_5x2a5,
    model_7sq_sl2_7,
    model_l2_19_2,
    parse_word,
    symmetric_group,
    translation_subgroup_gens,
)


# ----------------------------------------------------------------------
# permutations


def test_permutation_basics():
    p = Permutation.from_cycles(4, [(0, 1, 2)])
    q = Permutation.from_cycles(4, [(2, 3)])
    assert (p * q).images == (1, 3, 0, 2)  # apply p, then q
    assert p.inverse() * p == Permutation.identity(4)
    assert p.order() == 3 and q.order() == 2
    assert (p ** -1) == p.inverse()
    assert p ** 3 == Permutation.identity(4)
    assert repr(q) == "(2 3)"


def test_permutation_rejects_non_bijections():
    with pytest.raises(ValueError):
        Permutation([0, 0, 1])


def test_conjugation():
    p = Permutation.from_cycles(5, [(0, 1)])
    g = Permutation.from_cycles(5, [(0, 2)])
    assert p.conjugate_by(g) == Permutation.from_cycles(5, [(2, 1)])


# ----------------------------------------------------------------------
# enumeration and classes


def test_a5_enumeration_and_classes():
    a5 = alternating_group(5)
    assert a5.order == 60
    sizes = sorted(c.size for c in a5.conjugacy_classes())
    assert sizes == [1, 12, 12, 15, 20]


def test_enumeration_bound():
    s5 = symmetric_group(5)
    with pytest.raises(ResourceLimit):
        s5.enumerate(bound=50)


def test_class_of_rejects_outsiders():
    a5 = alternating_group(5)
    with pytest.raises(ValueError):
        a5.class_of(Permutation.from_cycles(5, [(0, 1)]))


def test_deterministic_class_order():
    g1 = alternating_group(5)
    g2 = alternating_group(5)
    assert [
        (c.order, c.size, c.rep.images) for c in g1.conjugacy_classes()
    ] == [(c.order, c.size, c.rep.images) for c in g2.conjugacy_classes()]


# ----------------------------------------------------------------------
# relator words


def test_parse_word_grammar():
    assert parse_word("a2", 2) == (0, 0)
    assert parse_word("(ba)3", 2) == (1, 0) * 3
    assert parse_word("(ab2)4", 2) == (0, 1, 1) * 4
    assert parse_word("A2", 2) == (~0, ~0)
    assert parse_word("(ab)3A2", 2) == (0, 1) * 3 + (~0, ~0)


@pytest.mark.parametrize("bad", ["", "a)", "(ab", "a0x", "z2", "2a", "a(-)"])
def test_parse_word_rejects_malformed(bad):
    with pytest.raises(WordSyntaxError):
        parse_word(bad, 2)


def test_check_relators_empty_list_passes():
    gens = [Permutation.from_cycles(3, [(0, 1)])]
    assert check_relators(gens, []).ok


def test_check_relators_reports_first_failure():
    a = Permutation.from_cycles(5, [(0, 1, 2)])
    b = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
    report = check_relators([a, b], ["a3", "b5", "a2"])
    assert not report.ok
    assert report.failed_index == 2 and report.failed_relator == "a2"


def test_a5_presentation():
    # a2 = b3 = (ab)5 = 1 with a generating pair found by brute force
    a5 = alternating_group(5)
    a5.enumerate()
    relators = ["a2", "b3", "(ab)5"]
    found = None
    for eb in sorted(a5.elements_bytes()):
        a = Permutation(eb)
        if a.order() != 2:
            continue
        for fb in sorted(a5.elements_bytes()):
            b = Permutation(fb)
            if b.order() == 3 and check_relators([a, b], relators).ok:
                sub = PermGroup(5, [a, b])
                if sub.order == 60:
                    found = (a, b)
                    break
        if found:
            break
    assert found is not None


def test_evaluate_word_inverse():
    b = Permutation.from_cycles(5, [(0, 1, 2, 3, 4)])
    assert evaluate_word([b], "aA").is_identity()
    assert evaluate_word([b], "a4A4").is_identity()


# ----------------------------------------------------------------------
# model builders


def test_affine_models():
    g7 = build_affine(7, [[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
    assert g7.order == 49 * 336
    tiny = build_affine(2, [])
    assert tiny.order == 4
    with pytest.raises(ValueError):
        build_affine(7, [[[1, 1], [2, 2]]])  # singular


def test_projective_models():
    assert build_projective(11, False).order == 660
    assert build_projective(19, True).order == 6840
    s3ish = build_projective(2, False)
    assert s3ish.order == 6  # PSL(2,2) is the symmetric group on 3 points
    with pytest.raises(ValueError):
        build_projective(29, True)


def test_pgl19_satisfies_published_presentation():
    pgl = model_l2_19_2()
    b = pgl.gens[0]
    assert b.order() == 19
    pgl.enumerate()
    ok = any(
        check_relators([Permutation(eb), b],
                       ["a2", "b19", "(ab2)4", "(abab2)3"]).ok
        for eb in sorted(pgl.elements_bytes())
        if Permutation(eb).order() == 2
    )
    assert ok


def test_11sq_model_structure():
    g = model_11sq_5x2a5()
    assert g.order == 72600
    # generator layout: two translations, the order-5 scalar, the two
    # linear generators of the 2A5 part
    t1, t2, scalar, m1, m2 = g.gens
    assert scalar.order() == 5
    # the scalar is central in the linear part
    for m in (m1, m2):
        assert scalar * m == m * scalar
    # the 2A5 part has a central involution: the square of its order-4 gen
    two_a5 = PermGroup(121, [m1, m2])
    assert two_a5.order == 120
    x4 = m2 if m2.order() == 4 else m1
    z = x4 * x4
    assert z.order() == 2
    for m in (m1, m2):
        assert z * m == m * z


def test_7sq_model_has_nine_order7_classes():
    g = model_7sq_sl2_7()
    assert sum(1 for c in g.conjugacy_classes() if c.order == 7) == 9


# ----------------------------------------------------------------------
# fusion oracle


def test_oracle_a5_in_s5():
    s5 = symmetric_group(5)
    a5 = alternating_group(5)
    fo = fusion_oracle(s5, a5)
    s5_classes = s5.conjugacy_classes()
    five_images = {
        fo[i]
        for i, c in enumerate(a5.conjugacy_classes())
        if c.order == 5
    }
    assert len(five_images) == 1
    assert s5_classes[five_images.pop()].order == 5


def test_oracle_trivial_subgroup():
    s4 = symmetric_group(4)
    triv = PermGroup(4, [Permutation.identity(4)])
    assert fusion_oracle(s4, triv) == (0,)


def test_oracle_7sq_purity():
    g = model_7sq_sl2_7()
    sub = PermGroup(49, translation_subgroup_gens(7))
    fo = fusion_oracle(g, sub)
    classes = g.conjugacy_classes()
    image_orders = {classes[i].order for i in fo}
    assert image_orders == {1, 7}
    # all 48 non-trivial translations land in a single class
    assert len({classes[i] for i in fo if classes[i].order == 7}) == 1


def test_oracle_requires_containment():
    odd = PermGroup(4, [Permutation.from_cycles(4, [(0, 1, 2, 3)])])
    a4 = alternating_group(4)
    with pytest.raises(ValueError):
        fusion_oracle(a4, odd)


# ----------------------------------------------------------------------
# class matching


def test_match_classes_s5():
    m = match_classes(symmetric_group(5), load_table("S5"))
    assert not m.ambiguous_cells


def test_match_classes_a5_reports_ambiguity():
    m = match_classes(alternating_group(5), load_table("A5"))
    amb = m.ambiguous_cells
    assert len(amb) == 1
    model_ids, table_ids = amb[0]
    assert len(model_ids) == 2  # the two order-5 classes


def test_match_classes_rejects_wrong_table():
    with pytest.raises(ValueError):
        match_classes(symmetric_group(4), load_table("A5"))


def test_7sq_model_matching_reports_residual_ambiguity():
    # the six order-7 classes with centralizer order 49 are only fixed up
    # to a table automorphism; the matcher reports the ambiguity instead of
    # resolving it
    g = model_7sq_sl2_7()
    table = load_table("7^2:2psl(2,7)")
    m = match_classes(g, table)
    amb = m.ambiguous_cells
    assert amb, "expected residual ambiguity"
    sizes = sorted(len(cell[0]) for cell in amb)
    total_ambiguous = sum(sizes)
    cent49 = [
        j for j, c in enumerate(table.classes)
        if c.order == 7 and c.centralizer == 49
    ]
    ambiguous_table_ids = {j for _, t_ids in amb for j in t_ids}
    assert set(cent49) <= ambiguous_table_ids
    assert total_ambiguous >= 6
