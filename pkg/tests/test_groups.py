import itertools

import pytest

from cohomkit.groups import (
    FiniteGroup,
    GroupFormatError,
    GroupHom,
    catalog_labels,
    closure,
    direct_product,
    enumerate_surjections,
    from_label,
    generating_set,
    opposite_group,
    sylow_all_cyclic,
    sylow_subgroup,
)


def brute_force_surjection_count(source: FiniteGroup,
                                 target: FiniteGroup) -> int:
    """Try every map fixing the identity.  Exponential, tiny inputs only."""
    n, m = source.order, target.order
    count = 0
    for images in itertools.product(range(m), repeat=n - 1):
        full = (0,) + images
        if len(set(full)) < m:
            continue
        if all(full[source.mul(a, b)] == target.mul(full[a], full[b])
               for a in range(n) for b in range(n)):
            count += 1
    return count


def test_table_validation_rejects_garbage():
    with pytest.raises(GroupFormatError):
        FiniteGroup.from_table("bad", [[0, 1], [1, 1]])  # not a bijection row
    with pytest.raises(GroupFormatError):
        FiniteGroup.from_table("bad", [[1, 0], [0, 1]])  # 0 not identity
    with pytest.raises(GroupFormatError):
        FiniteGroup.from_table("bad", [[0, 1], [1, 2]])  # out of range
    # smallest non-associative latin square with identity has order 5
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(GroupFormatError):
        FiniteGroup.from_table("bad", table)


def test_known_orders_and_inverses():
    c6 = from_label("cyclic:6")
    assert c6.order == 6
    assert [c6.element_order(x) for x in c6.elements()] == [1, 6, 3, 2, 3, 6]
    d4 = from_label("dihedral:4")
    assert d4.order == 8
    assert sorted(d4.element_order(x) for x in d4.elements()) == [1, 2, 2, 2, 2, 2, 4, 4]
    q8 = from_label("quaternion:8")
    assert sorted(q8.element_order(x) for x in q8.elements()) == [1, 2, 4, 4, 4, 4, 4, 4]
    s4 = from_label("sym:4")
    assert s4.order == 24
    for g in (c6, d4, q8, s4):
        for x in g.elements():
            assert g.mul(x, g.inv(x)) == 0
            assert g.mul(g.inv(x), x) == 0


def test_from_label_rejects_unknown():
    for label in ("cyclic:0", "frobenius:20", "sym:", "product:cyclic:2",
                  "elem:4^2", "dihedral:1"):
        with pytest.raises(GroupFormatError):
            from_label(label)


def test_catalog_contents():
    labels = catalog_labels(12)
    assert len(labels) == 46
    assert labels == sorted(labels, key=lambda s: (from_label(s).order, s))
    assert "cyclic:1" in labels and "cyclic:12" in labels
    assert "quaternion:8" in labels and "sym:3" in labels
    assert "product:cyclic:2 x cyclic:2" in labels
    assert "elem:2^3" in labels
    bigger = catalog_labels(16)
    assert len(bigger) == 74
    assert set(labels) <= set(bigger)
    for label in bigger:
        g = from_label(label)
        assert g.order <= 16
        assert g.name == label


def test_direct_product_structure():
    a = from_label("cyclic:2")
    b = from_label("sym:3")
    g = direct_product(a, b)
    assert g.order == 12
    # element (i, j) lives at index i * |b| + j
    for i1, j1, i2, j2 in itertools.product(range(2), range(6), repeat=2):
        left = i1 * 6 + j1
        right = i2 * 6 + j2
        expect = a.mul(i1, i2) * 6 + b.mul(j1, j2)
        assert g.mul(left, right) == expect


def test_closure_and_generators():
    d4 = from_label("dihedral:4")
    assert closure(d4, []) == frozenset({0})
    assert closure(d4, range(d4.order)) == frozenset(d4.elements())
    gens = generating_set(d4)
    assert closure(d4, gens) == frozenset(d4.elements())
    assert len(gens) <= 3
    c12 = from_label("cyclic:12")
    assert len(generating_set(c12)) == 1


def test_hom_validation():
    c4 = from_label("cyclic:4")
    c2 = from_label("cyclic:2")
    GroupHom(c4, c2, (0, 1, 0, 1))
    with pytest.raises(GroupFormatError):
        GroupHom(c4, c2, (0, 1, 1, 0))  # not multiplicative
    with pytest.raises(GroupFormatError):
        GroupHom(c4, c2, (1, 0, 1, 0))  # identity not fixed
    with pytest.raises(GroupFormatError):
        GroupHom(c4, c2, (0, 1, 0))  # wrong length
    ident = GroupHom.identity(c4)
    assert ident.is_surjective()
    assert [ident(x) for x in c4.elements()] == list(c4.elements())


@pytest.mark.parametrize("source,target", [
    ("cyclic:4", "cyclic:2"),
    ("cyclic:6", "cyclic:3"),
    ("cyclic:6", "cyclic:6"),
    ("dihedral:4", "cyclic:2"),
    ("dihedral:4", "product:cyclic:2 x cyclic:2"),
    ("quaternion:8", "product:cyclic:2 x cyclic:2"),
    ("sym:3", "cyclic:2"),
    ("product:cyclic:2 x cyclic:2", "cyclic:2"),
    ("cyclic:4", "product:cyclic:2 x cyclic:2"),
    ("sym:3", "cyclic:3"),
])
def test_surjection_enumeration_matches_brute_force(source, target):
    src = from_label(source)
    tgt = from_label(target)
    homs = enumerate_surjections(src, tgt)
    assert len(homs) == brute_force_surjection_count(src, tgt)
    seen = set()
    for h in homs:
        assert h.source is src and h.target is tgt
        assert h.is_surjective()
        seen.add(h.images)
    assert len(seen) == len(homs)


def test_surjection_counts_frozen():
    v4 = from_label("product:cyclic:2 x cyclic:2")
    assert len(enumerate_surjections(from_label("dihedral:4"), v4)) == 6
    assert len(enumerate_surjections(from_label("cyclic:8"), v4)) == 0
    assert len(enumerate_surjections(v4, v4)) == 6
    c2 = from_label("cyclic:2")
    assert len(enumerate_surjections(from_label("sym:4"), c2)) == 1


def test_sylow_subgroups():
    s4 = from_label("sym:4")
    syl2 = sylow_subgroup(s4, 2)
    assert len(syl2) == 8
    assert closure(s4, syl2) == syl2
    syl3 = sylow_subgroup(s4, 3)
    assert len(syl3) == 3
    c12 = from_label("cyclic:12")
    assert len(sylow_subgroup(c12, 2)) == 4
    assert len(sylow_subgroup(c12, 3)) == 3
    # a prime not dividing the order yields the trivial subgroup
    assert sylow_subgroup(s4, 5) == frozenset({0})


def test_sylow_all_cyclic_flags():
    assert sylow_all_cyclic(from_label("cyclic:12"))
    assert sylow_all_cyclic(from_label("sym:3"))
    assert sylow_all_cyclic(from_label("dihedral:5"))
    assert not sylow_all_cyclic(from_label("dihedral:4"))
    assert not sylow_all_cyclic(from_label("product:cyclic:2 x cyclic:2"))
    assert not sylow_all_cyclic(from_label("sym:4"))


def test_opposite_group():
    for label in ("sym:3", "dihedral:4", "quaternion:8", "cyclic:6"):
        g = from_label(label)
        op = opposite_group(g)
        for a, b in itertools.product(g.elements(), repeat=2):
            assert op.mul(a, b) == g.mul(b, a)
        opop = opposite_group(op)
        assert opop.table == g.table
