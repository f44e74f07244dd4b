import itertools

import numpy as np
import pytest

from cayley_spectra.exceptions import NotAGroup, OrderCapExceeded, ParseError
from cayley_spectra.groups import (
    cyclic,
    dihedral,
    direct_product,
    from_mul_table,
    parse_family,
    quaternion8,
    symmetric,
)

import oracles


def test_trivial_group():
    g = from_mul_table([[0]])
    assert g.order == 1
    assert g.identity == 0


def test_z4_table():
    g = from_mul_table([[(a + b) % 4 for b in range(4)] for a in range(4)])
    assert g.order == 4
    assert g.inverse(1) == 3


@pytest.mark.parametrize(
    "table, reason",
    [
        ([[1, 1], [1, 0]], "no-identity"),
        ([[0, 1, 2], [1, 2, 2], [2, 2, 1]], "missing-inverse"),
        ([[0, 1, 2], [1, 0, 2], [2, 2, 0]], "not-latin-square"),
    ],
)
def test_table_rejections(table, reason):
    with pytest.raises(NotAGroup) as err:
        from_mul_table(table)
    assert err.value.reason == reason


def test_non_associative_latin_square():
    # a loop of order 5 that is a latin square with identity and inverses
    table = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 4, 0, 1, 3],
        [3, 2, 4, 0, 1],
        [4, 3, 1, 2, 0],
    ]
    with pytest.raises(NotAGroup) as err:
        from_mul_table(table)
    assert err.value.reason == "non-associative"


def test_no_identity_row():
    table = [[1, 0], [0, 0]]
    with pytest.raises(NotAGroup, match="no-identity"):
        from_mul_table(table)


def test_builtin_families():
    assert cyclic(5).inverse(2) == 3
    s3 = symmetric(3)
    assert s3.order == 6
    assert sum(s3.element_order(x) == 3 for x in range(6)) == 2
    d4 = dihedral(4)
    assert d4.order == 8
    brute_center = [z for z in range(8) if all(d4.product(z, x) == d4.product(x, z) for x in range(8))]
    assert list(d4.center().members) == brute_center
    assert len(brute_center) == 2


def test_dihedral_matches_permutation_model():
    for n in range(3, 9):
        want = oracles.perm_group_table(oracles.dihedral_perms(n))
        assert np.array_equal(dihedral(n).mul, np.array(want))


def test_symmetric_matches_permutation_model():
    for k in (3, 4):
        perms = list(itertools.permutations(range(k)))
        assert np.array_equal(symmetric(k).mul, np.array(oracles.perm_group_table(perms)))


def test_quaternion_relations():
    q = quaternion8()
    one, minus_one, i, j, k = 0, 1, 2, 4, 6
    for x in (i, j, k):
        assert q.product(x, x) == minus_one
    assert q.product(i, j, k) == minus_one
    assert q.center().members == (one, minus_one)
    assert not q.is_abelian()
    # every subgroup of Q8 contains -1, so no subgroup of order 2 except the center
    assert all(q.element_order(x) == 4 for x in (2, 3, 4, 5, 6, 7))


def test_direct_product_indexing():
    g = direct_product(cyclic(2), cyclic(3))
    assert g.order == 6
    assert g.is_abelian()
    # (1, 2) * (1, 2) = (0, 1)
    assert g.product(1 * 3 + 2, 1 * 3 + 2) == 0 * 3 + 1
    assert g.name == "product:cyclic:2+cyclic:3"


def test_conjugation():
    z6 = cyclic(6)
    assert all(z6.conjugate(g, x) == g for g in range(6) for x in range(6))
    s3 = symmetric(3)
    transpositions = {x for x in range(6) if s3.element_order(x) == 2}
    three_cycles = {x for x in range(6) if s3.element_order(x) == 3}
    for t in transpositions:
        for c in three_cycles:
            assert s3.conjugate(t, c) in transpositions
    d4 = dihedral(4)
    r = 1
    for ref in range(4, 8):
        assert d4.conjugate(r, ref) == d4.inverse(r)


def test_subgroup_closure():
    z8 = cyclic(8)
    assert z8.subgroup_closure([2]) == [0, 2, 4, 6]
    assert z8.subgroup_closure([1, 7]).members == tuple(range(8))
    s3 = symmetric(3)
    t = next(x for x in range(6) if s3.element_order(x) == 2)
    assert len(s3.subgroup_closure([t])) == 2
    assert set(s3.subgroup_closure([t]).members) == oracles.closure(s3.mul.tolist(), [t])


def test_generates():
    assert not cyclic(6).generates([2, 4])
    assert cyclic(6).generates([1, 5])
    assert dihedral(3).generates([3, 4, 5])


@pytest.mark.parametrize("spec", ["cyclic:5", "cyclic:4", "symmetric:3", "dihedral:4", "quaternion8",
                                  "product:cyclic:2+cyclic:4", "dihedral:6"])
def test_index_two_matches_brute_force(spec):
    g = parse_family(spec)
    got = sorted(set(h.members) for h in g.index_two_subgroups())
    want = sorted(oracles.index_two_brute(g.mul.tolist()))
    assert [sorted(x) for x in got] == [sorted(x) for x in want]


def test_index_two_examples():
    assert cyclic(5).index_two_subgroups() == []
    assert [h.members for h in cyclic(4).index_two_subgroups()] == [(0, 2)]
    s3 = symmetric(3)
    (alt,) = s3.index_two_subgroups()
    assert set(alt.members) == {x for x in range(6) if s3.element_order(x) in (1, 3)}


def test_minimal_generating_check():
    assert cyclic(5).minimal_generating_check([1, 4])
    assert not cyclic(8).minimal_generating_check([1, 4, 7])
    # two reflections of D3 generate the whole group
    assert not dihedral(3).minimal_generating_check([3, 4, 5])


def test_parse_family_errors():
    with pytest.raises(ParseError):
        parse_family("klein:4")
    with pytest.raises(ParseError):
        parse_family("cyclic:x")
    with pytest.raises(ParseError):
        parse_family("product:cyclic:2")
    with pytest.raises(OrderCapExceeded):
        parse_family("symmetric:8")
