from fractions import Fraction

import numpy as np
import pytest

from cayley_spectra.cheeger import (
    cheeger_exact,
    edge_boundary_count,
    edge_cheeger_exact,
    expander_epsilon,
    sweep_upper_bound,
    vertex_boundary,
    vertex_cheeger_exact,
)
from cayley_spectra.exceptions import Disconnected, TooLarge
from cayley_spectra.graphs import CountGraph, build_cayley, build_cayley_sum, build_pair_multigraph
from cayley_spectra.groups import cyclic, parse_family
from cayley_spectra.sampling import enumerate_sets
from cayley_spectra.spectra import eig_symmetric, fiedler_vector

import oracles

K4 = build_cayley(cyclic(4), [1, 2, 3])
C4 = build_cayley(cyclic(4), [1, 3])
Z5_SUM = build_cayley_sum(cyclic(5), [1, 4])


def test_vertex_boundary_examples():
    assert vertex_boundary(C4, [0]) == [1, 3]
    assert vertex_boundary(C4, [0, 2]) == [1, 3]
    assert vertex_boundary(K4, [0, 1]) == [2, 3]


def test_edge_boundary_examples():
    assert edge_boundary_count(C4, [0, 1]) == 2
    assert edge_boundary_count(K4, [0]) == 3
    # the loop at 3 stays inside
    assert edge_boundary_count(Z5_SUM, [1, 3]) == 1


def test_exact_examples():
    v, e = cheeger_exact(K4)
    assert (v.value, v.subset) == (1, (0, 1))
    assert e.value == Fraction(2, 3)
    v, e = cheeger_exact(Z5_SUM)
    assert (v.value, v.subset) == (Fraction(1, 2), (1, 3))
    assert Fraction(1, 4) <= e.value <= Fraction(1, 2)
    assert vertex_cheeger_exact(C4).value == 1
    assert edge_cheeger_exact(C4).value == Fraction(1, 2)


def test_expander_epsilon():
    assert expander_epsilon(K4) == 1
    assert expander_epsilon(Z5_SUM) == Fraction(1, 2)
    assert expander_epsilon(build_cayley(cyclic(2), [1])) == 1


def test_guards():
    with pytest.raises(TooLarge):
        cheeger_exact(build_cayley(cyclic(30), [1, 29]))
    blocks = CountGraph(4, 1, np.array([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]]), "cayley")
    with pytest.raises(Disconnected):
        cheeger_exact(blocks)
    v, e = cheeger_exact(blocks, require_connected=False)
    assert v.value == e.value == 0 and v.subset == (0, 1)


def _small_instances():
    for spec in ["cyclic:5", "cyclic:6", "cyclic:8", "dihedral:3", "dihedral:4", "quaternion8",
                 "product:cyclic:2+cyclic:4", "dihedral:5", "cyclic:12", "dihedral:6"]:
        g = parse_family(spec)
        for s in list(enumerate_sets(g, 4))[:4]:
            yield f"{spec}/{s}", g, s


@pytest.mark.parametrize("label, group, s", list(_small_instances()), ids=lambda x: x if isinstance(x, str) else "")
def test_matches_naive_enumeration(label, group, s):
    for graph in (build_cayley(group, s), build_cayley_sum(group, s)):
        (hv, wv), (he, we) = oracles.naive_cheeger(graph.counts)
        v, e = cheeger_exact(graph)
        assert (v.value, v.subset) == (hv, wv)
        assert (e.value, e.subset) == (he, we)


def test_pair_multigraph_matches_naive():
    pair = build_pair_multigraph(cyclic(6), [1, 5])
    (hv, wv), (he, we) = oracles.naive_cheeger(pair.counts)
    v, e = cheeger_exact(pair, require_connected=False)
    assert (v.value, v.subset, e.value, e.subset) == (hv, wv, he, we)


def test_sweep_contract():
    for graph in (K4, C4, Z5_SUM, build_cayley(parse_family("dihedral:5"), [1, 4, 5])):
        f = fiedler_vector(eig_symmetric(graph))
        v_exact, e_exact = cheeger_exact(graph)
        for kind, exact in (("vertex", v_exact), ("edge", e_exact)):
            sweep = sweep_upper_bound(graph, f, kind)
            assert sweep.value >= exact.value
            assert 1 <= len(sweep.subset) <= graph.n // 2
    assert sweep_upper_bound(K4, fiedler_vector(eig_symmetric(K4)), "vertex").value == 1


def test_sweep_rejects_bad_kind():
    with pytest.raises(ValueError):
        sweep_upper_bound(K4, np.zeros(4), "volume")
