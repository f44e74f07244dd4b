"""Property-based tests of the structural invariants."""

from fractions import Fraction

import numpy as np
from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from cayley_spectra.bounds import (
    SHARP_TABLE,
    aexists_quantities,
    check_cheeger_buser,
    dichotomy_quantities,
    main_gap,
    sharp_gap,
)
from cayley_spectra.cheeger import cheeger_exact
from cayley_spectra.exceptions import NoValidSet
from cayley_spectra.graphs import (
    CountGraph,
    build_cayley,
    build_cayley_sum,
    build_pair_multigraph,
    is_bipartite_bfs,
    is_connected_bfs,
    sum_relation_counts,
)
from cayley_spectra.groups import parse_family
from cayley_spectra.sampling import atoms, gen
from cayley_spectra.spectra import eig_symmetric

import oracles

FAMILIES = ["cyclic:5", "cyclic:6", "cyclic:8", "cyclic:9", "dihedral:3", "dihedral:4", "dihedral:5",
            "quaternion8", "product:cyclic:2+cyclic:3", "product:cyclic:2+cyclic:4", "symmetric:3"]
GROUPS = {f: parse_family(f) for f in FAMILIES}

SETTINGS = settings(max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])


@st.composite
def conj_closed_instance(draw):
    fam = draw(st.sampled_from(FAMILIES))
    g = GROUPS[fam]
    d = draw(st.integers(2, min(g.order - 1, 6)))
    seed = draw(st.integers(0, 10_000))
    try:
        s = gen(g, d, ("conjugation_closed",), seed=seed, attempts=20)
    except NoValidSet:
        assume(False)
    return g, s


@st.composite
def symmetric_subset(draw):
    fam = draw(st.sampled_from(FAMILIES))
    g = GROUPS[fam]
    blocks = atoms(g)
    chosen = draw(st.lists(st.sampled_from(blocks), min_size=1, max_size=4, unique=True))
    return g, tuple(sorted({x for b in chosen for x in b}))


@st.composite
def regular_multigraph(draw):
    """Union of random perfect matchings plus their transposes: symmetric and regular."""
    n = draw(st.integers(2, 10))
    k = draw(st.integers(1, 3))
    counts = np.zeros((n, n), dtype=np.int64)
    for _ in range(k):
        perm = draw(st.permutations(range(n)))
        p = np.zeros((n, n), dtype=np.int64)
        p[np.arange(n), perm] = 1
        counts += p + p.T
    return CountGraph(n, 2 * k, counts, "cayley")


@SETTINGS
@given(conj_closed_instance())
def test_pair_multigraph_is_square(inst):
    g, s = inst
    sg = build_cayley_sum(g, s)
    pair = build_pair_multigraph(g, s)
    assert np.array_equal(pair.counts, sg.counts @ sg.counts)
    spec = eig_symmetric(sg)
    assert np.allclose(np.sort(spec.adjacency_eigs**2), np.sort(eig_symmetric(pair).adjacency_eigs), atol=1e-9)


@SETTINGS
@given(conj_closed_instance())
def test_spectrum_range_and_top(inst):
    g, s = inst
    for graph in (build_cayley(g, s), build_cayley_sum(g, s)):
        t = eig_symmetric(graph).adjacency_eigs
        assert abs(t[0] - 1) < 1e-10
        assert t[-1] >= -1 - 1e-10
        assert np.all(np.diff(t) <= 1e-12)


@SETTINGS
@given(conj_closed_instance())
def test_bipartite_iff_index_two_subgroup_avoids_s(inst):
    g, s = inst
    sg = build_cayley_sum(g, s)
    avoids = any(not set(h.members) & set(s) for h in g.index_two_subgroups())
    assert is_bipartite_bfs(sg) == avoids
    spectral = eig_symmetric(sg).adjacency_eigs[-1] <= -1 + 1e-10
    assert spectral == avoids


@SETTINGS
@given(symmetric_subset())
def test_undirected_iff_conjugation_closed(inst):
    g, s = inst
    raw = sum_relation_counts(g, s)
    closed = all(g.conjugate(x, y) in s for x in s for y in range(g.order))
    assert np.array_equal(raw, raw.T) == closed


@SETTINGS
@given(conj_closed_instance())
def test_cheeger_sandwich_and_buser(inst):
    g, s = inst
    for graph in (build_cayley(g, s), build_cayley_sum(g, s)):
        v, e = cheeger_exact(graph)
        assert v.value / graph.d <= e.value <= v.value
        assert check_cheeger_buser(eig_symmetric(graph), e.value).verdict == "pass"


@settings(max_examples=80, deadline=None)
@given(regular_multigraph())
def test_gray_code_matches_naive(graph):
    (hv, wv), (he, we) = oracles.naive_cheeger(graph.counts)
    v, e = cheeger_exact(graph, require_connected=False)
    assert (v.value, v.subset) == (hv, wv)
    assert (e.value, e.subset) == (he, we)
    if is_connected_bfs(graph):
        assert v.value > 0


@SETTINGS
@given(conj_closed_instance(), st.data())
def test_set_arithmetic_matches_naive(inst, data):
    g, s = inst
    a = data.draw(st.sets(st.integers(0, g.order - 1), min_size=1, max_size=g.order // 2))
    table = g.mul.tolist()
    assert aexists_quantities(g, s, a) == oracles.naive_condition_quantities(table, s, a)
    x = data.draw(st.integers(0, g.order - 1))
    assert dichotomy_quantities(g, a, x) == oracles.naive_dichotomy_quantities(table, a, x)


@given(st.fractions(min_value=0, max_value=10), st.integers(3, 40))
def test_sharp_gap_dominates_main_gap(h, d):
    assert sharp_gap(h, d) >= main_gap(h, d)
    assert SHARP_TABLE.kappa_for(d) in {k for k, _ in SHARP_TABLE.rows}


@given(st.fractions(min_value=0, max_value=10), st.fractions(min_value=0, max_value=10), st.integers(1, 12))
def test_main_gap_monotone_in_h(a, b, d):
    lo, hi = sorted((a, b))
    assert main_gap(lo, d) <= main_gap(hi, d)
    assert main_gap(Fraction(hi), d) == Fraction(hi) ** 4 / (2**9 * d**8)
