import itertools
import random

import pytest

from conftest import blocks_by_definition, is_valid_model, small_corpus

from topstruct.errors import (
    BudgetExceeded,
    InvariantViolation,
    OrientationMismatch,
    PreconditionFailed,
    SeparationDoesNotDecide,
)
from topstruct.graph import (
    Graph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    petersen_graph,
    random_graph,
)
from topstruct.obstructions import (
    Block,
    block_orientation,
    check_rs_lemma,
    extract_subdivision,
    find_clique_model,
    find_k_blocks,
    find_subdivision,
    find_z_based_model,
    model_orientation,
    orientations_agree,
    serialize_model,
    serialize_subdivision,
)
from topstruct.separations import (
    Separation,
    enumerate_separations,
    orientation_is_consistent,
)
from topstruct.verifier import verify_subdivision


# -- blocks --------------------------------------------------------------


def test_blocks_known_values():
    assert [sorted(b.vertices) for b in find_k_blocks(complete_graph(5), 4)] == [
        [1, 2, 3, 4, 5]
    ]
    assert find_k_blocks(cycle_graph(5), 3) == []
    assert [sorted(b.vertices) for b in find_k_blocks(cycle_graph(5), 2)] == [
        [1, 2, 3, 4, 5]
    ]


def test_blocks_match_definition():
    rng = random.Random(41)
    for _ in range(30):
        n = rng.randint(1, 8)
        g = random_graph(n, rng.choice([0.2, 0.5, 0.8]), rng)
        k = rng.randint(2, 3)
        got = sorted(
            tuple(sorted(b.vertices)) for b in find_k_blocks(g, k)
        )
        expected = sorted(
            tuple(sorted(b)) for b in blocks_by_definition(g, k)
        )
        assert got == expected, (n, k, g.sorted_edges())


def test_blocks_budget():
    with pytest.raises(BudgetExceeded):
        find_k_blocks(complete_graph(8), 2, budget=2)


# -- clique models -------------------------------------------------------


def test_model_trivial_and_petersen():
    m = find_clique_model(complete_graph(4), 4)
    assert sorted(sorted(s) for s in m.branch_sets) == [[1], [2], [3], [4]]
    pet = petersen_graph()
    m5 = find_clique_model(pet, 5)
    assert m5 is not None and is_valid_model(pet, m5, 5)
    assert find_clique_model(pet, 6) is None


def test_model_results_always_valid():
    rng = random.Random(43)
    for _ in range(60):
        n = rng.randint(1, 9)
        g = random_graph(n, rng.choice([0.3, 0.6]), rng)
        m = rng.randint(1, 5)
        model = find_clique_model(g, m)
        if model is not None:
            assert is_valid_model(g, model, m)


def test_model_require_meet():
    g = path_graph(5)
    # a K_2 model with both sets meeting {1, 5} needs the whole path
    model = find_clique_model(g, 2, require_meet={1, 5})
    assert model is not None
    assert all(set(s) & {1, 5} for s in model.branch_sets)
    # impossible constraint
    g2 = Graph.from_edges(3, [(1, 2)])
    assert find_clique_model(g2, 2, require_meet={3}) is None


def test_model_budget():
    with pytest.raises(BudgetExceeded):
        find_clique_model(complete_graph(9), 5, budget=3)


# -- z-based models ------------------------------------------------------


def test_z_based_examples():
    m = find_z_based_model(complete_graph(4), [1, 2, 3, 4])
    assert sorted(sorted(s) for s in m.branch_sets) == [[1], [2], [3], [4]]
    star = Graph.from_edges(4, [(1, 2), (1, 3), (1, 4)])
    assert find_z_based_model(star, [2, 3, 4]) is None
    c6 = cycle_graph(6)
    m = find_z_based_model(c6, [1, 3, 5])
    # alternate vertices of C6: each takes its clockwise neighbor, giving
    # {1,2}, {3,4}, {5,6}, which are pairwise adjacent around the cycle
    assert m is not None
    assert all(len(set(s) & {1, 3, 5}) == 1 for s in m.branch_sets)
    m = find_z_based_model(c6, [1, 4])
    assert m is not None
    assert all(len(set(s) & {1, 4}) == 1 for s in m.branch_sets)


def test_z_based_empty():
    m = find_z_based_model(path_graph(3), [])
    assert m is not None and m.branch_sets == ()


# -- subdivisions --------------------------------------------------------


def test_subdivision_examples():
    g = complete_graph(5)
    s = find_subdivision(g, 4)
    assert s is not None
    assert all(len(p) == 2 for p in s.paths.values())
    assert verify_subdivision(g, 4, s)
    c6 = cycle_graph(6)
    s = find_subdivision(c6, 3)
    assert s is None or verify_subdivision(c6, 3, s)
    # C6 has max degree 2: no K3 subdivision needs degree 2... it does exist
    assert s is not None
    assert find_subdivision(complete_bipartite(3, 3), 5) is None
    pet = petersen_graph()
    s = find_subdivision(pet, 4)
    assert s is not None and verify_subdivision(pet, 4, s)


def test_subdivision_none_cases():
    assert find_subdivision(path_graph(5), 3) is None
    assert find_subdivision(Graph.from_edges(3, []), 2) is None
    s = find_subdivision(path_graph(2), 2)
    assert s is not None and list(s.paths.values()) == [(1, 2)]


# -- orientations --------------------------------------------------------


def test_block_orientation_directions():
    g = path_graph(3)
    blocks = find_k_blocks(g, 2)
    # the two edges are the 2-blocks; 1 and 3 are separated by vertex 2
    assert [sorted(b.vertices) for b in blocks] == [[1, 2], [2, 3]]
    b = blocks[0]
    o = block_orientation(g, 2, b)
    s = Separation.of({1, 2}, {2, 3})
    assert o.w_side(s) == s.side_a
    with pytest.raises(SeparationDoesNotDecide):
        o.w_side(Separation.of({1, 2, 3}, {2, 3}))
    split = Block(frozenset({1, 3}), 2)
    with pytest.raises(InvariantViolation):
        block_orientation(g, 2, split).w_side(s)


def test_model_orientation_directions():
    g = path_graph(4)
    model = find_clique_model(g, 2, require_meet={3, 4})
    o = model_orientation(g, 2, model)
    s = Separation.of({1, 2}, {2, 3, 4})
    assert o.w_side(s) == s.side_b
    with pytest.raises(SeparationDoesNotDecide):
        o.w_side(Separation.of({1, 2, 3, 4}, {3, 4}))  # order 2 >= k


def test_induced_orientations_consistent():
    rng = random.Random(47)
    for _ in range(20):
        n = rng.randint(2, 7)
        g = random_graph(n, rng.choice([0.4, 0.7]), rng)
        k = 2
        for b in find_k_blocks(g, k):
            assert orientation_is_consistent(g, block_orientation(g, k, b))
        model = find_clique_model(g, 2 * k)
        if model is not None:
            assert orientation_is_consistent(
                g, model_orientation(g, k, model)
            )


# -- the pairwise-cut characterization ------------------------------------


def test_split_iff_pairwise_cut():
    from conftest import brute_set_split
    from topstruct.separations import min_vertex_cut

    rng = random.Random(53)
    for _ in range(15):
        n = rng.randint(2, 7)
        g = random_graph(n, rng.choice([0.3, 0.6]), rng)
        k = rng.randint(2, 3)
        verts = sorted(g.vertices)
        for size in (2, 3):
            if size > n:
                continue
            for combo in itertools.combinations(verts, size):
                bset = frozenset(combo)
                split = brute_set_split(g, bset, k)
                weak_pair = any(
                    not g.has_edge(u, v) and min_vertex_cut(g, u, v) < k
                    for u, v in itertools.combinations(combo, 2)
                )
                assert split == weak_pair, (g.sorted_edges(), combo, k)


# -- RS lemma ------------------------------------------------------------


def test_rs_lemma_trivial_cases():
    g = complete_graph(6)
    z = [1, 2, 3]
    x = find_clique_model(g, 5)
    assert check_rs_lemma(g, z, x) is True
    assert find_z_based_model(g, z) is not None
    assert check_rs_lemma(g, [], x) is True
    with pytest.raises(PreconditionFailed):
        small = find_clique_model(g, 2)
        check_rs_lemma(g, [1, 2, 3], small)


def test_rs_lemma_false_case():
    # two far-apart cliques: the model lives in one, z in the other
    edges = [(1, 2), (2, 3), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (5, 7), (6, 8), (7, 8), (5, 8)]
    g = Graph.from_edges(8, edges)
    z = [1, 2]
    gz = g.overlay_clique(z)
    x = find_clique_model(gz, 3, require_meet={5, 6, 7, 8})
    assert x is not None
    assert check_rs_lemma(g, z, x) is False


def test_rs_lemma_property_random():
    rng = random.Random(59)
    hits = 0
    for _ in range(80):
        n = rng.randint(2, 8)
        g = random_graph(n, rng.choice([0.3, 0.5, 0.7]), rng)
        p = rng.randint(1, 3)
        if n < p:
            continue
        z = rng.sample(sorted(g.vertices), p)
        gz = g.overlay_clique(z)
        x = find_clique_model(gz, 2 * p - 1)
        if x is None:
            continue
        if check_rs_lemma(g, z, x):
            hits += 1
            assert find_z_based_model(g, z) is not None
    assert hits > 5


# -- extraction ----------------------------------------------------------


def test_extract_on_k6():
    g = complete_graph(6)
    blk = find_k_blocks(g, 3)[0]
    mod = find_clique_model(g, 6)
    emb = extract_subdivision(g, 3, 6, blk, mod, (1, 2))
    assert emb.branch_vertices == (1, 2)
    assert verify_subdivision(g, 2, emb)


def test_extract_prescribes_branch_vertices():
    g = complete_graph(7)
    emb = extract_subdivision(g, 3, 6, Block(frozenset(g.vertices), 3),
                              find_clique_model(g, 6), (3, 5))
    assert emb.branch_vertices == (3, 5)
    assert verify_subdivision(g, 2, emb)


def test_extract_three_branch_vertices():
    # r=3 needs k >= 6 and m >= 11: K12 supports everything
    g = complete_graph(12)
    blk = Block(frozenset(g.vertices), 6)
    mod = find_clique_model(g, 11)
    emb = extract_subdivision(g, 6, 11, blk, mod, (1, 5, 9))
    assert emb.branch_vertices == (1, 5, 9)
    assert verify_subdivision(g, 3, emb)


def test_extract_orientation_mismatch():
    # two K4 blobs joined by one edge: block on the left, model on the right
    edges = list(itertools.combinations([1, 2, 3, 4], 2))
    edges += list(itertools.combinations([5, 6, 7, 8], 2))
    edges.append((4, 5))
    g = Graph.from_edges(8, edges)
    blk = Block(frozenset({1, 2, 3, 4}), 2)
    mod = find_clique_model(g, 3, require_meet={5, 6, 7, 8})
    with pytest.raises(OrientationMismatch):
        extract_subdivision(g, 2, 3, blk, mod, (1, 2))


def test_extract_precondition_errors():
    g = complete_graph(6)
    blk = find_k_blocks(g, 3)[0]
    mod = find_clique_model(g, 6)
    with pytest.raises(PreconditionFailed):
        extract_subdivision(g, 3, 6, blk, mod, (1,))
    with pytest.raises(PreconditionFailed):
        extract_subdivision(g, 3, 6, blk, mod, (1, 2, 3))  # r=3 needs k>=6
    small_block = Block(frozenset({1, 2, 3}), 3)
    with pytest.raises(PreconditionFailed):
        extract_subdivision(g, 3, 6, small_block, mod, (4, 5))


def test_extract_agreement_dichotomy():
    """Extraction succeeds exactly when the orientations agree; otherwise
    it raises OrientationMismatch."""
    rng = random.Random(61)
    agreed = disagreed = 0
    for _ in range(40):
        n = rng.randint(2, 8)
        g = random_graph(n, rng.choice([0.3, 0.5]), rng)
        k, m = 2, 3
        blocks = find_k_blocks(g, k)
        model = find_clique_model(g, m)
        if model is None or not blocks:
            continue
        for b in blocks:
            o_b = block_orientation(g, k, b)
            o_x = model_orientation(g, k, model)
            b0 = tuple(sorted(b.vertices)[:2])
            if orientations_agree(g, k, o_b, o_x):
                emb = extract_subdivision(g, k, m, b, model, b0)
                assert verify_subdivision(g, 2, emb)
                assert emb.branch_vertices == b0
                agreed += 1
            else:
                with pytest.raises(OrientationMismatch):
                    extract_subdivision(g, k, m, b, model, b0)
                disagreed += 1
    assert agreed > 0 and disagreed > 0


# -- serialization -------------------------------------------------------


def test_serialize_model():
    m = find_clique_model(complete_graph(3), 3)
    assert serialize_model(m) == "x 1: 1\nx 2: 2\nx 3: 3\n"


def test_serialize_subdivision():
    s = find_subdivision(complete_graph(3), 3)
    text = serialize_subdivision(s)
    assert text.splitlines()[0] == "bv 1 2 3"
    assert "path 1 2: 1 2" in text
