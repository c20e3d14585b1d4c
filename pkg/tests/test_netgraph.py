"""Graph construction, Hamming combinatorics, and scheme verification."""

import math

import numpy as np
import pytest

from oscnet import (
    CapacityError,
    HammingSpec,
    SchemeError,
    ValidationError,
    build_distance_k,
    build_from_edge_file,
    build_from_edges,
    build_hamming,
    distance_matrix,
    graph_distance_relations,
    hamming_relations,
    laplacian,
    potential_matrix,
    read_edge_list,
    verify_scheme,
)
from oscnet.netgraph import hamming_specs_within

from oracles import count_length2_paths


# ---------------------------------------------------------------------------
# HammingSpec and adjacency construction
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d,n", [(0, 2), (-1, 3), (2, 1), (1, 0)])
def test_spec_validation(d, n):
    with pytest.raises(ValidationError):
        HammingSpec(d=d, n=n)


def test_h23_adjacency_is_kronecker_sum():
    spec = HammingSpec(d=2, n=3)
    A = build_hamming(spec)
    J = np.ones((3, 3)) - np.eye(3)
    expected = np.kron(np.eye(3), J) + np.kron(J, np.eye(3))
    assert np.array_equal(A, expected.astype(np.int64))


def test_h24_adjacency_is_kronecker_sum():
    spec = HammingSpec(d=2, n=4)
    A = build_hamming(spec)
    J = np.ones((4, 4)) - np.eye(4)
    expected = np.kron(np.eye(4), J) + np.kron(J, np.eye(4))
    assert np.array_equal(A, expected.astype(np.int64))


@pytest.mark.parametrize("d,n", [(1, 2), (2, 3), (3, 2), (2, 4), (3, 3)])
def test_degree_and_valency(d, n):
    spec = HammingSpec(d=d, n=n)
    A = build_hamming(spec)
    assert np.all(A.sum(axis=1) == spec.degree)
    assert spec.degree == d * (n - 1)
    D = distance_matrix(spec)
    for k in range(d + 1):
        count = int(np.sum(D[0] == k))
        assert count == spec.valency(k) == math.comb(d, k) * (n - 1) ** k


@pytest.mark.parametrize("d,n", [(2, 3), (3, 2), (2, 4)])
def test_distance_matrix_matches_shortest_paths(d, n):
    import scipy.sparse.csgraph

    spec = HammingSpec(d=d, n=n)
    A = build_hamming(spec)
    D = distance_matrix(spec)
    bfs = scipy.sparse.csgraph.shortest_path(A, unweighted=True)
    assert np.array_equal(D, np.rint(bfs).astype(np.int64))
    assert np.array_equal(D, D.T)


def test_distance_relations_partition():
    spec = HammingSpec(d=3, n=2)
    rels = hamming_relations(spec)
    assert len(rels) == spec.d + 1
    assert np.array_equal(rels[0], np.eye(spec.vertex_count, dtype=np.int64))
    assert np.array_equal(sum(rels), np.ones_like(rels[0]))
    for k in range(spec.d + 1):
        assert np.array_equal(rels[k], build_distance_k(spec, k))


def test_capacity_limit():
    spec = HammingSpec(d=2, n=3)
    with pytest.raises(CapacityError):
        build_hamming(spec, max_entries=80)  # 81 entries needed
    build_hamming(spec, max_entries=81)  # exactly enough


# ---------------------------------------------------------------------------
# Edge lists
# ---------------------------------------------------------------------------


def test_build_from_edges_basic():
    A = build_from_edges(3, [(0, 1), (1, 2), (1, 0)])  # duplicate ignored
    expected = np.array([[0, 1, 0], [1, 0, 1], [0, 1, 0]], dtype=np.int64)
    assert np.array_equal(A, expected)


def test_build_from_edges_rejects_bad_input():
    with pytest.raises(ValidationError):
        build_from_edges(3, [(0, 0)])
    with pytest.raises(ValidationError):
        build_from_edges(3, [(0, 3)])
    with pytest.raises(ValidationError):
        build_from_edges(0, [])


def test_read_edge_list(tmp_path):
    path = tmp_path / "g.txt"
    path.write_text("4\n0 1\n\n1 2\n2 3\n")
    n, edges = read_edge_list(path)
    assert n == 4
    assert edges == [(0, 1), (1, 2), (2, 3)]
    A = build_from_edge_file(path)
    assert A.shape == (4, 4) and A[0, 1] == 1 and A[0, 3] == 0


@pytest.mark.parametrize(
    "content,fragment",
    [
        ("", "empty"),
        ("x\n", "vertex count"),
        ("3\n0\n", "edge pair"),
        ("3\n0 a\n", "non-integer"),
        ("3\n1 1\n", "self-loop"),
        ("3\n0 3\n", "outside"),
    ],
)
def test_read_edge_list_errors(tmp_path, content, fragment):
    path = tmp_path / "bad.txt"
    path.write_text(content)
    with pytest.raises(ValidationError) as err:
        read_edge_list(path)
    assert fragment in str(err.value)


def test_read_edge_list_error_names_line(tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("3\n0 1\n0 9\n")
    with pytest.raises(ValidationError) as err:
        read_edge_list(path)
    assert "line 3" in str(err.value)


# ---------------------------------------------------------------------------
# Laplacian / potential matrix
# ---------------------------------------------------------------------------


def test_laplacian_and_potential():
    A = build_hamming(HammingSpec(d=2, n=3))
    L = laplacian(A)
    assert np.allclose(L.sum(axis=1), 0.0)
    assert np.min(np.linalg.eigvalsh(L)) > -1e-12
    g = 0.7
    V = potential_matrix(A, g)
    assert np.allclose(V, np.eye(9) + 2 * g * L)
    assert np.allclose(V.sum(axis=1), 1.0)  # row sums unaffected by L
    with pytest.raises(ValidationError):
        potential_matrix(A, -0.1)
    with pytest.raises(ValidationError):
        potential_matrix(A, float("nan"))


def test_potential_requires_adjacency():
    bad = np.array([[0, 2], [2, 0]])
    with pytest.raises(ValidationError):
        potential_matrix(bad, 1.0)
    asym = np.array([[0, 1], [0, 0]])
    with pytest.raises(ValidationError):
        potential_matrix(asym, 1.0)


# ---------------------------------------------------------------------------
# Association scheme verification
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("d,n", [(2, 3), (3, 2)])
def test_verify_scheme_hamming(d, n):
    spec = HammingSpec(d=d, n=n)
    rels = hamming_relations(spec)
    tensor = verify_scheme(rels)
    K = tensor.class_count
    assert K == d + 1
    # symmetry p^k_ij = p^k_ji
    assert np.array_equal(tensor.p, np.transpose(tensor.p, (0, 2, 1)))
    # valencies
    for i in range(K):
        assert tensor.valency(i) == spec.valency(i)
    # brute-force path counting over random witness pairs
    rng = np.random.default_rng(42)
    for _ in range(20):
        i, j, k = rng.integers(0, K, 3)
        pairs = np.argwhere(np.asarray(rels[k]) == 1)
        x, y = pairs[rng.integers(0, len(pairs))]
        assert count_length2_paths(rels, i, j, x, y) == tensor.p[k, i, j]


def test_verify_scheme_rejects_broken_graph():
    spec = HammingSpec(d=2, n=3)
    A = build_hamming(spec).copy()
    A[0, 1] = A[1, 0] = 0  # delete one edge
    rels = graph_distance_relations(A)
    with pytest.raises(SchemeError) as err:
        verify_scheme(rels)
    exc = err.value
    assert exc.i is not None and exc.j is not None and exc.k is not None


def test_verify_scheme_structural_errors():
    I = np.eye(2, dtype=np.int64)
    J = np.ones((2, 2), dtype=np.int64) - I
    with pytest.raises(SchemeError):
        verify_scheme([J, I])  # relation 0 is not the identity
    with pytest.raises(SchemeError):
        verify_scheme([I, np.array([[0, 1], [0, 0]])])  # not symmetric
    with pytest.raises(SchemeError):
        verify_scheme([I, np.zeros((2, 2), dtype=np.int64)])  # not a partition


def test_graph_distance_relations_matches_hamming():
    spec = HammingSpec(d=2, n=3)
    A = build_hamming(spec)
    rels = graph_distance_relations(A)
    expected = hamming_relations(spec)
    assert len(rels) == len(expected)
    for got, want in zip(rels, expected):
        assert np.array_equal(got, want)


def test_graph_distance_relations_disconnected():
    A = np.zeros((4, 4), dtype=np.int64)
    A[0, 1] = A[1, 0] = 1
    A[2, 3] = A[3, 2] = 1
    with pytest.raises(ValidationError):
        graph_distance_relations(A)


def test_hamming_specs_within():
    specs = hamming_specs_within(64, d1_max_n=8)
    assert HammingSpec(d=6, n=2) in specs
    assert HammingSpec(d=3, n=4) in specs
    assert HammingSpec(d=1, n=8) in specs
    assert HammingSpec(d=1, n=9) not in specs  # d=1 cap
    assert all(s.vertex_count <= 64 for s in specs)
    counts = [s.vertex_count for s in specs]
    assert counts == sorted(counts)
