"""Graph construction and association-scheme verification.

Hamming graphs H(d, n) have the n**d length-d strings over an n-letter
alphabet as vertices, two strings being adjacent when they differ in exactly
one position.  Vertices are indexed in mixed-radix order with digit 0 most
significant: index = sum(digit[i] * n**(d - 1 - i)).

The oscillator-network potential matrix is V = I + 2 g L with L the graph
Laplacian, so V_ij = (1 + 2 g k_i) delta_ij - 2 g A_ij where k_i is the
degree of vertex i.

The distance-k relations of a Hamming graph form an association scheme;
``verify_scheme`` checks that property for arbitrary relation families by
direct counting and returns the intersection numbers p^k_ij.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse.csgraph

from .errors import CapacityError, SchemeError, ValidationError

#: Default capacity limit for dense graph construction, counted in matrix
#: entries: a graph on N vertices needs N * N entries.
DEFAULT_MAX_ENTRIES = 2**20


@dataclass(frozen=True)
class HammingSpec:
    """Descriptor (d, n) of a Hamming graph: length-d strings over n letters."""

    d: int
    n: int

    def __post_init__(self):
        if not (isinstance(self.d, (int, np.integer)) and self.d >= 1):
            raise ValidationError(f"d must be a positive integer, got {self.d!r}")
        if not (isinstance(self.n, (int, np.integer)) and self.n >= 2):
            raise ValidationError(f"n must be an integer >= 2, got {self.n!r}")

    @property
    def vertex_count(self) -> int:
        return self.n**self.d

    @property
    def degree(self) -> int:
        """Degree of every vertex: d (n - 1)."""
        return self.d * (self.n - 1)

    def valency(self, k: int) -> int:
        """Number of vertices at distance k from any fixed vertex."""
        if not 0 <= k <= self.d:
            raise ValidationError(f"distance class k={k} outside 0..{self.d}")
        return math.comb(self.d, k) * (self.n - 1) ** k

    def adjacency_eigenvalue(self, k: int) -> int:
        """k-th distinct adjacency eigenvalue, d(n-1) - n k, k = 0..d."""
        if not 0 <= k <= self.d:
            raise ValidationError(f"eigenvalue index k={k} outside 0..{self.d}")
        return self.d * (self.n - 1) - self.n * k

    def digits(self) -> np.ndarray:
        """(vertex_count, d) array: base-n digits of every vertex index."""
        idx = np.arange(self.vertex_count)
        out = np.empty((self.vertex_count, self.d), dtype=np.int64)
        for pos in range(self.d - 1, -1, -1):
            out[:, pos] = idx % self.n
            idx = idx // self.n
        return out

    def vertex_weight(self) -> np.ndarray:
        """Distance of every vertex from vertex 0 (number of nonzero digits)."""
        return np.count_nonzero(self.digits(), axis=1)


def _check_capacity(num_vertices: int, max_entries: int) -> None:
    if num_vertices * num_vertices > max_entries:
        raise CapacityError(
            f"dense matrix for {num_vertices} vertices needs "
            f"{num_vertices * num_vertices} entries, exceeding the limit of "
            f"{max_entries}; raise max_entries to allow it"
        )


def distance_matrix(spec: HammingSpec, max_entries: int = DEFAULT_MAX_ENTRIES) -> np.ndarray:
    """Pairwise Hamming distances between all vertices, shape (N, N), int."""
    _check_capacity(spec.vertex_count, max_entries)
    digits = spec.digits()
    dist = np.zeros((spec.vertex_count, spec.vertex_count), dtype=np.int64)
    for pos in range(spec.d):
        col = digits[:, pos]
        dist += col[:, None] != col[None, :]
    return dist


def build_hamming(spec: HammingSpec, max_entries: int = DEFAULT_MAX_ENTRIES) -> np.ndarray:
    """Adjacency matrix of H(d, n): strings differing in exactly one digit.

    Every row sums to d (n - 1).
    """
    return build_distance_k(spec, 1, max_entries)


def build_distance_k(
    spec: HammingSpec, k: int, max_entries: int = DEFAULT_MAX_ENTRIES
) -> np.ndarray:
    """Adjacency matrix of the distance-k relation of H(d, n).

    Row sums equal C(d, k) (n - 1)**k; the relations for k = 0..d partition
    all vertex pairs (their sum is the all-ones matrix).
    """
    if not 0 <= k <= spec.d:
        raise ValidationError(f"distance class k={k} outside 0..{spec.d}")
    dist = distance_matrix(spec, max_entries)
    return (dist == k).astype(np.float64)


def hamming_relations(
    spec: HammingSpec, max_entries: int = DEFAULT_MAX_ENTRIES
) -> list[np.ndarray]:
    """All distance relations [A_0, ..., A_d] computed in one pass."""
    dist = distance_matrix(spec, max_entries)
    return [(dist == k).astype(np.float64) for k in range(spec.d + 1)]


def build_from_edges(num_vertices: int, edges) -> np.ndarray:
    """0/1 symmetric adjacency from an edge list; duplicate edges are ignored.

    Rejects self-loops and out-of-range endpoints.
    """
    if not (isinstance(num_vertices, (int, np.integer)) and num_vertices >= 1):
        raise ValidationError(f"num_vertices must be a positive integer, got {num_vertices!r}")
    A = np.zeros((num_vertices, num_vertices), dtype=np.float64)
    for e in edges:
        try:
            i, j = e
            i, j = int(i), int(j)
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"edge {e!r} is not a pair of integers") from exc
        if i == j:
            raise ValidationError(f"self-loop ({i}, {j}) is not allowed")
        if not (0 <= i < num_vertices and 0 <= j < num_vertices):
            raise ValidationError(
                f"edge ({i}, {j}) has an endpoint outside 0..{num_vertices - 1}"
            )
        A[i, j] = 1.0
        A[j, i] = 1.0
    return A


def read_edge_list(path) -> tuple[int, list[tuple[int, int]]]:
    """Parse an edge-list file: first line "N", then one "i j" pair per line.

    Indices are 0-based.  Blank lines are ignored.  Malformed lines raise a
    ValidationError naming the line number.
    """
    with open(path, "r", encoding="utf-8") as fh:
        lines = fh.readlines()
    num_vertices = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if num_vertices is None:
            if len(parts) != 1 or not parts[0].isdigit():
                raise ValidationError(
                    f"{path}: line {lineno}: expected a single vertex count, got {line!r}"
                )
            num_vertices = int(parts[0])
            if num_vertices < 1:
                raise ValidationError(f"{path}: line {lineno}: vertex count must be >= 1")
            continue
        if len(parts) != 2:
            raise ValidationError(
                f"{path}: line {lineno}: expected 'i j' edge pair, got {line!r}"
            )
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise ValidationError(
                f"{path}: line {lineno}: non-integer edge endpoint in {line!r}"
            ) from None
        if i == j:
            raise ValidationError(f"{path}: line {lineno}: self-loop ({i}, {j})")
        if num_vertices is not None and not (0 <= i < num_vertices and 0 <= j < num_vertices):
            raise ValidationError(
                f"{path}: line {lineno}: endpoint outside 0..{num_vertices - 1}"
            )
        edges.append((i, j))
    if num_vertices is None:
        raise ValidationError(f"{path}: empty file, expected a vertex count line")
    return num_vertices, edges


def build_from_edge_file(path) -> np.ndarray:
    """Adjacency matrix read from an edge-list file (see ``read_edge_list``)."""
    num_vertices, edges = read_edge_list(path)
    return build_from_edges(num_vertices, edges)


def _require_adjacency(A: np.ndarray) -> np.ndarray:
    A = np.asarray(A, dtype=np.float64)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValidationError(f"adjacency must be a square matrix, got shape {A.shape}")
    if not np.array_equal(A, A.T):
        raise ValidationError("adjacency must be exactly symmetric")
    if np.any((A != 0.0) & (A != 1.0)):
        raise ValidationError("adjacency entries must be 0 or 1")
    if np.any(np.diagonal(A) != 0.0):
        raise ValidationError("adjacency diagonal must be zero (no self-loops)")
    return A


def laplacian(A: np.ndarray) -> np.ndarray:
    """Graph Laplacian L = diag(degrees) - A."""
    A = _require_adjacency(A)
    return np.diag(A.sum(axis=1)) - A


def potential_matrix(A: np.ndarray, g: float) -> np.ndarray:
    """Potential matrix V = I + 2 g L of the oscillator network on A.

    V is positive definite for g >= 0 (its smallest eigenvalue is >= 1
    because L is positive semidefinite); negative g is rejected.
    """
    if not np.isfinite(g):
        raise ValidationError(f"coupling g must be finite, got {g!r}")
    if g < 0:
        raise ValidationError(f"coupling g must be >= 0, got {g}")
    L = laplacian(A)
    return np.eye(A.shape[0]) + 2.0 * g * L


@dataclass(frozen=True)
class SchemeTensor:
    """Intersection numbers p[k][i][j] of an association scheme.

    p^k_ij counts, for any vertex pair (x, y) in relation k, the vertices z
    with (x, z) in relation i and (z, y) in relation j; the count being
    independent of the chosen pair is the defining scheme property.
    """

    p: np.ndarray  # shape (classes, classes, classes), int

    @property
    def class_count(self) -> int:
        return self.p.shape[0]

    def valency(self, i: int) -> int:
        """Valency of relation i: p^0_ii."""
        return int(self.p[0, i, i])


def verify_scheme(relations) -> SchemeTensor:
    """Check that 0/1 relation matrices form an association scheme.

    Requirements checked by direct counting: relation 0 is the identity, all
    relations are symmetric 0/1 matrices partitioning the vertex pairs, and
    each product A_i A_j is constant on every relation class.  Failures raise
    SchemeError; for the constancy check the error names the violating
    (i, j, k) triple.
    """
    if len(relations) == 0:
        raise ValidationError("need at least one relation matrix")
    mats = []
    shape = None
    for idx, R in enumerate(relations):
        R = np.asarray(R, dtype=np.float64)
        if R.ndim != 2 or R.shape[0] != R.shape[1]:
            raise ValidationError(f"relation {idx} is not a square matrix")
        if shape is None:
            shape = R.shape
        elif R.shape != shape:
            raise ValidationError(f"relation {idx} has shape {R.shape}, expected {shape}")
        if np.any((R != 0.0) & (R != 1.0)):
            raise ValidationError(f"relation {idx} has entries other than 0/1")
        if not np.array_equal(R, R.T):
            raise SchemeError(f"relation {idx} is not symmetric")
        mats.append(R)
    N = shape[0]
    if not np.array_equal(mats[0], np.eye(N)):
        raise SchemeError("relation 0 must be the identity relation")
    total = sum(mats)
    if not np.array_equal(total, np.ones((N, N))):
        raise SchemeError("relations do not partition the vertex pairs")

    K = len(mats)
    masks = [R > 0.5 for R in mats]
    p = np.zeros((K, K, K), dtype=np.int64)
    for i in range(K):
        for j in range(i, K):
            prod = np.rint(mats[i] @ mats[j]).astype(np.int64)
            for k in range(K):
                vals = prod[masks[k]]
                if vals.size == 0:
                    continue
                v0 = vals[0]
                if not np.all(vals == v0):
                    raise SchemeError(
                        "not an association scheme: the count of length-2 "
                        f"paths through relations ({i}, {j}) is not constant "
                        f"over relation {k}",
                        i=i,
                        j=j,
                        k=k,
                    )
                p[k, i, j] = v0
                p[k, j, i] = v0
    return SchemeTensor(p=p)


def hamming_specs_within(
    max_vertices: int, *, d1_max_n: int | None = None
) -> list[HammingSpec]:
    """All HammingSpec(d, n) with n >= 2, d >= 1 and n**d <= max_vertices.

    ``d1_max_n`` optionally caps the alphabet size of the d = 1 family
    (complete graphs), which otherwise grows linearly up to max_vertices.
    Ordered by vertex count, then (d, n).
    """
    specs = []
    n = 2
    while n <= max_vertices:
        d = 1
        while n**d <= max_vertices:
            if not (d == 1 and d1_max_n is not None and n > d1_max_n):
                specs.append(HammingSpec(d=d, n=n))
            d += 1
        n += 1
    specs.sort(key=lambda s: (s.vertex_count, s.d, s.n))
    return specs


def graph_distance_relations(A: np.ndarray) -> list[np.ndarray]:
    """Distance relations [A_0, A_1, ..., A_diam] of a connected graph.

    A_k marks vertex pairs at shortest-path distance exactly k; A_0 is the
    identity.  Raises ValidationError if the graph is disconnected.  Feed the
    result to ``verify_scheme`` to test whether the graph is distance regular
    enough to form an association scheme.
    """
    A = _require_adjacency(A)
    dist = scipy.sparse.csgraph.shortest_path(A, method="D", unweighted=True)
    if np.isinf(dist).any():
        raise ValidationError(
            "graph is disconnected; distance relations are undefined"
        )
    dist = np.rint(dist).astype(np.int64)
    diam = int(dist.max())
    return [(dist == k).astype(np.int64) for k in range(diam + 1)]
