"""Seeds, quivers, mutation, and the acyclic / isolated / Louise classification.

Vertices are labeled 1..n+m throughout: the first n are mutable, the rest
frozen.  A seed is an (n+m) x n extended exchange matrix whose top n x n
block is skew-symmetric; its quiver has b_ij parallel arrows i -> j for each
positive entry, and arrows j -> i for negative entries in frozen rows (the
matrix has no column for a frozen target, so those arrows live in the sign).
"""

from __future__ import annotations

from dataclasses import dataclass

from .intlat import IntMatrix

__all__ = [
    "ExtendedExchangeMatrix",
    "Quiver",
    "Classification",
    "ExchangeEquation",
    "VertexIndexError",
    "EdgeNotFound",
    "NotAcyclic",
    "isolated_seed",
    "mutate",
    "to_quiver",
    "reduced",
    "quiver_mutate",
    "is_acyclic",
    "is_separating_edge",
    "freeze",
    "classify",
    "acyclic_presentation",
]


class VertexIndexError(IndexError):
    """Mutation or freeze directed at a frozen or out-of-range vertex."""


class EdgeNotFound(ValueError):
    """The requested edge is not present in the reduced quiver."""


class NotAcyclic(ValueError):
    """The operation requires an acyclic seed."""


class ExtendedExchangeMatrix:
    """(n+m) x n integer matrix whose top n x n block is skew-symmetric."""

    __slots__ = ("n", "m", "b")

    def __init__(self, n: int, m: int, b):
        n, m = int(n), int(m)
        if n < 0 or m < 0:
            raise ValueError("n and m must be non-negative")
        mat = b if isinstance(b, IntMatrix) else IntMatrix(b, cols=n)
        if mat.shape != (n + m, n):
            raise ValueError(f"exchange matrix must be {(n + m, n)}, got {mat.shape}")
        for i in range(n):
            for j in range(n):
                if mat.entries[i][j] != -mat.entries[j][i]:
                    raise ValueError("top n x n block must be skew-symmetric")
        self.n = n
        self.m = m
        self.b = mat

    @property
    def vertex_count(self) -> int:
        return self.n + self.m

    def is_mutable(self, vertex: int) -> bool:
        return 1 <= vertex <= self.n

    def to_json(self) -> dict:
        return {"n": self.n, "m": self.m, "B": [list(r) for r in self.b.entries]}

    @classmethod
    def from_json(cls, obj) -> ExtendedExchangeMatrix:
        if not isinstance(obj, dict):
            raise ValueError("seed JSON must be an object")
        missing = {"n", "m", "B"} - obj.keys()
        if missing:
            raise ValueError(f"seed JSON missing keys: {sorted(missing)}")
        n, m, rows = obj["n"], obj["m"], obj["B"]
        for label, v in (("n", n), ("m", m)):
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise ValueError(f"{label} must be a non-negative integer")
        if not isinstance(rows, list) or len(rows) != n + m:
            raise ValueError(f"B must be a list of {n + m} rows")
        for row in rows:
            if not isinstance(row, list) or len(row) != n:
                raise ValueError(f"each row of B must be a list of {n} integers")
            for x in row:
                if not isinstance(x, int) or isinstance(x, bool):
                    raise ValueError("B entries must be exact integers")
        return cls(n, m, rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExtendedExchangeMatrix):
            return NotImplemented
        return (self.n, self.m, self.b) == (other.n, other.m, other.b)

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.b))

    def __repr__(self) -> str:
        return f"ExtendedExchangeMatrix(n={self.n}, m={self.m}, b={self.b!r})"


def isolated_seed(matrix: IntMatrix) -> ExtendedExchangeMatrix:
    """Seed [0; M] with zero mutable block over the given coefficient rows."""
    n = matrix.cols
    rows = [[0] * n for _ in range(n)] + [list(r) for r in matrix.entries]
    return ExtendedExchangeMatrix(n, matrix.rows, rows)


def mutate(seed: ExtendedExchangeMatrix, k: int) -> ExtendedExchangeMatrix:
    """Matrix mutation in direction k (1-based, k <= n).

    Entries in row or column k flip sign; elsewhere
    b'_ij = b_ij + b+_ik * b+_kj - b-_ik * b-_kj  with x+ = max(x, 0) and
    x- = max(-x, 0).  The rule is an involution.
    """
    if not seed.is_mutable(k):
        raise VertexIndexError(f"cannot mutate at vertex {k}: not a mutable index")
    kk = k - 1
    b = seed.b.entries
    rows = []
    for i in range(seed.vertex_count):
        row = []
        for j in range(seed.n):
            if i == kk or j == kk:
                row.append(-b[i][j])
            else:
                bik, bkj = b[i][kk], b[kk][j]
                row.append(b[i][j] + max(bik, 0) * max(bkj, 0) - max(-bik, 0) * max(-bkj, 0))
        rows.append(row)
    return ExtendedExchangeMatrix(seed.n, seed.m, rows)


class Quiver:
    """Directed multigraph on 1..n+m with a mutable flag per vertex.

    Edges are a mapping (head, tail) -> multiplicity.  No loops, no pair of
    opposite edges, and never an edge between two frozen vertices.
    """

    __slots__ = ("mutable", "edges")

    def __init__(self, mutable, edges):
        flags = tuple(bool(f) for f in mutable)
        nv = len(flags)
        cleaned = {}
        for (i, j), mult in dict(edges).items():
            i, j, mult = int(i), int(j), int(mult)
            if not (1 <= i <= nv and 1 <= j <= nv):
                raise ValueError(f"edge ({i}, {j}) out of vertex range 1..{nv}")
            if i == j:
                raise ValueError("loops are not allowed")
            if mult <= 0:
                raise ValueError("edge multiplicities must be positive")
            if not flags[i - 1] and not flags[j - 1]:
                raise ValueError("edges between two frozen vertices are not allowed")
            cleaned[(i, j)] = mult
        for i, j in cleaned:
            if (j, i) in cleaned:
                raise ValueError(f"opposite edges {(i, j)} and {(j, i)} must be cancelled")
        self.mutable = flags
        self.edges = cleaned

    @property
    def vertex_count(self) -> int:
        return len(self.mutable)

    def multiplicity(self, i: int, j: int) -> int:
        return self.edges.get((i, j), 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.mutable == other.mutable and self.edges == other.edges

    def __repr__(self) -> str:
        edges = ", ".join(f"{i}->{j}x{m}" for (i, j), m in sorted(self.edges.items()))
        return f"Quiver(mutable={self.mutable!r}, edges=[{edges}])"


def to_quiver(seed: ExtendedExchangeMatrix) -> Quiver:
    """Quiver of a seed: b_ij > 0 gives b_ij arrows i -> j; a negative entry
    in a frozen row i encodes |b_ij| arrows j -> i (arrows into frozen
    vertices have no column of their own)."""
    n, m = seed.n, seed.m
    edges: dict[tuple[int, int], int] = {}
    for i in range(n + m):
        for j in range(n):
            v = seed.b.entries[i][j]
            if v > 0:
                edges[(i + 1, j + 1)] = edges.get((i + 1, j + 1), 0) + v
            elif v < 0 and i >= n:
                edges[(j + 1, i + 1)] = edges.get((j + 1, i + 1), 0) - v
    flags = [True] * n + [False] * m
    return Quiver(flags, edges)


def reduced(quiver: Quiver) -> Quiver:
    """Collapse parallel edges to multiplicity one."""
    return Quiver(quiver.mutable, {e: 1 for e in quiver.edges})


def quiver_mutate(quiver: Quiver, k: int) -> Quiver:
    """Mutation at a mutable vertex k on the edge multiset.

    Adds a composite arrow i -> j for every pair i -> k -> j, reverses all
    arrows at k, then cancels opposite pairs.  Composites between two frozen
    vertices are dropped: the exchange matrix has no slot for them, and
    matrix/quiver mutation commute exactly under this convention.
    """
    nv = quiver.vertex_count
    if not (1 <= k <= nv) or not quiver.mutable[k - 1]:
        raise VertexIndexError(f"cannot mutate at vertex {k}: not a mutable index")
    into = [(i, mult) for (i, j), mult in quiver.edges.items() if j == k]
    outof = [(j, mult) for (i, j), mult in quiver.edges.items() if i == k]
    raw: dict[tuple[int, int], int] = {}
    for (i, j), mult in quiver.edges.items():
        target = (j, i) if (i == k or j == k) else (i, j)
        raw[target] = raw.get(target, 0) + mult
    for i, mi in into:
        for j, mj in outof:
            if not quiver.mutable[i - 1] and not quiver.mutable[j - 1]:
                continue
            raw[(i, j)] = raw.get((i, j), 0) + mi * mj
    edges: dict[tuple[int, int], int] = {}
    for (i, j), mult in raw.items():
        if (j, i) in raw and (j, i) < (i, j):
            continue  # the opposite orientation settles this pair
        net = mult - raw.get((j, i), 0)
        if net > 0:
            edges[(i, j)] = net
        elif net < 0:
            edges[(j, i)] = -net
    return Quiver(quiver.mutable, edges)


def _mutable_adjacency(quiver: Quiver) -> dict[int, list[int]]:
    """Adjacency of the subquiver induced on the mutable vertices.

    Acyclicity, directed cycles, and bi-infinite paths are all read off this
    subquiver: arrows through frozen way-points never count.  (Otherwise an
    isolated seed with mixed-sign coefficient rows would contain a cycle
    through frozen vertices, breaking isolated => acyclic.)
    """
    adj: dict[int, list[int]] = {
        v: [] for v in range(1, quiver.vertex_count + 1) if quiver.mutable[v - 1]
    }
    for i, j in quiver.edges:
        if quiver.mutable[i - 1] and quiver.mutable[j - 1]:
            adj[i].append(j)
    return adj


def _strongly_connected_components(adj: dict[int, list[int]]) -> list[list[int]]:
    """Iterative Tarjan; returns components in discovery order."""
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    components: list[list[int]] = []
    counter = 0
    for root in adj:
        if root in index:
            continue
        work = [(root, iter(adj[root]))]
        index[root] = lowlink[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = lowlink[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(adj[w])))
                    advanced = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
            if lowlink[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
    return components


def _cyclic_vertices(quiver: Quiver) -> set[int]:
    """Mutable vertices lying on some directed cycle (loops cannot occur)."""
    adj = _mutable_adjacency(quiver)
    out: set[int] = set()
    for comp in _strongly_connected_components(adj):
        if len(comp) > 1:
            out.update(comp)
    return out


def _reachable(adj: dict[int, list[int]], start: int) -> set[int]:
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen


def is_acyclic(seed: ExtendedExchangeMatrix) -> bool:
    """True iff the reduced quiver has no directed cycle of mutable vertices."""
    return not _cyclic_vertices(reduced(to_quiver(seed)))


def is_separating_edge(quiver: Quiver, i: int, j: int) -> bool:
    """Whether the edge i -> j fits into no bi-infinite directed path.

    Paths run through mutable vertices.  In a finite graph a bi-infinite
    path through the edge exists exactly when i is reachable from a directed
    cycle and j reaches one, so the check reduces to strongly-connected-
    component reachability.  Every mutable edge of an acyclic quiver is
    separating.
    """
    rq = reduced(quiver)
    if (i, j) not in rq.edges:
        raise EdgeNotFound(f"edge {i} -> {j} is not in the reduced quiver")
    if not (rq.mutable[i - 1] and rq.mutable[j - 1]):
        raise ValueError("separating edges are only defined between mutable vertices")
    cyclic = _cyclic_vertices(rq)
    adj = _mutable_adjacency(rq)
    radj: dict[int, list[int]] = {v: [] for v in adj}
    for a, b in adj.items():
        for w in b:
            radj[w].append(a)
    head_from_cycle = bool(_reachable(radj, i) & cyclic)
    tail_to_cycle = bool(_reachable(adj, j) & cyclic)
    return not (head_from_cycle and tail_to_cycle)


def freeze(
    seed: ExtendedExchangeMatrix, indices
) -> tuple[ExtendedExchangeMatrix, tuple[int, ...]]:
    """Freeze a subset of mutable vertices.

    Their columns are removed and the rows reordered to the canonical
    mutable-first layout (each class keeps its original relative order).
    Returns the new seed and the map new position -> original vertex.
    """
    chosen = sorted({int(v) for v in indices})
    for v in chosen:
        if not seed.is_mutable(v):
            raise VertexIndexError(f"cannot freeze vertex {v}: not a mutable index")
    keep = [v for v in range(1, seed.n + 1) if v not in chosen]
    order = keep + chosen + list(range(seed.n + 1, seed.vertex_count + 1))
    rows = [
        [seed.b.entries[v - 1][w - 1] for w in keep]
        for v in order
    ]
    new_seed = ExtendedExchangeMatrix(len(keep), seed.m + len(chosen), rows)
    return new_seed, tuple(order)


@dataclass(frozen=True)
class Classification:
    acyclic: bool
    isolated: bool
    louise: bool
    separating_edges: tuple[tuple[int, int], ...]

    def to_json(self) -> dict:
        return {
            "acyclic": self.acyclic,
            "isolated": self.isolated,
            "louise": self.louise,
            "separating_edges": [list(e) for e in self.separating_edges],
        }


def _mutable_edges(rq: Quiver) -> list[tuple[int, int]]:
    return sorted(
        (i, j) for (i, j) in rq.edges if rq.mutable[i - 1] and rq.mutable[j - 1]
    )


def _is_louise(seed: ExtendedExchangeMatrix, memo: dict) -> bool:
    key = (seed.n, seed.m, seed.b.entries)
    if key in memo:
        return memo[key]
    rq = reduced(to_quiver(seed))
    mutable_edges = _mutable_edges(rq)
    if not mutable_edges:
        memo[key] = True
        return True
    result = False
    for i, j in mutable_edges:
        if not is_separating_edge(rq, i, j):
            continue
        parts = ({i}, {j}, {i, j})
        if all(_is_louise(freeze(seed, part)[0], memo) for part in parts):
            result = True
            break
    memo[key] = result
    return result


def classify(seed: ExtendedExchangeMatrix) -> Classification:
    """Acyclic / isolated / Louise status plus the separating mutable edges.

    Isolated means no edges between mutable vertices; the Louise property is
    the recursion that freezes the endpoints of a separating edge, memoized
    on the exact seed matrix (freezing commutes with the canonical row
    layout, so repeated sub-seeds dedupe).
    """
    rq = reduced(to_quiver(seed))
    mutable_edges = _mutable_edges(rq)
    separating = tuple(
        (i, j) for (i, j) in mutable_edges if is_separating_edge(rq, i, j)
    )
    return Classification(
        acyclic=not _cyclic_vertices(rq),
        isolated=not mutable_edges,
        louise=_is_louise(seed, {}),
        separating_edges=separating,
    )


@dataclass(frozen=True)
class ExchangeEquation:
    """x_index * x'_index = prod x_i^positive[i] + prod x_i^negative[i]."""

    index: int
    positive: tuple[int, ...]
    negative: tuple[int, ...]


def acyclic_presentation(seed: ExtendedExchangeMatrix) -> tuple[ExchangeEquation, ...]:
    """The defining equations of an acyclic seed, one per mutable vertex.

    The two monomials are the positive and negative parts of the vertex's
    column; a zero column yields x * x' = 2 (both products empty).
    """
    if not is_acyclic(seed):
        raise NotAcyclic("the seed's reduced quiver contains a directed cycle")
    out = []
    for j in range(seed.n):
        col = [seed.b.entries[i][j] for i in range(seed.vertex_count)]
        out.append(
            ExchangeEquation(
                index=j + 1,
                positive=tuple(max(x, 0) for x in col),
                negative=tuple(max(-x, 0) for x in col),
            )
        )
    return tuple(out)
