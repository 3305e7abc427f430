"""Cluster record collections by shared keywords and explicit links.

Records become nodes of a weighted graph; edge weight mixes a binary
link indicator with Jaccard keyword similarity.  Partitioning is
threshold + connected components, then recursive Kernighan-Lin bisection
of any component still larger than the block limit.  Everything is
deterministic: ties break on document-id strings.
"""

from __future__ import annotations

from dataclasses import dataclass

from .aml import AmlDocument, extract_keywords, resolve_links

DEFAULT_W_LINK = 1.0
DEFAULT_W_KW = 1.0
DEFAULT_MIN_SIMILARITY = 0.1
DEFAULT_MAX_BLOCK = 8


@dataclass(frozen=True)
class RecordGraph:
    """Symmetric weighted graph over document ids; node order is input order."""

    nodes: tuple[str, ...]
    # keyed by index pairs (i, j) with i < j; zero-weight pairs absent
    weights: dict[tuple[int, int], float]

    def weight(self, i: int, j: int) -> float:
        if i == j:
            return 0.0
        key = (i, j) if i < j else (j, i)
        return self.weights.get(key, 0.0)

    def thresholded(self, tau: float) -> "RecordGraph":
        kept = {k: w for k, w in self.weights.items() if w >= tau}
        return RecordGraph(self.nodes, kept)

    def subgraph(self, indices: list[int]) -> "RecordGraph":
        """Induced subgraph; relative node order preserved."""
        remap = {old: new for new, old in enumerate(indices)}
        keep = set(indices)
        weights = {
            (remap[i], remap[j]): w
            for (i, j), w in self.weights.items()
            if i in keep and j in keep
        }
        return RecordGraph(tuple(self.nodes[i] for i in indices), weights)


@dataclass(frozen=True)
class Partition:
    """Disjoint non-empty blocks covering all nodes, canonically ordered."""

    blocks: tuple[tuple[str, ...], ...]

    @staticmethod
    def of(groups: list[list[str]]) -> "Partition":
        ordered = tuple(tuple(sorted(g)) for g in groups if g)
        return Partition(tuple(sorted(ordered, key=lambda b: b[0])))


def jaccard(a: set[str], b: set[str]) -> float:
    if not a and not b:
        return 0.0
    return len(a & b) / len(a | b)


def build_graph(
    docs: list[AmlDocument],
    w_link: float = DEFAULT_W_LINK,
    w_kw: float = DEFAULT_W_KW,
) -> RecordGraph:
    """weight(i,j) = w_link * linked(i,j) + w_kw * Jaccard(keywords)."""
    ids = []
    for d in docs:
        if not d.docid:
            raise ValueError("clustering requires every document to carry an id")
        ids.append(d.docid)
    if len(set(ids)) != len(ids):
        dup = sorted(i for i in set(ids) if ids.count(i) > 1)
        raise ValueError(f"duplicate document ids: {', '.join(dup)}")

    keywords = [extract_keywords(d) for d in docs]
    # outgoing cross-document targets per doc, both directions count as linked
    targets: list[set[str]] = []
    for d in docs:
        out = set()
        for rl in resolve_links(d, docs):
            if rl.status == "cross-document" and rl.target_docid:
                out.add(rl.target_docid)
        targets.append(out)

    weights: dict[tuple[int, int], float] = {}
    for i in range(len(docs)):
        for j in range(i + 1, len(docs)):
            linked = ids[j] in targets[i] or ids[i] in targets[j]
            w = w_link * (1.0 if linked else 0.0) + w_kw * jaccard(keywords[i], keywords[j])
            if w > 0.0:
                weights[(i, j)] = w
    return RecordGraph(tuple(ids), weights)


def _cut_weight(g: RecordGraph, a: set[int]) -> float:
    return sum(w for (i, j), w in g.weights.items() if (i in a) != (j in a))


def _kl_pass(g: RecordGraph, a: set[int], b: set[int]) -> bool:
    """One Kernighan-Lin pass; mutates a/b if a positive-gain prefix exists."""
    ids = g.nodes
    # D[v] = external - internal connection weight
    d = {}
    for v in a | b:
        same = a if v in a else b
        ext = sum(g.weight(v, u) for u in (b if v in a else a))
        d[v] = ext - sum(g.weight(v, u) for u in same if u != v)

    swaps: list[tuple[int, int]] = []
    gains: list[float] = []
    free_a, free_b = set(a), set(b)
    for _ in range(min(len(a), len(b))):
        best = None
        for x in free_a:
            for y in free_b:
                gain = d[x] + d[y] - 2.0 * g.weight(x, y)
                pair = tuple(sorted((ids[x], ids[y])))
                key = (-gain, pair)
                if best is None or key < best[0]:
                    best = (key, x, y, gain)
        _, x, y, gain = best
        swaps.append((x, y))
        gains.append(gain)
        free_a.discard(x)
        free_b.discard(y)
        for v in free_a:
            d[v] += 2.0 * g.weight(v, x) - 2.0 * g.weight(v, y)
        for v in free_b:
            d[v] += 2.0 * g.weight(v, y) - 2.0 * g.weight(v, x)

    best_k, best_total = 0, 0.0
    total = 0.0
    for k, gain in enumerate(gains, start=1):
        total += gain
        if total > best_total:
            best_k, best_total = k, total
    if best_k == 0:
        return False
    for x, y in swaps[:best_k]:
        a.remove(x)
        b.remove(y)
        a.add(y)
        b.add(x)
    return True


def kl_bisect(g: RecordGraph) -> tuple[Partition, float]:
    """Balanced two-way split by Kernighan-Lin from the even/odd seed."""
    n = len(g.nodes)
    if n < 2:
        raise ValueError("bisection needs at least 2 nodes")
    a = set(range(0, n, 2))
    b = set(range(1, n, 2))
    cut = _cut_weight(g, a)
    while True:
        prev_a, prev_b = set(a), set(b)
        if not _kl_pass(g, a, b):
            break
        # a pass can report a rounding-level gain for a swap that only
        # mirrors the partition; keep it only if the cut really dropped
        new_cut = _cut_weight(g, a)
        if not new_cut < cut:
            a, b = prev_a, prev_b
            break
        cut = new_cut
    part = Partition.of([[g.nodes[i] for i in a], [g.nodes[i] for i in b]])
    return part, cut


def _components(g: RecordGraph) -> list[list[int]]:
    """Connected components, each listed in node order, ordered by first node."""
    n = len(g.nodes)
    adj: dict[int, set[int]] = {i: set() for i in range(n)}
    for (i, j) in g.weights:
        adj[i].add(j)
        adj[j].add(i)
    seen: set[int] = set()
    comps = []
    for start in range(n):
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            v = stack.pop()
            comp.append(v)
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        comps.append(sorted(comp))
    return comps


def cluster(
    docs: list[AmlDocument],
    w_link: float = DEFAULT_W_LINK,
    w_kw: float = DEFAULT_W_KW,
    min_similarity: float = DEFAULT_MIN_SIMILARITY,
    max_block: int = DEFAULT_MAX_BLOCK,
) -> Partition:
    """Threshold, split into components, bisect anything larger than max_block."""
    if not docs:
        raise ValueError("no documents to cluster")
    if max_block < 1:
        raise ValueError(f"max_block must be >= 1, got {max_block}")
    g = build_graph(docs, w_link, w_kw).thresholded(min_similarity)

    blocks: list[list[str]] = []

    def refine(sub: RecordGraph) -> None:
        if len(sub.nodes) <= max_block:
            blocks.append(list(sub.nodes))
            return
        part, _ = kl_bisect(sub)
        index = {node: i for i, node in enumerate(sub.nodes)}
        for block in part.blocks:
            refine(sub.subgraph(sorted(index[n] for n in block)))

    for comp in _components(g):
        refine(g.subgraph(comp))
    return Partition.of(blocks)
