"""Structure-level classifiers for the path algebra of a finite graph.

The central decision: the algebra has bounded index of nilpotence exactly
when no cycle has an exit and the number of paths ending at every sink or
cycle stays finite; the bound n is the maximum such count, and a family of
n x n matrix units inside the algebra witnesses that it is attained.  An
exit, an omega path family, or a multi-cycle vertex each witness
unboundedness.  On top of that sit the polynomial-identity and
direct-finiteness predicates, graded-quotient classification, and the
matrix-ring decomposition available for row-finite graphs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import algebra
from .graph import (
    OMEGA,
    AdmissiblePair,
    Count,
    Cycle,
    EdgeRef,
    Graph,
    LeavittError,
    Path,
    all_hereditary_saturated,
    breaking_vertices,
    count_paths_ending_at,
    cycle_exit_witness,
    cycle_to_path,
    cycle_vertices,
    cycles,
    downward_directed,
    path_contains_cycle,
    quotient_graph,
    vertices_on_cycles,
)


class PreconditionUnbounded(LeavittError):
    pass


class NotRowFinite(LeavittError):
    pass


class LaurentFactorPresent(LeavittError):
    pass


# -- index report -------------------------------------------------------------

@dataclass(frozen=True)
class SinkTarget:
    vertex: str


@dataclass(frozen=True)
class CycleTarget:
    cycle: Cycle


@dataclass(frozen=True)
class CycleWithExit:
    cycle: Cycle
    edge: EdgeRef


@dataclass(frozen=True)
class OmegaPathFamily:
    vertex: str


@dataclass(frozen=True)
class MultiCycleVertex:
    vertex: str


@dataclass(frozen=True)
class Bounded:
    """Bounded-index verdict: n, the per-target path counts attaining it,
    and a matrix-unit recipe for a target achieving n (None only for the
    empty graph, whose algebra is the zero ring)."""

    n: int
    per_target: tuple  # pairs (SinkTarget | CycleTarget, int)
    witness_recipe: object


@dataclass(frozen=True)
class Unbounded:
    reason: object  # CycleWithExit | OmegaPathFamily | MultiCycleVertex


def _paths_into(g: Graph, v: str, exclude_cycle: Cycle | None,
                limit: int) -> list:
    """Up to `limit` distinct paths ending at v, skipping paths that run
    through `exclude_cycle` in full.  Backward depth-first collection;
    only called when the count at v is known finite."""
    found = []
    stack = [Path(v)]
    while stack and len(found) < limit:
        p = stack.pop()
        if exclude_cycle is not None and path_contains_cycle(g, p, exclude_cycle):
            continue
        found.append(p)
        for b in sorted(g.in_bundles(p.base), key=lambda b: b.id, reverse=True):
            for i in range(b.mult - 1, -1, -1):
                stack.append(Path(b.src, (EdgeRef(b.id, i),) + p.edges))
    found.sort(key=lambda p: (len(p.edges), p.edges, p.base))
    return found


def _witness_recipe(g: Graph, target, n: int):
    if isinstance(target, SinkTarget):
        paths = _paths_into(g, target.vertex, None, n)
        return algebra.Acyclic(tuple(paths))
    c = target.cycle
    base = g.src(c.edges[0])
    paths = _paths_into(g, base, c, n)
    return algebra.NoExitCycle(tuple(paths), c)


def bounded_index_report(g: Graph):
    """Decide bounded index of nilpotence with constructive witnesses.

    A cycle with an exit, or an infinite path family into a sink or cycle,
    yields Unbounded; otherwise n is the maximum path count over sinks and
    cycles (paths into interior vertices always extend to a target, so the
    maximum is attained there)."""
    w = cycle_exit_witness(g)
    if w is not None:
        return Unbounded(CycleWithExit(w.cycle, w.edge))
    per_target = []
    for v in g.sinks():
        cnt = count_paths_ending_at(g, v)
        if not cnt.finite:
            return Unbounded(OmegaPathFamily(v))
        per_target.append((SinkTarget(v), cnt.value))
    for c in cycles(g):
        base = g.src(c.edges[0])
        cnt = count_paths_ending_at(g, base)
        if not cnt.finite:
            return Unbounded(OmegaPathFamily(base))
        per_target.append((CycleTarget(c), cnt.value))
    if not per_target:
        return Bounded(1, (), None)
    n = max(cnt for _, cnt in per_target)
    best = next(t for t, cnt in per_target if cnt == n)
    return Bounded(n, tuple(per_target), _witness_recipe(g, best, n))


def is_PI(g: Graph) -> bool:
    """Whether the algebra satisfies a polynomial identity; equivalent to
    the bounded-index verdict."""
    return isinstance(bounded_index_report(g), Bounded)


def is_directly_finite(g: Graph) -> bool:
    """Whether one-sided inverses in the algebra are two-sided; holds
    exactly when no cycle has an exit."""
    return cycle_exit_witness(g) is None


# -- witness construction ----------------------------------------------------

def witness_matrix_units(g: Graph, report, size: int | None = None):
    """Instantiate matrix units from an index report.

    Bounded reports build their recipe (size defaults to n and may not
    exceed it).  A CycleWithExit reason builds exit units of any requested
    size; an OmegaPathFamily reason builds units of any requested size from
    paths through the omega bundle."""
    if isinstance(report, Bounded):
        recipe = report.witness_recipe
        if recipe is None:
            raise LeavittError("the empty graph has no matrix-unit witness")
        n = size if size is not None else report.n
        if n > report.n:
            raise LeavittError(
                f"graph admits at most {report.n} x {report.n} units")
        if isinstance(recipe, algebra.Acyclic):
            return algebra.matrix_units_acyclic(g, recipe.paths[:n])
        return algebra.matrix_units_no_exit_cycle(
            g, recipe.cycle, recipe.paths[:n])
    reason = report.reason
    n = size if size is not None else 3
    if isinstance(reason, CycleWithExit):
        return algebra.matrix_units_exit(g, reason.cycle, reason.edge, n)
    if isinstance(reason, OmegaPathFamily):
        return _omega_family_units(g, reason.vertex, n)
    raise LeavittError(f"no witness construction for {reason!r}")


def _omega_family_units(g: Graph, v: str, n: int):
    from .graph import reachable
    for b in g.bundles:
        if b.mult is OMEGA and reachable(g, b.dst, v):
            tail = _shortest_path(g, b.dst, v)
            paths = tuple(
                Path(b.src, (EdgeRef(b.id, i),) + tail.edges) for i in range(n))
            on_cycles = vertices_on_cycles(g)
            if v not in on_cycles:
                return algebra.matrix_units_acyclic(g, paths)
            c = next(c for c in cycles(g) if v in cycle_vertices(g, c))
            return algebra.matrix_units_no_exit_cycle(g, c, paths)
    raise LeavittError(f"no omega bundle reaches {v!r}")


def _shortest_path(g: Graph, u: str, v: str) -> Path:
    from collections import deque
    if u == v:
        return Path(u)
    best = {u: Path(u)}
    queue = deque([u])
    while queue:
        at = queue.popleft()
        for b in sorted(g.out_bundles(at), key=lambda b: b.id):
            if b.dst not in best:
                best[b.dst] = Path(u, best[at].edges + (EdgeRef(b.id, 0),))
                if b.dst == v:
                    return best[v]
                queue.append(b.dst)
    raise LeavittError(f"no path {u!r} -> {v!r}")


# -- graded quotient classification -------------------------------------------

@dataclass(frozen=True)
class MatK:
    t: int


@dataclass(frozen=True)
class MatLaurent:
    t: int


@dataclass(frozen=True)
class NotDownwardDirected:
    pass


def classify_graded_quotient(g: Graph, pair: AdmissiblePair):
    """Classify the quotient by the graded ideal of an admissible pair,
    assuming the ambient graph has bounded index.

    A quotient whose vertex set is empty or not downward directed reports
    NotDownwardDirected; otherwise it has exactly one sink or one no-exit
    cycle and classifies as t x t matrices over the field or over Laurent
    polynomials, t the path count at that target inside the quotient."""
    report = bounded_index_report(g)
    if not isinstance(report, Bounded):
        raise PreconditionUnbounded(f"ambient graph is unbounded: {report.reason!r}")
    return _classify_quotient(quotient_graph(g, pair))


def _classify_quotient(q: Graph):
    if not q.vertices or not downward_directed(q, q.vertices):
        return NotDownwardDirected()
    sinks = q.sinks()
    qcycles = cycles(q)
    assert len(sinks) + len(qcycles) == 1, "downward-directed bounded quotient must have one target"
    if sinks:
        t = count_paths_ending_at(q, sinks[0])
        return MatK(t.value)
    base = q.src(qcycles[0].edges[0])
    t = count_paths_ending_at(q, base)
    return MatLaurent(t.value)


def graded_spectrum(g: Graph, cap: int = 15) -> list:
    """Classify every admissible pair whose quotient is downward directed,
    in deterministic (H, S) order."""
    report = bounded_index_report(g)
    if not isinstance(report, Bounded):
        raise PreconditionUnbounded(f"graph is unbounded: {report.reason!r}")
    out = []
    for H in all_hereditary_saturated(g, cap):
        B = sorted(breaking_vertices(g, H))
        for k in range(1 << len(B)):
            S = frozenset(B[i] for i in range(len(B)) if k >> i & 1)
            pair = AdmissiblePair(H, S)
            cls = _classify_quotient(quotient_graph(g, pair))
            if not isinstance(cls, NotDownwardDirected):
                out.append((pair, cls))
    return out


# -- decomposition ------------------------------------------------------------

BASE_K = "K"
BASE_LAURENT = "K[x,x^-1]"


@dataclass(frozen=True, order=True)
class Factor:
    size: int
    base: str


@dataclass(frozen=True)
class Decomposition:
    factors: tuple  # sorted Factor multiset


def decompose(g: Graph) -> Decomposition:
    """Matrix-ring decomposition of a row-finite bounded-index algebra:
    one K factor per sink, one Laurent factor per no-exit cycle, sized by
    their path counts."""
    if any(b.mult is OMEGA for b in g.bundles):
        raise NotRowFinite("graph has an omega bundle")
    report = bounded_index_report(g)
    if not isinstance(report, Bounded):
        raise PreconditionUnbounded(f"graph is unbounded: {report.reason!r}")
    factors = []
    generators = set()
    for target, cnt in report.per_target:
        if isinstance(target, SinkTarget):
            factors.append(Factor(cnt, BASE_K))
            generators.add(target.vertex)
        else:
            factors.append(Factor(cnt, BASE_LAURENT))
            generators.update(cycle_vertices(g, target.cycle))
    from .graph import hereditary_saturated_closure
    closure = hereditary_saturated_closure(g, generators)
    assert closure == frozenset(g.vertices), \
        "sinks and cycles must generate the whole graph"
    return Decomposition(tuple(sorted(factors)))


def acyclic_dimension(d: Decomposition) -> int:
    """Total dimension sum of t^2 over the factors; defined only when all
    factors are over K."""
    for f in d.factors:
        if f.base != BASE_K:
            raise LaurentFactorPresent(f"factor M_{f.size}({f.base})")
    return sum(f.size ** 2 for f in d.factors)
