"""Independent brute-force checks for the main modules.

The enumerators here deliberately share no traversal logic with the
dynamic-programming path counter or the rewriting engine they validate:
path enumeration walks reversed edges breadth-first, cycle detection is a
fresh depth-first search, and basis enumeration lists paths forward.
Random generation is fully determined by its seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from . import algebra, structure
from .graph import (
    OMEGA,
    Bundle,
    EdgeRef,
    Graph,
    LeavittError,
    Path,
)


class ExplosionGuard(LeavittError):
    pass


def _rotations(edges: tuple) -> set:
    return {edges[k:] + edges[:k] for k in range(len(edges))}


def _cycles_through(g: Graph, v: str) -> list:
    """Elementary edge cycles through v, by direct DFS from v."""
    found = []

    def dfs(at, edges, visited):
        for b in g.out_bundles(at):
            mult = 2 if b.mult is OMEGA else b.mult
            for i in range(mult):
                e = EdgeRef(b.id, i)
                if b.dst == v:
                    found.append(edges + (e,))
                elif b.dst not in visited:
                    dfs(b.dst, edges + (e,), visited | {b.dst})

    dfs(v, (), {v})
    return found


def enumerate_paths_ending_at(g: Graph, v: str, length_cap: int,
                              max_paths: int = 100_000) -> list:
    """All paths of length <= length_cap ending at v, excluding those that
    run through v's unique cycle in full (when v lies on exactly one
    cycle).  Walks reversed edges breadth-first."""
    g.check_vertex(v)
    through = _cycles_through(g, v)
    exclude = _rotations(through[0]) if len(through) == 1 else None
    m = len(through[0]) if exclude else 0

    def excluded(edges):
        if not exclude or len(edges) < m:
            return False
        return any(edges[i:i + m] in exclude for i in range(len(edges) - m + 1))

    collected = []
    frontier = [Path(v)]
    while frontier:
        nxt = []
        for p in frontier:
            collected.append(p)
            if len(collected) > max_paths:
                raise ExplosionGuard(f"more than {max_paths} paths into {v!r}")
            if len(p.edges) >= length_cap:
                continue
            for b in g.in_bundles(p.base):
                if b.mult is OMEGA:
                    raise ExplosionGuard(
                        f"omega bundle {b.id!r} feeds paths into {v!r}")
                for i in range(b.mult):
                    cand = Path(b.src, (EdgeRef(b.id, i),) + p.edges)
                    if not excluded(cand.edges):
                        nxt.append(cand)
        frontier = nxt
    collected.sort(key=lambda p: (len(p.edges), p.edges, p.base))
    return collected


def _all_paths(g: Graph, length_cap: int, max_paths: int) -> list:
    paths = [Path(v) for v in g.vertices]
    frontier = list(paths)
    while frontier:
        nxt = []
        for p in frontier:
            at = p.edges and g.dst(p.edges[-1]) or p.base
            if len(p.edges) >= length_cap:
                continue
            for b in g.out_bundles(at):
                if b.mult is OMEGA:
                    raise ExplosionGuard(f"omega bundle {b.id!r} on a path")
                for i in range(b.mult):
                    nxt.append(Path(p.base, p.edges + (EdgeRef(b.id, i),)))
        paths.extend(nxt)
        if len(paths) > max_paths:
            raise ExplosionGuard(f"more than {max_paths} paths")
        frontier = nxt
    return paths


def basis_monomials(g: Graph, length_cap: int,
                    max_size: int = 200_000) -> list:
    """All normal-form monomials with |p| + |q| <= length_cap.  For a
    finite acyclic graph a cap of twice the longest path length yields the
    complete linear basis of the algebra."""
    by_range: dict = {}
    for p in _all_paths(g, length_cap, max_size):
        at = g.dst(p.edges[-1]) if p.edges else p.base
        by_range.setdefault(at, []).append(p)
    out = []
    for v, paths in sorted(by_range.items()):
        for p in paths:
            for q in paths:
                if len(p.edges) + len(q.edges) > length_cap:
                    continue
                m = algebra.Monomial(p, q)
                if p.edges and q.edges and p.edges[-1] == q.edges[-1] \
                        and algebra.special_edge(g, g.src(p.edges[-1])) == p.edges[-1]:
                    continue
                out.append(m)
                if len(out) > max_size:
                    raise ExplosionGuard(f"more than {max_size} monomials")
    out.sort(key=algebra._mono_key)
    return out


# -- random generation ---------------------------------------------------------

@dataclass(frozen=True)
class RandomSpec:
    seed: int
    max_vertices: int = 8
    max_bundles: int = 14
    max_mult: int = 2
    omega_probability: Fraction = Fraction(0)


def random_graph(spec: RandomSpec) -> Graph:
    rng = random.Random(spec.seed)
    n = rng.randint(1, spec.max_vertices)
    vertices = [f"v{i:02d}" for i in range(n)]
    m = rng.randint(0, spec.max_bundles)
    p = Fraction(spec.omega_probability)
    bundles = []
    for j in range(m):
        src = rng.choice(vertices)
        dst = rng.choice(vertices)
        if p and rng.randrange(p.denominator) < p.numerator:
            mult = OMEGA
        else:
            mult = rng.randint(1, spec.max_mult)
        bundles.append(Bundle(f"b{j:02d}", src, dst, mult))
    return Graph(vertices, bundles)


def _random_walk_forward(g: Graph, rng: random.Random, max_len: int) -> Path:
    at = rng.choice(g.vertices)
    edges = []
    for _ in range(rng.randint(0, max_len)):
        out = g.out_bundles(at)
        if not out:
            break
        b = rng.choice(out)
        idx = rng.randint(0, 3) if b.mult is OMEGA else rng.randrange(b.mult)
        edges.append(EdgeRef(b.id, idx))
        at = b.dst
    base = g.src(edges[0]) if edges else at
    return Path(base, tuple(edges))


def _random_walk_into(g: Graph, rng: random.Random, v: str,
                      max_len: int) -> Path:
    edges = []
    at = v
    for _ in range(rng.randint(0, max_len)):
        into = g.in_bundles(at)
        if not into:
            break
        b = rng.choice(into)
        idx = rng.randint(0, 3) if b.mult is OMEGA else rng.randrange(b.mult)
        edges.insert(0, EdgeRef(b.id, idx))
        at = b.src
    return Path(at, tuple(edges))


def random_raw_terms(g: Graph, spec: RandomSpec, max_terms: int = 4,
                     max_path_len: int = 3) -> list:
    """Reproducible raw (Monomial, coefficient) pairs, not normalized: each
    monomial joins a forward walk and a backward walk meeting at the same
    vertex."""
    rng = random.Random(spec.seed)
    raw = []
    if not g.vertices:
        return raw
    for _ in range(rng.randint(1, max_terms)):
        p = _random_walk_forward(g, rng, max_path_len)
        at = g.dst(p.edges[-1]) if p.edges else p.base
        q = _random_walk_into(g, rng, at, max_path_len)
        coeff = rng.choice([-3, -2, -1, 1, 2, 3])
        raw.append((algebra.Monomial(p, q), Fraction(coeff)))
    return raw


def random_element(g: Graph, spec: RandomSpec, max_terms: int = 4,
                   max_path_len: int = 3) -> algebra.Element:
    """Reproducible random element in normal form."""
    return algebra.normal_form(g, random_raw_terms(g, spec, max_terms,
                                                   max_path_len))


# -- cross-checking --------------------------------------------------------------

@dataclass(frozen=True)
class CrossCheckReport:
    n: int
    trials: int
    probe_bound: int
    seed: int
    nilpotent_found: int
    resource_limited: int
    empirical_max_index: int
    witness_index: int
    violations: tuple


def cross_check_index(g: Graph, trials: int = 500,
                      probe_bound: int | None = None,
                      seed: int = 0) -> CrossCheckReport:
    """Sample random elements of a bounded-index algebra and confirm no
    nilpotent element exceeds the reported bound; also build the witness
    and confirm it attains the bound exactly."""
    report = structure.bounded_index_report(g)
    if not isinstance(report, structure.Bounded):
        raise structure.PreconditionUnbounded(
            f"graph is unbounded: {report.reason!r}")
    n = report.n
    bound = probe_bound if probe_bound is not None else n + 3
    violations = []
    found = 0
    limited = 0
    empirical = 0
    master = random.Random(seed)
    for t in range(trials):
        sub = RandomSpec(seed=master.randrange(2 ** 63))
        a = random_element(g, sub)
        verdict = algebra.nilpotence_index(a, bound)
        if isinstance(verdict, algebra.NilpotentOfIndex):
            found += 1
            empirical = max(empirical, verdict.index)
            if verdict.index > n:
                violations.append(
                    f"trial {t} (seed {sub.seed}): nilpotent of index "
                    f"{verdict.index} > {n}")
        elif isinstance(verdict, algebra.ResourceLimit):
            limited += 1
    if report.witness_recipe is None:
        witness_index = 1
    else:
        units = structure.witness_matrix_units(g, report)
        j = algebra.jordan_element(units)
        verdict = algebra.nilpotence_index(j, n + 1)
        witness_index = verdict.index if isinstance(
            verdict, algebra.NilpotentOfIndex) else -1
    if witness_index != n:
        violations.append(
            f"witness jordan element has index {witness_index}, expected {n}")
    return CrossCheckReport(
        n=n, trials=trials, probe_bound=bound, seed=seed,
        nilpotent_found=found, resource_limited=limited,
        empirical_max_index=empirical, witness_index=witness_index,
        violations=tuple(violations))
