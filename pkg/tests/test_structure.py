import pytest

from leavitt import corpus
from leavitt.algebra import (
    NilpotentOfIndex,
    jordan_element,
    nilpotence_index,
    verify_matrix_units,
)
from leavitt.graph import (
    AdmissiblePair,
    Bundle,
    EdgeRef,
    Graph,
    hereditary_saturated_closure,
)
from leavitt.structure import (
    BASE_K,
    BASE_LAURENT,
    Bounded,
    CycleTarget,
    CycleWithExit,
    Decomposition,
    Factor,
    LaurentFactorPresent,
    MatK,
    MatLaurent,
    NotDownwardDirected,
    NotRowFinite,
    OmegaPathFamily,
    PreconditionUnbounded,
    SinkTarget,
    Unbounded,
    acyclic_dimension,
    bounded_index_report,
    classify_graded_quotient,
    decompose,
    graded_spectrum,
    is_PI,
    is_directly_finite,
    witness_matrix_units,
)


def test_clock5_bounded():
    report = bounded_index_report(corpus.clock(5))
    assert isinstance(report, Bounded)
    assert report.n == 2
    assert all(cnt == 2 for _, cnt in report.per_target)
    assert len(report.per_target) == 5


def test_graph_f_unbounded():
    report = bounded_index_report(corpus.graph_f())
    assert isinstance(report, Unbounded)
    reason = report.reason
    assert isinstance(reason, CycleWithExit)
    assert [e.bundle for e in reason.cycle.edges] == ["a1", "a2", "a3", "a4"]
    assert reason.edge == EdgeRef("f")


@pytest.mark.parametrize("n", range(1, 7))
def test_line_bounded(n):
    report = bounded_index_report(corpus.line(n))
    assert isinstance(report, Bounded) and report.n == n


def test_omega_gadget_unbounded():
    report = bounded_index_report(corpus.omega_gadget())
    assert report == Unbounded(OmegaPathFamily("h")) or \
        isinstance(report.reason, OmegaPathFamily)
    assert report.reason.vertex == "h"


def test_empty_graph_bounded_one():
    report = bounded_index_report(Graph([]))
    assert isinstance(report, Bounded)
    assert report.n == 1 and report.per_target == () and report.witness_recipe is None


def test_is_PI():
    assert is_PI(corpus.clock(5))
    assert not is_PI(corpus.graph_f())
    assert is_PI(Graph([]))


def test_directly_finite():
    assert not is_directly_finite(corpus.graph_f())
    assert is_directly_finite(corpus.single_loop())
    og = corpus.omega_gadget()
    assert is_directly_finite(og) and not is_PI(og)  # strict implication


def test_classify_clock3():
    g = corpus.clock(3)
    H = hereditary_saturated_closure(g, ["w2", "w3"])
    assert classify_graded_quotient(g, AdmissiblePair(H)) == MatK(2)


def test_classify_empty_quotient():
    g = corpus.clock(3)
    pair = AdmissiblePair(frozenset(g.vertices))
    assert classify_graded_quotient(g, pair) == NotDownwardDirected()


def test_classify_loop_with_tail():
    lt = corpus.loop_with_tail()
    assert classify_graded_quotient(lt, AdmissiblePair(frozenset())) == MatLaurent(2)


def test_classify_requires_bounded():
    with pytest.raises(PreconditionUnbounded):
        classify_graded_quotient(corpus.graph_f(), AdmissiblePair(frozenset()))


def test_spectrum_clock3():
    spec = graded_spectrum(corpus.clock(3))
    assert spec  # some downward-directed quotient exists
    for pair, cls in spec:
        assert isinstance(cls, MatK) and cls.t <= 2
        assert pair.S == frozenset()


def test_spectrum_single_loop():
    spec = graded_spectrum(corpus.single_loop())
    assert spec == [(AdmissiblePair(frozenset()), MatLaurent(1))]


def test_spectrum_single_vertex():
    spec = graded_spectrum(corpus.line(1))
    assert spec == [(AdmissiblePair(frozenset()), MatK(1))]


def test_decompose_clock5():
    d = decompose(corpus.clock(5))
    assert d.factors == (Factor(2, BASE_K),) * 5


def test_decompose_loop_with_tail():
    d = decompose(corpus.loop_with_tail())
    assert d.factors == (Factor(2, BASE_LAURENT),)


def test_decompose_single_vertex():
    assert decompose(corpus.line(1)).factors == (Factor(1, BASE_K),)


def test_decompose_factor_count_is_targets():
    g = Graph(["a", "b", "s1", "s2"],
              [Bundle("e", "a", "a"), Bundle("t", "b", "s1"),
               Bundle("u", "b", "s2", 1)])
    report = bounded_index_report(g)
    d = decompose(g)
    assert len(d.factors) == len(report.per_target) == 3
    assert max(f.size for f in d.factors) == report.n


def test_decompose_errors():
    with pytest.raises(NotRowFinite):
        decompose(corpus.omega_gadget())
    with pytest.raises(PreconditionUnbounded):
        decompose(corpus.graph_f())


def test_acyclic_dimension():
    assert acyclic_dimension(decompose(corpus.clock(5))) == 20
    assert acyclic_dimension(decompose(corpus.line(4))) == 16
    assert acyclic_dimension(Decomposition((Factor(1, BASE_K),))) == 1
    with pytest.raises(LaurentFactorPresent):
        acyclic_dimension(decompose(corpus.loop_with_tail()))


def test_witness_recipe_attains_bound():
    for name in ["clock5", "line4", "loop_with_tail", "inverse_clock3",
                 "single_loop"]:
        g = corpus.build(name)
        report = bounded_index_report(g)
        units = witness_matrix_units(g, report)
        assert verify_matrix_units(units), name
        j = jordan_element(units)
        assert nilpotence_index(j, report.n + 1) == NilpotentOfIndex(report.n), name


def test_witness_any_size_when_unbounded():
    f = corpus.graph_f()
    report = bounded_index_report(f)
    for n in (2, 5):
        units = witness_matrix_units(f, report, n)
        assert units.n == n and verify_matrix_units(units)
    og = corpus.omega_gadget()
    report = bounded_index_report(og)
    units = witness_matrix_units(og, report, 4)
    assert verify_matrix_units(units)
    assert nilpotence_index(jordan_element(units), 5) == NilpotentOfIndex(4)


def test_witness_size_capped_when_bounded():
    g = corpus.clock(5)
    report = bounded_index_report(g)
    units = witness_matrix_units(g, report, 1)
    assert units.n == 1
    with pytest.raises(Exception):
        witness_matrix_units(g, report, 3)  # only n=2 paths exist


def test_bound_attained_at_targets_only():
    # n computed over sinks/cycles equals the maximum over ALL vertices
    from leavitt.graph import count_paths_ending_at
    from leavitt.oracle import RandomSpec, random_graph
    for seed in range(120):
        g = random_graph(RandomSpec(seed=seed))
        report = bounded_index_report(g)
        if isinstance(report, Bounded) and g.vertices:
            per_vertex = max(count_paths_ending_at(g, v).value
                             for v in g.vertices)
            assert per_vertex == report.n, seed


def test_spectrum_sizes_bounded_by_global_n():
    from leavitt.oracle import RandomSpec, random_graph
    corpus_and_random = [corpus.build(n) for n in
                         ["clock3", "clock5", "line3", "loop_with_tail",
                          "single_loop", "inverse_clock3"]]
    corpus_and_random += [random_graph(RandomSpec(seed=s)) for s in range(40)]
    for g in corpus_and_random:
        report = bounded_index_report(g)
        if not isinstance(report, Bounded):
            continue
        for _, cls in graded_spectrum(g):
            assert cls.t <= report.n
