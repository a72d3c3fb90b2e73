"""Built-in example graphs used by the test suite and the CLI fixtures."""

from __future__ import annotations

from .graph import Bundle, Graph, OMEGA


def clock(m: int) -> Graph:
    """One center emitting a single edge to each of m sinks."""
    vs = ["v"] + [f"w{i}" for i in range(1, m + 1)]
    bs = [Bundle(f"e{i}", "v", f"w{i}") for i in range(1, m + 1)]
    return Graph(vs, bs)


def inverse_clock(m: int = 3) -> Graph:
    """m sources each emitting a single edge into one common sink."""
    vs = ["w"] + [f"w{i}" for i in range(1, m + 1)]
    bs = [Bundle(f"e{i}", f"w{i}", "w") for i in range(1, m + 1)]
    return Graph(vs, bs)


def line(n: int) -> Graph:
    """Path graph on n vertices."""
    vs = [f"u{i}" for i in range(1, n + 1)]
    bs = [Bundle(f"e{i}", f"u{i}", f"u{i + 1}") for i in range(1, n)]
    return Graph(vs, bs)


def single_loop() -> Graph:
    return Graph(["v"], [Bundle("e", "v", "v")])


def loop_with_tail() -> Graph:
    """An edge u -> v feeding a unit loop at v."""
    return Graph(["u", "v"], [Bundle("e", "v", "v"), Bundle("t", "u", "v")])


def two_loops() -> Graph:
    """Two unit loop bundles at one vertex."""
    return Graph(["v"], [Bundle("a", "v", "v"), Bundle("b", "v", "v")])


def graph_f() -> Graph:
    """Two 4-cycles joined by one edge f: the a-cycle can exit through f
    into the b-cycle, which has no exit."""
    vs = [f"g{i}" for i in range(1, 5)] + [f"c{i}" for i in range(1, 5)]
    bs = [
        Bundle("a1", "g1", "g2"),
        Bundle("a2", "g2", "g3"),
        Bundle("a3", "g3", "g4"),
        Bundle("a4", "g4", "g1"),
        Bundle("b1", "c1", "c2"),
        Bundle("b2", "c2", "c3"),
        Bundle("b3", "c3", "c4"),
        Bundle("b4", "c4", "c1"),
        Bundle("f", "g1", "c1"),
    ]
    return Graph(vs, bs)


def omega_gadget() -> Graph:
    """An infinite emitter v with an omega bundle into sink h and one unit
    edge into sink w."""
    return Graph(["v", "h", "w"],
                 [Bundle("a", "v", "h", OMEGA), Bundle("e", "v", "w")])


CORPUS = {
    "clock3": lambda: clock(3),
    "clock5": lambda: clock(5),
    "inverse_clock3": lambda: inverse_clock(3),
    "line1": lambda: line(1),
    "line2": lambda: line(2),
    "line3": lambda: line(3),
    "line4": lambda: line(4),
    "line5": lambda: line(5),
    "line6": lambda: line(6),
    "single_loop": single_loop,
    "loop_with_tail": loop_with_tail,
    "two_loops": two_loops,
    "graph_f": graph_f,
    "omega_gadget": omega_gadget,
}


def build(name: str) -> Graph:
    return CORPUS[name]()
