"""Named graphs: the path/pentagon examples and the two diameter-2 families."""
from __future__ import annotations

from .errors import InputError
from .graphs import Graph, complement, cycle_graph, path_graph


def lambda_n(n: int) -> Graph:
    """Diameter-2 biconnected graph on v1..vn, x, y containing an induced P_n.

    For n = 3 this is the pentagon x v1 v2 v3 y.  For n >= 4, x joins v2..vn
    and y joins v1, v4..vn.
    """
    if n < 3:
        raise InputError("lambda_n needs n >= 3")
    vs = [f"v{k}" for k in range(1, n + 1)]
    if n == 3:
        return cycle_graph(["x", "v1", "v2", "v3", "y"])
    edges = list(zip(vs, vs[1:]))
    edges += [("x", f"v{i}") for i in range(2, n + 1)]
    edges += [("y", f"v{j}") for j in [1] + list(range(4, n + 1))]
    return Graph(vs + ["x", "y"], edges)


def gamma_n(n: int) -> Graph:
    if n < 4:
        raise InputError("gamma_n needs n >= 4")
    return complement(lambda_n(n))


def fig3b() -> Graph:
    vs = [f"v{k}" for k in range(7)]
    edges = [(f"v{k}", f"v{k + 1}") for k in range(1, 6)]
    edges += [("v0", f"v{k}") for k in range(2, 7)]
    return Graph(vs, edges)


def named_examples() -> dict[str, Graph]:
    return {"p6": path_graph(6), "fig3b": fig3b(), "c5": cycle_graph(5), "p4": path_graph(4)}
