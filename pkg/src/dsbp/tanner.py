"""Tanner graph of a data-syndrome check matrix.

Check node m is adjacent to data node n whenever S_mn != I (the edge is
labeled with that symbol) and always to its own syndrome node N + m.
Variables are numbered 0..N-1 (data) then N..N+M-1 (syndrome).  Neighbor
lists are kept in ascending variable index, which puts the syndrome
neighbor last in every check; the decoders rely on this fixed order.

For message passing the adjacency is flattened into CSR-style arrays over
edge ids e = 0..E-1, grouped by check:

    chk_ptr[m] : chk_ptr[m+1]   edge ids of check m
    edge_var[e]                 variable index of edge e
    edge_label[e]               symbol code (X=1, Y=2, Z=3; 0 on syndrome edges)
    var_ptr[n] : var_ptr[n+1]   positions into var_edges for variable n
    var_edges[j]                edge ids of variable n, ascending check index
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .codes import DsCheckMatrix

PAULI_CHARS = "IXYZ"

# Edge styles per label in DOT exports: X solid, Y dashed, Z dotted.
_DOT_STYLES = {1: "solid", 2: "dashed", 3: "dotted"}


@dataclass(frozen=True)
class TannerGraph:
    n_data: int
    n_synd: int
    chk_ptr: np.ndarray
    edge_var: np.ndarray
    edge_label: np.ndarray
    var_ptr: np.ndarray
    var_edges: np.ndarray
    edge_check: np.ndarray = field(repr=False)

    @property
    def n_edges(self) -> int:
        return int(self.edge_var.shape[0])

    @property
    def n_vars(self) -> int:
        return self.n_data + self.n_synd

    def check_adj(self, m: int) -> list[tuple[int, int]]:
        """Neighbors of check m as (variable, label) pairs; label 0 marks
        the syndrome neighbor."""
        lo, hi = int(self.chk_ptr[m]), int(self.chk_ptr[m + 1])
        return [
            (int(self.edge_var[e]), int(self.edge_label[e]))
            for e in range(lo, hi)
        ]

    def var_adj(self, n: int) -> list[int]:
        """Checks adjacent to variable n, ascending."""
        lo, hi = int(self.var_ptr[n]), int(self.var_ptr[n + 1])
        return [int(self.edge_check[self.var_edges[j]]) for j in range(lo, hi)]


def build(ds: DsCheckMatrix) -> TannerGraph:
    """Build the graph; identical inputs give identical adjacency."""
    code = ds.base
    n, m = code.n, code.m
    symbols = code.symbols

    chk_ptr = np.zeros(m + 1, dtype=np.int64)
    edge_var: list[int] = []
    edge_label: list[int] = []
    edge_check: list[int] = []
    for row in range(m):
        support = np.nonzero(symbols[row])[0]
        for col in support:
            edge_var.append(int(col))
            edge_label.append(int(symbols[row, col]))
            edge_check.append(row)
        # syndrome neighbor, always present and last
        edge_var.append(n + row)
        edge_label.append(0)
        edge_check.append(row)
        chk_ptr[row + 1] = len(edge_var)

    edge_var_a = np.array(edge_var, dtype=np.int64)
    edge_label_a = np.array(edge_label, dtype=np.uint8)
    edge_check_a = np.array(edge_check, dtype=np.int64)

    n_vars = n + m
    var_ptr = np.zeros(n_vars + 1, dtype=np.int64)
    np.add.at(var_ptr[1:], edge_var_a, 1)
    np.cumsum(var_ptr, out=var_ptr)
    var_edges = np.empty(edge_var_a.shape[0], dtype=np.int64)
    cursor = var_ptr[:-1].copy()
    # Edge ids ascend with check index, so filling in edge order keeps each
    # variable's edge list sorted by check.
    for e in range(edge_var_a.shape[0]):
        v = edge_var_a[e]
        var_edges[cursor[v]] = e
        cursor[v] += 1

    for arr in (chk_ptr, edge_var_a, edge_label_a, edge_check_a, var_ptr, var_edges):
        arr.setflags(write=False)

    return TannerGraph(
        n_data=n,
        n_synd=m,
        chk_ptr=chk_ptr,
        edge_var=edge_var_a,
        edge_label=edge_label_a,
        var_ptr=var_ptr,
        var_edges=var_edges,
        edge_check=edge_check_a,
    )


def to_dot(g: TannerGraph) -> str:
    """GraphViz rendering with distinct styles for the three edge labels."""
    lines = ["graph tanner {", "  rankdir=LR;"]
    for n in range(g.n_data):
        lines.append(f'  d{n} [shape=circle, label="E{n + 1}"];')
    for m in range(g.n_synd):
        lines.append(f'  c{m} [shape=box, style=filled, label=""];')
    for m in range(g.n_synd):
        lines.append(f'  s{m} [shape=circle, label="e{m + 1}"];')
    for m in range(g.n_synd):
        for v, label in g.check_adj(m):
            if label == 0:
                lines.append(f"  c{m} -- s{v - g.n_data} [penwidth=0.5];")
            else:
                lines.append(
                    f"  d{v} -- c{m} [style={_DOT_STYLES[label]}, "
                    f'label="{PAULI_CHARS[label]}"];'
                )
    lines.append("}")
    return "\n".join(lines) + "\n"
