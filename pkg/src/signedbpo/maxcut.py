"""Max-Cut instances in rudy/Biq Mac text format and their BPO encoding.

Format: a header line ``n m`` followed by m edge lines ``i j w`` with
1-based endpoints and rational weights (integers, p/q, or decimals).  The
cut maximization problem becomes the binary minimization of

    f(x) = -sum_{ij in E} w_ij (x_i + x_j - 2 x_i x_j)

so min f = -maxcut, and a relaxation lower bound lam on min f maps to the
upper bound -lam on the maximum cut.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .polynomials import Polynomial, Support


@dataclass(frozen=True)
class Graph:
    """An undirected weighted graph with canonical i < j edges."""

    n_nodes: int
    edges: tuple[tuple[int, int, Fraction], ...]

    def __post_init__(self):
        seen: set[tuple[int, int]] = set()
        for i, j, _ in self.edges:
            if not (1 <= i < j <= self.n_nodes):
                raise ValueError(f"edge ({i},{j}) out of range for n={self.n_nodes}")
            if (i, j) in seen:
                raise ValueError(f"duplicate edge ({i},{j})")
            seen.add((i, j))

    def cut_value(self, x) -> Fraction:
        """The cut weight of the 0/1 side assignment x (1-based nodes)."""
        total = Fraction(0)
        for i, j, w in self.edges:
            if x[i - 1] != x[j - 1]:
                total += w
        return total


def parse_rudy(text: str) -> Graph:
    """Parse rudy text; normalizes edge orientation, rejects malformed input."""
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty rudy input")
    header = lines[0].split()
    if len(header) != 2:
        raise ValueError(f"malformed header {lines[0]!r}, expected 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError as exc:
        raise ValueError(f"malformed header {lines[0]!r}") from exc
    if len(lines) - 1 != m:
        raise ValueError(f"header announces {m} edges, found {len(lines) - 1} lines")
    edges: list[tuple[int, int, Fraction]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"line {lineno}: expected 'i j w', got {line!r}")
        try:
            i, j = int(parts[0]), int(parts[1])
            w = Fraction(parts[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: malformed edge {line!r}") from exc
        if i == j:
            raise ValueError(f"line {lineno}: self loop ({i},{j})")
        if i > j:
            i, j = j, i
        if not (1 <= i and j <= n):
            raise ValueError(f"line {lineno}: edge ({i},{j}) index out of range")
        edges.append((i, j, w))
    return Graph(n, tuple(edges))


def serialize_rudy(g: Graph) -> str:
    lines = [f"{g.n_nodes} {len(g.edges)}"]
    for i, j, w in g.edges:
        lines.append(f"{i} {j} {w}")
    return "\n".join(lines) + "\n"


def maxcut_to_bpo(g: Graph) -> Polynomial:
    """The quadratic BPO encoding: f(x) = -cut(x) for every assignment."""
    terms: dict[Support, Fraction] = {}

    def bump(sup: Support, delta: Fraction) -> None:
        terms[sup] = terms.get(sup, Fraction(0)) + delta

    for i, j, w in g.edges:
        bump((i,), -w)
        bump((j,), -w)
        bump((i, j), 2 * w)
    return Polynomial(g.n_nodes, terms)
