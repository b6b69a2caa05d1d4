"""Exact minimization of NNS polynomials by max-flow/min-cut reduction.

An NNS polynomial (nonpositive nonlinear coefficients) is submodular, and
its binary minimum reduces to a min s-t cut in a three-layer network: one
node per negative nonlinear monomial, one node per variable, source arcs
weighted by the negated monomial coefficients, unlimited monomial-to-
variable arcs, and sink arcs weighted by the positive parts of the linear
coefficients.  Variables with nonpositive linear coefficients are fixed to
one up front; the cut value plus the preprocessing shifts recovers the
exact minimum, and the source side of the cut recovers a minimizer.

All capacities and flow values are exact rationals; unlimited capacity is
a tagged sentinel, never a numeric big-M.  Networks are immutable inputs;
each solve builds its own mutable flow state, so distinct solves can run
concurrently.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction

from .arith import QZERO, q, to_fraction
from .polynomials import (
    Polynomial,
    Support,
    classify,
    evaluate,
    grlex_key,
    is_nns_family,
)


class NotNNSError(ValueError):
    """The operation requires an NNS/NS/affine polynomial."""


#: Sentinel for unlimited arc capacity.
INF = object()

SOURCE = "s"
SINK = "t"


@dataclass(frozen=True)
class ReducedForm:
    """The preprocessed pieces of an NNS polynomial.

    f(x) = f_const + sum_A f_a x^a + sum_j f_j x_j with every f_a < 0 on
    the nonlinear support A.  ``shift`` is sum_A f_a, ``fixed_ones`` the
    variables whose linear coefficient is nonpositive (fixable to one).
    """

    n_vars: int
    f_const: Fraction
    f_a: Fraction
    neg_terms: dict[Support, Fraction]
    lin_terms: dict[int, Fraction]
    fixed_ones: frozenset[int]


def reduce(f: Polynomial) -> ReducedForm:
    """Extract the reduced form; raises NotNNSError on positive nonlinear terms."""
    if not is_nns_family(f):
        raise NotNNSError(f"polynomial is {classify(f)}, expected NNS/NS/affine")
    neg_terms: dict[Support, Fraction] = {}
    lin_terms: dict[int, Fraction] = {}
    f_const = Fraction(0)
    for sup, c in f.terms():
        if not sup:
            f_const = c
        elif len(sup) == 1:
            lin_terms[sup[0]] = c
        else:
            neg_terms[sup] = c
    f_a = sum(neg_terms.values(), Fraction(0))
    fixed = frozenset(
        j for j in range(1, f.n_vars + 1) if lin_terms.get(j, Fraction(0)) <= 0
    )
    return ReducedForm(f.n_vars, f_const, f_a, neg_terms, lin_terms, fixed)


@dataclass(frozen=True)
class FlowNetwork:
    """The cut network of a reduced form.

    Nodes: SOURCE, SINK, one ``("a", support)`` node per negative nonlinear
    monomial, one ``("x", j)`` node per variable.  Arcs run source -> A ->
    N -> sink only; capacities are nonnegative rationals or INF.
    """

    n_vars: int
    monomials: tuple[Support, ...]
    arcs: tuple[tuple[object, object, object], ...]  # (tail, head, capacity|INF)


def mono_node(sup: Support) -> tuple[str, Support]:
    return ("a", sup)


def var_node(j: int) -> tuple[str, int]:
    return ("x", j)


def build_network(rf: ReducedForm) -> FlowNetwork:
    """Build the three-layer network; arc count = |A| + sum_a |a| + n."""
    arcs: list[tuple[object, object, object]] = []
    monos = tuple(sorted(rf.neg_terms, key=grlex_key))
    for sup in monos:
        arcs.append((SOURCE, mono_node(sup), -rf.neg_terms[sup]))
        for j in sup:
            arcs.append((mono_node(sup), var_node(j), INF))
    for j in range(1, rf.n_vars + 1):
        cap = max(rf.lin_terms.get(j, Fraction(0)), Fraction(0))
        arcs.append((var_node(j), SINK, cap))
    return FlowNetwork(rf.n_vars, monos, tuple(arcs))


@dataclass(frozen=True)
class CutResult:
    """A finite min cut: its capacity and the source-side labeling."""

    value: Fraction
    labels: dict[object, int]  # node -> 1 iff on the source side

    def source_side(self) -> set:
        return {v for v, u in self.labels.items() if u == 1}


class _PushRelabel:
    """Highest-label push-relabel with the gap heuristic, exact arithmetic."""

    def __init__(self, net: FlowNetwork):
        nodes = [SOURCE, SINK]
        nodes += [mono_node(s) for s in net.monomials]
        nodes += [var_node(j) for j in range(1, net.n_vars + 1)]
        self.index = {v: i for i, v in enumerate(nodes)}
        self.nodes = nodes
        n = len(nodes)
        # Arc storage: parallel lists, residual graph with reverse arcs.
        self.head: list[int] = []
        self.cap: list = []  # residual capacity, rational or INF
        self.adj: list[list[int]] = [[] for _ in range(n)]

        def add_arc(u: int, v: int, capacity) -> None:
            self.adj[u].append(len(self.head))
            self.head.append(v)
            self.cap.append(capacity)
            self.adj[v].append(len(self.head))
            self.head.append(u)
            self.cap.append(QZERO)

        for tail, head, capacity in net.arcs:
            add_arc(self.index[tail], self.index[head], INF if capacity is INF else q(capacity))
        self.n = n

    @staticmethod
    def _positive(capacity) -> bool:
        return capacity is INF or capacity > 0

    def max_flow(self) -> Fraction:
        n, s, t = self.n, self.index[SOURCE], self.index[SINK]
        height = [0] * n
        height[s] = n
        excess = [QZERO] * n
        cur = [0] * n  # current-arc pointer per node
        count = [0] * (2 * n + 1)  # nodes per height, for the gap heuristic
        count[0] = n - 1
        count[n] = 1
        buckets: list[list[int]] = [[] for _ in range(2 * n + 1)]
        highest = 0

        def enqueue(v: int) -> None:
            nonlocal highest
            if v != s and v != t and excess[v] > 0:
                buckets[height[v]].append(v)
                highest = max(highest, height[v])

        def push(u: int, arc: int) -> None:
            v = self.head[arc]
            residual = self.cap[arc]
            delta = excess[u] if residual is INF else min(excess[u], residual)
            if residual is not INF:
                self.cap[arc] = residual - delta
            paired = self.cap[arc ^ 1]
            if paired is not INF:
                self.cap[arc ^ 1] = paired + delta
            excess[u] -= delta
            was_inactive = excess[v] == 0
            excess[v] += delta
            if was_inactive:
                enqueue(v)

        def relabel(u: int) -> None:
            old = height[u]
            count[old] -= 1
            if count[old] == 0 and 0 < old < n:
                # Gap: heights strictly between old and n are unreachable
                # from the sink side; lift them past n.
                for v in range(n):
                    if v != s and old < height[v] < n:
                        count[height[v]] -= 1
                        height[v] = n + 1
                        count[n + 1] += 1
                        cur[v] = 0
            if height[u] == old:
                new_h = 2 * n
                for arc in self.adj[u]:
                    if self._positive(self.cap[arc]):
                        new_h = min(new_h, height[self.head[arc]] + 1)
                height[u] = new_h
            count[height[u]] += 1
            cur[u] = 0

        # Saturate all source arcs (finite by construction).
        for arc in self.adj[s]:
            if arc % 2 == 0 and self.cap[arc] > 0:
                v = self.head[arc]
                amount = self.cap[arc]
                self.cap[arc] = QZERO
                self.cap[arc ^ 1] = self.cap[arc ^ 1] + amount
                was_inactive = excess[v] == 0
                excess[v] += amount
                if was_inactive:
                    enqueue(v)

        while highest >= 0:
            if not buckets[highest]:
                highest -= 1
                continue
            u = buckets[highest].pop()
            if excess[u] == 0 or height[u] != highest:
                continue  # stale entry; the node was re-enqueued elsewhere
            # Discharge u.
            while excess[u] > 0 and height[u] < 2 * n:
                if cur[u] == len(self.adj[u]):
                    relabel(u)
                    continue
                arc = self.adj[u][cur[u]]
                v = self.head[arc]
                if self._positive(self.cap[arc]) and height[u] == height[v] + 1:
                    push(u, arc)
                else:
                    cur[u] += 1
            if excess[u] > 0:
                raise AssertionError("push-relabel failed to discharge an active node")

        return to_fraction(excess[t])

    def min_cut_labels(self) -> dict[object, int]:
        """Source-reachable set in the residual graph after max_flow."""
        s = self.index[SOURCE]
        seen = [False] * self.n
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for arc in self.adj[u]:
                v = self.head[arc]
                if not seen[v] and self._positive(self.cap[arc]):
                    seen[v] = True
                    queue.append(v)
        return {node: (1 if seen[i] else 0) for node, i in self.index.items()}


def max_flow_min_cut(net: FlowNetwork) -> CutResult:
    """Exact max-flow = min-cut on the network; labels from residual reachability."""
    solver = _PushRelabel(net)
    value = solver.max_flow()
    labels = solver.min_cut_labels()
    if labels[SOURCE] != 1 or labels[SINK] != 0:
        raise AssertionError("cut does not separate source from sink")
    return CutResult(value, labels)


def cut_capacity(net: FlowNetwork, labels: dict[object, int]) -> Fraction:
    """Capacity of the cut given by the labeling; raises if an INF arc crosses."""
    total = Fraction(0)
    for tail, head, capacity in net.arcs:
        if labels[tail] == 1 and labels[head] == 0:
            if capacity is INF:
                raise ValueError("cut crosses an unlimited-capacity arc")
            total += Fraction(capacity)
    return total


def minimize_nns(f: Polynomial) -> tuple[tuple[int, ...], Fraction]:
    """Exact binary minimum of an NNS polynomial via one min-cut solve.

    min f = f_const + shift + mincut + sum of fixed nonpositive linear
    coefficients; the minimizer takes the cut's source-side labels with the
    fixed variables forced to one.
    """
    rf = reduce(f)
    net = build_network(rf)
    cut = max_flow_min_cut(net)
    value = rf.f_const + rf.f_a + cut.value
    for j in rf.fixed_ones:
        value += rf.lin_terms.get(j, Fraction(0))
    x = tuple(
        1 if j in rf.fixed_ones else cut.labels[var_node(j)]
        for j in range(1, f.n_vars + 1)
    )
    check = evaluate(f, x)
    if check != value:
        raise AssertionError(f"decoded minimizer evaluates to {check}, cut arithmetic says {value}")
    return x, value


def separate(f: Polynomial) -> tuple[int, ...] | None:
    """The min-cut separation test: a violated point with f(x) < 0, if any.

    Doubles as the membership test for the cone of binary non-negative NNS
    polynomials within f's pattern: None means f is binary non-negative.
    """
    x, value = minimize_nns(f)
    return x if value < 0 else None


def dot_dump(net: FlowNetwork) -> str:
    """Render the network in DOT format for debugging."""

    def name(node) -> str:
        if node == SOURCE:
            return "s"
        if node == SINK:
            return "t"
        kind, payload = node
        if kind == "a":
            return "a_" + "_".join(map(str, payload))
        return f"x_{payload}"

    lines = ["digraph cutnet {", "  rankdir=LR;"]
    for tail, head, capacity in net.arcs:
        label = "inf" if capacity is INF else str(capacity)
        lines.append(f'  {name(tail)} -> {name(head)} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
