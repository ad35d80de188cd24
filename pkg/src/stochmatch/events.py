"""Path-event queries over decision trees.

An event is a predicate on a root-to-leaf path.  Each path step records the
probed edge, its endpoints and whether the probe succeeded.  Probabilities
are computed by exhaustive leaf enumeration, never by sampling.
"""

from __future__ import annotations

from dataclasses import dataclass

UNDEFINED_CUTOFF = 1e-15


@dataclass(frozen=True)
class PathStep:
    edge: int
    u: int
    v: int
    success: bool

    def touches(self, vertex):
        return self.u == vertex or self.v == vertex


class Event:
    def holds(self, path):
        raise NotImplementedError

    def __and__(self, other):
        return And(self, other)

    def __invert__(self):
        return Not(self)


@dataclass(frozen=True)
class ProbesEdge(Event):
    edge: int

    def holds(self, path):
        return any(step.edge == self.edge for step in path)


@dataclass(frozen=True)
class TakesEdge(Event):
    edge: int

    def holds(self, path):
        return any(step.edge == self.edge and step.success for step in path)


@dataclass(frozen=True)
class TakesVertex(Event):
    """Some edge incident to the vertex is probed successfully."""

    vertex: int

    def holds(self, path):
        return any(step.touches(self.vertex) and step.success for step in path)


def _kth_touch(path, vertex, k):
    """The k-th step touching the vertex, or None if fewer occur."""
    count = 0
    for step in path:
        if step.touches(vertex):
            count += 1
            if count == k:
                return step
    return None


@dataclass(frozen=True)
class ProbesVertexKth(Event):
    """The path contains a k-th probe touching the vertex."""

    vertex: int
    k: int

    def holds(self, path):
        return _kth_touch(path, self.vertex, self.k) is not None


@dataclass(frozen=True)
class TakesVertexAtKth(Event):
    """The k-th probe touching the vertex occurs and succeeds."""

    vertex: int
    k: int

    def holds(self, path):
        step = _kth_touch(path, self.vertex, self.k)
        return step is not None and step.success


@dataclass(frozen=True)
class FailsKthOfVertex(Event):
    """The k-th probe touching the vertex occurs and fails."""

    vertex: int
    k: int

    def holds(self, path):
        step = _kth_touch(path, self.vertex, self.k)
        return step is not None and not step.success


@dataclass(frozen=True)
class Not(Event):
    inner: Event

    def holds(self, path):
        return not self.inner.holds(path)


@dataclass(frozen=True)
class And(Event):
    a: Event
    b: Event

    def holds(self, path):
        return self.a.holds(path) and self.b.holds(path)


def event_probability(t, q):
    """Probability that a root-to-leaf path of the tree satisfies the event."""
    total = 0.0
    path = []

    def walk(node, prob):
        nonlocal total
        if node.is_leaf:
            if q.holds(path):
                total += prob
            return
        path.append(PathStep(node.edge, node.u, node.v, True))
        walk(node.left, prob * node.p)
        path[-1] = PathStep(node.edge, node.u, node.v, False)
        walk(node.right, prob * (1.0 - node.p))
        path.pop()

    walk(t, 1.0)
    return total


def conditional_probability(t, a, b):
    """P(a | b), or None when P(b) is numerically zero.

    Callers multiply a None by its zero condition probability and treat the
    product as zero.
    """
    pb = event_probability(t, b)
    if pb <= UNDEFINED_CUTOFF:
        return None
    pab = event_probability(t, And(a, b))
    return pab / pb
