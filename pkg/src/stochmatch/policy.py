"""Deterministic adaptive policies and exact decision-tree evaluation.

A policy is a callable mapping a State to the edge index it probes next, or
None to stop.  Stop is only legal (and mandatory) when no edge is probeable.
Decision trees materialize a policy's full branching structure: left child is
the successful probe, right child the failed one.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    apply_failure,
    apply_success,
    initial_state,
    probeable_edges,
    state_key,
)


@dataclass(frozen=True)
class TreeNode:
    """Decision tree node.  Leaf iff edge is None.

    Internal nodes record the probed edge, its endpoints and success
    probability; left is the success branch, right the failure branch.
    """

    state: object
    edge: object = None  # edge index, or None for a leaf
    u: int = -1
    v: int = -1
    p: float = 0.0
    left: object = None
    right: object = None

    @property
    def is_leaf(self):
        return self.edge is None


def greedy_policy(inst):
    """Probe the probeable edge with highest p, ties by lowest edge index."""
    order = sorted(range(inst.m), key=lambda e: (-inst.edges[e][2], e))

    def choose(s):
        probeable = set(probeable_edges(inst, s))
        for e in order:
            if e in probeable:
                return e
        return None

    return choose


def greedy_first_edge(inst):
    """Greedy's first probe: the max-probability edge, lowest index on ties."""
    if inst.m == 0:
        raise ValueError("instance has no edges")
    return min(range(inst.m), key=lambda e: (-inst.edges[e][2], e))


def build_tree(inst, pol, force=False):
    """Materialize the full decision tree of a policy."""
    inst.check_caps(force)

    def build(s):
        e = pol(s)
        if e is None:
            if probeable_edges(inst, s):
                raise ValueError("policy stopped while edges were probeable")
            return TreeNode(state=s)
        u, v, p = inst.edges[e]
        left = build(apply_success(inst, s, e))
        right = build(apply_failure(inst, s, e))
        return TreeNode(state=s, edge=e, u=u, v=v, p=p, left=left, right=right)

    return build(initial_state(inst))


def tree_value(t):
    """Expected matched count: sum of reach probability times p over nodes."""
    total = 0.0
    stack = [(t, 1.0)]
    while stack:
        node, q = stack.pop()
        if node.is_leaf:
            continue
        total += q * node.p
        stack.append((node.left, q * node.p))
        stack.append((node.right, q * (1.0 - node.p)))
    return total


def subtree_value(t):
    """Expected matched count of the subtree rooted at t."""
    if t.is_leaf:
        return 0.0
    return t.p * (1.0 + subtree_value(t.left)) + (1.0 - t.p) * subtree_value(t.right)


def policy_value(inst, pol, force=False):
    """Expected matched count by direct recursion with state memoization.

    Valid for policies that are functions of the State alone; agrees with
    tree_value(build_tree(inst, pol)) to within floating-point roundoff.
    """
    inst.check_caps(force)
    memo = {}

    def value(s):
        key = state_key(s)
        cached = memo.get(key)
        if cached is not None:
            return cached
        e = pol(s)
        if e is None:
            if probeable_edges(inst, s):
                raise ValueError("policy stopped while edges were probeable")
            result = 0.0
        else:
            p = inst.edges[e][2]
            result = p * (1.0 + value(apply_success(inst, s, e))) + (1.0 - p) * value(
                apply_failure(inst, s, e)
            )
        memo[key] = result
        return result

    return value(initial_state(inst))


def leaf_probabilities(t):
    """Reach probabilities of all leaves; sums to 1 for a well-formed tree."""
    out = []
    stack = [(t, 1.0)]
    while stack:
        node, q = stack.pop()
        if node.is_leaf:
            out.append(q)
        else:
            stack.append((node.left, q * node.p))
            stack.append((node.right, q * (1.0 - node.p)))
    return out
