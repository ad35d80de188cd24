import random
import zlib

import pytest

from stochmatch import Instance
from stochmatch.core import probeable_edges, state_key
from stochmatch.generator import GeneratorSpec, generate_instance


@pytest.fixture
def single_edge():
    return Instance(n=2, edges=((0, 1, 0.7),), patience=(1, 1))


@pytest.fixture
def empty_graph():
    return Instance(n=3, edges=(), patience=(1, 1, 1))


@pytest.fixture
def star2():
    # K_{1,2} with patient center: both spokes can be probed.
    return Instance(n=3, edges=((0, 1, 0.5), (0, 2, 0.5)), patience=(2, 1, 1))


@pytest.fixture
def p4():
    # Path a-b-c-d where greedy starts in the middle and the optimum does not.
    return Instance(
        n=4,
        edges=((0, 1, 0.5), (1, 2, 0.51), (2, 3, 0.5)),
        patience=(2, 2, 2, 2),
    )


@pytest.fixture
def disjoint_pair():
    return Instance(n=4, edges=((0, 1, 0.9), (2, 3, 0.8)), patience=(1, 1, 1, 1))


def random_instances(seed, count, n_max=6, m_max=8, t_max=3):
    """Seeded stream of small instances, filtered to at most m_max edges."""
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        n = rng.randint(3, n_max)
        spec = GeneratorSpec(
            family="gnp",
            n=n,
            density=rng.uniform(0.3, 0.7),
            p_grid=rng.random() < 0.5,
            t_max=t_max,
            seed=0,
        )
        inst = generate_instance(spec, rng)
        if inst.m <= m_max:
            out.append(inst)
    return out


def arbitrary_policy(inst, salt):
    """A deterministic policy that is a function of the state only."""

    def choose(s):
        probeable = probeable_edges(inst, s)
        if not probeable:
            return None
        h = zlib.crc32(state_key(s)) ^ salt
        return probeable[h % len(probeable)]

    return choose


def brute_force_optimal(edges, patience):
    """Independent optimal-value oracle: plain recursion over edge lists.

    No bitmasks, no memoization; deliberately shares nothing with the solver.
    """
    best = 0.0
    for u, v, p in edges:
        if patience[u] <= 0 or patience[v] <= 0:
            continue
        succ_edges = [e for e in edges if u not in e[:2] and v not in e[:2]]
        succ_pat = dict(patience)
        succ_pat[u] = 0
        succ_pat[v] = 0
        fail_edges = [e for e in edges if (e[0], e[1]) != (u, v)]
        fail_pat = dict(patience)
        fail_pat[u] -= 1
        fail_pat[v] -= 1
        val = p * (1.0 + brute_force_optimal(succ_edges, succ_pat)) + (
            1.0 - p
        ) * brute_force_optimal(fail_edges, fail_pat)
        best = max(best, val)
    return best


def brute_force_greedy(edges, patience):
    """Independent greedy-value oracle following the fixed probe order."""
    # Stable sort: ties keep list order, which preserves original edge order.
    order = sorted(edges, key=lambda e: -e[2])
    for u, v, p in order:
        if patience[u] > 0 and patience[v] > 0:
            succ_edges = [e for e in edges if u not in e[:2] and v not in e[:2]]
            succ_pat = dict(patience)
            succ_pat[u] = 0
            succ_pat[v] = 0
            fail_edges = [e for e in edges if (e[0], e[1]) != (u, v)]
            fail_pat = dict(patience)
            fail_pat[u] -= 1
            fail_pat[v] -= 1
            return p * (1.0 + brute_force_greedy(succ_edges, succ_pat)) + (
                1.0 - p
            ) * brute_force_greedy(fail_edges, fail_pat)
    return 0.0
