"""Numerical verification of the greedy 2-approximation argument.

Everything here works on explicit decision trees of the optimal policy for a
concrete instance.  The checked chain bounds the optimum by two filtered
policies (one for the instance after greedy's first probe succeeds, one for
after it fails) plus closed-form residuals, and ends at the factor-2 bound
against greedy.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import Instance
from .events import (
    And,
    FailsKthOfVertex,
    Not,
    ProbesEdge,
    TakesVertex,
    TakesVertexAtKth,
    conditional_probability,
    event_probability,
)
from .policy import build_tree, greedy_first_edge, greedy_policy, subtree_value
from .solver import optimal_policy, optimal_value

TOL = 1e-9

# Relation keys in chain order (i)..(ix); "eq" must hold to +-TOL,
# "le" means slack = rhs - lhs must be >= -TOL.
RELATIONS = (
    ("optp", "le"),
    ("optl", "eq"),
    ("optr", "eq"),
    ("algl", "le"),
    ("baseineq", "le"),
    ("keylem", "le"),
    ("combined", "le"),
    ("induction", "le"),
    ("final", "le"),
)


def transform_optprime(t, ab):
    """Value of the tree modified to descend left after every probe of ab.

    At a node probing ab the subtree contributes p_ab plus its left subtree's
    value with full weight; all other nodes are unchanged.
    """

    def value(node):
        if node.is_leaf:
            return 0.0
        if node.edge == ab:
            return node.p + value(node.left)
        return node.p * (1.0 + value(node.left)) + (1.0 - node.p) * value(node.right)

    return value(t), t


def value_algL(t, ab, alpha, beta):
    """Value of the modified tree with all probes touching alpha or beta muted.

    Muted nodes contribute nothing but still branch with their original
    probabilities; nodes probing ab descend left with weight 1.
    """

    def value(node):
        if node.is_leaf:
            return 0.0
        if node.edge == ab:
            return value(node.left)
        contrib = node.p * value(node.left) + (1.0 - node.p) * value(node.right)
        if node.u in (alpha, beta) or node.v in (alpha, beta):
            return contrib
        return node.p + contrib

    return value(t)


def _cond_times(t, pnot, a, not_probe):
    """pnot * P(a | not probe ab), with the zero-condition case worth 0."""
    if pnot <= 0.0:
        return 0.0
    c = conditional_probability(t, a, not_probe)
    return 0.0 if c is None else pnot * c


def residual_RL(t, ab, alpha, beta, p_ab):
    """Closed-form penalty for the alpha/beta-muted policy."""
    probe = ProbesEdge(ab)
    not_probe = Not(probe)
    p_probe = event_probability(t, probe)
    pnot = 1.0 - p_probe
    return (
        p_probe * p_ab
        + _cond_times(t, pnot, TakesVertex(alpha), not_probe)
        + _cond_times(t, pnot, TakesVertex(beta), not_probe)
    )


def value_algR(inst, t, ab):
    """Value of the tree with probes invalid on the failure-reduced instance muted.

    A probe is invalid if it is ab itself, or ab has not been probed earlier
    on the path and this is the t_alpha-th probe touching alpha or the
    t_beta-th probe touching beta.  Once ab is probed, the endpoint patience
    of the reduced instance aligns with the original and every later probe is
    valid.  Invalid probes contribute nothing but branch with their original
    probabilities.
    """
    alpha, beta, _ = inst.edges[ab]
    t_alpha = inst.patience[alpha]
    t_beta = inst.patience[beta]

    def value(node, count_a, count_b, seen_ab):
        if node.is_leaf:
            return 0.0
        ca = count_a + (1 if node.u == alpha or node.v == alpha else 0)
        cb = count_b + (1 if node.u == beta or node.v == beta else 0)
        invalid = node.edge == ab or (
            not seen_ab
            and ((ca > count_a and ca == t_alpha) or (cb > count_b and cb == t_beta))
        )
        seen = seen_ab or node.edge == ab
        contrib = node.p * value(node.left, ca, cb, seen) + (1.0 - node.p) * value(
            node.right, ca, cb, seen
        )
        return contrib if invalid else node.p + contrib

    return value(t, 0, 0, False)


def residual_RR(t, ab, alpha, beta, t_alpha, t_beta, p_ab):
    """Closed-form penalty for the failure-reduced-instance policy."""
    probe = ProbesEdge(ab)
    not_probe = Not(probe)
    p_probe = event_probability(t, probe)
    pnot = 1.0 - p_probe
    return (
        p_probe * p_ab
        + _cond_times(t, pnot, TakesVertexAtKth(alpha, t_alpha), not_probe)
        + _cond_times(t, pnot, TakesVertexAtKth(beta, t_beta), not_probe)
    )


@dataclass
class KeyLemmaResult:
    lhs: float
    rhs_lemma: float
    rhs_corollary: float

    @property
    def lemma_slack(self):
        return self.rhs_lemma - self.lhs

    @property
    def corollary_slack(self):
        return self.rhs_corollary - self.lhs

    @property
    def ok(self):
        return self.lemma_slack >= -TOL and self.corollary_slack >= -TOL


def check_key_lemma(t, inst, gamma, ab):
    """Bound the take-at-last-probe term by the all-probes-failed term.

    Requires p_ab to be the maximum edge probability in the instance.  When
    the conditioning event (ab never probed) has probability zero, all terms
    are zero by the zero-branch convention.
    """
    p_ab = inst.edges[ab][2]
    if any(p > p_ab for _, _, p in inst.edges):
        raise ValueError("p_ab must be the maximum edge probability")
    t_gamma = inst.patience[gamma]
    probe = ProbesEdge(ab)
    not_probe = Not(probe)
    pnot = 1.0 - event_probability(t, probe)
    if pnot <= 1e-15:
        return KeyLemmaResult(lhs=0.0, rhs_lemma=0.0, rhs_corollary=0.0)
    c_take_kth = conditional_probability(t, TakesVertexAtKth(gamma, t_gamma), not_probe)
    c_fail_kth = conditional_probability(t, FailsKthOfVertex(gamma, t_gamma), not_probe)
    c_not_take = conditional_probability(t, Not(TakesVertex(gamma)), not_probe)
    c_take_kth = 0.0 if c_take_kth is None else c_take_kth
    c_fail_kth = 0.0 if c_fail_kth is None else c_fail_kth
    c_not_take = 0.0 if c_not_take is None else c_not_take
    lhs = (1.0 - p_ab) / p_ab * c_take_kth
    return KeyLemmaResult(lhs=lhs, rhs_lemma=c_fail_kth, rhs_corollary=c_not_take)


def _delete_vertices(inst, vertices):
    """Instance with all edges touching the given vertices removed."""
    edges = tuple(
        (u, v, p) for u, v, p in inst.edges if u not in vertices and v not in vertices
    )
    return Instance(n=inst.n, edges=edges, patience=inst.patience)


def _failure_reduced(inst, ab):
    """Instance after a failed probe of ab: edge gone, endpoint patience down 1.

    Endpoints whose patience hits zero lose all their edges; their stored
    patience is reset to 1 so the Instance invariant holds (no edge can touch
    them, so the value is unaffected).
    """
    alpha, beta, _ = inst.edges[ab]
    patience = list(inst.patience)
    dead = set()
    for v in (alpha, beta):
        patience[v] -= 1
        if patience[v] == 0:
            patience[v] = 1
            dead.add(v)
    edges = tuple(
        (u, v, p)
        for e, (u, v, p) in enumerate(inst.edges)
        if e != ab and u not in dead and v not in dead
    )
    return Instance(n=inst.n, edges=edges, patience=tuple(patience))


@dataclass
class ChainReport:
    """All quantities and verdicts for the proof chain on one instance."""

    instance_id: str
    ab: int
    alpha: int
    beta: int
    p_ab: float
    e_opt: float
    e_grd: float
    e_optprime: float
    e_algL: float
    e_RL: float
    e_algR: float
    e_RR: float
    p_probe_ab: float
    cond_take_alpha: float
    cond_take_beta: float
    cond_take_alpha_kth: float
    cond_take_beta_kth: float
    keylem_alpha: KeyLemmaResult
    keylem_beta: KeyLemmaResult
    greedy_identity_gap: float
    slacks: dict = field(default_factory=dict)
    verdicts: dict = field(default_factory=dict)

    @property
    def ratio(self):
        return self.e_opt / self.e_grd if self.e_grd > 0 else 1.0

    @property
    def passed(self):
        return all(self.verdicts.values())

    @staticmethod
    def csv_header():
        names = [name for name, _ in RELATIONS]
        return ["instance_id", "p_ab", "e_opt", "e_grd", "ratio"] + [
            f"slack_{name}" for name in names
        ]

    def csv_row(self):
        row = [
            self.instance_id,
            repr(self.p_ab),
            repr(self.e_opt),
            repr(self.e_grd),
            repr(self.ratio),
        ]
        row += [repr(self.slacks[name]) for name, _ in RELATIONS]
        return row


def check_chain(inst, instance_id="", force=False):
    """Verify every relation of the proof chain on one nonempty instance."""
    if inst.m == 0:
        raise ValueError("chain check requires at least one edge")
    inst.check_caps(force)

    ab = greedy_first_edge(inst)
    alpha, beta, p_ab = inst.edges[ab]
    t_alpha = inst.patience[alpha]
    t_beta = inst.patience[beta]

    opt_tree = build_tree(inst, optimal_policy(inst, force=force), force=force)
    grd_tree = build_tree(inst, greedy_policy(inst), force=force)
    e_opt = subtree_value(opt_tree)
    e_grd = subtree_value(grd_tree)

    e_optprime, _ = transform_optprime(opt_tree, ab)
    e_algL = value_algL(opt_tree, ab, alpha, beta)
    e_RL = residual_RL(opt_tree, ab, alpha, beta, p_ab)
    e_algR = value_algR(inst, opt_tree, ab)
    e_RR = residual_RR(opt_tree, ab, alpha, beta, t_alpha, t_beta, p_ab)

    probe = ProbesEdge(ab)
    not_probe = Not(probe)
    p_probe = event_probability(opt_tree, probe)
    pnot = 1.0 - p_probe

    def cond(a):
        c = conditional_probability(opt_tree, a, not_probe)
        return 0.0 if c is None else c

    c_take_a = cond(TakesVertex(alpha))
    c_take_b = cond(TakesVertex(beta))
    c_take_a_kth = cond(TakesVertexAtKth(alpha, t_alpha))
    c_take_b_kth = cond(TakesVertexAtKth(beta, t_beta))

    kl_a = check_key_lemma(opt_tree, inst, alpha, ab)
    kl_b = check_key_lemma(opt_tree, inst, beta, ab)

    # Induction endpoints: the filtered policies are proper policies for the
    # reduced instances, so the reduced optima bound them from above.
    opt_left, _ = optimal_value(_delete_vertices(inst, {alpha, beta}), force=force)
    opt_right, _ = optimal_value(_failure_reduced(inst, ab), force=force)

    # Greedy recursion identity used by the final step of the chain.
    e_left_grd = subtree_value(grd_tree.left)
    e_right_grd = subtree_value(grd_tree.right)
    identity_gap = (
        2.0 * p_ab * (1.0 + e_left_grd) + 2.0 * (1.0 - p_ab) * e_right_grd
    ) - 2.0 * e_grd

    slacks = {
        "optp": (e_optprime + (1.0 - p_ab) * p_probe) - e_opt,
        "optl": e_optprime - (e_algL + e_RL),
        "optr": e_opt - (e_algR + e_RR),
        "algl": (e_algL + p_probe + pnot * (c_take_a + c_take_b)) - e_opt,
        "baseineq": (
            p_ab * e_algL
            + (1.0 - p_ab) * e_algR
            + p_ab * p_probe * (2.0 - p_ab)
            + p_ab
            * pnot
            * (
                c_take_a
                + (1.0 - p_ab) / p_ab * c_take_a_kth
                + c_take_b
                + (1.0 - p_ab) / p_ab * c_take_b_kth
            )
        )
        - e_opt,
        "keylem": min(
            kl_a.lemma_slack,
            kl_a.corollary_slack,
            kl_b.lemma_slack,
            kl_b.corollary_slack,
        ),
        "combined": (p_ab * e_algL + (1.0 - p_ab) * e_algR + 2.0 * p_ab) - e_opt,
        "induction": min(opt_left - e_algL, opt_right - e_algR),
        "final": 2.0 * e_grd - e_opt,
    }
    verdicts = {}
    for name, kind in RELATIONS:
        if kind == "eq":
            verdicts[name] = abs(slacks[name]) <= TOL
        else:
            verdicts[name] = slacks[name] >= -TOL
    # The final step also relies on the greedy recursion identity.
    verdicts["final"] = verdicts["final"] and abs(identity_gap) <= TOL

    return ChainReport(
        instance_id=instance_id,
        ab=ab,
        alpha=alpha,
        beta=beta,
        p_ab=p_ab,
        e_opt=e_opt,
        e_grd=e_grd,
        e_optprime=e_optprime,
        e_algL=e_algL,
        e_RL=e_RL,
        e_algR=e_algR,
        e_RR=e_RR,
        p_probe_ab=p_probe,
        cond_take_alpha=c_take_a,
        cond_take_beta=c_take_b,
        cond_take_alpha_kth=c_take_a_kth,
        cond_take_beta_kth=c_take_b_kth,
        keylem_alpha=kl_a,
        keylem_beta=kl_b,
        greedy_identity_gap=identity_gap,
        slacks=slacks,
        verdicts=verdicts,
    )
