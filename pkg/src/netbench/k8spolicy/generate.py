"""Query generation for the network-policy application.

A query hides one or two policy mutations in the thirteen-policy
baseline. The ground truth stores the mutations (so the cluster can be
rebuilt from the query alone) plus the inverse patches in an order
where every patch strictly grows the set of conforming flows.
"""

from __future__ import annotations

import itertools

from ..core.types import GT_RECOVERY_PREDICATE, GroundTruth, QuerySpec
from ..errors import EmptyLevelSet, IneffectiveInjection
from ..seeds import rng_for
from .connectivity import connectivity_check, flow_universe
from .inject import AE_EGRESS_GRAPH, AE_TARGETS, AI_TARGETS, CP_TARGETS, CPR_TARGETS, \
    RI_TARGETS, build_mutation, mutation_from_action, mutation_to_action
from .kubectl import exec_kubectl
from .model import EXPECTED_CALLERS, SERVICE_PORTS, SERVICES, cluster_digest, default_policies
from .safety import _conforming

LEVEL_LABELS = {
    1: ("RI", "AI", "CP", "CPR", "AE"),
    2: ("RI+AI", "RI+CP", "RI+CPR", "AI+CP", "AI+CPR", "CP+CPR"),
    3: ("CP+AE", "CPR+AE", "RI+AE", "AI+AE"),
}

MAX_RESAMPLES = 16

_TARGET_POOLS = {"RI": RI_TARGETS, "AI": AI_TARGETS, "CP": CP_TARGETS,
                 "CPR": CPR_TARGETS, "AE": AE_TARGETS}


def _sample_mutations(rng, families) -> list:
    ae_target = None
    taken = set()
    mutations = []
    # pick AE first so its target can constrain the other family
    for family in sorted(families, key=lambda f: f != "AE"):
        pool = [t for t in _TARGET_POOLS[family] if t not in taken]
        target = rng.choice(pool)
        taken.add(target)
        if family == "AE":
            ae_target = target
            param = rng.choice(AE_EGRESS_GRAPH[target])
        elif family == "RI":
            param = rng.choice(EXPECTED_CALLERS[target])
        elif family == "AI":
            # an added caller whose egress is restricted elsewhere would be
            # unobservable, breaking recovery monotonicity; exclude it
            pool = [s for s in SERVICES
                    if s not in EXPECTED_CALLERS[target] and s != target and s != ae_target]
            param = rng.choice(pool)
        else:
            param = ""
        mutations.append(build_mutation(family, target, param))
    order = {f: i for i, f in enumerate(families)}
    mutations.sort(key=lambda m: order[m.family])
    return mutations


def _monotone_order(baseline: dict, broken: dict, mutations) -> list | None:
    target = cluster_digest(baseline)
    total = len(flow_universe())
    for perm in itertools.permutations(mutations):
        cur = broken
        conforming = _conforming(cur)
        steps = []
        ok = True
        for mutation in perm:
            machine, command = mutation.inverse
            outcome = exec_kubectl(cur, command)
            if outcome.kind != "write":
                ok = False
                break
            now = _conforming(outcome.policies)
            if len(now) <= len(conforming) or conforming - now:
                ok = False
                break
            cur = outcome.policies
            conforming = now
            steps.append((machine, command))
        if ok and cluster_digest(cur) == target and len(conforming) == total:
            return steps
    return None


def generate_k8s_query(level: int, seed: int) -> tuple:
    """Build one reactive policy query; returns (QuerySpec, GroundTruth)."""
    if level not in LEVEL_LABELS:
        raise EmptyLevelSet(f"no mutation combinations defined for level {level}")
    rng = rng_for(seed)
    label = rng.choice(LEVEL_LABELS[level])
    families = label.split("+")
    baseline = default_policies()

    for _ in range(MAX_RESAMPLES):
        mutations = _sample_mutations(rng, families)
        broken = baseline
        for mutation in mutations:
            _, command = mutation.forward
            outcome = exec_kubectl(broken, command)
            if outcome.kind != "write":
                raise AssertionError(f"mutation patch rejected: {outcome.output}")
            broken = outcome.policies
        if connectivity_check(broken).clean:
            continue
        recovery = _monotone_order(baseline, broken, mutations)
        if recovery is None:
            continue
        truth = GroundTruth(
            kind=GT_RECOVERY_PREDICATE,
            target_digest=cluster_digest(baseline),
            hidden_injection=tuple(mutation_to_action(m) for m in mutations),
            recovery=tuple(recovery),
        )
        query = QuerySpec(
            id=f"k8s-L{level}-{seed:016x}",
            app="k8s",
            level=level,
            action_label=label,
            prompt_text=render_k8s_prompt(broken),
            seed=seed,
        )
        return query, truth

    raise IneffectiveInjection(
        f"no observable, monotonically recoverable mutation set for {label} after "
        f"{MAX_RESAMPLES} attempts (seed {seed})")


def rebuild_cluster(truth: GroundTruth) -> tuple:
    """Reconstruct (baseline, broken) policy stores from a ground truth."""
    baseline = default_policies()
    broken = baseline
    for action in truth.hidden_injection:
        mutation = mutation_from_action(action)
        outcome = exec_kubectl(broken, mutation.forward[1])
        broken = outcome.policies
    return baseline, broken


def render_k8s_prompt(broken: dict) -> str:
    services = ", ".join(f"{name}:{port}" for name, port in sorted(SERVICE_PORTS.items()))
    report = connectivity_check(broken)
    return "\n".join([
        "You are operating a Kubernetes cluster running a twelve-service",
        "online shop in the 'default' namespace, one pod per service labeled",
        "app=<service>. Serving ports: " + services + ";",
        "loadgenerator is a pure client.",
        "",
        "Connectivity is controlled by NetworkPolicy objects. One or more",
        "policies were misconfigured. Current connectivity audit against the",
        "expected service graph:",
        report.render(),
        "",
        "Diagnose and repair the policies. Respond with exactly one JSON object",
        'per turn: {"machine": "master", "command": "<kubectl command>"}.',
        "Supported: kubectl get networkpolicy [<name> -o yaml], kubectl describe",
        "networkpolicy <name>, kubectl patch networkpolicy <name> --type merge",
        "-p '<json>', kubectl apply -f - (manifest on the following lines),",
        "kubectl delete networkpolicy <name>. Do not include sudo.",
        "An updated audit is shown after every change.",
        'When every flow matches the expected graph, respond {"final_answer": "done"}.',
    ])
