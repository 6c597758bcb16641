"""Policy mutations for the network-policy application.

Five mutation families, each realized as a single ``kubectl patch``
command paired with a single inverse patch that restores the baseline
policy byte-for-byte:

    RI   remove an expected caller from a service's ingress whitelist
    AI   admit an unexpected caller into a service's ingress whitelist
    CP   change the whitelisted port to a wrong one
    CPR  change the policy's pod selector so it stops selecting its pods
    AE   add an egress section that pins a client to a single target
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from ..core.types import ActionSpec
from ..errors import MethodOutOfRange, UnknownFamily
from .model import EXPECTED_CALLERS, SERVICE_PORTS

MACHINE = "master"

MUTATIONS = ("RI", "AI", "CP", "CPR", "AE")

# per-family eligible target policies
RI_TARGETS = tuple(sorted(d for d, callers in EXPECTED_CALLERS.items() if len(callers) >= 2))
AI_TARGETS = tuple(sorted(EXPECTED_CALLERS))
CP_TARGETS = tuple(sorted(EXPECTED_CALLERS))
CPR_TARGETS = tuple(sorted(EXPECTED_CALLERS))
AE_TARGETS = ("checkoutservice", "frontend")  # clients with several expected targets

AE_EGRESS_GRAPH = {
    "frontend": tuple(sorted(d for d, callers in EXPECTED_CALLERS.items()
                             if "frontend" in callers)),
    "checkoutservice": tuple(sorted(d for d, callers in EXPECTED_CALLERS.items()
                                    if "checkoutservice" in callers)),
}


@dataclass(frozen=True)
class Mutation:
    family: str
    target: str  # policy name being patched
    param: str  # family-specific: caller removed/added, kept egress target, ""
    forward: tuple  # single (machine, command)
    inverse: tuple  # single (machine, command)


def _patch_cmd(target: str, patch: dict) -> tuple:
    payload = json.dumps(patch, sort_keys=True, separators=(",", ":"))
    return (MACHINE, f"kubectl patch networkpolicy {target} --type merge -p '{payload}'")


def _baseline_ingress(target: str) -> list:
    return [{
        "from": [{"podSelector": {"matchLabels": {"app": caller}}}
                 for caller in EXPECTED_CALLERS[target]],
        "ports": [{"port": SERVICE_PORTS[target], "protocol": "TCP"}],
    }]


def build_mutation(family: str, target: str, param: str = "") -> Mutation:
    if family not in MUTATIONS:
        raise UnknownFamily(f"unknown mutation family {family!r}")
    restore_ingress = _patch_cmd(target, {"spec": {"ingress": _baseline_ingress(target)}})

    if family == "RI":
        if target not in RI_TARGETS or param not in EXPECTED_CALLERS[target]:
            raise MethodOutOfRange(f"RI cannot remove {param!r} from {target!r}")
        rule = _baseline_ingress(target)[0]
        rule["from"] = [f for f in rule["from"]
                        if f["podSelector"]["matchLabels"]["app"] != param]
        forward = _patch_cmd(target, {"spec": {"ingress": [rule]}})
        return Mutation(family, target, param, forward, restore_ingress)

    if family == "AI":
        if param in EXPECTED_CALLERS[target] or param == target:
            raise MethodOutOfRange(f"AI caller {param!r} is already expected for {target!r}")
        rule = _baseline_ingress(target)[0]
        rule["from"] = rule["from"] + [{"podSelector": {"matchLabels": {"app": param}}}]
        forward = _patch_cmd(target, {"spec": {"ingress": [rule]}})
        return Mutation(family, target, param, forward, restore_ingress)

    if family == "CP":
        rule = _baseline_ingress(target)[0]
        rule["ports"] = [{"port": SERVICE_PORTS[target] + 1, "protocol": "TCP"}]
        forward = _patch_cmd(target, {"spec": {"ingress": [rule]}})
        return Mutation(family, target, param, forward, restore_ingress)

    if family == "CPR":
        forward = _patch_cmd(
            target, {"spec": {"podSelector": {"matchLabels": {"app": f"{target}-pods"}}}})
        inverse = _patch_cmd(
            target, {"spec": {"podSelector": {"matchLabels": {"app": target}}}})
        return Mutation(family, target, param, forward, inverse)

    # AE: pin the client's egress to a single expected destination
    if target not in AE_TARGETS or param not in AE_EGRESS_GRAPH[target]:
        raise MethodOutOfRange(f"AE cannot pin {target!r} to {param!r}")
    egress = [{
        "to": [{"podSelector": {"matchLabels": {"app": param}}}],
        "ports": [{"port": SERVICE_PORTS[param], "protocol": "TCP"}],
    }]
    forward = _patch_cmd(target, {"spec": {"egress": egress,
                                           "policyTypes": ["Ingress", "Egress"]}})
    inverse = _patch_cmd(target, {"spec": {"egress": None, "policyTypes": ["Ingress"]}})
    return Mutation(family, target, param, forward, inverse)


def mutation_to_action(mutation: Mutation) -> ActionSpec:
    return ActionSpec(name=mutation.family, operands=(mutation.target, mutation.param))


def mutation_from_action(action: ActionSpec) -> Mutation:
    target, param = action.operands
    return build_mutation(action.name, str(target), str(param))
