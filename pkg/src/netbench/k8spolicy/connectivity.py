"""Whitelist connectivity evaluation over NetworkPolicy objects.

Real-cluster semantics: if no policy of a given direction selects a
pod, that direction is unrestricted; as soon as one does, only flows
matched by some selecting policy's rules pass. A flow is allowed only
if both the destination's ingress side and the source's egress side
permit it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import SERVICES, expected_flows, flow_universe


def _selects(selector: dict, service: str) -> bool:
    # empty selector matches every pod in the namespace
    labels = {"app": service}
    match = selector.get("matchLabels", {}) if selector else {}
    return all(labels.get(k) == v for k, v in match.items())


def _peer_matches(peers, service: str) -> bool:
    if not peers:
        return True  # a rule without peers matches all sources/destinations
    return any(_selects(p.get("podSelector", {}), service) for p in peers)


def _ports_match(ports, port: int) -> bool:
    if not ports:
        return True
    return any(p.get("port") == port for p in ports)


def _direction_allows(policies: dict, direction: str, selected: str,
                      peer: str, port: int) -> bool:
    peer_key = "from" if direction == "ingress" else "to"
    policy_type = "Ingress" if direction == "ingress" else "Egress"
    selecting = [p for p in policies.values()
                 if policy_type in p["spec"].get("policyTypes", [])
                 and _selects(p["spec"].get("podSelector", {}), selected)]
    if not selecting:
        return True  # nothing restricts this direction for this pod
    for policy in selecting:
        for rule in policy["spec"].get(direction) or []:
            if _peer_matches(rule.get(peer_key), peer) and _ports_match(rule.get("ports"), port):
                return True
    return False


def flow_allowed(policies: dict, src: str, dst: str, port: int) -> bool:
    return (_direction_allows(policies, "ingress", dst, src, port)
            and _direction_allows(policies, "egress", src, dst, port))


@dataclass
class MismatchReport:
    """Flows whose actual connectivity disagrees with the expected graph."""

    mismatches: list  # (src, dst, port, expected, actual), sorted

    @property
    def clean(self) -> bool:
        return not self.mismatches

    def render(self) -> str:
        if self.clean:
            return "All flows match the expected service graph."
        lines = [f"{len(self.mismatches)} mismatched flows:"]
        for src, dst, port, exp, act in self.mismatches:
            lines.append(f"{src} -> {dst}:{port} "
                         f"(Expected: {_word(exp)}, Actual: {_word(act)})")
        return "\n".join(lines)


def _word(allowed: bool) -> str:
    return "allowed" if allowed else "blocked"


def connectivity_check(policies: dict) -> MismatchReport:
    expected = set(expected_flows())
    mismatches = []
    for src, dst, port in flow_universe():
        exp = (src, dst, port) in expected
        act = flow_allowed(policies, src, dst, port)
        if exp != act:
            mismatches.append((src, dst, port, exp, act))
    return MismatchReport(mismatches=sorted(mismatches))


def conforming_count(policies: dict) -> int:
    """Number of candidate flows whose actual state matches the expected one."""
    return len(flow_universe()) - len(connectivity_check(policies).mismatches)
