"""Fault families for the routing application.

Each fault is realized as one or two whitelisted shell commands executed
through the same interpreter the agent uses, paired with a *single*
inverse command that restores the pre-fault state digest exactly. Five
families, each with several concrete methods:

    DR  disable routing (forwarding flag, filter drop-all, policy prohibit,
        per-source drop)
    DI  disable an interface (admin down via ifconfig or ip link, tiny MTU)
    RI  remove or corrupt an interface address (flush, foreign address,
        wrong mask, duplicated gateway)
    DT  drop traffic toward a subnet (filter DROP/REJECT, icmp-only drop,
        pathological netem delay)
    WR  wrong route for a subnet (wrong egress device, blackhole next hop,
        metric competition, non-local gateway)
"""

from __future__ import annotations

from dataclasses import dataclass

from ..core.types import ActionSpec
from ..errors import MethodOutOfRange, UnknownFamily
from .commands import exec_command
from .state import NetState

FAMILY_METHODS = {"DR": 4, "DI": 3, "RI": 4, "DT": 4, "WR": 4}

# methods whose effect is router-global rather than tied to one subnet
_GLOBAL = {("DR", 1), ("DR", 2), ("DR", 3)}

# methods that need a second, distinct subnet as auxiliary parameter
_NEEDS_AUX = {("RI", 4), ("WR", 1), ("WR", 3)}

_BAD_MASKS = (8, 16, 30, 31, 32)
_NETEM_DELAY_MS = 20_000  # comfortably above the ping delay ceiling


@dataclass(frozen=True)
class Fault:
    family: str
    method: int
    subnet: int
    aux: int
    forward: tuple  # ordered (machine, command) pairs that inject the fault
    inverse: tuple  # the single (machine, command) that undoes it


def fault_scope(family: str, method: int) -> str:
    return "global" if (family, method) in _GLOBAL else "subnet"


def needs_aux(family: str, method: int) -> bool:
    return (family, method) in _NEEDS_AUX


def build_fault(state: NetState, family: str, method: int,
                subnet: int = 1, aux: int = 0) -> Fault:
    """Construct the command pair for one concrete fault.

    ``subnet`` is the target subnet for subnet-scoped methods; ``aux``
    is a second distinct subnet (or a mask-choice index for RI m3).
    """
    if family not in FAMILY_METHODS:
        raise UnknownFamily(f"unknown fault family {family!r}")
    if not 1 <= method <= FAMILY_METHODS[family]:
        raise MethodOutOfRange(f"{family} has methods 1..{FAMILY_METHODS[family]}, got {method}")

    r = state.router_name
    iface = state.iface_name(subnet)
    cidr = state.subnet_cidr(subnet)
    gw = state.expected_gateway(subnet)

    if family == "DR":
        table = {
            1: ((r, "sysctl -w net.ipv4.ip_forward=0"),
                (r, "sysctl -w net.ipv4.ip_forward=1")),
            2: ((r, "iptables -A FORWARD -j DROP"),
                (r, "iptables -D FORWARD -j DROP")),
            3: ((r, "ip rule add prohibit from all"),
                (r, "ip rule del prohibit from all")),
            4: ((r, f"iptables -A FORWARD -s {cidr} -j DROP"),
                (r, f"iptables -D FORWARD -s {cidr} -j DROP")),
        }
        fwd, inv = table[method]
        return Fault(family, method, subnet, aux, (fwd,), inv)

    if family == "DI":
        table = {
            1: ((r, f"ifconfig {iface} down"), (r, f"ifconfig {iface} up")),
            2: ((r, f"ip link set {iface} down"), (r, f"ip link set {iface} up")),
            3: ((r, f"ip link set {iface} mtu 100"), (r, f"ip link set {iface} mtu 1500")),
        }
        fwd, inv = table[method]
        return Fault(family, method, subnet, aux, (fwd,), inv)

    if family == "RI":
        restore = (r, f"ip addr replace {gw}/24 dev {iface}")
        if method == 1:
            fwd = (r, f"ip addr flush dev {iface}")
        elif method == 2:
            fwd = (r, f"ip addr replace 10.0.0.{subnet}/24 dev {iface}")
        elif method == 3:
            mask = _BAD_MASKS[aux % len(_BAD_MASKS)]
            fwd = (r, f"ip addr replace {gw}/{mask} dev {iface}")
        else:  # duplicate another subnet's gateway address
            fwd = (r, f"ip addr replace {state.expected_gateway(aux)}/24 dev {iface}")
        return Fault(family, method, subnet, aux, (fwd,), restore)

    if family == "DT":
        table = {
            1: ((r, f"iptables -A FORWARD -d {cidr} -j DROP"),
                (r, f"iptables -D FORWARD -d {cidr} -j DROP")),
            2: ((r, f"iptables -A FORWARD -d {cidr} -j REJECT"),
                (r, f"iptables -D FORWARD -d {cidr} -j REJECT")),
            3: ((r, f"iptables -A FORWARD -p icmp -d {cidr} -j DROP"),
                (r, f"iptables -D FORWARD -p icmp -d {cidr} -j DROP")),
            4: ((r, f"tc qdisc add dev {iface} root netem delay {_NETEM_DELAY_MS}ms"),
                (r, f"tc qdisc del dev {iface} root")),
        }
        fwd, inv = table[method]
        return Fault(family, method, subnet, aux, (fwd,), inv)

    # WR
    restore = (r, f"ip route replace {cidr} dev {iface}")
    if method == 1:
        wrong = state.iface_name(aux)
        forward = ((r, f"ip route replace {cidr} dev {wrong}"),)
    elif method == 2:
        # next hop nobody owns: packets toward the subnet blackhole
        forward = ((r, f"ip route replace {cidr} via {gw[:-1]}250 dev {iface}"),)
    elif method == 3:
        wrong = state.iface_name(aux)
        # the bogus low-metric route wins over the correct high-metric one
        forward = ((r, f"ip route replace {cidr} dev {wrong} metric 50"),
                   (r, f"ip route add {cidr} dev {iface} metric 9999"))
    else:
        forward = ((r, f"ip route replace {cidr} via {gw[:-1]}254 dev {iface}"),)
    return Fault(family, method, subnet, aux, forward, restore)


def apply_fault(state: NetState, fault: Fault) -> NetState:
    """Run the fault's forward commands; raises only on internal errors."""
    cur = state
    for machine, command in fault.forward:
        outcome = exec_command(cur, machine, command)
        if outcome.kind != "write":
            raise AssertionError(
                f"injection command was not accepted as a write: {command!r}: {outcome.output}")
        cur = outcome.state
    return cur


def fault_to_action(fault: Fault) -> ActionSpec:
    return ActionSpec(name=f"{fault.family}-m{fault.method}",
                      operands=(fault.subnet, fault.aux))


def fault_from_action(state: NetState, action: ActionSpec) -> Fault:
    family, m = action.name.split("-m")
    subnet, aux = action.operands
    return build_fault(state, family, int(m), int(subnet), int(aux))
