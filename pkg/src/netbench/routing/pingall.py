"""All-pairs reachability over the routing model.

A directed pair (a, b) counts as reachable only if both the echo
request a->b and the echo reply b->a would be delivered, matching what
a real ping observes. Intra-subnet traffic is switch-local and never
traverses the router.
"""

from __future__ import annotations

from dataclasses import dataclass

from .state import MIN_DATAGRAM_MTU, NetState, cidr_covers, prefix_len

DEFAULT_DELAY_CEILING_MS = 10_000
MAX_ROUTE_HOPS = 8


@dataclass
class PingMatrix:
    nodes: list[str]
    reachable: dict  # (src, dst) -> bool over ordered pairs, diagonal excluded
    slow: set  # pairs reachable but crossing a delayed interface

    @property
    def total(self) -> int:
        n = len(self.nodes)
        return n * (n - 1)

    @property
    def received(self) -> int:
        return sum(1 for v in self.reachable.values() if v)

    @property
    def failures(self) -> int:
        return self.total - self.received

    @property
    def all_reachable(self) -> bool:
        return self.failures == 0

    @property
    def summary_line(self) -> str:
        return render_summary(self.received, self.total)

    def render(self) -> str:
        lines = ["*** Fast Ping: testing ping reachability"]
        for a in self.nodes:
            row = [b if self.reachable[(a, b)] else "X" for b in self.nodes if b != a]
            lines.append(f"{a} -> " + " ".join(row))
        lines.append(self.summary_line)
        return "\n".join(lines)


def render_summary(received: int, total: int) -> str:
    dropped_pct = round(100 * (total - received) / total) if total else 0
    return f"*** Results: {dropped_pct}% dropped ({received}/{total} received)"


def _iface_link_ok(state: NetState, subnet: int) -> bool:
    iface = state.interfaces.get(state.iface_name(subnet))
    return iface is not None and iface.up and iface.mtu >= MIN_DATAGRAM_MTU


def _iface_addr_ok(state: NetState, subnet: int) -> bool:
    """The interface must hold exactly the gateway address the hosts expect."""
    iface = state.interfaces.get(state.iface_name(subnet))
    return (iface is not None and iface.ip == state.expected_gateway(subnet)
            and iface.mask == 24)


def _iface_healthy(state: NetState, subnet: int) -> bool:
    return _iface_link_ok(state, subnet) and _iface_addr_ok(state, subnet)


def _best_route(state: NetState, dst_ip: str):
    best = None
    for r in state.routes:
        if not cidr_covers(r.dest, dst_ip):
            continue
        if best is None:
            best = r
            continue
        if (prefix_len(r.dest), -r.metric) > (prefix_len(best.dest), -best.metric):
            best = r
    return best


def _route_delivers(state: NetState, dst_ip: str, dst_subnet: int) -> bool:
    """Longest-prefix/lowest-metric lookup must reach the correct egress.

    Gateway hops are followed up to MAX_ROUTE_HOPS; a next hop that is
    not one of the router's own addresses is a blackhole (there is no
    second router to hand the packet to).
    """
    own = state.router_own_ips()
    cur = dst_ip
    for _ in range(MAX_ROUTE_HOPS + 1):
        route = _best_route(state, cur)
        if route is None:
            return False
        if route.gateway is None:
            return route.dev == state.iface_name(dst_subnet)
        if route.gateway not in own:
            return False
        cur = route.gateway
    return False  # loop: hop budget exhausted


def _filters_block(state: NetState, src_ip: str, dst_ip: str) -> bool:
    # first match wins; injected sets are non-conflicting so any match blocks
    for rule in state.filter_rules:
        if rule.chain == "FORWARD" and rule.matches(src_ip, dst_ip, "icmp"):
            return rule.verdict in ("DROP", "REJECT")
    return False


def _oneway(state: NetState, src: str, dst: str) -> tuple[bool, bool]:
    """(delivered, crossed_delayed_iface) for a single packet src->dst."""
    router = state.router_name
    delayed = False

    if src != router and dst != router:
        a, b = state.hosts[src], state.hosts[dst]
        if a.subnet == b.subnet:
            return True, False  # switch-local
        if not (_iface_healthy(state, a.subnet) and _iface_healthy(state, b.subnet)):
            return False, False
        if not state.ip_forward or state.prohibit_rules:
            return False, False
        if _filters_block(state, a.ip, b.ip):
            return False, False
        if not _route_delivers(state, b.ip, b.subnet):
            return False, False
        for name in (state.iface_name(a.subnet), state.iface_name(b.subnet)):
            if state.delays.get(name, 0) > 0:
                delayed = True
        return True, delayed

    if src != router:  # host -> router: deliver to the subnet gateway address
        a = state.hosts[src]
        ok = _iface_healthy(state, a.subnet)
        return ok, ok and state.delays.get(state.iface_name(a.subnet), 0) > 0

    # router -> host: locally originated, uses the routing table
    b = state.hosts[dst]
    if not _iface_healthy(state, b.subnet):
        return False, False
    if not _route_delivers(state, b.ip, b.subnet):
        return False, False
    return True, state.delays.get(state.iface_name(b.subnet), 0) > 0


def pair_reachable(state: NetState, a: str, b: str,
                   delay_ceiling_ms: int = DEFAULT_DELAY_CEILING_MS) -> tuple[bool, bool]:
    """Ping semantics: request and reply must both be deliverable."""
    fwd, d1 = _oneway(state, a, b)
    if not fwd:
        return False, False
    rev, d2 = _oneway(state, b, a)
    if not rev:
        return False, False
    slow = d1 or d2
    if slow:
        total_delay = sum(state.delays.values())
        if total_delay > delay_ceiling_ms:
            return False, False
    return True, slow


def pingall(state: NetState, delay_ceiling_ms: int = DEFAULT_DELAY_CEILING_MS) -> PingMatrix:
    nodes = state.node_names()
    reachable = {}
    slow = set()
    for a in nodes:
        for b in nodes:
            if a == b:
                continue
            ok, is_slow = pair_reachable(state, a, b, delay_ceiling_ms)
            reachable[(a, b)] = ok
            if ok and is_slow:
                slow.add((a, b))
    return PingMatrix(nodes=nodes, reachable=reachable, slow=slow)


def matrix_from_counts(nodes: list[str], reachable_pairs: set) -> PingMatrix:
    """Build a matrix directly from an explicit reachable-pair set."""
    reachable = {(a, b): (a, b) in reachable_pairs for a in nodes for b in nodes if a != b}
    return PingMatrix(nodes=nodes, reachable=reachable, slow=set())
