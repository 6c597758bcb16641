"""Deterministic model of the single-router, multi-subnet topology.

One router ``<prefix>r0`` owns one interface per subnet
(``<prefix>r0-ethK`` at ``192.168.K.1/24``); each subnet K holds a
switch-local segment with hosts numbered consecutively across subnets.
The model tracks exactly the state the fault families mutate:
interfaces, addresses, routes, filter rules, policy prohibitions,
forwarding flag and netem delays.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..digest import digest
from ..errors import ParameterOutOfRange

DEFAULT_MTU = 1500
MIN_DATAGRAM_MTU = 576  # below this, IPv4 traffic is considered lost


@dataclass
class Interface:
    name: str
    subnet: int
    ip: str | None
    mask: int | None
    up: bool = True
    mtu: int = DEFAULT_MTU

    def to_json(self):
        return {"name": self.name, "subnet": self.subnet, "ip": self.ip,
                "mask": self.mask, "up": self.up, "mtu": self.mtu}


@dataclass
class Host:
    name: str
    subnet: int
    ip: str
    mask: int
    gateway: str

    def to_json(self):
        return {"name": self.name, "subnet": self.subnet, "ip": self.ip,
                "mask": self.mask, "gateway": self.gateway}


@dataclass
class Route:
    dest: str  # cidr text, e.g. "192.168.2.0/24"
    dev: str
    gateway: str | None = None
    metric: int = 0

    def to_json(self):
        return {"dest": self.dest, "dev": self.dev, "gateway": self.gateway, "metric": self.metric}


@dataclass
class FilterRule:
    chain: str
    verdict: str  # DROP | REJECT
    src: str | None = None  # cidr
    dst: str | None = None  # cidr
    proto: str | None = None  # "icmp" or None for any

    def to_json(self):
        return {"chain": self.chain, "verdict": self.verdict, "src": self.src,
                "dst": self.dst, "proto": self.proto}

    def matches(self, src_ip: str, dst_ip: str, proto: str) -> bool:
        if self.proto is not None and self.proto != proto:
            return False
        if self.src is not None and not cidr_covers(self.src, src_ip):
            return False
        if self.dst is not None and not cidr_covers(self.dst, dst_ip):
            return False
        return True


def ip_to_int(ip: str) -> int:
    a, b, c, d = (int(p) for p in ip.split("."))
    return (a << 24) | (b << 16) | (c << 8) | d


def cidr_covers(cidr: str, ip: str) -> bool:
    net, plen = cidr.split("/")
    plen = int(plen)
    if plen == 0:
        return True
    mask = ((1 << plen) - 1) << (32 - plen)
    return (ip_to_int(net) & mask) == (ip_to_int(ip) & mask)


def prefix_len(cidr: str) -> int:
    return int(cidr.split("/")[1])


@dataclass
class NetState:
    prefix: str
    num_switches: int
    hosts_per_subnet: int
    interfaces: dict[str, Interface] = field(default_factory=dict)
    hosts: dict[str, Host] = field(default_factory=dict)
    routes: list[Route] = field(default_factory=list)
    filter_rules: list[FilterRule] = field(default_factory=list)
    prohibit_rules: list[str] = field(default_factory=list)
    delays: dict[str, int] = field(default_factory=dict)  # iface -> netem ms
    ip_forward: bool = True

    # -- naming --------------------------------------------------------------

    @property
    def router_name(self) -> str:
        return f"{self.prefix}r0"

    def iface_name(self, subnet: int) -> str:
        return f"{self.prefix}r0-eth{subnet}"

    def subnet_cidr(self, subnet: int) -> str:
        return f"192.168.{subnet}.0/24"

    def expected_gateway(self, subnet: int) -> str:
        return f"192.168.{subnet}.1"

    def hosts_in_subnet(self, subnet: int) -> list[Host]:
        return [h for h in self.hosts.values() if h.subnet == subnet]

    def node_names(self) -> list[str]:
        """Ping participants: hosts in numeric order, then the router."""
        hosts = sorted(self.hosts.values(), key=lambda h: int(h.name[len(self.prefix) + 1:]))
        return [h.name for h in hosts] + [self.router_name]

    def router_own_ips(self) -> set[str]:
        return {i.ip for i in self.interfaces.values() if i.ip is not None}

    # -- value semantics -----------------------------------------------------

    def copy(self) -> "NetState":
        s = NetState(self.prefix, self.num_switches, self.hosts_per_subnet)
        s.interfaces = {n: Interface(**vars(i)) for n, i in self.interfaces.items()}
        s.hosts = {n: Host(**vars(h)) for n, h in self.hosts.items()}
        s.routes = [Route(**vars(r)) for r in self.routes]
        s.filter_rules = [FilterRule(**vars(f)) for f in self.filter_rules]
        s.prohibit_rules = list(self.prohibit_rules)
        s.delays = dict(self.delays)
        s.ip_forward = self.ip_forward
        return s

    def to_json(self):
        return {
            "prefix": self.prefix,
            "num_switches": self.num_switches,
            "hosts_per_subnet": self.hosts_per_subnet,
            "interfaces": {n: i.to_json() for n, i in sorted(self.interfaces.items())},
            "hosts": {n: h.to_json() for n, h in sorted(self.hosts.items())},
            "routes": sorted((r.to_json() for r in self.routes),
                             key=lambda r: (r["dest"], r["dev"], str(r["gateway"]), r["metric"])),
            "filter_rules": sorted((f.to_json() for f in self.filter_rules),
                                   key=lambda f: (f["chain"], str(f["src"]), str(f["dst"]),
                                                  str(f["proto"]), f["verdict"])),
            "prohibit_rules": sorted(self.prohibit_rules),
            "delays": dict(sorted(self.delays.items())),
            "ip_forward": self.ip_forward,
        }

    def state_digest(self) -> str:
        return digest(self.to_json())


def build_topology(num_switches: int, hosts_per_subnet: int, prefix: str = "",
                   seed: int = 0) -> NetState:
    """A healthy state: every subnet wired, forwarding on, no filters."""
    if not 2 <= num_switches <= 4:
        raise ParameterOutOfRange(f"num_switches must be in [2,4], got {num_switches}")
    if not 2 <= hosts_per_subnet <= 4:
        raise ParameterOutOfRange(f"hosts_per_subnet must be in [2,4], got {hosts_per_subnet}")

    state = NetState(prefix=prefix, num_switches=num_switches, hosts_per_subnet=hosts_per_subnet)
    host_no = 0
    for k in range(1, num_switches + 1):
        iface = Interface(name=state.iface_name(k), subnet=k,
                          ip=state.expected_gateway(k), mask=24)
        state.interfaces[iface.name] = iface
        state.routes.append(Route(dest=state.subnet_cidr(k), dev=iface.name))
        for i in range(hosts_per_subnet):
            host_no += 1
            name = f"{prefix}h{host_no}"
            state.hosts[name] = Host(name=name, subnet=k, ip=f"192.168.{k}.{i + 2}",
                                     mask=24, gateway=state.expected_gateway(k))
    return state
