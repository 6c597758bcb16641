import pytest

from netbench.errors import ParameterOutOfRange
from netbench.routing.state import build_topology, cidr_covers, ip_to_int, prefix_len


def test_parameter_ranges_enforced():
    with pytest.raises(ParameterOutOfRange):
        build_topology(1, 2)
    with pytest.raises(ParameterOutOfRange):
        build_topology(5, 2)
    with pytest.raises(ParameterOutOfRange):
        build_topology(2, 1)
    with pytest.raises(ParameterOutOfRange):
        build_topology(2, 5)


def test_healthy_topology_shape():
    s = build_topology(3, 2, prefix="t_")
    assert s.router_name == "t_r0"
    assert sorted(s.interfaces) == ["t_r0-eth1", "t_r0-eth2", "t_r0-eth3"]
    assert len(s.hosts) == 6
    assert s.hosts["t_h1"].ip == "192.168.1.2"
    assert s.hosts["t_h3"].subnet == 2  # numbering continues across subnets
    assert s.hosts["t_h3"].gateway == "192.168.2.1"
    assert len(s.routes) == 3


def test_node_names_hosts_then_router_numeric_order():
    s = build_topology(2, 4, prefix="p_")
    names = s.node_names()
    assert names[-1] == "p_r0"
    assert names[:-1] == [f"p_h{i}" for i in range(1, 9)]


def test_digest_deterministic_and_copy_independent():
    a = build_topology(2, 2)
    b = build_topology(2, 2)
    assert a.state_digest() == b.state_digest()
    c = a.copy()
    c.interfaces["r0-eth1"].up = False
    assert a.state_digest() == b.state_digest()
    assert c.state_digest() != a.state_digest()


def test_digest_ignores_route_order():
    a = build_topology(3, 2)
    b = build_topology(3, 2)
    b.routes.reverse()
    assert a.state_digest() == b.state_digest()


def test_ip_helpers():
    assert ip_to_int("0.0.0.1") == 1
    assert ip_to_int("192.168.1.1") == (192 << 24) + (168 << 16) + (1 << 8) + 1
    assert cidr_covers("192.168.1.0/24", "192.168.1.77")
    assert not cidr_covers("192.168.1.0/24", "192.168.2.1")
    assert cidr_covers("0.0.0.0/0", "8.8.8.8")
    assert prefix_len("10.0.0.0/8") == 8
