import pytest

from netbench.routing.commands import INVALID, READ, WRITE, exec_command
from netbench.routing.state import build_topology


@pytest.fixture
def state():
    return build_topology(2, 2)


def test_unknown_machine(state):
    out = exec_command(state, "h99", "ip route")
    assert out.kind == INVALID and "unknown machine" in out.output


def test_machine_names_accept_prefix(state):
    pref = build_topology(2, 2, prefix="n5_")
    assert exec_command(pref, "r0", "ip route").kind == READ
    assert exec_command(pref, "n5_r0", "ip route").kind == READ


def test_vtysh_ping_sudo_rejected(state):
    for cmd in ("vtysh -c 'show ip route'", "ping 192.168.1.2", "pingall",
                "sudo ip link set r0-eth1 up"):
        out = exec_command(state, "r0", cmd)
        assert out.kind == INVALID, cmd


def test_reads_do_not_change_state(state):
    d = state.state_digest()
    for cmd in ("ifconfig", "ip addr", "ip link", "ip route", "ip rule",
                "iptables -L", "sysctl net.ipv4.ip_forward", "tc qdisc show"):
        out = exec_command(state, "r0", cmd)
        assert out.kind == READ, (cmd, out.output)
        assert out.state.state_digest() == d


def test_kernel_route_rendering(state):
    out = exec_command(state, "r0", "ip route")
    assert "192.168.1.0/24 dev r0-eth1 proto kernel scope link src 192.168.1.1" in out.output


def test_ifconfig_down_and_up(state):
    down = exec_command(state, "r0", "ifconfig r0-eth1 down")
    assert down.kind == WRITE
    assert not down.state.interfaces["r0-eth1"].up
    up = exec_command(down.state, "r0", "ifconfig r0-eth1 up")
    assert up.state.state_digest() == state.state_digest()


def test_ip_link_mtu(state):
    out = exec_command(state, "r0", "ip link set r0-eth2 mtu 100")
    assert out.kind == WRITE and out.state.interfaces["r0-eth2"].mtu == 100
    bad = exec_command(state, "r0", "ip link set r0-eth2 mtu 10")
    assert bad.kind == INVALID


def test_addr_add_on_occupied_interface(state):
    out = exec_command(state, "r0", "ip addr add 10.0.0.1/24 dev r0-eth1")
    assert out.kind == INVALID and "File exists" in out.output


def test_addr_flush_then_replace_restores_digest(state):
    d = state.state_digest()
    flushed = exec_command(state, "r0", "ip addr flush dev r0-eth1")
    assert flushed.kind == WRITE
    assert flushed.state.interfaces["r0-eth1"].ip is None
    back = exec_command(flushed.state, "r0", "ip addr replace 192.168.1.1/24 dev r0-eth1")
    assert back.state.state_digest() == d


def test_addr_del_requires_exact_address(state):
    out = exec_command(state, "r0", "ip addr del 192.168.9.9/24 dev r0-eth1")
    assert out.kind == INVALID


def test_route_replace_removes_competitors(state):
    s = exec_command(state, "r0", "ip route add 192.168.2.0/24 dev r0-eth1 metric 50").state
    assert len([r for r in s.routes if r.dest == "192.168.2.0/24"]) == 2
    s2 = exec_command(s, "r0", "ip route replace 192.168.2.0/24 dev r0-eth2").state
    assert len([r for r in s2.routes if r.dest == "192.168.2.0/24"]) == 1
    assert s2.state_digest() == state.state_digest()


def test_route_del_missing(state):
    out = exec_command(state, "r0", "ip route del 10.9.9.0/24")
    assert out.kind == INVALID and "No such process" in out.output


def test_route_add_duplicate(state):
    out = exec_command(state, "r0", "ip route add 192.168.1.0/24 dev r0-eth1")
    assert out.kind == INVALID and "File exists" in out.output


def test_route_unknown_device(state):
    out = exec_command(state, "r0", "ip route add 10.0.0.0/24 dev r0-eth9")
    assert out.kind == INVALID and "Cannot find device" in out.output


def test_iptables_append_and_delete(state):
    s = exec_command(state, "r0", "iptables -A FORWARD -s 192.168.1.0/24 -j DROP").state
    listing = exec_command(s, "r0", "iptables -L FORWARD").output
    assert "DROP" in listing and "192.168.1.0/24" in listing
    # -D matches the rule by its fields regardless of flag order
    back = exec_command(s, "r0", "iptables -D FORWARD -j DROP -s 192.168.1.0/24")
    assert back.kind == WRITE
    assert back.state.state_digest() == state.state_digest()


def test_iptables_delete_missing_rule(state):
    out = exec_command(state, "r0", "iptables -D FORWARD -j DROP")
    assert out.kind == INVALID and "Bad rule" in out.output


def test_ip_rule_prohibit_round_trip(state):
    s = exec_command(state, "r0", "ip rule add prohibit from all").state
    assert s.prohibit_rules == ["from all"]
    dup = exec_command(s, "r0", "ip rule add prohibit from all")
    assert dup.kind == INVALID
    back = exec_command(s, "r0", "ip rule del prohibit from all")
    assert back.state.state_digest() == state.state_digest()


def test_sysctl_toggle(state):
    off = exec_command(state, "r0", "sysctl -w net.ipv4.ip_forward=0")
    assert off.kind == WRITE and not off.state.ip_forward
    reading = exec_command(off.state, "r0", "sysctl net.ipv4.ip_forward")
    assert reading.output == "net.ipv4.ip_forward = 0"


def test_tc_netem_round_trip(state):
    s = exec_command(state, "r0", "tc qdisc add dev r0-eth1 root netem delay 20000ms").state
    assert s.delays == {"r0-eth1": 20000}
    assert "delay 20000ms" in exec_command(s, "r0", "tc qdisc show").output
    back = exec_command(s, "r0", "tc qdisc del dev r0-eth1 root")
    assert back.state.state_digest() == state.state_digest()
    missing = exec_command(state, "r0", "tc qdisc del dev r0-eth1 root")
    assert missing.kind == INVALID


def test_host_reads_allowed_writes_refused(state):
    assert exec_command(state, "h1", "ifconfig").kind == READ
    out = exec_command(state, "h1", "ip link set h1-eth0 down")
    assert out.kind == INVALID and "router" in out.output


def test_errors_never_raise(state):
    for cmd in ("", "ip", "ip bogus", "ifconfig r0-eth1 sideways", "iptables",
                "iptables -A FORWARD -j ACCEPT", "tc qdisc add dev r0-eth1 root pfifo",
                "ip route add not-a-cidr dev r0-eth1", "sysctl -w kernel.panic=1"):
        out = exec_command(state, "r0", cmd)
        assert out.kind == INVALID, cmd
