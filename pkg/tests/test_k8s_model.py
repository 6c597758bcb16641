import yaml

from netbench.k8spolicy.connectivity import connectivity_check, flow_allowed
from netbench.k8spolicy.model import DEFAULT_DENY, EXPECTED_CALLERS, SERVICES, \
    SERVICE_PORTS, canonical_policy, cluster_digest, default_policies, \
    expected_flows, flow_universe, policy_yaml


def test_twelve_services_plus_client():
    assert len(SERVICES) == 12
    assert "loadgenerator" in SERVICES
    assert len(SERVICE_PORTS) == 11  # every service except the pure client


def test_known_ports():
    assert SERVICE_PORTS["adservice"] == 9555
    assert SERVICE_PORTS["cartservice"] == 7070
    assert SERVICE_PORTS["redis-cart"] == 6379


def test_expected_graph_shape():
    assert set(EXPECTED_CALLERS["cartservice"]) == {"checkoutservice", "frontend"}
    assert EXPECTED_CALLERS["frontend"] == ("loadgenerator",)
    assert EXPECTED_CALLERS["redis-cart"] == ("cartservice",)
    assert len(expected_flows()) == 16


def test_flow_universe_covers_all_client_server_pairs():
    flows = flow_universe()
    assert len(flows) == 12 * 11 - 11  # every service to every server, minus self-flows
    assert all(port == SERVICE_PORTS[dst] for _, dst, port in flows)


def test_default_policies_count_and_names():
    policies = default_policies()
    assert len(policies) == 13
    assert DEFAULT_DENY in policies
    assert set(policies) == set(SERVICES) | {DEFAULT_DENY}


def test_baseline_is_clean():
    policies = default_policies()
    report = connectivity_check(policies)
    assert report.clean
    assert "match the expected service graph" in report.render()


def test_baseline_allows_exactly_expected_flows():
    policies = default_policies()
    expected = set(expected_flows())
    for src, dst, port in flow_universe():
        assert flow_allowed(policies, src, dst, port) == ((src, dst, port) in expected)


def test_default_policies_are_ingress_only():
    for name, policy in default_policies().items():
        assert policy["spec"]["policyTypes"] == ["Ingress"]
        assert "egress" not in policy["spec"]


def test_cluster_digest_deterministic():
    assert cluster_digest(default_policies()) == cluster_digest(default_policies())


def test_canonical_policy_sorts_keys():
    p = canonical_policy({"b": {"y": 1, "x": 2}, "a": 3})
    assert list(p) == ["a", "b"]
    assert list(p["b"]) == ["x", "y"]


def test_policy_yaml_round_trips():
    for name, policy in default_policies().items():
        text = policy_yaml(policy)
        assert canonical_policy(yaml.safe_load(text)) == policy


def test_wrong_port_is_blocked():
    policies = default_policies()
    assert not flow_allowed(policies, "frontend", "cartservice", 9999)


def test_unselected_pod_defaults_to_deny_via_catch_all():
    policies = default_policies()
    del policies["adservice"]
    # with no per-service policy, default-deny still selects the pod
    assert not flow_allowed(policies, "frontend", "adservice", 9555)
    del policies[DEFAULT_DENY]
    # with no selecting policy at all, ingress is unrestricted
    assert flow_allowed(policies, "frontend", "adservice", 9555)
