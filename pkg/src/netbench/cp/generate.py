"""Capacity-planning query generation with executable ground truths.

Each label maps to a natural-language template plus the action program
that realizes it. The program is executed once at generation time as a
self-consistency check, and its final digest becomes the target.
"""

from __future__ import annotations

from ..core.types import GT_ACTION_PROGRAM, ActionSpec, GroundTruth, QuerySpec
from ..errors import NoEligibleOperand
from ..seeds import rng_for
from .graph import CpGraph, apply_basic_op

LEVEL_LABELS = {
    1: ("remove", "rank", "list", "add"),
    2: ("remove-count", "remove-list", "remove-rank"),
    3: ("add-count", "add-list", "add-rank"),
}


def _nodes_of_type(graph: CpGraph, ntype: str) -> list[str]:
    return sorted(n for n, d in graph.nodes.items() if d["type"] == ntype)


def _pick(rng, pool, what):
    if not pool:
        raise NoEligibleOperand(f"no eligible {what} in graph")
    return rng.choice(pool)


def _parent_of(graph: CpGraph, name: str, parent_type: str) -> str:
    parents = sorted(s for s, d, et in graph.edges if d == name and et == "RK_CONTAINS"
                     and graph.nodes[s]["type"] == parent_type)
    if not parents:
        raise NoEligibleOperand(f"{name} has no {parent_type} parent")
    return parents[0]


def _fresh_name(rng, graph: CpGraph, ntype: str) -> str:
    short = ntype  # names carry the full EK_* type so it can be inferred back
    while True:
        cand = f"new_{short}_{rng.randrange(1, 100)}"
        if cand not in graph.nodes:
            return cand


def _execute(graph: CpGraph, program) -> tuple[str, object]:
    state = graph
    result = None
    for action in program:
        state, result = apply_basic_op(state, action)
    return state.state_digest(), result


def generate_cp_query(graph: CpGraph, level: int, seed: int) -> tuple[QuerySpec, GroundTruth]:
    """Sample one query at the given complexity level, with its program."""
    rng = rng_for(seed)
    label = rng.choice(LEVEL_LABELS[level])

    switches = _nodes_of_type(graph, "EK_PACKET_SWITCH")
    ports = _nodes_of_type(graph, "EK_PORT")
    chassis = _nodes_of_type(graph, "EK_CHASSIS")
    domains = _nodes_of_type(graph, "EK_CONTROL_DOMAIN")
    aggs = _nodes_of_type(graph, "EK_AGG_BLOCK")

    if label == "remove":
        sw = _pick(rng, switches, "packet switch")
        parent = _parent_of(graph, sw, "EK_CHASSIS")
        prompt = (f"Remove {sw} from the graph. "
                  f"List the direct child nodes of {parent} in the updated graph.")
        program = [ActionSpec("remove", (sw,)), ActionSpec("list", (parent,))]

    elif label == "rank":
        pools = [("EK_CONTROL_DOMAIN", domains), ("EK_CHASSIS", chassis), ("EK_AGG_BLOCK", aggs)]
        ntype, pool = pools[rng.randrange(len(pools))]
        node = _pick(rng, pool, ntype)
        prompt = (f"Rank all child nodes of type {ntype} with name {node} "
                  f"based on the physical_capacity_bps attribute.")
        program = [ActionSpec("rank", (node,))]

    elif label == "list":
        node = _pick(rng, sorted(chassis + aggs + domains), "container node")
        prompt = f"List all the child nodes of {node}. Return a list of child node names."
        program = [ActionSpec("list", (node,))]

    elif label == "add":
        sw = _pick(rng, switches, "packet switch")
        name = _fresh_name(rng, graph, "EK_PORT")
        prompt = f"Add a new PORT with {name} and type=EK_PORT to the node {sw}."
        program = [ActionSpec("add", (name, "EK_PORT", sw))]

    elif label == "remove-count":
        # keep at least one sibling port so the switch stays structurally valid
        eligible = [p for p in ports
                    if len([c for c in graph.children(_parent_of(graph, p, "EK_PACKET_SWITCH"))
                            if graph.nodes[c]["type"] == "EK_PORT"]) >= 2]
        port = _pick(rng, eligible, "removable port")
        sw = _parent_of(graph, port, "EK_PACKET_SWITCH")
        prompt = (f"Remove {port}. Count the number of nodes with type=EK_PORT "
                  f"under {sw} in the updated graph.")
        program = [ActionSpec("remove", (port,)), ActionSpec("count", ("EK_PORT", sw))]

    elif label == "remove-list":
        sw = _pick(rng, switches, "packet switch")
        parent = _parent_of(graph, sw, "EK_CHASSIS")
        prompt = f"Remove {sw} from the graph. List the direct child nodes of {parent}."
        program = [ActionSpec("remove", (sw,)), ActionSpec("list", (parent,))]

    elif label == "remove-rank":
        sw = _pick(rng, switches, "packet switch")
        parent = _parent_of(graph, sw, "EK_CHASSIS")
        prompt = f"Remove {sw}. Rank the child nodes of {parent} based on the total bandwidth."
        program = [ActionSpec("remove", (sw,)), ActionSpec("rank", (parent,))]

    elif label == "add-count":
        sw = _pick(rng, switches, "packet switch")
        name = _fresh_name(rng, graph, "EK_PORT")
        prompt = (f"Add a new PORT with {name} and type=EK_PORT to the node {sw}. "
                  f"Count the number of type=EK_PORT under {sw} in the updated graph.")
        program = [ActionSpec("add", (name, "EK_PORT", sw)),
                   ActionSpec("count", ("EK_PORT", sw))]

    elif label == "add-list":
        sw = _pick(rng, switches, "packet switch")
        name = _fresh_name(rng, graph, "EK_PORT")
        prompt = (f"Add a new PORT with {name} and type=EK_PORT to the node {sw}. "
                  f"List the direct child nodes of {sw} in the updated graph.")
        program = [ActionSpec("add", (name, "EK_PORT", sw)),
                   ActionSpec("list", (sw,))]

    elif label == "add-rank":
        sw = _pick(rng, switches, "packet switch")
        name = _fresh_name(rng, graph, "EK_PORT")
        prompt = (f"Add a new PORT with {name} and type=EK_PORT to the node {sw}. "
                  f"Rank the child nodes of {sw} based on the physical_capacity_bps attribute.")
        program = [ActionSpec("add", (name, "EK_PORT", sw)),
                   ActionSpec("rank", (sw,))]

    else:  # pragma: no cover - label table is closed
        raise AssertionError(label)

    # self-consistency: the golden program must execute cleanly right now
    target_digest, _ = _execute(graph, program)

    query = QuerySpec(
        id=f"cp-L{level}-{seed:016x}",
        app="cp",
        level=level,
        action_label=label,
        prompt_text=prompt,
        seed=seed,
    )
    truth = GroundTruth(kind=GT_ACTION_PROGRAM, target_digest=target_digest, program=tuple(program))
    return query, truth
