"""Batch query generation and environment construction.

Per-query seeds are derived from the master seed and the query index,
so a batch is reproducible as a whole and every query is reproducible
on its own. Batches serialize to JSONL in canonical form: regenerating
with the same configuration yields byte-identical files.
"""

from __future__ import annotations

import json
from pathlib import Path

from ..cp.env import CpEnvironment
from ..cp.generate import generate_cp_query
from ..cp.topology import DESK_SCALE, generate_synthetic_topology
from ..digest import canonical_json
from ..errors import UnknownApp
from ..k8spolicy.env import K8sEnvironment
from ..k8spolicy.generate import generate_k8s_query
from ..routing.env import RoutingEnvironment
from ..routing.generate import generate_routing_query
from ..seeds import derive_seed
from .types import BenchmarkConfig, GroundTruth, QuerySpec

# index reserved for deriving the shared capacity-planning base topology;
# query seeds use indices starting at 0
_CP_BASE_INDEX = 0xFFFF_FFFF_0000_0001


def cp_base_graph(config: BenchmarkConfig):
    """The one synthetic topology all queries of a cp batch run against."""
    return generate_synthetic_topology(DESK_SCALE, seed=derive_seed(config.seed, _CP_BASE_INDEX))


def generate_batch(config: BenchmarkConfig) -> list:
    """Generate ``config.num_queries`` (QuerySpec, GroundTruth) pairs.

    Levels are assigned round-robin so every requested level gets an
    equal share (up to remainder).
    """
    pairs = []
    base = cp_base_graph(config) if config.app == "cp" else None
    for index in range(config.num_queries):
        level = config.levels[index % len(config.levels)]
        seed = derive_seed(config.seed, index)
        if config.app == "cp":
            pairs.append(generate_cp_query(base, level, seed))
        elif config.app == "routing":
            pairs.append(generate_routing_query(level, seed))
        elif config.app == "k8s":
            pairs.append(generate_k8s_query(level, seed))
        else:
            raise UnknownApp(config.app)
    return pairs


def make_environment(config: BenchmarkConfig, query: QuerySpec, truth: GroundTruth,
                     base_graph=None):
    if config.app == "cp":
        base = base_graph if base_graph is not None else cp_base_graph(config)
        return CpEnvironment(base, query, truth, safety_rule=config.safety_rule)
    if config.app == "routing":
        return RoutingEnvironment(query, truth, safety_rule=config.safety_rule)
    if config.app == "k8s":
        return K8sEnvironment(query, truth, safety_rule=config.safety_rule)
    raise UnknownApp(config.app)


def write_batch_jsonl(pairs, path) -> int:
    path = Path(path)
    with path.open("w", encoding="utf-8") as fh:
        for query, truth in pairs:
            fh.write(canonical_json({"query": query.to_json(),
                                     "truth": truth.to_json()}) + "\n")
    return len(pairs)


def read_batch_jsonl(path) -> list:
    pairs = []
    with Path(path).open(encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            data = json.loads(line)
            pairs.append((QuerySpec.from_json(data["query"]),
                          GroundTruth.from_json(data["truth"])))
    return pairs
