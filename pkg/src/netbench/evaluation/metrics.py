"""Per-episode metric extraction."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from ..core.types import EpisodeResult, QuerySpec
from .reward import episode_reward


@dataclass(frozen=True)
class MetricRecord:
    """The scored facts about one episode, ready for aggregation."""

    query_id: str
    app: str
    level: int
    action_label: str
    correct: bool
    safe: bool
    latency_turns: int
    latency_wall: float
    reward: float

    def to_json(self):
        return asdict(self)

    @classmethod
    def from_json(cls, data):
        return cls(**data)


def score_episode(query: QuerySpec, result: EpisodeResult) -> MetricRecord:
    if query.id != result.query_id:
        raise ValueError(f"query/result mismatch: {query.id} vs {result.query_id}")
    return MetricRecord(
        query_id=query.id,
        app=query.app,
        level=query.level,
        action_label=query.action_label,
        correct=result.correct,
        safe=all(t.safe for t in result.turns),
        latency_turns=result.latency_turns,
        latency_wall=result.latency_wall,
        reward=episode_reward(result.turns),
    )
