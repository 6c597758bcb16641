"""Turn-level reward shaping for training-oriented consumers.

The shaping mirrors what matters operationally: invalid actions are
heavily punished, information gathering earns a small bonus, and only
the write that actually restores the goal earns the jackpot. Routine
valid writes and final answers are neutral.
"""

from __future__ import annotations

from ..agents.base import MSG_COMMAND
from ..core.types import Turn

REWARD_INVALID = -100.0
REWARD_DIAGNOSTIC = 10.0
REWARD_GOAL_WRITE = 100.0


def turn_reward(turn: Turn) -> float:
    if not turn.valid:
        return REWARD_INVALID
    if turn.is_write and turn.goal_reached:
        return REWARD_GOAL_WRITE
    if not turn.is_write and turn.agent_message.get("kind") == MSG_COMMAND:
        return REWARD_DIAGNOSTIC  # a successful read
    return 0.0


def episode_reward(turns) -> float:
    return sum(turn_reward(t) for t in turns)
