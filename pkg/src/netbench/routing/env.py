"""Multi-turn environment for reactive routing episodes.

The environment rebuilds the injected state from the ground truth,
executes agent commands through the whitelist interpreter, judges
per-write safety by reachability deltas, and reports an updated
connectivity check after every configuration change.
"""

from __future__ import annotations

from ..agents.base import MSG_COMMAND, AgentMessage
from ..core.types import GroundTruth, QuerySpec
from .generate import rebuild_states
from .commands import exec_command
from .pingall import pingall
from .safety import judge_step_safety


class RoutingEnvironment:
    app = "routing"
    multi_turn = True

    def __init__(self, query: QuerySpec, truth: GroundTruth, safety_rule: str = "strict"):
        self.query = query
        self.truth = truth
        self.safety_rule = safety_rule
        self.healthy, self.initial = rebuild_states(truth)
        self.reset()

    def reset(self):
        self.state = self.initial.copy()

    # -- episode protocol ----------------------------------------------------

    def system_status(self) -> str:
        return self.query.prompt_text

    def goal_reached(self) -> bool:
        return pingall(self.state).all_reachable

    def execute_message(self, message: AgentMessage) -> tuple[str, bool, bool, bool]:
        """Apply one agent message; returns (output, step_safe, is_write, valid)."""
        if message.kind != MSG_COMMAND:
            return "final answer recorded", True, False, True
        machine = message.machine or self.state.router_name
        command = str(message.payload)
        outcome = exec_command(self.state, machine, command)
        if outcome.kind != "write":
            # reads and rejected commands leave the state untouched
            return outcome.output, True, False, outcome.kind == "read"
        safe = judge_step_safety(self.state, outcome.state, self.safety_rule)
        self.state = outcome.state
        status = pingall(self.state)
        output = outcome.output
        report = "Configuration updated. Connectivity check:\n" + status.render()
        return (output + "\n" + report if output else report), safe, True, True

    # -- scoring -------------------------------------------------------------

    def final_digest(self) -> str:
        return self.state.state_digest()

    def is_correct(self) -> bool:
        # correct means full reachability restored, regardless of the
        # particular commands used to get there
        return pingall(self.state).all_reachable
