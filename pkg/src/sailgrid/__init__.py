"""Supervised actor-critic learning on a tabular grid sailing task."""

from sailgrid.actor import (
    Policy,
    PolicyKind,
    QTable,
    action_probabilities,
    actor_update,
    advantage,
    greedy_policy,
    select_action,
)
from sailgrid.critic import (
    DopamineTrace,
    TdVariant,
    ValueTable,
    bellman_evaluate,
    critic_update,
    rescorla_wagner,
    td_error,
)
from sailgrid.env import (
    Action,
    Cell,
    GridWorld,
    Transition,
    enumerate_states,
    grid_sailing_task,
    midline_task,
    step,
)
from sailgrid.experiment import (
    ExperimentConfig,
    ExperimentLog,
    RunSummary,
    emit_figures_data,
    greedy_path,
    path_is_optimal,
    run_experiment,
    train_trial,
    trial_rng,
)
from sailgrid.supervisor import (
    ChoiceSet,
    SupervisorSpec,
    action_utility,
    choice_support,
    composite_action,
    gain,
    supervised_value,
    supervisor_action,
    uniform_action_utilities,
)

__version__ = "0.1.0"

__all__ = [
    "Action",
    "Cell",
    "ChoiceSet",
    "DopamineTrace",
    "ExperimentConfig",
    "ExperimentLog",
    "GridWorld",
    "Policy",
    "PolicyKind",
    "QTable",
    "RunSummary",
    "SupervisorSpec",
    "TdVariant",
    "Transition",
    "ValueTable",
    "action_probabilities",
    "action_utility",
    "actor_update",
    "advantage",
    "bellman_evaluate",
    "choice_support",
    "composite_action",
    "critic_update",
    "emit_figures_data",
    "enumerate_states",
    "gain",
    "greedy_path",
    "greedy_policy",
    "grid_sailing_task",
    "midline_task",
    "path_is_optimal",
    "rescorla_wagner",
    "run_experiment",
    "select_action",
    "step",
    "supervised_value",
    "supervisor_action",
    "td_error",
    "train_trial",
    "trial_rng",
    "uniform_action_utilities",
]
