import numpy as np
import pytest
from hypothesis import given, strategies as st

from sailgrid.actor import Policy, action_probabilities
from sailgrid.critic import (
    DopamineTrace,
    TdVariant,
    ValueTable,
    bellman_evaluate,
    critic_update,
    rescorla_wagner,
    td_error,
)
from sailgrid.env import Action, grid_sailing_task

# (row delta, col delta) in canonical action order; written out independently
# of the package's movement table so the oracle checks it too.
ORACLE_MOVES = [(-1, 0), (1, 0), (0, -1), (0, 1)]


def dense_policy_eval(world, probs, gamma, sweeps=100_000, tol=1e-14):
    """Brute-force policy evaluation on dense matrices.

    Builds transitions and rewards with its own clipping arithmetic and
    iterates V <- R + gamma * P V to numerical convergence. Deliberately
    shares no code with the implementation under test.
    """
    n = world.rows * world.cols
    goal = world.goal[0] * world.cols + world.goal[1]
    transition = np.zeros((n, n))
    reward = np.zeros(n)
    for r in range(world.rows):
        for c in range(world.cols):
            s = r * world.cols + c
            for a, (dr, dc) in enumerate(ORACLE_MOVES):
                nr, nc = r + dr, c + dc
                if not (0 <= nr < world.rows and 0 <= nc < world.cols):
                    nr, nc = r, c
                transition[s, nr * world.cols + nc] += probs[s, a]
                reward[s] += probs[s, a] * (
                    world.goal_reward if (nr, nc) == world.goal else world.step_reward
                )
    transition[goal, :] = 0.0
    reward[goal] = 0.0
    v = np.zeros(n)
    for _ in range(sweeps):
        new = reward + gamma * transition @ v
        if np.max(np.abs(new - v)) < tol:
            return new
        v = new
    return v


def all_right_policy(world):
    return Policy.deterministic({s: Action.RIGHT for s in range(world.n_states)})


def test_exactly_two_variants():
    assert [v.value for v in TdVariant] == ["standard", "squared"]


class TestTdError:
    @pytest.mark.parametrize(
        "variant, r, v_next, v_cur, gamma, expected",
        [
            (TdVariant.STANDARD, 1.0, 0.0, 0.0, 0.9, 1.0),
            (TdVariant.STANDARD, 0.0, 0.5, 0.5, 1.0, 0.0),
            (TdVariant.SQUARED, 0.0, 0.5, 0.15, 0.9, (0.9 * 0.5 - 0.15) ** 2),
            (TdVariant.SQUARED, 1.0, 0.0, 0.0, 0.9, 1.0),
        ],
    )
    def test_examples(self, variant, r, v_next, v_cur, gamma, expected):
        assert td_error(variant, r, v_next, v_cur, gamma) == pytest.approx(expected, abs=1e-15)

    @pytest.mark.parametrize("gamma", [-0.1, 1.1, 2.0])
    def test_gamma_out_of_range(self, gamma):
        with pytest.raises(ValueError, match="gamma"):
            td_error(TdVariant.STANDARD, 0.0, 0.0, 0.0, gamma)

    @given(
        r=st.floats(-1e6, 1e6),
        v_next=st.floats(-1e6, 1e6),
        v_cur=st.floats(-1e6, 1e6),
        gamma=st.floats(0.0, 1.0),
    )
    def test_squared_is_nonnegative(self, r, v_next, v_cur, gamma):
        assert td_error(TdVariant.SQUARED, r, v_next, v_cur, gamma) >= 0.0

    @given(
        r1=st.floats(-100, 100),
        r2=st.floats(-100, 100),
        v_next=st.floats(-100, 100),
        v_cur=st.floats(-100, 100),
        gamma=st.floats(0.0, 1.0),
    )
    def test_standard_linear_in_reward(self, r1, r2, v_next, v_cur, gamma):
        lhs = td_error(TdVariant.STANDARD, r1 + r2, v_next, v_cur, gamma) + td_error(
            TdVariant.STANDARD, 0.0, v_next, v_cur, gamma
        )
        rhs = td_error(TdVariant.STANDARD, r1, v_next, v_cur, gamma) + td_error(
            TdVariant.STANDARD, r2, v_next, v_cur, gamma
        )
        assert lhs == pytest.approx(rhs, abs=1e-9)


class TestCriticUpdate:
    def test_linear_step_from_zero(self, world):
        table = ValueTable.zeros(world)
        critic_update(table, 0, 1.0, 0.1)
        assert table.values[0] == pytest.approx(0.1)

    def test_zero_delta_is_identity(self, world):
        table = ValueTable.zeros(world)
        table.values[3] = 0.5
        critic_update(table, 3, 0.0, 0.1)
        assert table.values[3] == 0.5

    def test_goal_stays_clamped(self, world):
        table = ValueTable.zeros(world)
        critic_update(table, table.goal_index, 1.0, 0.1)
        assert table.values[table.goal_index] == 0.0

    def test_touches_exactly_one_entry(self, world, rng):
        table = ValueTable(rng.normal(size=world.n_states), world.index(world.goal))
        table.values[table.goal_index] = 0.0
        before = table.values.copy()
        critic_update(table, 2, 0.7, 0.5)
        changed = np.nonzero(table.values != before)[0]
        assert list(changed) == [2]

    @pytest.mark.parametrize("alpha", [0.0, -0.1, 1.5])
    def test_alpha_out_of_range(self, world, alpha):
        with pytest.raises(ValueError, match="alpha"):
            critic_update(ValueTable.zeros(world), 0, 1.0, alpha)

    def test_invalid_state_index(self, world):
        with pytest.raises(ValueError, match="state index"):
            critic_update(ValueTable.zeros(world), 99, 1.0, 0.1)

    @given(st.lists(st.tuples(st.floats(0, 5), st.floats(-3, 3), st.floats(-3, 3)), max_size=30))
    def test_squared_updates_never_decrease_values(self, transitions):
        world = grid_sailing_task()
        table = ValueTable.zeros(world)
        for r, v_next, v_cur in transitions:
            before = table.values.copy()
            delta = td_error(TdVariant.SQUARED, r, v_next, v_cur, 0.9)
            critic_update(table, 5, delta, 0.1)
            assert np.all(table.values >= before)


class TestBellmanEvaluate:
    def test_all_right_values_are_geometric(self, world):
        table = bellman_evaluate(world, all_right_policy(world), gamma=0.9, tol=1e-10)
        # d moves to go along the midline leave the goal reward discounted d-1 times
        for col, moves_to_go in zip(range(4), (4, 3, 2, 1)):
            expected = 0.9 ** (moves_to_go - 1)
            assert table.values[world.index((1, col))] == pytest.approx(expected, abs=1e-9)

    def test_gamma_zero_gives_immediate_reward(self, world):
        policy = Policy.uniform_random()
        table = bellman_evaluate(world, policy, gamma=0.0, tol=1e-10)
        goal = world.index(world.goal)
        # expected immediate reward: quarter of the actions that enter the goal
        neighbours = {(1, 3): 0.25, (0, 4): 0.25, (2, 4): 0.25}
        for s in range(world.n_states):
            if s == goal:
                continue
            expected = neighbours.get(world.cell(s), 0.0)
            assert table.values[s] == pytest.approx(expected, abs=1e-12)

    def test_uniform_policy_matches_dense_oracle(self, world):
        table = bellman_evaluate(world, Policy.uniform_random(), gamma=0.9, tol=1e-10)
        oracle = dense_policy_eval(world, np.full((world.n_states, 4), 0.25), 0.9)
        assert np.max(np.abs(table.values - oracle)) < 1e-8

    def test_all_right_matches_dense_oracle(self, world):
        probs = np.zeros((world.n_states, 4))
        probs[:, Action.RIGHT] = 1.0
        table = bellman_evaluate(world, all_right_policy(world), gamma=0.9, tol=1e-10)
        oracle = dense_policy_eval(world, probs, 0.9)
        assert np.max(np.abs(table.values - oracle)) < 1e-8

    def test_fixed_point_residual(self, world):
        tol = 1e-10
        policy = Policy.uniform_random()
        table = bellman_evaluate(world, policy, gamma=0.9, tol=tol)
        from sailgrid.env import step  # residual recomputed from first principles

        worst = 0.0
        for s in range(world.n_states):
            if s == table.goal_index:
                continue
            probs = action_probabilities(policy, None, s)
            target = sum(
                p * (t.reward + 0.9 * table.values[world.index(t.next_state)])
                for p, t in zip(probs, (step(world, world.cell(s), a) for a in Action))
            )
            worst = max(worst, abs(table.values[s] - target))
        assert worst < 10 * tol

    def test_tol_must_be_positive(self, world):
        with pytest.raises(ValueError, match="tol"):
            bellman_evaluate(world, Policy.uniform_random(), gamma=0.9, tol=0.0)

    def test_gamma_must_be_below_one(self, world):
        with pytest.raises(ValueError, match="gamma"):
            bellman_evaluate(world, Policy.uniform_random(), gamma=1.0, tol=1e-10)

    def test_softmax_requires_q(self, world):
        with pytest.raises(ValueError, match="QTable"):
            bellman_evaluate(world, Policy.softmax(0.5), gamma=0.9, tol=1e-10)


class TestRescorlaWagner:
    @pytest.mark.parametrize(
        "alpha, beta, lam, sum_v, expected",
        [
            (1.0, 1.0, 1.0, 0.0, 1.0),
            (0.5, 0.5, 1.0, 1.0, 0.0),
            (0.5, 0.2, 1.0, 0.4, 0.5 * 0.2 * 0.6),
        ],
    )
    def test_examples(self, alpha, beta, lam, sum_v, expected):
        assert rescorla_wagner(alpha, beta, lam, sum_v) == pytest.approx(expected)

    @given(
        alpha=st.floats(0, 1),
        beta=st.floats(0, 1),
        lam=st.floats(-10, 10),
        sum_v=st.floats(-10, 10),
    )
    def test_sign_follows_surprise(self, alpha, beta, lam, sum_v):
        out = rescorla_wagner(alpha, beta, lam, sum_v)
        assert out == pytest.approx(alpha * beta * (lam - sum_v), rel=1e-12, abs=1e-12)


class TestDopamineTrace:
    def test_append_in_order(self):
        trace = DopamineTrace()
        trace.append(0, 0, 0.5)
        trace.append(0, 1, -0.25)
        trace.append(1, 0, 0.0)
        assert len(trace) == 3
        assert trace.records[1] == (0, 1, -0.25)

    def test_rejects_out_of_order_records(self):
        trace = DopamineTrace()
        trace.append(1, 0, 0.5)
        with pytest.raises(ValueError, match="non-decreasing"):
            trace.append(0, 4, 0.1)
