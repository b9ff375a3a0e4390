"""Unit tests for the stacking world model."""

import itertools
from collections import deque

import pytest

from stacksolve.core import (
    Clear,
    Goal,
    ObjectId,
    On,
    OnTable,
    Plan,
    Problem,
    Stack,
    StackFromTable,
    Unstack,
    WorldState,
    apply,
    canonicalize,
    enumerate_configurations,
    execute_plan,
    ground_actions,
    implies,
    satisfies,
    state_from_stacks,
    successors,
)
from stacksolve.exceptions import (
    InconsistentStateError,
    InvalidActionError,
    InvalidFactError,
    PreconditionViolationError,
    TooManyObjectsError,
)

from ..fixtures.sample_problems import SUPPLEMENT_STACKS

FOUR = ["plate", "keyboard", "candle", "notebook"]


class TestValueTypes:
    """Test fact, action and object invariants."""

    def test_object_on_itself_rejected(self) -> None:
        """Test that On(x, x) cannot be built."""
        with pytest.raises(InvalidFactError):
            On("plate", "plate")

    @pytest.mark.parametrize(
        "build",
        [
            lambda: Unstack("plate", "plate"),
            lambda: StackFromTable("plate", "plate"),
            lambda: Stack("plate", "candle", "plate"),
            lambda: Stack("plate", "plate", "candle"),
        ],
    )
    def test_action_repeating_an_object_rejected(self, build) -> None:
        """Test that actions need distinct objects."""
        with pytest.raises(InvalidActionError):
            build()

    @pytest.mark.parametrize("name", ["", " plate", "plate "])
    def test_object_name_must_be_trimmed(self, name: str) -> None:
        """Test that object names cannot be empty or padded."""
        with pytest.raises(ValueError):
            ObjectId(name)

    def test_fact_strings(self) -> None:
        """Test the s-expression rendering of facts and actions."""
        assert str(On("a", "b")) == "(on a b)"
        assert str(OnTable("a")) == "(on-table a)"
        assert str(Clear("a")) == "(clear a)"
        assert str(Stack("a", "b", "c")) == "(stack a b c)"

    def test_action_schemas(self) -> None:
        """Test preconditions and effects of the three actions."""
        unstack = Unstack("x", "y")
        assert unstack.preconditions == (On("x", "y"), Clear("x"))
        assert unstack.add_effects == {OnTable("x"), Clear("y")}
        assert unstack.delete_effects == {On("x", "y")}

        from_table = StackFromTable("x", "y")
        assert from_table.preconditions == (OnTable("x"), Clear("x"), Clear("y"))
        assert from_table.add_effects == {On("x", "y")}
        assert from_table.delete_effects == {OnTable("x"), Clear("y")}

        stack = Stack("x", "y", "z")
        assert stack.preconditions == (On("x", "y"), Clear("x"), Clear("z"))
        assert stack.add_effects == {On("x", "z"), Clear("y")}
        assert stack.delete_effects == {On("x", "y"), Clear("z")}

    def test_goal_must_not_be_empty(self) -> None:
        """Test that a goal needs an atom."""
        with pytest.raises(ValueError):
            Goal(())

    def test_goal_objects_in_first_mention_order(self) -> None:
        """Test Goal.objects ordering."""
        goal = Goal((Clear("b"), On("a", "b"), OnTable("c")))
        assert goal.objects == ["b", "a", "c"]
        assert len(goal) == 3


class TestCanonicalize:
    """Test fact-set validation."""

    def test_missing_clear_facts_filled_in(self) -> None:
        """Test that clear facts are recomputed."""
        facts = [
            OnTable("writing pad"),
            On("notebook", "writing pad"),
            On("tissue box", "notebook"),
            OnTable("tablet"),
        ]
        names = ["writing pad", "notebook", "tissue box", "tablet"]
        assert canonicalize(facts, names) == state_from_stacks(SUPPLEMENT_STACKS)

    def test_stated_clear_facts_accepted(self) -> None:
        """Test that a canonical fact set is a fixed point."""
        state = state_from_stacks(SUPPLEMENT_STACKS)
        assert canonicalize(state.facts, [ObjectId(name) for name in state.objects]) == state

    @pytest.mark.parametrize(
        "facts",
        [
            # Two supports for one object
            [OnTable("a"), On("a", "b"), OnTable("b")],
            # Two objects on one
            [OnTable("a"), On("b", "a"), On("c", "a")],
            # Cycle
            [On("a", "b"), On("b", "a"), OnTable("c")],
            # Clear object with something on it
            [OnTable("a"), On("b", "a"), Clear("a"), OnTable("c")],
            # Unsupported object
            [OnTable("a"), OnTable("b")],
            # Unknown object
            [OnTable("a"), OnTable("b"), OnTable("c"), OnTable("d")],
        ],
    )
    def test_inconsistent_states_rejected(self, facts) -> None:
        """Test each way a fact set can fail to be a world state."""
        with pytest.raises(InconsistentStateError):
            canonicalize(facts, ["a", "b", "c"])

    def test_stacks_ordered_by_reference_order(self) -> None:
        """Test WorldState.stacks with and without an order."""
        state = state_from_stacks([["tablet"], ["writing pad", "notebook"]])
        assert state.stacks() == [["tablet"], ["writing pad", "notebook"]]
        assert state.stacks(["notebook", "writing pad", "tablet"]) == [
            ["writing pad", "notebook"],
            ["tablet"],
        ]
        assert state.support_of("notebook") == "writing pad"
        assert state.occupant_of("writing pad") == "notebook"
        assert state.is_clear("notebook")
        assert not state.is_clear("writing pad")

    def test_canonical_facts_render_order(self) -> None:
        """Test bottom-to-top facts with the clear fact last, per stack."""
        state = state_from_stacks(SUPPLEMENT_STACKS)
        assert state.canonical_facts(["writing pad", "notebook", "tissue box", "tablet"]) == [
            OnTable("writing pad"),
            On("notebook", "writing pad"),
            On("tissue box", "notebook"),
            Clear("tissue box"),
            OnTable("tablet"),
            Clear("tablet"),
        ]


class TestApply:
    """Test action application and plan execution."""

    def test_unstack_clears_notebook(self) -> None:
        """Test removing the tissue box from the notebook."""
        state = apply(state_from_stacks(SUPPLEMENT_STACKS), Unstack("tissue box", "notebook"))
        assert satisfies(state, Goal((Clear("notebook"),)))
        assert OnTable("tissue box") in state.facts
        assert On("tissue box", "notebook") not in state.facts

    def test_precondition_violation_names_missing_fact(self) -> None:
        """Test that the first missing precondition is reported."""
        state = state_from_stacks(SUPPLEMENT_STACKS)
        with pytest.raises(PreconditionViolationError) as err:
            apply(state, StackFromTable("tablet", "notebook"))
        assert err.value.missing_fact == Clear("notebook")
        assert err.value.action == StackFromTable("tablet", "notebook")

    def test_execute_plan_stops_at_first_failure(self) -> None:
        """Test the failing step index and the state before it."""
        init = state_from_stacks(SUPPLEMENT_STACKS)
        first = Unstack("tissue box", "notebook")
        execution = execute_plan(init, Plan((first, first, Unstack("notebook", "writing pad"))))
        assert not execution.ok
        assert execution.failure is not None
        assert execution.failure.step == 1
        assert execution.failure.error.missing_fact == On("tissue box", "notebook")
        assert execution.state == apply(init, first)

    def test_execute_empty_plan(self) -> None:
        """Test that the empty plan leaves the state unchanged."""
        init = state_from_stacks(SUPPLEMENT_STACKS)
        execution = execute_plan(init, Plan())
        assert execution.ok
        assert execution.state == init

    def test_frame_and_validity_over_all_four_object_states(self) -> None:
        """Test that apply only touches effect facts and yields valid states."""
        for state in enumerate_configurations(FOUR):
            for action, after in successors(state):
                touched = action.add_effects | action.delete_effects
                assert state.facts ^ after.facts <= touched
                assert canonicalize(after.facts, FOUR) == after

    def test_every_move_is_reversible(self) -> None:
        """Test that each successor can step back to its predecessor."""
        for state in enumerate_configurations(FOUR):
            for _, after in successors(state):
                assert any(back == state for _, back in successors(after))


class TestEnumerate:
    """Test exhaustive configuration enumeration."""

    @pytest.mark.parametrize(
        ("count", "expected"), [(1, 1), (2, 3), (3, 13), (4, 73), (5, 501), (6, 4051)]
    )
    def test_configuration_counts(self, count: int, expected: int) -> None:
        """Test the number of distinct configurations."""
        states = enumerate_configurations([f"object {i}" for i in range(count)])
        assert len(states) == expected
        assert len(set(states)) == expected

    def test_refuses_seven_objects(self) -> None:
        """Test the enumeration limit."""
        with pytest.raises(TooManyObjectsError):
            enumerate_configurations([f"object {i}" for i in range(7)])

    @pytest.mark.parametrize("names", [[], ["plate", "plate"]])
    def test_rejects_empty_or_duplicate_names(self, names: list[str]) -> None:
        """Test input validation."""
        with pytest.raises(ValueError):
            enumerate_configurations(names)

    def test_deterministic_order(self) -> None:
        """Test that the order is stable."""
        assert enumerate_configurations(FOUR) == enumerate_configurations(list(FOUR))

    def test_state_graph_is_connected(self) -> None:
        """Test that every configuration is reachable from any other."""
        states = enumerate_configurations(FOUR)
        seen: set[WorldState] = {states[0]}
        queue = deque([states[0]])
        while queue:
            for _, after in successors(queue.popleft()):
                if after not in seen:
                    seen.add(after)
                    queue.append(after)
        assert seen == set(states)

    def test_ground_actions_count(self) -> None:
        """Test the number of well-formed ground actions over four objects."""
        assert len(list(ground_actions(FOUR))) == 4 * 3 * 2 + 4 * 3 * 2


class TestImplies:
    """Test entailment between atoms of one configuration."""

    def test_tower_fixes_base_and_top(self) -> None:
        """Test that a full tower leaves no choice for its base or top."""
        tower = [On("plate", "keyboard"), On("keyboard", "candle"), On("candle", "notebook")]
        assert implies(tower, OnTable("notebook"), FOUR)
        assert implies(tower, Clear("plate"), FOUR)
        assert not implies(tower[:2], OnTable("candle"), FOUR)

    def test_clear_tops_force_the_last_object_down(self) -> None:
        """Test that three clear objects leave nowhere else for the fourth."""
        atoms = [Clear("plate"), Clear("keyboard"), Clear("candle")]
        assert implies(atoms, OnTable("notebook"), FOUR)
        assert not implies(atoms[:2], OnTable("notebook"), FOUR)
        assert not implies(atoms[:2], On("candle", "notebook"), FOUR)

    @pytest.mark.parametrize("names", [["plate", "keyboard"], ["plate", "keyboard", "candle"]])
    def test_matches_enumeration(self, names: list[str]) -> None:
        """Test every subset of every configuration against all states."""
        states = enumerate_configurations(names)
        for target in states:
            facts = target.canonical_facts(names)
            for size in range(len(facts)):
                for atoms in itertools.combinations(facts, size):
                    models = [state for state in states if set(atoms) <= state.facts]
                    for atom in facts:
                        expected = all(atom in state.facts for state in models)
                        assert implies(atoms, atom, names) == expected, (atoms, atom)


class TestProblem:
    """Test problem construction and normalization."""

    def test_objects_normalized_to_stack_order(self, supplement_problem: Problem) -> None:
        """Test that listing order within stacks does not matter."""
        shuffled = Problem(
            supplement_problem.id,
            tuple(ObjectId(name) for name in ["notebook", "writing pad", "tissue box", "tablet"]),
            supplement_problem.init,
            supplement_problem.goal,
        )
        assert shuffled == supplement_problem
        assert shuffled.names == ["writing pad", "notebook", "tissue box", "tablet"]

    def test_stack_order_follows_bottom_position(self, supplement_problem: Problem) -> None:
        """Test that stacks are ordered by where their bottom object was listed."""
        reordered = Problem(
            "reordered",
            tuple(ObjectId(name) for name in ["tablet", "tissue box", "notebook", "writing pad"]),
            supplement_problem.init,
            supplement_problem.goal,
        )
        assert reordered.names == ["tablet", "writing pad", "notebook", "tissue box"]

    def test_rejects_duplicate_objects(self, supplement_problem: Problem) -> None:
        """Test that an object may be listed once."""
        with pytest.raises(ValueError):
            Problem(
                "dup",
                (*supplement_problem.objects, ObjectId("tablet")),
                supplement_problem.init,
                supplement_problem.goal,
            )

    def test_rejects_goal_over_unknown_objects(self, supplement_problem: Problem) -> None:
        """Test that goals only mention declared objects."""
        with pytest.raises(ValueError):
            Problem(
                "unknown",
                supplement_problem.objects,
                supplement_problem.init,
                Goal((Clear("meteorite"),)),
            )

    def test_rejects_state_not_covering_objects(self, supplement_problem: Problem) -> None:
        """Test that init covers exactly the declared objects."""
        with pytest.raises(ValueError):
            Problem(
                "partial",
                supplement_problem.objects[:2],
                supplement_problem.init,
                Goal((Clear("notebook"),)),
            )

    def test_ood_objects(self, supplement_problem: Problem) -> None:
        """Test the ood object listing."""
        assert supplement_problem.ood_objects == []
        assert supplement_problem.object("tablet") == ObjectId("tablet")
        assert supplement_problem.has_object("notebook")
        assert not supplement_problem.has_object("meteorite")
