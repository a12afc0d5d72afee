"""Model checker tests: labeling, fixpoint semantics, dualities, and the
enumerative path-semantics oracle on random trees."""

import random

import pytest

from treexplain.ctl import (VOCABULARY, KripkeView, build_kripke, check,
                            holds_at_root, node_labels)
from treexplain.errors import DomainError
from treexplain.logic import Atom, Binary, Bool, Unary, parse_ctl

ATOMS = ("p", "q", "s")


def make_kripke(parents, labels, root=0):
    """A Kripke view straight from parent links (leaf self-loops added)."""
    n = len(parents)
    children = {i: [] for i in range(n)}
    for node, parent in enumerate(parents):
        if parent is not None:
            children[parent].append(node)
    transitions = {i: (children[i] if children[i] else [i]) for i in range(n)}
    return KripkeView(list(range(n)), transitions,
                      {i: frozenset(labels[i]) for i in range(n)}, root)


def check_atoms_free(kripke, formula):
    """check() without the vocabulary guard, for synthetic atom names."""
    from treexplain.ctl import _sat
    return _sat(kripke, formula)


# --- the independent oracle: enumerate all maximal paths -----------------------

def oracle(kripke: KripkeView, formula) -> set[int]:
    paths_from: dict[int, list[list[int]]] = {}

    def paths(state):
        if state in paths_from:
            return paths_from[state]
        out = []

        def dfs(current, prefix):
            succs = kripke.transitions[current]
            if succs == [current]:
                out.append(prefix)
                return
            for nxt in succs:
                dfs(nxt, prefix + [nxt])

        dfs(state, [state])
        paths_from[state] = out
        return out

    memo: dict[tuple[int, int], bool] = {}

    def holds(state, f) -> bool:
        key = (state, id(f))
        if key in memo:
            return memo[key]
        if isinstance(f, Bool):
            result = f.value
        elif isinstance(f, Atom):
            result = f.key() in kripke.labeling[state]
        elif isinstance(f, Unary):
            if f.op == "!":
                result = not holds(state, f.sub)
            elif f.op == "EX":
                result = any(holds(t, f.sub) for t in kripke.transitions[state])
            elif f.op == "AX":
                result = all(holds(t, f.sub) for t in kripke.transitions[state])
            elif f.op == "EF":
                result = any(any(holds(s, f.sub) for s in path) for path in paths(state))
            elif f.op == "AF":
                result = all(any(holds(s, f.sub) for s in path) for path in paths(state))
            elif f.op == "EG":
                result = any(all(holds(s, f.sub) for s in path) for path in paths(state))
            elif f.op == "AG":
                result = all(all(holds(s, f.sub) for s in path) for path in paths(state))
            else:
                raise AssertionError(f.op)
        else:
            if f.op == "&":
                result = holds(state, f.left) and holds(state, f.right)
            elif f.op == "|":
                result = holds(state, f.left) or holds(state, f.right)
            elif f.op == "->":
                result = (not holds(state, f.left)) or holds(state, f.right)
            elif f.op in ("EU", "AU"):
                def path_until(path):
                    for i, s in enumerate(path):
                        if holds(s, f.right):
                            if all(holds(t, f.left) for t in path[:i]):
                                return True
                    return False
                quantifier = any if f.op == "EU" else all
                result = quantifier(path_until(path) for path in paths(state))
            else:
                raise AssertionError(f.op)
        memo[key] = result
        return result

    return {s for s in kripke.states if holds(s, formula)}


def random_tree_kripke(rng: random.Random, max_nodes=9):
    n = rng.randint(1, max_nodes)
    parents = [None] + [rng.randrange(i) for i in range(1, n)]
    labels = [{a for a in ATOMS if rng.random() < 0.4} for _ in range(n)]
    return make_kripke(parents, labels)


def random_formula(rng: random.Random, depth=3):
    if depth == 0 or rng.random() < 0.25:
        if rng.random() < 0.1:
            return Bool(rng.random() < 0.5)
        return Atom(rng.choice(ATOMS))
    roll = rng.random()
    if roll < 0.45:
        op = rng.choice(["!", "EX", "AX", "EF", "AF", "EG", "AG"])
        return Unary(op, random_formula(rng, depth - 1))
    op = rng.choice(["&", "|", "->", "EU", "AU"])
    return Binary(op, random_formula(rng, depth - 1), random_formula(rng, depth - 1))


class TestExamples:
    def test_ag_on_single_self_looped_state(self):
        kripke = make_kripke([None], [{"p"}])
        assert check_atoms_free(kripke, parse_ctl("AG p")) == {0}

    def test_ef_reaches_leaf(self):
        kripke = make_kripke([None, 0, 1], [set(), set(), {"p"}])
        assert check_atoms_free(kripke, parse_ctl("EF p")) == {0, 1, 2}

    def test_eg_true_everywhere_with_self_loops(self):
        rng = random.Random(5)
        for _ in range(25):
            kripke = random_tree_kripke(rng)
            assert check_atoms_free(kripke, Bool(True)) == set(kripke.states)
            assert check_atoms_free(kripke, Unary("EG", Bool(True))) == set(kripke.states)

    def test_holds_at_root_trivials(self, golden_tree):
        kripke = build_kripke(golden_tree, 0)
        assert holds_at_root(kripke, parse_ctl("AG true"))
        assert not holds_at_root(kripke, parse_ctl("EF false"))

    def test_unknown_atom_rejected(self, golden_tree):
        kripke = build_kripke(golden_tree, 0)
        with pytest.raises(DomainError):
            check(kripke, parse_ctl("EF martians"))

    def test_vocabulary_atoms_accepted(self, golden_tree):
        kripke = build_kripke(golden_tree, 0)
        for name in VOCABULARY:
            check(kripke, Atom(name))


class TestLabeling:
    def test_boundary_eta_neither_early_nor_delayed(self, golden_tree):
        # craft a state where the pickup eta equals the requested time
        from treexplain.planner import NodeState, RequestDigest, VehicleDigest
        from treexplain.transit import Stop
        state = NodeState(
            0,
            (VehicleDigest(0, 2, 0, True, (0, 0),
                           (Stop("pickup", 0, (1, 0), 10), Stop("dropoff", 0, (5, 0), 20))),),
            (RequestDigest(0, "assigned", 10, 20, None, None, 1),),
            ((0, 0),))
        labels = node_labels(state, 0)
        assert "delayed_pickup" not in labels and "early_pickup" not in labels
        assert "delayed_dropoff" not in labels and "early_dropoff" not in labels
        assert "assigned(0)" in labels and "on_branch(0)" in labels

    def test_overcap_label(self):
        from treexplain.planner import NodeState, RequestDigest, VehicleDigest
        from treexplain.transit import Stop
        state = NodeState(
            0,
            (VehicleDigest(0, 1, 1, True, (0, 0),
                           (Stop("pickup", 1, (1, 0), 5), Stop("dropoff", 1, (2, 0), 7))),),
            (RequestDigest(0, "pending", 10, 20, None, None, 1),
             RequestDigest(1, "assigned", 4, 30, None, None, 1)),
            ((1, 0),))
        assert "overcap" in node_labels(state, 0)

    def test_committed_golden_branch_has_no_overcap(self, golden_tree):
        kripke = build_kripke(golden_tree, 0)
        sat = check(kripke, parse_ctl("AG !overcap"))
        decision_child = next(c for c in golden_tree.root_children()
                              if c.action == golden_tree.decision)
        assert decision_child.id in sat

    def test_rejected_label_on_reject_branch(self, golden_tree):
        kripke = build_kripke(golden_tree, 0)
        reject_child = next(c for c in golden_tree.root_children()
                            if c.action.kind == "reject")
        assert "rejected" in kripke.labeling[reject_child.id]


class TestDualities:
    def test_set_identities_on_random_structures(self):
        rng = random.Random(99)
        for _ in range(300):
            kripke = random_tree_kripke(rng)
            sub = random_formula(rng, 2)
            all_states = set(kripke.states)
            not_not = check_atoms_free(kripke, Unary("!", Unary("!", sub)))
            assert not_not == check_atoms_free(kripke, sub)
            ag = check_atoms_free(kripke, Unary("AG", sub))
            ef_not = check_atoms_free(kripke, Unary("EF", Unary("!", sub)))
            assert ag == all_states - ef_not
            af = check_atoms_free(kripke, Unary("AF", sub))
            eg_not = check_atoms_free(kripke, Unary("EG", Unary("!", sub)))
            assert af == all_states - eg_not

    def test_ef_monotone_in_labeling(self):
        rng = random.Random(4)
        for _ in range(50):
            kripke = random_tree_kripke(rng)
            before = check_atoms_free(kripke, Unary("EF", Atom("p")))
            grown = KripkeView(kripke.states, kripke.transitions,
                               {s: frozenset(kripke.labeling[s] | ({"p"} if rng.random() < 0.3 else set()))
                                for s in kripke.states}, kripke.root)
            after = check_atoms_free(grown, Unary("EF", Atom("p")))
            assert before <= after


class TestOracleAgreement:
    def test_random_cases_match_oracle(self):
        rng = random.Random(2024)
        for _ in range(1500):
            kripke = random_tree_kripke(rng)
            formula = random_formula(rng, 3)
            assert check_atoms_free(kripke, formula) == oracle(kripke, formula)
