"""Formula grammar tests: parsing, canonical printing, errors, CTL syntax."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from treexplain.catalog import CATALOG
from treexplain.errors import ParseError
from treexplain.logic import (ARITY, BASE_NAMES, Atom, BaseVar, Binary, Bool,
                              CompareVar, DerivedVar, Unary, WhatIf, formula_depth,
                              parse_ctl, parse_formula, print_ctl, print_formula)


class TestParseExamples:
    def test_base_var(self):
        [f] = parse_formula("tp(0)")
        assert f == BaseVar("tp", (0,))

    def test_nested_derived(self):
        [f] = parse_formula("vcvq(C(2), O(1,2))")
        assert f == DerivedVar("vcvq", (BaseVar("c", (2,)), BaseVar("o", (1, 2))))

    def test_comparison_over_derived(self):
        [f] = parse_formula("phi1(viod(tp(1), eta(1)), viod(tp(2), eta(2)))")
        assert isinstance(f, CompareVar)
        assert all(isinstance(op, DerivedVar) for op in f.operands)

    def test_multi_formula_list(self):
        formulas = parse_formula("sp(0,1); sd(0,1)")
        assert [f.name for f in formulas] == ["sp", "sd"]

    def test_greek_letters_accepted(self):
        [f] = parse_formula("Φ3(r(1), r(2))")
        assert f.name == "phi3"
        [g] = parse_formula("PHI3(r(1), r(2))")
        assert f == g

    def test_whatif(self):
        [f] = parse_formula("exclude(1)")
        assert f == WhatIf("exclude", 1)

    def test_whitespace_insignificant(self):
        assert parse_formula(" tp( 0 ) ") == parse_formula("tp(0)")


class TestParseErrors:
    def test_unknown_name(self):
        with pytest.raises(ParseError) as err:
            parse_formula("bogus(1)")
        assert err.value.position == 0

    def test_wrong_arity(self):
        with pytest.raises(ParseError):
            parse_formula("tp(0, 1)")
        with pytest.raises(ParseError):
            parse_formula("o(1)")

    def test_phi_of_phi_rejected(self):
        with pytest.raises(ParseError):
            parse_formula("phi1(phi3(r(1), r(2)), r(1))")

    def test_phi_over_integer_rejected(self):
        with pytest.raises(ParseError):
            parse_formula("phi1(1, 2)")

    def test_whatif_needs_integer(self):
        with pytest.raises(ParseError):
            parse_formula("exclude(tp(0))")

    def test_dangling_input(self):
        with pytest.raises(ParseError) as err:
            parse_formula("tp(0) extra")
        assert err.value.position == 6

    def test_truncated_input_has_position(self):
        with pytest.raises(ParseError) as err:
            parse_formula("tp(")
        assert err.value.position == 3

    def test_empty(self):
        with pytest.raises(ParseError):
            parse_formula("   ")

    def test_every_name_rejects_wrong_arity(self):
        for name, arity in ARITY.items():
            args = ", ".join(["1"] * (arity + 1))
            with pytest.raises(ParseError):
                parse_formula(f"{name}({args})")


class TestPrinting:
    def test_round_trip_simple(self):
        assert print_formula(parse_formula("tp(0)")) == "tp(0)"

    def test_canonicalizes_greek_and_case(self):
        assert print_formula(parse_formula("Φ3(r(1), r(2))")) == "phi3(r(1), r(2))"
        assert print_formula(parse_formula("VCVQ(C(2),O(1,2))")) == "vcvq(c(2), o(1, 2))"

    def test_catalog_round_trips_to_fixpoint(self):
        for entry in CATALOG:
            once = print_formula(parse_formula(entry.gold))
            twice = print_formula(parse_formula(once))
            assert once == twice == entry.gold

    def test_parse_print_identity_on_ast(self):
        for entry in CATALOG:
            ast = parse_formula(entry.gold)
            assert parse_formula(print_formula(ast)) == ast


def base_var_strategy():
    def build(name, rng):
        return BaseVar(name, tuple(rng))
    return st.sampled_from(BASE_NAMES).flatmap(
        lambda name: st.tuples(*([st.integers(0, 9)] * ARITY[name])).map(
            lambda args: BaseVar(name, args)))


def derived_var_strategy():
    eta_pair = st.tuples(st.sampled_from(["tp", "td"]), st.integers(0, 9), st.integers(0, 9)).map(
        lambda t: DerivedVar("viod", (BaseVar(t[0], (t[1],)), BaseVar("eta", (t[2],)))))
    named = st.sampled_from(["viod", "vioa", "pctd", "pcta"]).flatmap(
        lambda name: st.tuples(st.sampled_from(["tp", "td"]), st.integers(0, 9), st.integers(0, 9)).map(
            lambda t: DerivedVar(name, (BaseVar(t[0], (t[1],)), BaseVar("eta", (t[2],))))))
    reward_like = st.sampled_from(["r", "rd1", "rd2"]).flatmap(
        lambda name: st.integers(0, 9).map(lambda v: DerivedVar(name, (v,))))
    capacity_like = st.sampled_from(["vcv", "vcvq"]).flatmap(
        lambda name: st.tuples(st.integers(0, 9), st.integers(0, 9)).map(
            lambda t: DerivedVar(name, (BaseVar("c", (t[0],)), BaseVar("o", (1, t[0]))))))
    return st.one_of(eta_pair, named, reward_like, capacity_like)


def formula_strategy():
    compare = st.tuples(st.sampled_from(["phi1", "phi2", "phi3", "phi4"]),
                        st.one_of(base_var_strategy(), derived_var_strategy()),
                        st.one_of(base_var_strategy(), derived_var_strategy())).map(
        lambda t: CompareVar(t[0], (t[1], t[2])))
    whatif = st.tuples(st.sampled_from(["search", "cong", "exclude", "multi", "reassign"]),
                       st.integers(0, 9)).map(lambda t: WhatIf(*t))
    return st.one_of(base_var_strategy(), derived_var_strategy(), compare, whatif)


class TestFuzz:
    @given(st.lists(formula_strategy(), min_size=1, max_size=4))
    @settings(max_examples=500)
    def test_print_parse_round_trip(self, formulas):
        assert all(formula_depth(f) <= 3 for f in formulas)
        text = print_formula(formulas)
        assert parse_formula(text) == formulas
        assert print_formula(parse_formula(text)) == text

    def test_ten_thousand_random_asts_survive(self):
        import random

        rng = random.Random(6021023)

        def random_base():
            name = rng.choice(BASE_NAMES)
            return BaseVar(name, tuple(rng.randrange(10) for _ in range(ARITY[name])))

        def random_derived():
            name = rng.choice(("viod", "vioa", "pctd", "pcta", "vcv", "vcvq",
                               "r", "rd1", "rd2"))
            if name in ("r", "rd1", "rd2"):
                return DerivedVar(name, (rng.randrange(10),))
            if name in ("vcv", "vcvq"):
                v = rng.randrange(10)
                return DerivedVar(name, (BaseVar("c", (v,)), BaseVar("o", (1, v))))
            t = BaseVar(rng.choice(("tp", "td")), (rng.randrange(10),))
            return DerivedVar(name, (t, BaseVar("eta", (rng.randrange(10),))))

        def random_formula():
            roll = rng.random()
            if roll < 0.3:
                return random_base()
            if roll < 0.6:
                return random_derived()
            if roll < 0.8:
                name = rng.choice(("phi1", "phi2", "phi3", "phi4"))
                ops = tuple(random_base() if rng.random() < 0.5 else random_derived()
                            for _ in range(2))
                return CompareVar(name, ops)
            return WhatIf(rng.choice(("search", "cong", "exclude", "multi", "reassign")),
                          rng.randrange(10))

        for _ in range(10_000):
            formulas = [random_formula() for _ in range(rng.randint(1, 3))]
            text = print_formula(formulas)
            assert parse_formula(text) == formulas

    def test_arity_table_matches_catalog_usage(self):
        # r takes 1, o takes 2, the comparison templates take 2
        assert ARITY["r"] == 1 and ARITY["o"] == 2 and ARITY["phi2"] == 2


class TestCtlParsing:
    def test_ag_not(self):
        f = parse_ctl("AG !overcap")
        assert f == Unary("AG", Unary("!", Atom("overcap")))

    def test_ef_atom(self):
        assert parse_ctl("EF delayed_pickup") == Unary("EF", Atom("delayed_pickup"))

    def test_au_brackets(self):
        f = parse_ctl("A[assigned U dropped_off]")
        assert f == Binary("AU", Atom("assigned"), Atom("dropped_off"))

    def test_eu_brackets(self):
        f = parse_ctl("E[!rejected U fulfilled]")
        assert f == Binary("EU", Unary("!", Atom("rejected")), Atom("fulfilled"))

    def test_parameterized_atom(self):
        assert parse_ctl("EF assigned(2)") == Unary("EF", Atom("assigned", 2))

    def test_booleans(self):
        assert parse_ctl("true") == Bool(True)
        assert parse_ctl("AG true") == Unary("AG", Bool(True))

    def test_precedence(self):
        f = parse_ctl("overcap | rejected & fulfilled -> early_pickup")
        assert isinstance(f, Binary) and f.op == "->"
        left = f.left
        assert left.op == "|" and left.right.op == "&"

    def test_parens(self):
        f = parse_ctl("(overcap | rejected) & fulfilled")
        assert f.op == "&" and f.left.op == "|"

    def test_syntax_error_position(self):
        with pytest.raises(ParseError) as err:
            parse_ctl("AG (overcap")
        assert err.value.position == 11

    def test_missing_until(self):
        with pytest.raises(ParseError):
            parse_ctl("E[overcap fulfilled]")

    def test_round_trip(self):
        for text in ("AG !overcap", "EF delayed_pickup", "A[assigned U dropped_off]",
                     "E[!rejected U fulfilled]", "AG (overcap -> rejected)",
                     "EX early_dropoff & AF fulfilled", "on_branch(2) | assigned(1)"):
            printed = print_ctl(parse_ctl(text))
            assert print_ctl(parse_ctl(printed)) == printed
