"""Tests for subsumption-closed languages.

Core claims exercised here:

* ``Language`` holds an antichain of interval generators and rejects
  non-interval input.
* ``normalize`` drops subsumed members; ``contains`` answers membership
  in the generated down-closure.
* ``seq_compose``/``par_compose`` compose generator-wise,
  ``par_closure_bounded`` folds bounded parallel powers,
  ``union``/``restrict`` behave set-like.
* ``extensions`` enumerates exactly the down-closure of one generator
  (cross-checked against a brute-force scan of the whole universe) and
  ``expand`` unions those ideals.
"""

from __future__ import annotations

import random

import pytest

from hdalang import (
    EMPTY,
    Language,
    NotInterval,
    contains,
    expand,
    extensions,
    from_chain,
    from_concurrent,
    glue,
    identity,
    is_equal,
    is_subset,
    normalize,
    par_closure_bounded,
    par_compose,
    parallel,
    point,
    restrict,
    seq_compose,
    union,
)
from hdalang.ipomset import Ipomset
from oracles import oracle_down_set, random_ipomset, universe, universe_up_to


EMPTY_LANGUAGE = Language(generators=frozenset())
UNIT_LANGUAGE = Language(generators=frozenset({EMPTY}))


def down_set_of(lang, pool):
    return {p for p in pool if contains(lang, p)}


# --- construction -----------------------------------------------------------


class TestLanguageConstruction:
    def test_generators_must_be_interval(self):
        two_plus_two = Ipomset(
            ("a", "b", "a", "b"),
            frozenset({(0, 1), (2, 3)}),
            frozenset(),
            frozenset(),
        )
        with pytest.raises(NotInterval):
            Language(generators=frozenset({two_plus_two}))

    def test_generators_must_be_an_antichain(self):
        chain = from_chain(["a", "b"])
        conc = from_concurrent(["a", "b"])
        with pytest.raises(ValueError):
            Language(generators=frozenset({chain, conc}))

    def test_normalize_prunes_subsumed_members(self):
        chain = from_chain(["a", "b"])
        conc = from_concurrent(["a", "b"])
        lang = normalize([chain, conc])
        assert lang.generators == frozenset({conc})

    def test_normalize_keeps_incomparable_members(self):
        lang = normalize([point("a"), point("b")])
        assert len(lang.generators) == 2

    def test_event_bound_is_recorded(self):
        lang = normalize([point("a")], event_bound=3)
        assert lang.event_bound == 3


# --- membership -------------------------------------------------------------


class TestContains:
    def test_members_are_the_down_closure(self):
        lang = normalize([from_concurrent(["a", "b"])])
        assert contains(lang, from_concurrent(["a", "b"]))
        assert contains(lang, from_chain(["a", "b"]))
        assert contains(lang, from_chain(["b", "a"]))
        assert not contains(lang, point("a"))
        assert not contains(lang, from_chain(["a", "b", "b"]))

    def test_empty_language_has_no_members(self):
        assert not contains(EMPTY_LANGUAGE, EMPTY)

    def test_unit_language_contains_only_empty(self):
        assert contains(UNIT_LANGUAGE, EMPTY)
        assert not contains(UNIT_LANGUAGE, point("a"))


# --- composition ------------------------------------------------------------


class TestSeqCompose:
    def test_points_chain_up(self):
        left = normalize([point("a")])
        right = normalize([point("c")])
        got = seq_compose(left, right)
        assert got.generators == frozenset({from_chain(["a", "c"])})

    def test_interface_mismatch_contributes_nothing(self):
        left = normalize([point("a", target=True)])
        right = normalize([point("b", source=True)])
        assert seq_compose(left, right).generators == frozenset()

    def test_mixed_generators_keep_the_composable_pairs(self):
        # Only the generator whose target interface matches composes; the
        # interface-free one is dropped rather than sequenced before.
        left = normalize([point("a", target=True), point("b")])
        right = normalize([point("a", source=True)])
        got = seq_compose(left, right)
        assert got.generators == frozenset({point("a")})

    def test_unit_language_is_neutral_for_interface_free_members(self):
        lang = normalize([from_concurrent(["a", "b"])])
        assert is_equal(seq_compose(UNIT_LANGUAGE, lang), lang)
        assert is_equal(seq_compose(lang, UNIT_LANGUAGE), lang)

    def test_unrepresentable_composites_are_skipped(self):
        left = normalize(
            [
                Ipomset(
                    ("a", "a"),
                    frozenset(),
                    frozenset(),
                    frozenset({0}),
                )
            ]
        )
        right = normalize(
            [
                Ipomset(
                    ("a", "a"),
                    frozenset(),
                    frozenset({1}),
                    frozenset({0, 1}),
                )
            ]
        )
        assert seq_compose(left, right).generators == frozenset()


class TestParCompose:
    def test_points_run_side_by_side(self):
        got = par_compose(normalize([point("a")]), normalize([point("b")]))
        assert got.generators == frozenset({from_concurrent(["a", "b"])})

    def test_generator_products(self):
        left = normalize([point("a"), point("b")])
        right = normalize([point("c")])
        got = par_compose(left, right)
        assert got.generators == frozenset(
            {from_concurrent(["a", "c"]), from_concurrent(["b", "c"])}
        )

    def test_unit_is_neutral(self):
        lang = normalize([from_chain(["a", "b"])])
        assert is_equal(par_compose(UNIT_LANGUAGE, lang), lang)
        assert is_equal(par_compose(lang, UNIT_LANGUAGE), lang)


class TestParClosure:
    def test_zeroth_power_alone(self):
        lang = normalize([point("a")])
        got = par_closure_bounded(lang, 0)
        assert got.generators == frozenset({EMPTY})

    def test_powers_accumulate(self):
        lang = normalize([point("a")])
        got = par_closure_bounded(lang, 3)
        expected = {
            EMPTY,
            point("a"),
            from_concurrent(["a", "a"]),
            from_concurrent(["a", "a", "a"]),
        }
        assert got.generators == frozenset(expected)

    def test_bound_counts_factors_not_events(self):
        lang = normalize([from_concurrent(["a", "a"])])
        got = par_closure_bounded(lang, 2)
        # Two factors of the two-event generator give four events.
        assert got.generators == frozenset(
            {
                EMPTY,
                from_concurrent(["a", "a"]),
                from_concurrent(["a", "a", "a", "a"]),
            }
        )


# --- set operations ---------------------------------------------------------


class TestSetOperations:
    def test_union_merges_and_renormalizes(self):
        chain = normalize([from_chain(["a", "b"])])
        conc = normalize([from_concurrent(["a", "b"])])
        got = union(chain, conc)
        assert got.generators == frozenset({from_concurrent(["a", "b"])})

    def test_union_takes_the_tighter_bound(self):
        left = normalize([point("a")], event_bound=2)
        right = normalize([point("b")], event_bound=5)
        assert union(left, right).event_bound == 2
        assert union(left, normalize([point("b")])).event_bound is None

    def test_restrict_drops_large_generators(self):
        lang = normalize([point("a"), from_concurrent(["a", "a", "a"])])
        got = restrict(lang, 2)
        assert got.generators == frozenset({point("a")})
        assert got.event_bound == 2

    def test_subset_and_equality(self):
        small = normalize([from_chain(["a", "b"])])
        big = normalize([from_concurrent(["a", "b"])])
        assert is_subset(small, big)
        assert not is_subset(big, small)
        assert is_equal(big, big)
        assert not is_equal(small, big)

    def test_equality_ignores_bounds(self):
        left = normalize([point("a")], event_bound=1)
        right = normalize([point("a")], event_bound=7)
        assert is_equal(left, right)


# --- expansion --------------------------------------------------------------


class TestExtensions:
    def test_chain_is_its_own_ideal(self):
        chain = from_chain(["a", "b", "c"])
        assert extensions(chain) == frozenset({chain})

    def test_concurrent_pair_has_three_refinements(self):
        conc = from_concurrent(["a", "b"])
        assert extensions(conc) == frozenset(
            {conc, from_chain(["a", "b"]), from_chain(["b", "a"])}
        )

    def test_identity_is_rigid(self):
        # Interface events are pinned at both ends, so nothing refines.
        ident = identity(("a", "b"))
        assert extensions(ident) == frozenset({ident})

    def test_matches_brute_force_down_sets_up_to_three_events(self):
        by_size = {n: universe(n) for n in range(4)}
        for q in universe_up_to(3):
            got = extensions(q)
            want = oracle_down_set(q, by_size[q.size])
            assert got == want, q

    def test_random_members_subsume_their_generator(self):
        rnd = random.Random(501)
        from hdalang import subsumes

        for _ in range(60):
            q = random_ipomset(rnd, 4)
            for p in extensions(q):
                assert subsumes(p, q) is not None


class TestExpand:
    def test_concurrent_pair(self):
        lang = normalize([from_concurrent(["a", "b"])])
        got = expand(lang, 2)
        assert got == frozenset(
            {
                from_concurrent(["a", "b"]),
                from_chain(["a", "b"]),
                from_chain(["b", "a"]),
            }
        )

    def test_bound_filters_generators(self):
        lang = normalize([point("a"), from_concurrent(["b", "b"])])
        assert expand(lang, 1) == frozenset({point("a")})
        assert expand(lang, 0) == frozenset()

    def test_monotone_in_the_bound(self):
        lang = normalize([from_concurrent(["a", "a", "a"]), point("b")])
        previous: frozenset = frozenset()
        for bound in range(4):
            current = expand(lang, bound)
            assert previous <= current
            previous = current

    def test_members_agree_with_contains(self):
        rnd = random.Random(502)
        pool = universe_up_to(3)
        for _ in range(20):
            gens = [rnd.choice(pool) for _ in range(2)]
            lang = normalize(gens)
            members = expand(lang, 3)
            for p in rnd.sample(pool, 80):
                assert (p in members) == contains(lang, p)


# --- member-wise composition ------------------------------------------------


class TestCompositionDistributes:
    def test_seq_compose_equals_member_wise_gluing(self):
        rnd = random.Random(503)
        pool = [p for p in universe_up_to(2)]
        for _ in range(40):
            left = normalize([rnd.choice(pool) for _ in range(2)])
            right = normalize([rnd.choice(pool) for _ in range(2)])
            composed = seq_compose(left, right)
            member_wise = []
            for p in expand(left, 2):
                for q in expand(right, 2):
                    try:
                        member_wise.append(glue(p, q))
                    except Exception:
                        continue
            assert is_equal(composed, normalize(member_wise))

    def test_par_compose_equals_member_wise_parallel(self):
        rnd = random.Random(504)
        pool = [p for p in universe_up_to(2)]
        for _ in range(40):
            left = normalize([rnd.choice(pool) for _ in range(2)])
            right = normalize([rnd.choice(pool) for _ in range(2)])
            composed = par_compose(left, right)
            member_wise = [
                parallel(p, q)
                for p in expand(left, 2)
                for q in expand(right, 2)
            ]
            assert is_equal(composed, normalize(member_wise))
