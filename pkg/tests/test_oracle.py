import random

import pytest

from conftest import random_payoffs
from laddernash import blocks
from laddernash.errors import SizeLimit
from laddernash.game import PayoffParams, Regime, representative_params
from laddernash.oracle import (
    MAX_PLAYERS_ENV,
    PayoffAssignment,
    count_equilibria,
    enumerate_equilibria,
    is_equilibrium,
    max_players,
    player_payoff,
)
from laddernash.topology import StrategyProfile, build, profile_from_string

MIN_A = PayoffAssignment.uniform(representative_params(Regime.MINORITY_A))
LONE_A = PayoffAssignment.uniform(representative_params(Regime.LONE_A))


def brute_force(t, pay):
    """Reference enumeration through the exact rational check."""
    return [
        p
        for p in (StrategyProfile.from_int(v, t.n) for v in range(1 << t.players))
        if is_equilibrium(t, pay, p)
    ]


class TestIsEquilibrium:
    def test_examples(self):
        ladder2 = build("ladder", 2)
        assert is_equilibrium(ladder2, MIN_A, profile_from_string("ab|ba"))
        assert not is_equilibrium(ladder2, MIN_A, profile_from_string("aa|aa"))
        assert is_equilibrium(build("ladder", 6), MIN_A, profile_from_string("abaaba|babbab"))

    def test_all_a_never_equilibrium(self):
        for regime in Regime:
            pay = PayoffAssignment.uniform(representative_params(regime))
            for kind, n in [("ladder", 2), ("ladder", 5), ("circular", 4)]:
                t = build(kind, n)
                assert not is_equilibrium(t, pay, StrategyProfile(("a",) * t.players))

    def test_size_mismatch(self):
        with pytest.raises(ValueError):
            is_equilibrium(build("ladder", 3), MIN_A, profile_from_string("ab|ba"))


class TestEnumerate:
    def test_examples(self):
        eq = enumerate_equilibria(build("ladder", 2), MIN_A)
        assert eq.strings() == ["ab|ba", "ba|ab"]
        assert eq.count == 2
        assert count_equilibria(build("ladder", 5), MIN_A) == 7
        assert count_equilibria(build("ladder", 6), MIN_A) == 10
        assert count_equilibria(build("ladder", 8), MIN_A) == 26
        assert count_equilibria(build("ladder", 4), LONE_A) == 6

    def test_circular_six_rungs(self):
        # 22 by exhaustive search; the closed form gives 20 for this size.
        c = count_equilibria(build("circular", 6), MIN_A)
        assert c == blocks.circular_count_blocks(blocks.Case.CASE1, 3) == 22
        assert c - 20 == 2

    def test_sorted_output(self):
        eq = enumerate_equilibria(build("circular", 6), LONE_A)
        texts = eq.strings()
        assert texts == sorted(texts)
        assert profile_from_string(texts[0]) in eq

    @pytest.mark.parametrize("regime", list(Regime))
    @pytest.mark.parametrize("kind, n", [("ladder", 2), ("ladder", 3), ("ladder", 5), ("circular", 3), ("circular", 4)])
    def test_matches_exact_brute_force(self, regime, kind, n):
        t = build(kind, n)
        pay = PayoffAssignment.uniform(representative_params(regime))
        assert list(enumerate_equilibria(t, pay).profiles) == brute_force(t, pay)

    def test_heterogeneous_edge_classes(self):
        rng = random.Random(7)
        regimes = list(Regime)
        for _ in range(12):
            pay = PayoffAssignment.per_edge_class(
                *(random_payoffs(rng, rng.choice(regimes)) for _ in range(3))
            )
            for kind, n in [("ladder", 4), ("circular", 4)]:
                t = build(kind, n)
                assert list(enumerate_equilibria(t, pay).profiles) == brute_force(t, pay)

    def test_huge_payoffs_fall_back_to_exact_ints(self):
        big = PayoffParams(0, 2 * 10**30 + 1, 3 * 10**30, 0)
        pay = PayoffAssignment.uniform(big)
        t = build("ladder", 4)
        assert enumerate_equilibria(t, pay).strings() == enumerate_equilibria(t, MIN_A).strings()


class TestProperties:
    @pytest.mark.parametrize("kind, n", [("ladder", 4), ("circular", 4), ("ladder", 5)])
    def test_deviation(self, kind, n):
        t = build(kind, n)
        eq = set(enumerate_equilibria(t, MIN_A).profiles)
        for v in range(1 << t.players):
            prof = StrategyProfile.from_int(v, n)
            improves = any(
                player_payoff(t, MIN_A, prof, i, s.swap()) > player_payoff(t, MIN_A, prof, i, s)
                for i, s in enumerate(prof.assignment)
            )
            assert improves is (prof not in eq)

    @pytest.mark.parametrize("base", [Regime.MINORITY_A, Regime.LONE_A])
    @pytest.mark.parametrize("kind, n", [("ladder", 6), ("circular", 6)])
    def test_swap_bijection(self, base, kind, n):
        t = build(kind, n)
        pay = PayoffAssignment.uniform(representative_params(base))
        mirror = PayoffAssignment.uniform(representative_params(base.mirror))
        here = {p.swapped() for p in enumerate_equilibria(t, pay).profiles}
        assert here == set(enumerate_equilibria(t, mirror).profiles)

    @pytest.mark.parametrize("regime", list(Regime))
    @pytest.mark.parametrize("kind, n", [("ladder", 6), ("ladder", 7), ("circular", 6)])
    def test_flips_preserve_set(self, regime, kind, n):
        t = build(kind, n)
        eq = set(enumerate_equilibria(t, PayoffAssignment.uniform(representative_params(regime))).profiles)
        assert {p.rows_flipped() for p in eq} == eq
        assert {p.reversed() for p in eq} == eq

    def test_per_edge_class_with_shared_xy(self):
        rng = random.Random(3)
        for regime in Regime:
            base = random_payoffs(rng, regime)
            # Same (x, y) with shifted p and s.
            shifted = [
                PayoffParams(base.p + d, base.q + e, base.r + d, base.s + e)
                for d, e in [(1, -2), (-3, 5), (7, 0)]
            ]
            pay = PayoffAssignment.per_edge_class(*shifted)
            assert pay.mode == "per_edge_class" and pay.regime() is regime
            for kind, n in [("ladder", 6), ("circular", 6)]:
                t = build(kind, n)
                assert enumerate_equilibria(t, pay).profiles == enumerate_equilibria(
                    t, PayoffAssignment.uniform(base)
                ).profiles

    @pytest.mark.parametrize("regime", list(Regime))
    def test_count_depends_only_on_regime(self, regime):
        rng = random.Random(f"regime-{regime.value}")
        topologies = [build("ladder", 6), build("circular", 4), build("ladder", 7)]
        reference = [count_equilibria(t, PayoffAssignment.uniform(representative_params(regime))) for t in topologies]
        for _ in range(5):
            pay = PayoffAssignment.uniform(random_payoffs(rng, regime))
            assert [count_equilibria(t, pay) for t in topologies] == reference


class TestExecution:
    def test_deterministic_across_workers_and_chunks(self):
        t = build("ladder", 9)
        ref = enumerate_equilibria(t, MIN_A)
        for workers, bits in [(1, 4), (3, 5), (4, 20)]:
            got = enumerate_equilibria(t, MIN_A, workers=workers, chunk_bits=bits)
            assert got.profiles == ref.profiles
            assert count_equilibria(t, MIN_A, workers=workers, chunk_bits=bits) == ref.count

    def test_size_limit(self):
        with pytest.raises(SizeLimit):
            count_equilibria(build("ladder", 14), MIN_A)
        with pytest.raises(SizeLimit):
            count_equilibria(build("ladder", 5), MIN_A, limit=8)

    def test_env_limit(self, monkeypatch):
        monkeypatch.delenv(MAX_PLAYERS_ENV, raising=False)
        assert max_players() == 26
        monkeypatch.setenv(MAX_PLAYERS_ENV, "8")
        assert max_players() == 8
        with pytest.raises(SizeLimit):
            count_equilibria(build("ladder", 5), MIN_A)
        monkeypatch.setenv(MAX_PLAYERS_ENV, "lots")
        with pytest.raises(ValueError):
            max_players()

    def test_assignment_modes(self):
        assert MIN_A.mode == "uniform"
        assert MIN_A.regime() is Regime.MINORITY_A
        mixed = PayoffAssignment.per_edge_class(
            representative_params(Regime.MINORITY_A),
            representative_params(Regime.LONE_A),
            representative_params(Regime.LONE_A),
        )
        assert mixed.regime() is None
