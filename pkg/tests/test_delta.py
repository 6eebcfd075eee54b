import pytest

from wcp.delta import DELTA_KINDS, DeltaStrategy


def run_schedule(strategy: DeltaStrategy, found_flags):
    """Feed a fixed found/not-found sequence; returns emitted deltas."""
    out = [strategy.current]
    for flag in found_flags:
        out.append(strategy.next(flag))
        if out[-1] is None:
            break
    return out


def drain(strategy: DeltaStrategy):
    """All values produced until exhaustion, never reporting a cancel."""
    out = [strategy.current]
    while True:
        d = strategy.next(False)
        if d is None:
            return out
        out.append(d)


class TestIncDec:
    def test_inc_counts_up_and_exhausts(self):
        assert drain(DeltaStrategy("inc", 4)) == [1, 2, 3, 4]

    def test_dec_counts_down_and_exhausts(self):
        assert drain(DeltaStrategy("dec", 4)) == [4, 3, 2, 1]

    def test_inc_resets_to_one_after_cancel(self):
        s = DeltaStrategy("inc", 4)
        assert run_schedule(s, [False, False, True]) == [1, 2, 3, 1]

    def test_dec_resets_to_max_after_cancel(self):
        s = DeltaStrategy("dec", 4)
        assert run_schedule(s, [False, True]) == [4, 3, 4]


class TestIncDecCombined:
    def test_descends_from_canceled_value(self):
        # After canceling at 3, count down 2, 1, then resume upward at 3.
        s = DeltaStrategy("inc-dec", 5)
        assert run_schedule(s, [False, False, True, False, False, False, False]) == [
            1, 2, 3, 2, 1, 3, 4, 5,
        ]

    def test_cancel_at_one_resumes_upward_immediately(self):
        s = DeltaStrategy("inc-dec", 3)
        assert run_schedule(s, [True, False, False]) == [1, 1, 2, 3]

    def test_exhaustion_covers_all_values(self):
        s = DeltaStrategy("inc-dec", 4)
        seen = set(run_schedule(s, [False, False, True] + [False] * 10)[:-1])
        assert seen == {1, 2, 3, 4}

    def test_no_repeats_between_cancellations(self):
        s = DeltaStrategy("inc-dec", 6)
        values = run_schedule(s, [False, False, False, True] + [False] * 10)
        after_cancel = values[4:-1]
        assert len(after_cancel) == len(set(after_cancel))
        assert set(after_cancel) == {1, 2, 3, 4, 5, 6}


class TestRandom:
    def test_no_value_repeated_until_exhaustion(self):
        s = DeltaStrategy("random", 10, seed=5)
        values = drain(s)
        assert sorted(values) == list(range(1, 11))

    def test_deterministic_per_seed(self):
        a = drain(DeltaStrategy("random", 8, seed=42))
        b = drain(DeltaStrategy("random", 8, seed=42))
        assert a == b

    def test_cancel_resets_used_set(self):
        s = DeltaStrategy("random", 3, seed=1)
        emitted = run_schedule(s, [False, True] + [False] * 5)
        # After the cancellation every value becomes available again.
        tail = emitted[2:]
        assert sorted(set(x for x in tail if x is not None)) == [1, 2, 3]


class TestStayVariants:
    def test_stay_inc_retains_value_on_cancel(self):
        s = DeltaStrategy("stay-inc", 4)
        assert run_schedule(s, [False, True, True, False]) == [1, 2, 2, 2, 3]

    def test_stay_inc_wraps_to_cover_all_values(self):
        s = DeltaStrategy("stay-inc", 4)
        s.next(False)  # 2
        s.next(False)  # 3
        s.next(True)   # cancel at 3, stays
        assert drain_from_current(s) == [3, 4, 1, 2]

    def test_stay_dec_wraps_downward(self):
        s = DeltaStrategy("stay-dec", 4)
        s.next(False)  # 3
        s.next(True)   # cancel at 3, stays
        assert drain_from_current(s) == [3, 2, 1, 4]

    def test_stay_inc_dec_descends_then_wraps_up(self):
        s = DeltaStrategy("stay-inc-dec", 4)
        s.next(False)  # 2
        s.next(False)  # 3
        assert s.next(True) == 3  # stays on cancel
        assert run_until_none(s) == [2, 1, 3, 4]

    def test_stay_random_retains_then_draws_fresh(self):
        s = DeltaStrategy("stay-random", 5, seed=9)
        first = s.current
        assert s.next(True) == first
        rest = run_until_none(s)
        assert sorted([first] + rest) == [1, 2, 3, 4, 5]

    @pytest.mark.parametrize("kind", ["stay-inc", "stay-dec", "stay-inc-dec", "stay-random"])
    def test_stay_exhaustion_requires_all_values(self, kind):
        s = DeltaStrategy(kind, 5, seed=3)
        values = drain(s)
        assert sorted(values) == [1, 2, 3, 4, 5]


def drain_from_current(s: DeltaStrategy):
    out = [s.current]
    while True:
        d = s.next(False)
        if d is None:
            return out
        out.append(d)


def run_until_none(s: DeltaStrategy):
    out = []
    while True:
        d = s.next(False)
        if d is None:
            return out
        out.append(d)


@pytest.mark.parametrize("kind", DELTA_KINDS)
def test_every_kind_exhausts_without_cancellations(kind):
    s = DeltaStrategy(kind, 7, seed=2)
    values = drain(s)
    assert sorted(set(values)) == list(range(1, 8))
    assert len(values) == 7  # no value is repeated


@pytest.mark.parametrize("kind", DELTA_KINDS)
def test_values_stay_in_range(kind):
    s = DeltaStrategy(kind, 6, seed=4)
    found = [i % 5 == 0 for i in range(40)]
    for v in run_schedule(s, found):
        if v is not None:
            assert 1 <= v <= 6


def test_delta_max_one_exhausts_immediately():
    for kind in DELTA_KINDS:
        s = DeltaStrategy(kind, 1)
        assert s.current == 1
        assert s.next(False) is None


def test_unknown_kind_rejected():
    with pytest.raises(ValueError):
        DeltaStrategy("bogus", 4)
