import pytest

from a1tk.a1 import a1_constant, hardy_constant
from a1tk.generators import (
    GenSpec,
    discretize_extremal,
    gen_bounded_ratio,
    gen_nonincreasing_hardy,
    generate,
    shuffle_cells,
)
from a1tk.rearrange import decreasing_rearrangement, is_equimeasurable, value_levels
from a1tk.rng import XorShift64Star, splitmix64
from a1tk.serialization import dumps_weight
from a1tk.weights import UNIT, StepWeight, integral, lp_integral


def test_splitmix64_reference():
    # first output of splitmix64 from state 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_xorshift_stream_is_reproducible():
    a, b = XorShift64Star(42), XorShift64Star(42)
    xs = [a.next_u64() for _ in range(5)]
    assert xs == [b.next_u64() for _ in range(5)]
    assert len(set(xs)) == 5
    assert all(0 <= x < 2**64 for x in xs)
    u = XorShift64Star(0)
    assert all(0.0 <= u.uniform() < 1.0 for _ in range(1000))
    assert all(0.0 < u.uniform_open() <= 1.0 for _ in range(1000))


def test_xorshift_step_by_hand():
    rng = XorShift64Star(0)
    x = 0xE220A8397B1DCDAF
    mask = 2**64 - 1
    x ^= x >> 12
    x ^= (x << 25) & mask
    x ^= x >> 27
    assert rng.next_u64() == (x * 0x2545F4914F6CDD1D) & mask


def test_bounded_ratio_examples():
    w = gen_bounded_ratio(10, 1.0, 3)
    assert a1_constant(w).constant == 1.0
    for seed in range(200):
        assert a1_constant(gen_bounded_ratio(2, 2.0, seed)).constant <= 2.0
    assert dumps_weight(gen_bounded_ratio(8, 4.0, 42)) == dumps_weight(gen_bounded_ratio(8, 4.0, 42))
    assert gen_bounded_ratio(8, 4.0, 42) != gen_bounded_ratio(8, 4.0, 43)


@pytest.mark.parametrize("ratio", [1.5, 2.0, 8.0, 100.0])
def test_bounded_ratio_property(ratio):
    for seed in range(300):
        w = gen_bounded_ratio(1 + seed % 64, ratio, seed)
        assert w.n == 1 + seed % 64
        assert a1_constant(w).constant <= ratio


def test_nonincreasing_hardy_examples():
    g = gen_nonincreasing_hardy(12, 1.0, 5)
    assert g.canonical().n == 1
    assert dumps_weight(gen_nonincreasing_hardy(12, 2.5, 9)) == dumps_weight(gen_nonincreasing_hardy(12, 2.5, 9))


@pytest.mark.parametrize("c", [1.0, 1.01, 1.5, 3.0, 10.0])
def test_nonincreasing_hardy_property(c):
    for seed in range(300):
        g = gen_nonincreasing_hardy(1 + seed % 64, c, seed)
        assert g.is_nonincreasing()
        assert hardy_constant(g).constant <= c


def test_shuffle_examples():
    single = StepWeight.constant(3.0)
    assert shuffle_cells(single, 1).equals(single)
    w = StepWeight.uniform([3, 2, 1])
    seen = set()
    for seed in range(50):
        s = shuffle_cells(w, seed)
        seen.add(tuple(s.values))
        assert decreasing_rearrangement(s).equals(decreasing_rearrangement(w))
    assert (1.0, 3.0, 2.0) in seen
    assert len(seen) == 6


def test_shuffle_preserves_distribution_and_norms():
    for seed in range(200):
        w = gen_bounded_ratio(1 + seed % 40, 8.0, seed)
        s = shuffle_cells(w, seed + 1)
        assert is_equimeasurable(w, s, value_levels(w))
        for p in (1, 2, 3):
            assert lp_integral(s, UNIT, p) == pytest.approx(lp_integral(w, UNIT, p), rel=1e-12)


def test_discretize_extremal_two_cells():
    w = discretize_extremal(2.0, 1, 0.5)
    assert w.breakpoints == (0.0, 0.5, 1.0)
    # averages of t^-1/2 / 2: sqrt(t) over (0, 1/2) and (1/2, 1)
    assert w.values[0] == pytest.approx(0.5**0.5 / 0.5, rel=1e-14)
    assert w.values[1] == pytest.approx((1 - 0.5**0.5) / 0.5, rel=1e-14)
    assert integral(w, UNIT) == pytest.approx(1.0, rel=1e-14)


def test_discretize_extremal_hardy_slack_shrinks():
    slack = []
    for n in (8, 32, 128, 512):
        g = discretize_extremal(2.0, n, 1e-4)
        assert g.is_nonincreasing()
        slack.append(hardy_constant(g).constant / 2.0 - 1.0)
    assert all(b < a for a, b in zip(slack, slack[1:]))
    assert slack[-1] < 1e-2


def test_genspec_roundtrip_and_dispatch():
    spec = GenSpec.parse("nonincreasing_hardy,10,2.5", seed=7)
    assert GenSpec.from_dict(spec.to_dict()) == spec
    assert generate(spec) == gen_nonincreasing_hardy(10, 2.5, 7)
    assert generate(GenSpec("shuffle", 5, 2.0, 1)) == shuffle_cells(gen_bounded_ratio(5, 2.0, 1), 1)
    assert generate(GenSpec("extremal_discretized", 5, 2.0, t0=0.01)) == discretize_extremal(2.0, 5, 0.01)
    with pytest.raises(ValueError):
        GenSpec.parse("nope,1,1")
    with pytest.raises(ValueError):
        GenSpec.parse("bounded_ratio,0,1")
    with pytest.raises(ValueError):
        GenSpec.parse("bounded_ratio,3")
