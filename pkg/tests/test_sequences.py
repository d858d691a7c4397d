from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dioph_lab import sequences
from dioph_lab.sequences import eta_estimate, make_sequence, parse_rational


def test_linear_and_poly():
    lin = make_sequence("linear")
    assert [lin.a(n) for n in range(1, 5)] == [1, 2, 3, 4]
    sq = make_sequence("poly:d=2")
    assert [sq.a(n) for n in range(1, 5)] == [1, 4, 9, 16]
    assert lin.eta_declared == 1 and sq.eta_declared == 1


def test_geometric_recurrence():
    g = make_sequence("geometric:eta=2,a1=1")
    assert [g.a(n) for n in range(1, 6)] == [1, 2, 4, 8, 16]
    h = make_sequence("geometric:eta=3/2,a1=4")
    # 13.5 rounds half up to 14
    assert [h.a(n) for n in range(1, 7)] == [4, 6, 9, 14, 21, 32]
    assert h.eta_declared == F(3, 2)


def test_explicit_file(tmp_path):
    p = tmp_path / "seq.txt"
    p.write_text("1\n5\n9\n\n20\n")
    seq = make_sequence(f"file:{p}")
    assert [seq.a(n) for n in range(1, 5)] == [1, 5, 9, 20]
    assert seq.max_index() == 4
    with pytest.raises(IndexError):
        seq.a(5)
    p.write_text("3\n3\n")
    with pytest.raises(ValueError):
        make_sequence(f"file:{p}")


@pytest.mark.parametrize("bad", [
    "poly", "poly:d=1", "poly:k=2", "geometric:eta=1,a1=1",
    "geometric:eta=2", "geometric:eta=2,a1=0", "geometric:eta=0.5,a1=1",
    "fibonacci", "geometric:eta=3/2,a1=2,x=1",
])
def test_malformed_specs(bad):
    with pytest.raises(ValueError):
        make_sequence(bad)


def test_parse_rational_rejects_decimals():
    assert parse_rational("3/2") == F(3, 2)
    assert parse_rational("7") == 7
    for bad in ("1.5", "3/2/5", "a/b", ""):
        with pytest.raises(ValueError):
            parse_rational(bad)


def test_eta_estimate_values():
    # decreasing ratios: the window max sits at its smallest index
    assert eta_estimate(make_sequence("linear"), 1000, 100) == F(901, 900)
    assert eta_estimate(make_sequence("poly:d=2"), 10 ** 4, 100) == F(9901, 9900) ** 2
    assert eta_estimate(make_sequence("geometric:eta=2,a1=1"), 20, 5) == 2


def test_eta_estimate_window_default_and_errors():
    lin = make_sequence("linear")
    # default window is the last 10% of indices
    assert eta_estimate(lin, 1000) == F(901, 900)
    with pytest.raises(ValueError):
        eta_estimate(lin, 1)
    with pytest.raises(ValueError):
        eta_estimate(lin, 10, window=10)


def test_eta_estimate_limits():
    for spec in ("linear", "poly:d=2", "poly:d=3"):
        est = eta_estimate(make_sequence(spec), 10 ** 4)
        assert abs(est - 1) <= F(1, 1000), spec


@given(num=st.integers(3, 12), den=st.integers(2, 8), seed=st.integers(1, 50))
@settings(max_examples=60)
def test_geometric_eta_estimate_close_to_ratio(num, den, seed):
    ratio = F(num, den)
    if ratio <= 1:
        ratio = 1 + ratio
    seq = make_sequence(f"geometric:eta={ratio.numerator}/{ratio.denominator},a1={seed}")
    n_max, window = 40, 5
    est = eta_estimate(seq, n_max, window)
    assert abs(est - ratio) <= F(1, seq.a(n_max - window))


@given(st.sampled_from(["linear", "poly:d=2", "geometric:eta=2,a1=1",
                        "geometric:eta=7/4,a1=3"]),
       st.integers(1, 200))
@settings(max_examples=80)
def test_strictly_increasing(spec, n):
    seq = make_sequence(spec)
    assert seq.a(n + 1) > seq.a(n) >= 1


def test_iter_upto():
    g = make_sequence("geometric:eta=2,a1=1")
    assert list(g.iter_upto(20)) == [(1, 1), (2, 2), (3, 4), (4, 8), (5, 16)]
    assert g.index_count_upto(20) == 5
