import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dioph_lab import digits


def test_rational_terminating_forms():
    assert list(digits.digits_from_rational(1, 3, 3, 4).data) == [1, 0, 0, 0]
    assert list(digits.digits_from_rational(1, 2, 2, 4).data) == [1, 0, 0, 0]
    assert list(digits.digits_from_rational(1, 7, 10, 6).data) == [1, 4, 2, 8, 5, 7]


def test_rational_errors():
    with pytest.raises(ZeroDivisionError):
        digits.digits_from_rational(1, 0, 10, 4)
    with pytest.raises(ValueError):
        digits.digits_from_rational(3, 2, 10, 4)
    with pytest.raises(ValueError):
        digits.digits_from_rational(-1, 2, 10, 4)


def test_rational_agrees_with_direct_formula_oracle():
    # oracle: digit j of p/q is floor(p * b^j / q) mod b
    for base in (2, 3, 10):
        for q in range(2, 51):
            for p in range(1, q):
                got = digits.digits_from_rational(p, q, base, 64).data
                want = bytes((p * base ** j // q) % base for j in range(1, 65))
                assert got == want, (p, q, base)


def test_from_string():
    assert list(digits.digits_from_string("101", 2).data) == [1, 0, 1]
    assert list(digits.digits_from_string("1a", 16).data) == [1, 10]
    assert list(digits.digits_from_string("1A", 16).data) == [1, 10]
    with pytest.raises(ValueError):
        digits.digits_from_string("12", 2)
    with pytest.raises(ValueError):
        digits.digits_from_string("0", 40)


def test_run_blocks_examples():
    blocks = digits.run_blocks(digits.digits_from_string("100221", 3))
    assert [(b.start, b.length, b.kind) for b in blocks] == [
        (2, 2, "zero"), (4, 2, "bmax")]
    blocks = digits.run_blocks(digits.digits_from_string("1001", 2))
    assert [(b.start, b.length, b.kind) for b in blocks] == [
        (1, 1, "bmax"), (2, 2, "zero"), (4, 1, "bmax")]
    blocks = digits.run_blocks(digits.digits_from_string("999", 10))
    assert [(b.start, b.length, b.value) for b in blocks] == [(1, 3, 9)]


@given(st.integers(2, 10), st.lists(st.integers(0, 9), min_size=1, max_size=200))
@settings(max_examples=150)
def test_run_blocks_maximal_and_disjoint(base, raw):
    data = bytes(d % base for d in raw)
    stream = digits.DigitStream(base, data)
    blocks = digits.run_blocks(stream)
    prev_end = 0
    for b in blocks:
        assert b.start > prev_end  # no overlap, increasing starts
        prev_end = b.end
        assert b.value in (0, base - 1)
        assert all(stream.digit(j) == b.value for j in range(b.start, b.end + 1))
        if b.start > 1:
            assert stream.digit(b.start - 1) != b.value
        if b.end < stream.prefix_len:
            assert stream.digit(b.end + 1) != b.value
    if base == 2:
        assert sum(b.length for b in blocks) == stream.prefix_len
    # every 0/(b-1) position is covered by some block
    covered = set()
    for b in blocks:
        covered.update(range(b.start, b.end + 1))
    for j in range(1, stream.prefix_len + 1):
        assert (stream.digit(j) in (0, base - 1)) == (j in covered)


def test_digit_range_validation():
    with pytest.raises(ValueError):
        digits.DigitStream(3, bytes([0, 3]))
    with pytest.raises(ValueError):
        digits.DigitStream(1, b"\x00")


def test_tail_guard_on_ingestion():
    # a terminating rational deeper than the guard window ends in zeros
    with pytest.raises(ValueError):
        digits.digits_from_rational(1, 2, 2, 100)
    # exactly 64 digits: the leading 1 sits inside the window
    digits.digits_from_rational(1, 2, 2, 64)
    with pytest.raises(ValueError):
        digits.digits_from_string("1" + "0" * 64, 3)
    with pytest.raises(ValueError):
        digits.digits_from_string("0" + "9" * 64, 10)
    # short streams are exempt (too short to judge the tail)
    digits.digits_from_string("000", 2)
    # the guard is ingestion-side only; raw construction is unconstrained
    digits.DigitStream(3, bytes(100))


def test_digit_file_roundtrip(tmp_path):
    stream = digits.digits_from_string("10220110", 3)
    path = tmp_path / "digits.txt"
    digits.save_digit_file(stream, path)
    text = path.read_text().splitlines()
    assert text[0] == "base=3"
    assert text[1] == "10220110"
    back = digits.load_digit_file(path)
    assert back == stream
    bad = tmp_path / "bad.txt"
    bad.write_text("nope\n1\n")
    with pytest.raises(ValueError):
        digits.load_digit_file(bad)


def test_digit_file_wrapped_lines_and_no_trailing_newline(tmp_path):
    path = tmp_path / "wrapped.txt"
    path.write_text("base=3\n1022\n0110")  # body may wrap; newline optional
    stream = digits.load_digit_file(path)
    assert list(stream.data) == [1, 0, 2, 2, 0, 1, 1, 0]


def test_random_digits_reproducible():
    a = digits.random_digits(10, 500, 7)
    b = digits.random_digits(10, 500, 7)
    c = digits.random_digits(10, 500, 8)
    assert a.data == b.data
    assert a.data != c.data


def test_truncated():
    s = digits.digits_from_string("12021", 3)
    assert list(s.truncated(3).data) == [1, 2, 0]
    with pytest.raises(ValueError):
        s.truncated(9)
