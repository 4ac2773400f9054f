import itertools

import pytest
from hypothesis import given, strategies as st

from ndcomm import hadamard
from ndcomm.errors import PromiseViolationError


def inner_product_bits(w, i):
    # direct definition: parity of sum_s w_s * i_s
    return sum(w[s] * ((i >> s) & 1) for s in range(len(w))) % 2


def test_encode_zero_vector():
    assert hadamard.encode((0, 0)).bits == (0, 0, 0, 0)


@pytest.mark.parametrize("w,expected", [((1, 0), (0, 1, 0, 1)), ((1, 1), (0, 1, 1, 0))])
def test_encode_k2(w, expected):
    # oracle: evaluate the inner product at every index directly
    assert tuple(inner_product_bits(w, i) for i in range(4)) == expected
    assert hadamard.encode(w).bits == expected


def test_encode_matches_inner_product_everywhere():
    for k in range(1, 5):
        for w in itertools.product((0, 1), repeat=k):
            assert hadamard.encode(w).bits == tuple(
                inner_product_bits(w, i) for i in range(1 << k)
            )


def test_encode_rejects_empty():
    with pytest.raises(ValueError):
        hadamard.encode(())


def test_encoded_bit_zero_is_zero():
    for k in range(1, 6):
        for c in hadamard.codewords(k):
            assert c.bits[0] == 0


def test_codewords_distinct_up_to_k6():
    for k in range(1, 7):
        assert len({c.bits for c in hadamard.codewords(k)}) == 1 << k


@given(st.integers(1, 6), st.data())
def test_encode_linearity(k, data):
    w1 = tuple(data.draw(st.integers(0, 1)) for _ in range(k))
    w2 = tuple(data.draw(st.integers(0, 1)) for _ in range(k))
    lhs = hadamard.encode(tuple(a ^ b for a, b in zip(w1, w2))).bits
    rhs = tuple(a ^ b for a, b in zip(hadamard.encode(w1).bits, hadamard.encode(w2).bits))
    assert lhs == rhs


def test_nonzero_codewords_have_weight_half():
    for k in range(1, 7):
        for c in hadamard.codewords(k):
            if any(c.bits):
                assert sum(c.bits) == 1 << (k - 1)


def test_is_codeword_examples():
    assert hadamard.is_codeword((0, 0, 0, 0))
    assert hadamard.is_codeword((0, 1, 0, 1))
    assert not hadamard.is_codeword((0, 1, 0, 0))


def test_is_codeword_rejects_bad_lengths():
    with pytest.raises(ValueError):
        hadamard.is_codeword((0, 1, 0))
    with pytest.raises(ValueError):
        hadamard.is_codeword((0,))


def test_index_tools():
    assert hadamard.floor_power_of_two(1) == 1
    assert hadamard.floor_power_of_two(5) == 4
    assert hadamard.floor_power_of_two(8) == 8
    assert hadamard.non_power_indices(1) == ()
    assert hadamard.non_power_indices(2) == (3,)
    assert hadamard.non_power_indices(3) == (3, 5, 6, 7)
    for k in range(1, 8):
        s = hadamard.non_power_indices(k)
        assert len(s) == (1 << k) - k - 1
        for i in s:
            top = hadamard.floor_power_of_two(i)
            assert 1 <= i - top < top < i


def test_local_test_examples():
    assert hadamard.local_test((0, 1, 0, 1))
    assert not hadamard.local_test((0, 1, 0, 0))
    assert hadamard.local_test((0,) * 16)


def test_local_test_rejects_bit0_one():
    with pytest.raises(ValueError):
        hadamard.local_test((1, 0, 0, 0))


def test_local_test_vacuous_for_k1():
    assert hadamard.local_test((0, 0))
    assert hadamard.local_test((0, 1))


def test_local_test_equals_membership_exhaustive():
    # oracle for the test is the exhaustive-comparison membership
    for k in range(1, 4):
        for rest in itertools.product((0, 1), repeat=(1 << k) - 1):
            x = (0,) + rest
            assert hadamard.local_test(x) == hadamard.is_codeword(x), x


def test_promise_decode_examples():
    assert hadamard.promise_decode((0, 0, 0, 0)) == (0, 0)
    assert hadamard.promise_decode((0, 1, 0, 1)) == (1, 0)
    assert hadamard.promise_decode((0, 1, 1, 0)) == (1, 1)


def test_promise_decode_roundtrip():
    for k in range(1, 6):
        for w in itertools.product((0, 1), repeat=k):
            assert hadamard.promise_decode(hadamard.encode(w).bits) == w


def test_promise_decode_violation():
    with pytest.raises(PromiseViolationError):
        hadamard.promise_decode((0, 1, 0, 0))


def test_bit_string_serialization():
    assert hadamard.bits_to_string((0, 1, 1, 0)) == "0110"
    assert hadamard.bits_from_string("0110") == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        hadamard.bits_from_string("01x0")
