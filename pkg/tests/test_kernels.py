"""Kernel-level tests: pure and compiled backends against each other and
against a dense convolution oracle."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from etaparity._bits import mask, popcount, spread_double
from etaparity._kernels import pure

try:
    from etaparity._kernels import compiled
except ImportError:  # pragma: no cover - build without the extension
    compiled = None

needs_compiled = pytest.mark.skipif(compiled is None, reason="no compiled kernel")

import oracles as O


def bits_to_arr(bits: int, n: int) -> np.ndarray:
    return np.array([(bits >> i) & 1 for i in range(n)], dtype=np.uint8)


def arr_to_bits(arr) -> int:
    return sum(int(v) << i for i, v in enumerate(arr))


def sparse_arr(exps, n) -> np.ndarray:
    out = np.zeros(n, np.uint8)
    for e in exps:
        if e < n:
            out[e] = 1
    return out


lengths = st.integers(min_value=1, max_value=400)


@st.composite
def bits_and_len(draw):
    n = draw(lengths)
    return draw(st.integers(min_value=0, max_value=(1 << n) - 1)), n


@st.composite
def exps_list(draw, n, with_zero=False, max_size=12):
    vals = draw(
        st.lists(st.integers(min_value=0, max_value=max(0, n - 1)),
                 min_size=0 if not with_zero else 1, max_size=max_size)
    )
    if with_zero:
        vals.append(0)
    return sorted(set(vals))


@given(bits_and_len(), st.data())
@settings(max_examples=120, deadline=None)
def test_mul_sparse_matches_convolution(bn, data):
    bits, n = bn
    exps = data.draw(exps_list(n))
    got = pure.mul_sparse(bits, n, exps)
    expect = np.convolve(bits_to_arr(bits, n), sparse_arr(exps, n))[:n] & 1
    assert got == arr_to_bits(expect)


@needs_compiled
@given(bits_and_len(), st.data())
@settings(max_examples=120, deadline=None)
def test_mul_sparse_backends_agree(bn, data):
    bits, n = bn
    exps = data.draw(exps_list(n))
    assert pure.mul_sparse(bits, n, exps) == compiled.mul_sparse(bits, n, exps)


@given(bits_and_len())
@settings(max_examples=100, deadline=None)
def test_spread_double_is_squaring(bn):
    bits, n = bn
    arr = bits_to_arr(bits, n)
    sq = np.convolve(arr, arr)[: 2 * n] & 1
    assert spread_double(bits, n) == arr_to_bits(sq)


@given(st.data())
@settings(max_examples=80, deadline=None)
def test_quotient_times_denominator_restores_numerator(data):
    n = data.draw(st.integers(min_value=2, max_value=300))
    nums = [data.draw(exps_list(n)) for _ in range(data.draw(st.integers(0, 2)))]
    dens = [data.draw(exps_list(n, with_zero=True))
            for _ in range(data.draw(st.integers(0, 2)))]
    got = pure.quotient(nums, dens, n)
    # multiply the quotient back up by every denominator factor
    back = got
    for exps in dens:
        back = pure.mul_sparse(back, n, exps)
    expect = 1
    for exps in nums:
        expect = pure.mul_sparse(expect, n, exps)
    assert back == expect & mask(n)


@needs_compiled
@given(st.data())
@settings(max_examples=80, deadline=None)
def test_quotient_backends_agree(data):
    n = data.draw(st.integers(min_value=2, max_value=300))
    nums = [data.draw(exps_list(n)) for _ in range(data.draw(st.integers(0, 2)))]
    dens = [data.draw(exps_list(n, with_zero=True))
            for _ in range(data.draw(st.integers(1, 2)))]
    assert pure.quotient(nums, dens, n) == compiled.quotient(nums, dens, n)


@given(bits_and_len(), st.data())
@settings(max_examples=100, deadline=None)
def test_divide_ref_inverts_mul(bn, data):
    bits, n = bn
    exps = data.draw(exps_list(n, with_zero=True))
    div = pure.divide_sparse_ref(bits, n, exps)
    assert pure.mul_sparse(div, n, exps) == bits


@needs_compiled
@given(bits_and_len(), st.data())
@settings(max_examples=100, deadline=None)
def test_compiled_divide_matches_reference(bn, data):
    bits, n = bn
    exps = data.draw(exps_list(n, with_zero=True))
    assert compiled.divide_sparse(bits, n, exps) == pure.divide_sparse_ref(bits, n, exps)


@needs_compiled
def test_divide_requires_unit_constant_term():
    with pytest.raises(ValueError):
        compiled.divide_sparse(0b101, 3, [1, 2])


def test_divide_large_exponent_spans_words():
    # exponents far beyond one 64-bit word exercise the whole-word path
    n = 1000
    exps = [0, 1, 63, 64, 65, 129, 700]
    f1 = O.euler_factor(1, n)
    bits = arr_to_bits(f1)
    div = pure.divide_sparse_ref(bits, n, exps)
    assert pure.mul_sparse(div, n, exps) == bits
    if compiled is not None:
        assert compiled.divide_sparse(bits, n, exps) == div


def test_popcount_and_mask():
    assert mask(5) == 0b11111
    assert popcount(0b1011001) == 4
    assert popcount(0) == 0


@needs_compiled
def test_eta_quotient_against_oracle_large():
    # one sizable end-to-end quotient per backend against the dense oracle
    n = 4000
    num = O.power(O.euler_factor(7, n), 3)
    den = O.euler_factor(1, n)
    expect = O.mul(num, O.inverse(den))
    from etaparity.series import _pentagonal_exponents, _power_factors

    nums = _power_factors(7, 3, n)
    dens = [_pentagonal_exponents(1, n)]
    for mod in (pure, compiled):
        got = mod.quotient(nums, dens, n)
        assert got == arr_to_bits(expect)
