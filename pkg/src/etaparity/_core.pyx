# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Word-level kernels for series mod 2 packed into uint64 words, least
significant bit = lowest exponent.

mul_sparse_words  xors shifted copies of the source, one per exponent.

divide_sparse_words runs the recurrence b(k) = num(k) xor sum b(k - e)
over the positive divisor exponents, word-blocked: exponents below 64
are resolved bit-serially inside the current word through a scatter
mask, exponents of 64 and above are applied as whole-word shifted xors
once the word is final.
"""

from libc.stdint cimport uint64_t, int64_t


def mul_sparse_words(const uint64_t[::1] src, uint64_t[::1] dst,
                     const int64_t[::1] exps):
    """dst ^= src << e for each exponent e; dst must be zeroed by the caller."""
    cdef Py_ssize_t nw = dst.shape[0]
    cdef Py_ssize_t k, i, ws, top
    cdef int bs
    cdef int64_t e
    for k in range(exps.shape[0]):
        e = exps[k]
        ws = e >> 6
        bs = e & 63
        if ws >= nw:
            continue
        top = nw - ws
        if bs == 0:
            for i in range(top):
                dst[i + ws] ^= src[i]
        else:
            for i in range(top):
                dst[i + ws] ^= src[i] << bs
                if i + ws + 1 < nw:
                    dst[i + ws + 1] ^= src[i] >> (64 - bs)


def divide_sparse_words(uint64_t[::1] b, const int64_t[::1] large,
                        uint64_t small_mask):
    """In-place: b holds the numerator on entry and the quotient on exit.

    small_mask has a bit at each divisor exponent in 1..63; large holds the
    divisor exponents >= 64, ascending. The divisor constant term is 1.
    """
    cdef Py_ssize_t nw = b.shape[0]
    cdef Py_ssize_t W, t, tw
    cdef int j, bs
    cdef int64_t e
    cdef Py_ssize_t nlarge = large.shape[0]
    cdef uint64_t cur, carry
    for W in range(nw):
        cur = b[W]
        if small_mask != 0 and cur != 0:
            carry = 0
            for j in range(64):
                if (cur >> j) & 1:
                    cur ^= small_mask << j
                    if j > 0:
                        carry ^= small_mask >> (64 - j)
            b[W] = cur
            if W + 1 < nw:
                b[W + 1] ^= carry
        if cur != 0:
            for t in range(nlarge):
                e = large[t]
                tw = W + (e >> 6)
                if tw >= nw:
                    break
                bs = e & 63
                b[tw] ^= cur << bs
                if bs != 0 and tw + 1 < nw:
                    b[tw + 1] ^= cur >> (64 - bs)
