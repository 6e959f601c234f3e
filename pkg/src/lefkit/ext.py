"""Exact graded Ext dimensions between line bundles on (P^n)^k.

On a single P^n the cohomology of O(d) is concentrated in degree 0 (for
d >= 0) or degree n (for d <= -n-1) and vanishes identically in between.
On a product, Ext*(O(a), O(b)) is the graded tensor product of the factor
cohomologies of O(b_i - a_i), so its dimension vector is a convolution.

Dimensions are binomial coefficients computed exactly; no floating point
is involved anywhere.
"""

from __future__ import annotations

from math import comb

GradedDims = tuple[int, ...]


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"projective factor dimension n must be >= 1, got {n}")


def line_cohomology(n: int, d: int) -> GradedDims:
    """Dimensions of H^i(P^n, O(d)) for i = 0..n."""
    _check_n(n)
    dims = [0] * (n + 1)
    if d >= 0:
        dims[0] = comb(d + n, n)
    elif d <= -n - 1:
        dims[n] = comb(-d - 1, n)
    return tuple(dims)


def _convolve(xs, ys):
    out = [0] * (len(xs) + len(ys) - 1)
    for i, x in enumerate(xs):
        if x:
            for j, y in enumerate(ys):
                out[i + j] += x * y
    return out


def ext_graded(n: int, a, b) -> GradedDims:
    """Dimensions of Ext^i(O(a), O(b)) on (P^n)^k for i = 0..k*n."""
    _check_n(n)
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    k = len(a)
    acc = [1]
    for ai, bi in zip(a, b):
        factor = line_cohomology(n, bi - ai)
        if not any(factor):
            return (0,) * (k * n + 1)
        acc = _convolve(acc, factor)
    return tuple(acc)


def is_orthogonal_pair(n: int, a, b) -> bool:
    """True iff Ext*(O(a), O(b)) vanishes in every degree.

    Vanishing happens exactly when some factor has none: a coordinate with
    0 < a_i - b_i <= n puts the twist b_i - a_i in the cohomology-free band
    [-n, -1].  This test is implemented straight from that inequality; its
    agreement with ext_graded is asserted by the test suite, not assumed.
    """
    _check_n(n)
    if len(a) != len(b):
        raise ValueError(f"arity mismatch: {len(a)} vs {len(b)}")
    return any(0 < x - y <= n for x, y in zip(a, b))
