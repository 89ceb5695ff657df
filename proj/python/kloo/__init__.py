"""Matrix Kloosterman sums K_n(A,B;p^k), quadratic matrix equation counts and matrix Gauss sums.

Matrices are given as text "r,c;r,c" or as nested lists of integers.
"""

import json

from . import _kloo
from ._kloo import KlooError, regular_semisimple

__all__ = ["KlooError", "evaluate", "count", "gauss", "bounds", "verify", "centralizer_order", "regular_semisimple"]


def _text(m):
    if isinstance(m, str):
        return m
    if isinstance(m, int):
        return str(m)
    return ";".join(",".join(str(int(x)) for x in row) for row in m)


def evaluate(a, b, p, k, method="brute"):
    """K_n(A,B;p^k) as a dict with the value, exact coefficients and envelopes."""
    return json.loads(_kloo.eval_json(_text(a), _text(b), p, k, method))


def count(a, b=None, p=3, l=1, method="closed"):
    """#{X in GL_n(Z/p^lZ) : XAX = B}; with b omitted, counts XAX = A."""
    return json.loads(_kloo.count_json(_text(a), _text(a if b is None else b), p, l, method))


def gauss(s, t, p):
    """sum over U in M_n(F_p) of e(Tr(SU + TU^2)/p), by enumeration and in closed form."""
    return json.loads(_kloo.gauss_json(_text(s), _text(t), p))


def bounds(a, b, p, k):
    """Envelopes for |K_n(A,B;p^k)| with their applicability."""
    return json.loads(_kloo.bounds_json(_text(a), _text(b), p, k))


def verify(suite="gauss", seed=42):
    """Run a verification suite and return its reports."""
    return json.loads(_kloo.verify_json(suite, seed))


def centralizer_order(parts, q):
    """Order of the centralizer in GL of a nilpotent matrix with Jordan blocks `parts` over F_q."""
    return int(_kloo.centralizer_order(list(parts), q))
