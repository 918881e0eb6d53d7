"""Closed-form weight evaluators for three parameter families.

Each evaluator returns the exact pair (N_j, M_j): the maximal number of
common-zero coordinates over admissible j-dimensional subspaces, and the
resulting weight M_j = n - N_j.  Arithmetic is unbounded-integer; empty
geometric sums contribute 0.  Families:

* binary_pair_nj:          q = 2, e1 = e2 = 1 (both nonzeros primitive).
* index_one_qminus1_nj:    e1 = 1, e2 = q - 1.
* index_qminus1_one_nj:    e1 = q - 1, e2 = 1.

Branch selection follows the printed case split (k1 <= k2; j <= k2 < k1;
k2 < j <= k1) with no extrapolation beyond it.
"""

from __future__ import annotations

import math
from typing import Optional

from .errors import DegenerateOrder, HypothesisViolated, RangeError


def _geom(q: int, lo: int, hi: int) -> int:
    """Sum of q^t for lo <= t <= hi; empty ranges give 0."""
    if hi < lo:
        return 0
    return (q ** (hi + 1) - q**lo) // (q - 1) if q > 1 else hi - lo + 1


def _branch_nj(q: int, k1: int, k2: int, j: int) -> int:
    if k1 <= k2:
        return _geom(q, k2 - j, k1 + k2 - j - 1) - _geom(q, 0, k1 - j - 1)
    if j <= k2:
        return _geom(q, k1 - j, k1 + k2 - j - 1) - _geom(q, 0, k2 - j - 1)
    # k2 < j <= k1
    return q ** (k1 - j) * _geom(q, 0, k2 - 1)


def _guard_positive(n_j: int, m_j: int) -> None:
    if n_j <= 0 or m_j <= 0:
        raise DegenerateOrder(
            f"closed form left the admissible range (N={n_j}, M={m_j})"
        )


def binary_pair_nj(k1: int, k2: int, j: int) -> tuple[int, int]:
    """Both nonzeros primitive over GF(2); needs coprime k1, k2 >= 2."""
    if math.gcd(k1, k2) != 1 or k1 < 2 or k2 < 2:
        raise HypothesisViolated("need gcd(k1,k2)=1 and k1,k2 >= 2")
    if not 1 <= j <= k1:
        raise RangeError(f"j={j} outside 1..{k1}")
    if k1 <= k2 or j <= k2:
        n_j = 2 ** (k1 + k2 - j) - 2 ** (k1 - j) - 2 ** (k2 - j) + 1
    else:
        n_j = 2 ** (k1 + k2 - j) - 2 ** (k1 - j)
    m_j = (2**k1 - 1) * (2**k2 - 1) - n_j
    _guard_positive(n_j, m_j)
    return n_j, m_j


def index_one_qminus1_nj(q: int, k1: int, k2: int, j: int) -> tuple[int, int]:
    """First nonzero primitive (e1=1), second of index q-1; k2 odd.

    Beyond the printed hypotheses, gcd(q-1, k2) = 1 is required: it is what
    makes the two nonzero orders coprime and collapses the double character
    sum (k2 odd only covers it when q - 1 is a power of two; q=4, k2=3
    already breaks without it).
    """
    if math.gcd(k1, k2) != 1 or k2 % 2 == 0:
        raise HypothesisViolated("need gcd(k1,k2)=1 and k2 odd")
    if math.gcd(q - 1, k2) != 1:
        raise HypothesisViolated("need gcd(q-1, k2)=1 for coprime nonzero orders")
    if k2 == 1:
        raise DegenerateOrder("k2=1 makes the second nonzero trivial")
    if not 1 <= j <= k1:
        raise RangeError(f"j={j} outside 1..{k1}")
    n = (q**k1 - 1) * (q**k2 - 1) // (q - 1)
    n_j = _branch_nj(q, k1, k2, j)
    m_j = n - n_j
    _guard_positive(n_j, m_j)
    return n_j, m_j


def index_qminus1_one_nj(q: int, k1: int, k2: int, j: int) -> tuple[int, int]:
    """Mirrored family: e1 = q-1, e2 = 1; k1 odd.  Same displays.

    gcd(q-1, k1) = 1 required for the same reason as in the mirrored
    evaluator.
    """
    if math.gcd(k1, k2) != 1 or k1 % 2 == 0:
        raise HypothesisViolated("need gcd(k1,k2)=1 and k1 odd")
    if math.gcd(q - 1, k1) != 1:
        raise HypothesisViolated("need gcd(q-1, k1)=1 for coprime nonzero orders")
    if k1 == 1:
        raise DegenerateOrder("k1=1 makes the first nonzero trivial")
    if not 1 <= j <= k1:
        raise RangeError(f"j={j} outside 1..{k1}")
    n = (q**k1 - 1) * (q**k2 - 1) // (q - 1)
    n_j = _branch_nj(q, k1, k2, j)
    m_j = n - n_j
    _guard_positive(n_j, m_j)
    return n_j, m_j


FAMILIES = ("binary_pair", "index_one_qminus1", "index_qminus1_one")


def detect_family(q: int, k1: int, k2: int, e1: int, e2: int) -> Optional[str]:
    """Which closed-form family covers these parameters, if any."""
    if q == 2 and e1 == 1 and e2 == 1 and math.gcd(k1, k2) == 1 and k1 >= 2 and k2 >= 2:
        return "binary_pair"
    if (
        e1 == 1
        and e2 == q - 1
        and math.gcd(k1, k2) == 1
        and k2 % 2 == 1
        and math.gcd(q - 1, k2) == 1
        and k2 > 1
    ):
        return "index_one_qminus1"
    if (
        e1 == q - 1
        and e2 == 1
        and math.gcd(k1, k2) == 1
        and k1 % 2 == 1
        and math.gcd(q - 1, k1) == 1
        and k1 > 1
    ):
        return "index_qminus1_one"
    return None


def evaluate_closed_form(q: int, k1: int, k2: int, e1: int, e2: int,
                         j: int) -> tuple[int, int]:
    family = detect_family(q, k1, k2, e1, e2)
    if family == "binary_pair":
        return binary_pair_nj(k1, k2, j)
    if family == "index_one_qminus1":
        return index_one_qminus1_nj(q, k1, k2, j)
    if family == "index_qminus1_one":
        return index_qminus1_one_nj(q, k1, k2, j)
    raise HypothesisViolated("parameters match no closed-form family")
