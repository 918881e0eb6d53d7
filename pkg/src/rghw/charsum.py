"""Multiplicative characters, Gauss sums, and the exponential-sum oracle.

The oracle recomputes the zero-coordinate count of a subspace as

    (n + A1 + A2 + B) / q^j

where A1/A2 collect the one-sided contributions (members with one zero
component, expanded as Gauss sums against the characters that restrict
trivially to GF(q)*) and B collects the doubly-nonzero members through the
double character sum; B needs gcd(n1, n2) = 1.  Every term is evaluated in
double precision against precomputed root-of-unity tables, and the final
imaginary residue is checked before the real part is returned.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

from .codes import CodeSpec
from .errors import (
    BadIndex,
    FieldMismatch,
    NonCoprimeOrders,
    PrecisionFailure,
    ZeroArgument,
)
from .gf import FieldElement, FieldTable
from .subspaces import SubspaceBasis, member_matrix

IMAG_TOL = 1e-6


@lru_cache(maxsize=None)
def unit_roots(order: int) -> np.ndarray:
    """Table of e^(2*pi*i*t/order) for t in [0, order)."""
    return np.exp(2j * np.pi * np.arange(order) / order)


_EXP_NP: dict[tuple[int, int], np.ndarray] = {}
_PRIME_TRACE: dict[tuple[int, int], np.ndarray] = {}


def _exp_np(field: FieldTable) -> np.ndarray:
    key = (field.p, field.m)
    if key not in _EXP_NP:
        _EXP_NP[key] = np.array(field.exp_table, dtype=np.int64)
    return _EXP_NP[key]


def prime_trace_table(field: FieldTable) -> np.ndarray:
    """code -> absolute trace down to GF(p), as a residue in [0, p)."""
    key = (field.p, field.m)
    if key not in _PRIME_TRACE:
        out = np.zeros(field.size, dtype=np.int64)
        p = field.p
        for log in range(field.order):
            acc = 0
            exponent = 1
            for _ in range(field.m):
                acc = field.add(acc, field.exp_table[(log * exponent) % field.order])
                exponent = (exponent * p) % field.order
            out[field.exp_table[log]] = acc  # GF(p) codes are residues
        _PRIME_TRACE[key] = out
    return _PRIME_TRACE[key]


@dataclass(frozen=True)
class CharacterHandle:
    """Multiplicative character pinned at the canonical generator g.

    chi(g^t) = zeta_order^(exponent * t); exponent 0 mod order is the
    trivial character.
    """

    field: FieldTable
    order: int
    exponent: int

    def __post_init__(self):
        if self.order < 1 or (self.field.size - 1) % self.order:
            raise BadIndex(
                f"character order {self.order} does not divide {self.field.size - 1}"
            )

    @property
    def is_trivial(self) -> bool:
        return self.exponent % self.order == 0

    def power(self, t: int) -> "CharacterHandle":
        return CharacterHandle(self.field, self.order, (self.exponent * t) % self.order)

    def conjugate(self) -> "CharacterHandle":
        return CharacterHandle(self.field, self.order, (-self.exponent) % self.order)

    def trivial_on_subfield(self, q: int) -> bool:
        """Does the restriction to the embedded GF(q)* collapse to 1?"""
        step = (self.field.size - 1) // (q - 1)
        return (self.exponent * step) % self.order == 0


def _element_log(chi: CharacterHandle, x) -> int:
    if isinstance(x, FieldElement):
        if x.field is not chi.field:
            raise FieldMismatch("element does not live in the character's field")
        if x.is_zero:
            raise ZeroArgument("characters are undefined at zero")
        return x.log
    code = int(x)
    if code == 0:
        raise ZeroArgument("characters are undefined at zero")
    return chi.field.log_table[code]


def char_eval(chi: CharacterHandle, x) -> complex:
    t = _element_log(chi, x)
    return complex(unit_roots(chi.order)[(chi.exponent * t) % chi.order])


def gauss_sum(chi: CharacterHandle, beta) -> complex:
    """Sum over x != 0 of chi(x) * zeta_p^(trace(beta * x))."""
    field = chi.field
    order = field.order
    t = np.arange(order)
    chi_vals = unit_roots(chi.order)[(chi.exponent * t) % chi.order]
    if isinstance(beta, FieldElement):
        if beta.field is not field:
            raise FieldMismatch("beta does not live in the character's field")
        beta_code = beta.code
    else:
        beta_code = int(beta)
    if beta_code == 0:
        return complex(chi_vals.sum())
    beta_log = field.log_table[beta_code]
    traces = prime_trace_table(field)[_exp_np(field)[(t + beta_log) % order]]
    return complex((chi_vals * unit_roots(field.p)[traces]).sum())


def orthogonality_sum(x, alpha, e: int) -> complex:
    """Sum over lam < e of chi^lam(x) for chi of order e at the generator.

    Evaluates to e when x is an e-th power (x in <alpha> for alpha = g^e)
    and to 0 otherwise, up to float error.
    """
    if isinstance(x, FieldElement):
        field = x.field
    elif isinstance(alpha, FieldElement):
        field = alpha.field
    else:
        raise FieldMismatch("pass field elements, not bare codes")
    if (field.size - 1) % e:
        raise BadIndex(f"e={e} does not divide {field.size - 1}")
    alpha_el = alpha if isinstance(alpha, FieldElement) else field.element(int(alpha))
    if alpha_el != field.generator**e:
        raise BadIndex("alpha must be the e-th power of the canonical generator")
    chi = CharacterHandle(field, e, 1)
    t = _element_log(chi, x)
    lam = np.arange(e)
    return complex(unit_roots(e)[(lam * t) % e].sum())


def incomplete_character_sum(chi: CharacterHandle,
                             elements: Iterable[Union[FieldElement, int]]) -> complex:
    """Sum of chi over a subset of the field, with chi(0) taken as 0."""
    total = 0j
    for x in elements:
        code = x.code if isinstance(x, FieldElement) else int(x)
        if code == 0:
            continue
        total += char_eval(chi, code)
    return complex(total)


# -- the subspace oracle -----------------------------------------------------


def _one_sided_term(spec: CodeSpec, side: int, member_codes: list[int]) -> complex:
    """Gauss-sum expansion of the members supported on one factor only."""
    if side == 1:
        field, e, n_side = spec.field_q1, spec.e1, spec.n1
        Q = spec.Q1
    else:
        field, e, n_side = spec.field_q2, spec.e2, spec.n2
        Q = spec.Q2
    e_prime = math.gcd(e, (Q - 1) // (spec.q - 1))
    total = 0j
    for tau in range(e_prime):
        psi = CharacterHandle(field, e_prime, tau)
        weight = gauss_sum(psi, field.one)
        inner = np.conj(incomplete_character_sum(psi, member_codes))
        total += weight * inner
    return total * spec.n / (e * n_side)


def nj_via_charsum(spec: CodeSpec, basis: SubspaceBasis) -> float:
    """Zero-coordinate count of a subspace through the character-sum route.

    Needs coprime nonzero orders for the doubly-nonzero block; the result
    is real up to IMAG_TOL and equals the integer count exactly in exact
    arithmetic.
    """
    if spec.d != 1:
        raise NonCoprimeOrders(
            "the double character-sum expansion needs gcd(n1, n2) = 1"
        )
    if basis.ambient_dim != spec.ambient_dim:
        raise FieldMismatch("basis is not in the product ambient")
    j = basis.dim
    members = member_matrix(basis)
    only1: list[int] = []
    only2: list[int] = []
    both: list[tuple[int, int]] = []
    for vec in members:
        c1, c2 = spec.pair_from_vector(vec)
        if c1 and c2:
            both.append((c1, c2))
        elif c1:
            only1.append(c1)
        elif c2:
            only2.append(c2)

    a1 = _one_sided_term(spec, 1, only1)
    a2 = _one_sided_term(spec, 2, only2)

    # doubly-nonzero block: double Gauss-sum expansion over character pairs
    # whose product restricts trivially to GF(q)*, tested by the integer
    # congruence rather than by evaluation
    e1, e2 = spec.e1, spec.e2
    step1 = (spec.Q1 - 1) // (spec.q - 1)
    step2 = (spec.Q2 - 1) // (spec.q - 1)
    u2 = pow(spec.gamma2.log, -1, e2) if e2 > 1 else 0
    b_total = 0j
    for lam1 in range(e1):
        chi1 = CharacterHandle(spec.field_q1, e1, lam1)
        g1 = None
        for lam2 in range(e2):
            if (lam1 * e2 * step1 + lam2 * e1 * step2) % (e1 * e2):
                continue
            if g1 is None:
                g1 = gauss_sum(chi1, spec.field_q1.one)
            chi2 = CharacterHandle(spec.field_q2, e2, (lam2 * u2) % e2)
            g2 = gauss_sum(chi2, spec.field_q2.one)
            inner = sum(
                np.conj(char_eval(chi1, c1)) * np.conj(char_eval(chi2, c2))
                for c1, c2 in both
            )
            b_total += g1 * g2 * inner
    b_total /= e1 * e2

    total = (spec.n + a1 + a2 + b_total) / spec.q**j
    if abs(total.imag) > IMAG_TOL:
        raise PrecisionFailure(f"imaginary residue {total.imag} exceeds {IMAG_TOL}")
    return float(total.real)
