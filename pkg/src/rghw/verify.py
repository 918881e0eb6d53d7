"""Cross-validation suites behind the `verify` command.

Each suite sweeps one layer of the package and returns a SuiteResult with
a check count and the list of failures (empty when everything holds).
The default instance grid keeps code dimension at 5 so every sweep is
exhaustive at desk scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Optional, Sequence

import numpy as np

from .charsum import (
    CharacterHandle,
    _exp_np,
    gauss_sum,
    nj_via_charsum,
    orthogonality_sum,
    prime_trace_table,
    unit_roots,
)
from .closed_forms import detect_family, evaluate_closed_form
from .codes import (
    CodeSpec,
    build_code,
    codeword,
    parity_check_polynomial,
    subcode_codeword,
)
from .gf import FieldTable, build_field, element_order, embed_subfield, minimal_polynomial, trace
from .subspaces import (
    dual_subspace,
    enumerate_subspaces,
    gaussian_binomial,
    intersect_with_cyclic_group,
    project,
    subspace_from_rows,
)
from .weights import ghw_bruteforce, mj_dual_count, nj_of_subspace, rghw_bruteforce

DEFAULT_INSTANCES = ((2, 2, 3, 1, 1), (2, 3, 2, 1, 1), (3, 2, 3, 1, 2))
GAUSS_MAX_FIELD = 81
GAUSS_TOL = 1e-9
ORACLE_TOL = 1e-6


@dataclass
class SuiteResult:
    name: str
    checks: int = 0
    failures: list[str] = dc_field(default_factory=list)
    notes: dict = dc_field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, message: str) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(message)

    def as_dict(self) -> dict:
        return {
            "suite": self.name,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures[:20],
            "notes": self.notes,
        }


def _prime_powers(limit: int) -> list[int]:
    out = []
    for s in range(2, limit + 1):
        p = 2
        while p * p <= s:
            if s % p == 0:
                break
            p += 1
        else:
            p = s
        v = s
        while v % p == 0:
            v //= p
        if v == 1:
            out.append(s)
    return out


# -- gf ---------------------------------------------------------------------


def gf_suite() -> SuiteResult:
    res = SuiteResult("gf")
    pairs = [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (2, 6)]
    for p, m in pairs:
        f = build_field(p, m)
        size = f.size
        res.check(
            all(
                f.mul(f.exp_table[i], f.exp_table[k])
                == f.exp_table[(i + k) % f.order]
                for i in range(f.order)
                for k in range(0, f.order, max(1, f.order // 7))
            ),
            f"GF({size}): exp table is not a group homomorphism",
        )
        res.check(
            all(f.log_table[f.exp_table[i]] == i for i in range(f.order)),
            f"GF({size}): log/exp are not inverse",
        )
        # Zech addition against digitwise addition, exhaustively
        res.check(
            all(
                f.add(a, b) == f.add_codes_digitwise(a, b)
                for a in range(size)
                for b in range(size)
            ),
            f"GF({size}): Zech addition disagrees with digitwise addition",
        )
        base = build_field(p, 1)
        emb = embed_subfield(base, f)
        zeros = sum(1 for a in f.elements() if trace(f, base, a).is_zero)
        res.check(
            zeros == size // p, f"GF({size}): trace-zero count {zeros} != {size // p}"
        )
        # linearity and Frobenius invariance of the trace, exhaustive on pairs
        ok_lin = all(
            trace(f, base, a + b) == trace(f, base, a) + trace(f, base, b)
            for a in f.elements()
            for b in list(f.elements())[:: max(1, size // 9)]
        )
        res.check(ok_lin, f"GF({size}): trace is not additive")
        ok_frob = all(
            trace(f, base, a**p) == trace(f, base, a) for a in f.elements()
        )
        res.check(ok_frob, f"GF({size}): trace is not Frobenius invariant")
        ok_scale = all(
            trace(f, base, emb.apply(c) * a) == c * trace(f, base, a)
            for c in base.elements()
            for a in list(f.elements())[:: max(1, size // 9)]
        )
        res.check(ok_scale, f"GF({size}): trace is not base-linear")
    # minimal polynomials: root, degree = orbit size, irreducibility by the
    # conjugate-product construction itself
    f16 = build_field(2, 4)
    f2 = build_field(2, 1)
    for a in f16.elements():
        if a.is_zero:
            continue
        mp = minimal_polynomial(a, f2)
        res.check(mp.evaluate(a).is_zero, f"minpoly({a}) does not kill its root")
        res.check(4 % mp.degree == 0, f"minpoly({a}) degree {mp.degree} invalid")
    res.check(element_order(build_field(2, 3).generator) == 7, "GF(8)* generator order")
    res.check(
        element_order(build_field(3, 2).generator ** 2) == 4, "order of g^2 in GF(9)"
    )
    return res


# -- codes --------------------------------------------------------------------


def _all_codewords(spec: CodeSpec) -> dict[tuple[int, ...], tuple[int, int]]:
    words = {}
    for b1 in range(spec.Q1):
        for b2 in range(spec.Q2):
            words[codeword(spec, b1, b2).coords] = (b1, b2)
    return words


def codes_suite(instances: Sequence[tuple] = DEFAULT_INSTANCES) -> SuiteResult:
    res = SuiteResult("codes")
    for params in instances:
        spec = build_code(*params)
        label = f"{params}"
        res.check(
            spec.Q1 - 1 == spec.e1 * spec.n1 and spec.Q2 - 1 == spec.e2 * spec.n2,
            f"{label}: index-order identity broken",
        )
        res.check(
            spec.n * spec.d == spec.n1 * spec.n2, f"{label}: length identity broken"
        )
        delta1 = spec.embed1.preimage(spec.gamma1 ** ((spec.Q1 - 1) // (spec.q - 1)))
        delta2 = spec.embed2.preimage(spec.gamma2 ** ((spec.Q2 - 1) // (spec.q - 1)))
        res.check(delta1 == delta2 == spec.delta, f"{label}: delta compatibility broken")
        words = _all_codewords(spec)
        res.check(
            len(words) == spec.Q1 * spec.Q2, f"{label}: codeword map is not injective"
        )
        word_set = set(words)
        shifts_ok = all(w[1:] + w[:1] in word_set for w in word_set)
        res.check(shifts_ok, f"{label}: cyclic shift closure fails")
        subwords = {subcode_codeword(spec, b2).coords for b2 in range(spec.Q2)}
        res.check(subwords <= word_set, f"{label}: C' not contained in C")
        periodic = all(
            w[i] == w[(i + spec.n2) % spec.n]
            for w in subwords
            for i in range(spec.n)
        )
        res.check(periodic, f"{label}: subcode words not n2-periodic")
        h = parity_check_polynomial(spec)
        res.check(
            h.degree == spec.k1 + spec.k2, f"{label}: parity-check degree wrong"
        )
        recur = _recurrence_annihilates(spec, h, word_set)
        res.check(recur, f"{label}: parity-check recurrence fails on some word")
        # repetition structure of one-sided words
        rep_ok = True
        for b1 in range(1, spec.Q1):
            w = codeword(spec, b1, 0).coords
            if any(w[i] != w[(i + spec.n1) % spec.n] for i in range(spec.n)):
                rep_ok = False
        res.check(rep_ok, f"{label}: one-sided words not n1-periodic")
    return res


def _recurrence_annihilates(spec: CodeSpec, h, word_set) -> bool:
    """Apply the reversed-coefficient recurrence cyclically to every word."""
    f = spec.field_q
    k = h.degree
    coeffs = h.coeffs
    for w in word_set:
        for i in range(spec.n):
            acc = 0
            for t in range(k + 1):
                acc = f.add(acc, f.mul(coeffs[k - t], w[(i + t) % spec.n]))
            if acc:
                return False
    return True


# -- subspaces -----------------------------------------------------------------


def subspaces_suite(seed: int = 2024,
                    instances: Sequence[tuple] = DEFAULT_INSTANCES,
                    max_dim: int = 6,
                    roundtrips: int = 1000) -> SuiteResult:
    res = SuiteResult("subspaces")
    for q in (2, 3):
        for k in range(1, max_dim + 1):
            for j in range(0, k + 1):
                seen = set()
                count = 0
                for basis in enumerate_subspaces(k, j, q):
                    count += 1
                    seen.add(basis.rows)
                expected = gaussian_binomial(k, j, q)
                res.check(
                    count == expected and len(seen) == expected,
                    f"q={q} k={k} j={j}: enumeration count {count} != {expected}",
                )
    # duality round-trips on seeded random subspaces of the product ambients
    specs = [build_code(*params) for params in instances]
    rng = np.random.default_rng([seed, 1])
    per_spec = max(1, roundtrips // len(specs))
    for spec in specs:
        K = spec.ambient_dim
        for _ in range(per_spec):
            j = int(rng.integers(0, K + 1))
            rows = rng.integers(0, spec.q, size=(j, K))
            H = subspace_from_rows(spec.q, K, rows, "product")
            dual = dual_subspace(H, spec)
            res.check(
                dual.dim == K - H.dim,
                f"{spec}: dual dimension {dual.dim} != {K - H.dim}",
            )
            res.check(
                dual_subspace(dual, spec).rows == H.rows,
                f"{spec}: double dual differs from H",
            )
    # projection rank-nullity and the three intersection characterizations
    spec = specs[0]
    K, k1, k2 = spec.ambient_dim, spec.k1, spec.k2
    ops = spec.ops
    eye2 = np.zeros((k2, K), dtype=np.int16)
    for t in range(k2):
        eye2[t, k1 + t] = 1
    for j in range(0, K + 1):
        for H in enumerate_subspaces(K, j, spec.q, ambient="product"):
            image1, kernel1 = project(H, k1, k2, 1)
            res.check(
                image1.dim + kernel1.dim == H.dim,
                f"j={j}: projection rank-nullity fails for {H.rows}",
            )
            stacked = np.vstack([H.matrix(), eye2])
            inter_dim = H.dim + k2 - ops.rank(stacked)
            p_a = inter_dim == 0
            p_b = kernel1.dim == 0
            image2_dual, _ = project(dual_subspace(H, spec), k1, k2, 2)
            p_c = image2_dual.dim == k2
            res.check(
                p_a == p_b == p_c,
                f"j={j}: intersection predicates disagree for {H.rows}",
            )
    return res


# -- weights --------------------------------------------------------------------


def weights_suite(seed: int = 2024,
                  instances: Sequence[tuple] = DEFAULT_INSTANCES,
                  workers: int = 1) -> SuiteResult:
    res = SuiteResult("weights")
    rng = np.random.default_rng([seed, 2])
    for params in instances:
        spec = build_code(*params)
        label = f"{params}"
        previous = None
        for j in range(1, spec.k1 + 1):
            brute = rghw_bruteforce(spec, j, workers=workers)
            dual = mj_dual_count(spec, j, workers=workers)
            res.check(
                brute == dual.m,
                f"{label} j={j}: bruteforce {brute} != dual count {dual.m}",
            )
            res.check(
                dual.n_j == intersect_with_cyclic_group(dual.argmax, spec),
                f"{label} j={j}: argmax does not reproduce N_j",
            )
            ghw = ghw_bruteforce(spec, j, workers=workers)
            res.check(
                ghw <= brute, f"{label} j={j}: GHW {ghw} exceeds RGHW {brute}"
            )
            if previous is not None:
                res.check(
                    previous < brute,
                    f"{label} j={j}: weights not strictly increasing",
                )
            previous = brute
        # proof-chain identity on random subspaces (the call itself asserts
        # the two counting routes agree)
        for _ in range(25):
            j = int(rng.integers(0, spec.k1 + 1))
            rows = rng.integers(0, spec.q, size=(j, spec.ambient_dim))
            D = subspace_from_rows(spec.q, spec.ambient_dim, rows, "product")
            value = nj_of_subspace(spec, D)
            res.check(
                0 <= value <= spec.n, f"{label}: zero count {value} out of range"
            )
    return res


# -- gauss / charsum ---------------------------------------------------------


def gauss_value_table(field: FieldTable) -> np.ndarray:
    """G(chi_lam; g^b) for all lam, b in [0, size-1), as one complex matrix."""
    order = field.order
    t = np.arange(order)
    roots = unit_roots(order)
    w = roots[np.outer(t, t) % order]
    additive = unit_roots(field.p)[prime_trace_table(field)[_exp_np(field)[t]]]
    shifted = additive[(t[:, None] + t[None, :]) % order]
    return w @ shifted


def gauss_suite(max_size: int = GAUSS_MAX_FIELD, seed: int = 2024) -> SuiteResult:
    res = SuiteResult("gauss")
    rng = np.random.default_rng([seed, 3])
    worst = 0.0
    for size in _prime_powers(max_size):
        p, m = _factor(size)
        field = build_field(p, m)
        order = size - 1
        table = gauss_value_table(field)
        t = np.arange(order)
        w = unit_roots(order)[np.outer(t, t) % order]
        if order > 1:
            lhs = table[1:, :]
            rhs = np.conj(w[1:, :]) * table[1:, :1]
            diff = float(np.abs(lhs - rhs).max())
            worst = max(worst, diff)
            res.check(
                diff < GAUSS_TOL, f"GF({size}): twist identity residual {diff}"
            )
            moduli = np.abs(table[1:, 0])
            mdiff = float(np.abs(moduli - math.sqrt(size)).max())
            worst = max(worst, mdiff)
            res.check(
                mdiff < GAUSS_TOL, f"GF({size}): |G| deviates from sqrt(q) by {mdiff}"
            )
        complete = w.sum(axis=1)
        res.check(
            complete[0] == complex(order),
            f"GF({size}): complete trivial sum not exactly q-1",
        )
        if order > 1:
            cdiff = float(np.abs(complete[1:]).max())
            worst = max(worst, cdiff)
            res.check(
                cdiff < GAUSS_TOL, f"GF({size}): nontrivial complete sum residual {cdiff}"
            )
        res.check(
            gauss_sum(CharacterHandle(field, 1, 0), 0) == complex(order),
            f"GF({size}): scalar trivial Gauss sum at beta=0 not exact",
        )
        # scalar op agrees with the vectorized table on random entries
        for _ in range(min(8, order)):
            lam = int(rng.integers(0, order))
            b = int(rng.integers(0, order))
            chi = CharacterHandle(field, order, lam)
            val = gauss_sum(chi, field.from_log(b))
            res.check(
                abs(val - table[lam, b]) < 1e-10,
                f"GF({size}): scalar/table Gauss sums differ at ({lam},{b})",
            )
        # orthogonality relations for every divisor of the group order
        for e in _divisors(order):
            sums = unit_roots(e)[
                np.outer(np.arange(e), t) % e
            ].sum(axis=0)
            target = np.where(t % e == 0, float(e), 0.0)
            odiff = float(np.abs(sums - target).max())
            worst = max(worst, odiff)
            res.check(
                odiff < GAUSS_TOL,
                f"GF({size}) e={e}: orthogonality residual {odiff}",
            )
        # scalar orthogonality op on a few points, largest two divisors
        for e in _divisors(order)[-2:]:
            alpha = field.generator**e
            for _ in range(3):
                x = field.from_log(int(rng.integers(0, order)))
                val = orthogonality_sum(x, alpha, e)
                want = e if x.log % e == 0 else 0
                res.check(
                    abs(val - want) < GAUSS_TOL,
                    f"GF({size}): scalar orthogonality at e={e} off",
                )
    res.notes["max_residual"] = worst
    return res


def _factor(size: int) -> tuple[int, int]:
    p = 2
    while p * p <= size:
        if size % p == 0:
            break
        p += 1
    else:
        p = size
    m = 0
    v = size
    while v % p == 0:
        v //= p
        m += 1
    return p, m


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def charsum_suite(seed: int = 2024, samples: int = 100,
                  instances: Sequence[tuple] = DEFAULT_INSTANCES) -> SuiteResult:
    res = SuiteResult("charsum")
    worst = 0.0
    usable = [p for p in instances if math.gcd(*_orders(p)) == 1]
    for params in usable:
        spec = build_code(*params)
        rng = np.random.default_rng([seed, 4, *params])
        for i in range(samples):
            j = 1 + i % spec.k1
            rows = rng.integers(0, spec.q, size=(j, spec.ambient_dim))
            D = subspace_from_rows(spec.q, spec.ambient_dim, rows, "product")
            target = nj_of_subspace(spec, D)
            value = nj_via_charsum(spec, D)
            diff = abs(value - target)
            worst = max(worst, diff)
            res.check(
                diff < ORACLE_TOL,
                f"{params}: oracle residual {diff} at subspace {D.rows}",
            )
    res.notes["max_residual"] = worst
    res.notes["instances"] = [list(p) for p in usable]
    return res


def _orders(params: tuple) -> tuple[int, int]:
    q, k1, k2, e1, e2 = params
    return (q**k1 - 1) // e1, (q**k2 - 1) // e2


# -- closed forms ---------------------------------------------------------------


def closed_forms_suite(workers: int = 1) -> SuiteResult:
    res = SuiteResult("closed_forms")
    cases = [
        (2, 2, 3, 1, 1),
        (2, 3, 2, 1, 1),
        (2, 2, 5, 1, 1),
        (2, 3, 4, 1, 1),
        (3, 2, 3, 1, 2),
        (3, 3, 2, 2, 1),
    ]
    for params in cases:
        q, k1, k2, e1, e2 = params
        family = detect_family(q, k1, k2, e1, e2)
        res.check(family is not None, f"{params}: no family detected")
        if family is None:
            continue
        spec = build_code(*params)
        for j in range(1, k1 + 1):
            n_j, m_j = evaluate_closed_form(q, k1, k2, e1, e2, j)
            res.check(
                n_j > 0 and m_j > 0, f"{params} j={j}: nonpositive closed form"
            )
            brute = rghw_bruteforce(spec, j, workers=workers)
            dual = mj_dual_count(spec, j, workers=workers)
            res.check(
                m_j == brute == dual.m,
                f"{params} j={j}: closed form {m_j} vs brute {brute} vs dual {dual.m}",
            )
            res.check(
                n_j == dual.n_j,
                f"{params} j={j}: closed-form N {n_j} vs dual N {dual.n_j}",
            )
    return res


SUITES = {
    "gf": gf_suite,
    "codes": codes_suite,
    "subspaces": subspaces_suite,
    "weights": weights_suite,
    "gauss": gauss_suite,
    "charsum": charsum_suite,
    "closed_forms": closed_forms_suite,
}


def run_suites(names: Optional[Iterable[str]] = None, seed: int = 2024,
               samples: int = 100, workers: int = 1) -> list[SuiteResult]:
    chosen = list(names) if names else list(SUITES)
    out = []
    for name in chosen:
        if name not in SUITES:
            raise KeyError(name)
        if name == "charsum":
            out.append(charsum_suite(seed=seed, samples=samples))
        elif name == "subspaces":
            out.append(subspaces_suite(seed=seed))
        elif name == "weights":
            out.append(weights_suite(seed=seed, workers=workers))
        elif name == "gauss":
            out.append(gauss_suite(seed=seed))
        elif name == "closed_forms":
            out.append(closed_forms_suite(workers=workers))
        else:
            out.append(SUITES[name]())
    return out
