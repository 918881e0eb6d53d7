"""Support-weight computation for the code pair (C, C').

Three routes are wired together here:

* rghw_bruteforce minimizes the support size over j-dimensional subspaces
  of the flattened pair space whose first projection is injective (those
  are exactly the subspaces of C meeting C' trivially).
* mj_dual_count maximizes, over (k1+k2-j)-dimensional subspaces whose
  second projection is onto, the number of cyclic-group points inside;
  the weight is n minus that maximum.
* closed-form evaluators (closed_forms module) cover three parameter
  families.

Both scans walk subspaces by pivot set, so they partition cleanly across
worker processes with a deterministic merge.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

import numpy as np

from .closed_forms import detect_family, evaluate_closed_form
from .codes import CodeSpec, build_code
from .errors import CapExceeded, HypothesisViolated, RangeError
from .subspaces import (
    SubspaceBasis,
    dual_subspace,
    enumerate_subspaces,
    gaussian_binomial,
    intersect_with_cyclic_group,
    pivot_sets,
)

DEFAULT_ENUM_CAP = 10**8


def subspace_support_size(spec: CodeSpec, basis: SubspaceBasis) -> int:
    """|Supp| of the codeword space spanned by a product-space subspace."""
    if basis.dim == 0:
        return 0
    words = spec.ops.matmul(basis.matrix(), spec.coordinate_functionals.T)
    return int(words.any(axis=0).sum())


def nj_of_subspace(spec: CodeSpec, basis: SubspaceBasis) -> int:
    """Number of coordinates at which the whole subspace vanishes.

    Computed two independent ways (n - |Supp| and the cyclic-group count
    inside the dual) and cross-checked on every call.
    """
    direct = spec.n - subspace_support_size(spec, basis)
    via_dual = intersect_with_cyclic_group(dual_subspace(basis, spec), spec)
    if direct != via_dual:
        raise AssertionError(
            f"zero-coordinate count mismatch: {direct} != {via_dual} for {basis.rows}"
        )
    return direct


# -- partitioned scans -----------------------------------------------------


def _scan_chunk(args) -> tuple[Optional[int], Optional[tuple], int]:
    """Scan one pivot-set chunk; returns (best value, best rows, chunk id).

    mode "min_support" filters to injective-first-projection subspaces and
    minimizes support; "max_group" filters to onto-second-projection
    subspaces and maximizes the cyclic-group count; "min_support_all"
    drops the filter (plain GHW).
    """
    (params, dim, mode, chunk, chunk_id) = args
    spec = build_code(*params)
    ops = spec.ops
    k1, k2 = spec.k1, spec.k2
    best_val: Optional[int] = None
    best_rows: Optional[tuple] = None
    for basis in enumerate_subspaces(spec.ambient_dim, dim, spec.q, chunk):
        mat = basis.matrix()
        if mode == "min_support":
            if ops.rank(mat[:, :k1]) != dim:
                continue
            val = subspace_support_size(spec, basis)
            better = best_val is None or val < best_val
        elif mode == "max_group":
            if ops.rank(mat[:, k1:]) != k2:
                continue
            mask = ops.rows_in_rowspace(mat, basis.pivots, spec.group_vectors)
            val = int(mask.sum())
            better = best_val is None or val > best_val
        else:  # min_support_all
            val = subspace_support_size(spec, basis)
            better = best_val is None or val < best_val
        if better:
            best_val = val
            best_rows = basis.rows
    return best_val, best_rows, chunk_id


def _scan(spec: CodeSpec, dim: int, mode: str, cap: int, workers: int
          ) -> tuple[int, SubspaceBasis]:
    total = gaussian_binomial(spec.ambient_dim, dim, spec.q)
    if total > cap:
        raise CapExceeded(
            f"{total} subspaces of dimension {dim} exceed the cap {cap}"
        )
    params = (spec.q, spec.k1, spec.k2, spec.e1, spec.e2)
    sets = pivot_sets(spec.ambient_dim, dim)
    workers = max(1, workers)
    if workers == 1 or len(sets) <= 1:
        results = [_scan_chunk((params, dim, mode, sets, 0))]
    else:
        nchunks = min(len(sets), workers * 4)
        bounds = np.linspace(0, len(sets), nchunks + 1).astype(int)
        tasks = [
            (params, dim, mode, sets[bounds[i]: bounds[i + 1]], i)
            for i in range(nchunks)
            if bounds[i] < bounds[i + 1]
        ]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_scan_chunk, tasks))
    prefer_max = mode == "max_group"
    best_val: Optional[int] = None
    best_rows: Optional[tuple] = None
    for val, rows, _cid in sorted(results, key=lambda r: r[2]):
        if val is None:
            continue
        if best_val is None or (val > best_val if prefer_max else val < best_val):
            best_val, best_rows = val, rows
    if best_val is None:
        raise RangeError(f"no qualifying subspace of dimension {dim}")
    argbest = SubspaceBasis(spec.q, spec.ambient_dim, best_rows, "product")
    return best_val, argbest


# -- public routes ----------------------------------------------------------


def rghw_bruteforce(spec: CodeSpec, j: int, cap: int = DEFAULT_ENUM_CAP,
                    workers: int = 1) -> int:
    """Definition-level minimum support over subspaces meeting C' trivially."""
    if not 1 <= j <= spec.k1:
        raise RangeError(f"j={j} outside 1..{spec.k1}")
    val, _ = _scan(spec, j, "min_support", cap, workers)
    return val


def ghw_bruteforce(spec: CodeSpec, j: int, cap: int = DEFAULT_ENUM_CAP,
                   workers: int = 1) -> int:
    """Plain generalized Hamming weight (no subcode restriction)."""
    if not 1 <= j <= spec.k1 + spec.k2:
        raise RangeError(f"j={j} outside 1..{spec.k1 + spec.k2}")
    val, _ = _scan(spec, j, "min_support_all", cap, workers)
    return val


@dataclass
class DualCountResult:
    m: int
    n_j: int
    argmax: SubspaceBasis


def mj_dual_count(spec: CodeSpec, j: int, cap: int = DEFAULT_ENUM_CAP,
                  workers: int = 1) -> DualCountResult:
    """Weight via the dual-side maximization: m = n - max |H meet group|.

    H ranges over (k1+k2-j)-dimensional subspaces of the pair space whose
    second projection covers GF(Q2); ties resolve to the first maximizer in
    enumeration order.
    """
    if not 1 <= j <= spec.k1:
        raise RangeError(f"j={j} outside 1..{spec.k1}")
    n_j, argmax = _scan(spec, spec.ambient_dim - j, "max_group", cap, workers)
    return DualCountResult(spec.n - n_j, n_j, argmax)


# -- per-j reports -----------------------------------------------------------


@dataclass
class RouteOutcome:
    m: int
    millis: float
    n_j: Optional[int] = None
    argmax_rows: Optional[tuple] = None

    def as_dict(self, include_millis: bool = False) -> dict:
        out: dict = {"m": self.m}
        if self.n_j is not None:
            out["n_j"] = self.n_j
        if self.argmax_rows is not None:
            out["argmax"] = [list(r) for r in self.argmax_rows]
        if include_millis:
            out["millis"] = round(self.millis, 3)
        return out


@dataclass
class RghwReport:
    spec_summary: dict
    j: int
    routes: dict[str, RouteOutcome] = dc_field(default_factory=dict)

    @property
    def agree(self) -> bool:
        values = {r.m for r in self.routes.values()}
        return len(values) <= 1

    @property
    def millis(self) -> float:
        return sum(r.millis for r in self.routes.values())

    def as_dict(self, include_millis: bool = False) -> dict:
        out = {
            "j": self.j,
            "routes": {
                name: r.as_dict(include_millis) for name, r in self.routes.items()
            },
            "agree": self.agree,
        }
        if include_millis:
            out["millis"] = round(self.millis, 3)
        return out


ROUTE_NAMES = ("bruteforce", "dual_count", "closed_form")


def compute_report(spec: CodeSpec, j: int,
                   routes: Sequence[str] = ROUTE_NAMES,
                   cap: int = DEFAULT_ENUM_CAP,
                   workers: int = 1,
                   strict_routes: bool = False) -> RghwReport:
    """Run the requested routes for one j and bundle the outcomes.

    With strict_routes a closed-form request on a spec outside all three
    families raises; otherwise that route is quietly skipped.
    """
    report = RghwReport(spec.summary(), j)
    for name in routes:
        if name == "bruteforce":
            t0 = time.perf_counter()
            m = rghw_bruteforce(spec, j, cap, workers)
            report.routes[name] = RouteOutcome(m, (time.perf_counter() - t0) * 1e3)
        elif name == "dual_count":
            t0 = time.perf_counter()
            res = mj_dual_count(spec, j, cap, workers)
            report.routes[name] = RouteOutcome(
                res.m, (time.perf_counter() - t0) * 1e3, res.n_j, res.argmax.rows
            )
        elif name == "closed_form":
            family = detect_family(spec.q, spec.k1, spec.k2, spec.e1, spec.e2)
            if family is None:
                if strict_routes:
                    raise HypothesisViolated(
                        "spec parameters match no closed-form family"
                    )
                continue
            t0 = time.perf_counter()
            n_j, m = evaluate_closed_form(
                spec.q, spec.k1, spec.k2, spec.e1, spec.e2, j
            )
            report.routes[name] = RouteOutcome(
                m, (time.perf_counter() - t0) * 1e3, n_j
            )
        else:
            raise RangeError(f"unknown route {name!r}")
    return report
