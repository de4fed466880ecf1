"""Output-oriented radial envelopment models and their decomposition.

For DMU 0 with inputs x0 and outputs y0, the expansion factor phi is the
optimum of

    max  phi
    s.t. sum_j lambda_j * x_ij <= x_i0        for each input i
         sum_j lambda_j * y_rj >= phi * y_r0  for each output r
         lambda >= 0
         sum_j lambda_j  = 1   under variable returns to scale
         sum_j lambda_j <= 1   under non-increasing returns to scale
         (unconstrained under constant returns to scale)

Scores are reciprocals: technical efficiency 1/phi_crs, pure technical
efficiency 1/phi_vrs, scale efficiency their ratio.  Comparing the
constant-returns score with the non-increasing-returns score separates
increasing from decreasing returns for scale-inefficient units.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateDmuError,
    InvariantViolationError,
    StructuralError,
)
from .lp import LinearProgram, solve_lp

CRS = "crs"
VRS = "vrs"
NIRS = "nirs"
REGIMES = (CRS, VRS, NIRS)

RTS_CONSTANT = "constant"
RTS_INCREASING = "increasing"
RTS_DECREASING = "decreasing"

#: a DMU counts as efficient when its score reaches 1 - EFFICIENCY_EPS
EFFICIENCY_EPS = 1e-6
RTS_TOL = 1e-6
INTENSITY_TOL = 1e-6
PHI_SNAP_TOL = 1e-9


@dataclass(frozen=True)
class DmuRecord:
    """One decision-making unit: non-negative input and output vectors."""

    dmu_id: str
    inputs: tuple[float, ...]
    outputs: tuple[float, ...]

    def __init__(self, dmu_id, inputs, outputs):
        xin = tuple(float(v) for v in inputs)
        yout = tuple(float(v) for v in outputs)
        for name, vec in (("inputs", xin), ("outputs", yout)):
            if not vec:
                raise StructuralError(f"{dmu_id}: empty {name} vector")
            if not all(np.isfinite(vec)):
                raise StructuralError(f"{dmu_id}: non-finite {name}")
            if any(v < 0 for v in vec):
                raise StructuralError(f"{dmu_id}: negative {name}")
        object.__setattr__(self, "dmu_id", str(dmu_id))
        object.__setattr__(self, "inputs", xin)
        object.__setattr__(self, "outputs", yout)


@dataclass(frozen=True)
class DeaProblem:
    """An ordered set of comparable DMUs with labelled dimensions.

    Every DMU must have at least one strictly positive output; all-zero
    output vectors make the radial expansion unbounded and are rejected
    here (callers exclude and report them beforehand).
    """

    dmus: tuple[DmuRecord, ...]
    input_labels: tuple[str, ...]
    output_labels: tuple[str, ...]

    def __init__(self, dmus, input_labels, output_labels):
        dmus = tuple(dmus)
        input_labels = tuple(str(s) for s in input_labels)
        output_labels = tuple(str(s) for s in output_labels)
        if not dmus:
            raise StructuralError("a DEA problem needs at least one DMU")
        if not input_labels or not output_labels:
            raise StructuralError("input and output labels must be non-empty")
        for d in dmus:
            if len(d.inputs) != len(input_labels):
                raise StructuralError(
                    f"{d.dmu_id}: {len(d.inputs)} inputs, expected {len(input_labels)}"
                )
            if len(d.outputs) != len(output_labels):
                raise StructuralError(
                    f"{d.dmu_id}: {len(d.outputs)} outputs, expected {len(output_labels)}"
                )
            if all(v == 0 for v in d.outputs):
                raise DegenerateDmuError(
                    f"{d.dmu_id}: all outputs are zero; radial expansion undefined"
                )
        ids = [d.dmu_id for d in dmus]
        if len(set(ids)) != len(ids):
            raise StructuralError("duplicate dmu ids")
        object.__setattr__(self, "dmus", dmus)
        object.__setattr__(self, "input_labels", input_labels)
        object.__setattr__(self, "output_labels", output_labels)

    @property
    def n_dmus(self) -> int:
        return len(self.dmus)

    def input_matrix(self) -> np.ndarray:
        return np.array([d.inputs for d in self.dmus], dtype=float)

    def output_matrix(self) -> np.ndarray:
        return np.array([d.outputs for d in self.dmus], dtype=float)

    def drop_input(self, label: str) -> "DeaProblem":
        if label not in self.input_labels:
            raise StructuralError(f"unknown input label {label!r}")
        if len(self.input_labels) < 2:
            raise StructuralError("cannot drop the only input dimension")
        keep = [i for i, lab in enumerate(self.input_labels) if lab != label]
        dmus = [
            DmuRecord(d.dmu_id, [d.inputs[i] for i in keep], d.outputs)
            for d in self.dmus
        ]
        return DeaProblem(dmus, [self.input_labels[i] for i in keep], self.output_labels)


@dataclass(frozen=True)
class EfficiencyResult:
    dmu_id: str
    phi_crs: float
    phi_vrs: float
    phi_nirs: float
    te: float
    pte: float
    se: float
    rts: str
    peers: tuple[tuple[str, float], ...]


def solve_output_oriented(
    problem: DeaProblem, dmu_index: int, regime: str
) -> tuple[float, np.ndarray]:
    """Radial expansion factor and intensity vector for one DMU."""
    if regime not in REGIMES:
        raise StructuralError(f"unknown regime {regime!r}")
    if not 0 <= dmu_index < problem.n_dmus:
        raise StructuralError(f"dmu index {dmu_index} out of range")

    X = problem.input_matrix()
    Y = problem.output_matrix()
    # Divide every dimension by its column maximum before building the
    # tableau.  Each constraint is scaled by a positive constant, so phi
    # and the intensities are untouched, but the simplex then works on
    # O(1) magnitudes and the scores stay invariant to the measurement
    # units of any single input or output.
    x_scale = np.where(X.max(axis=0) > 0.0, X.max(axis=0), 1.0)
    y_scale = np.where(Y.max(axis=0) > 0.0, Y.max(axis=0), 1.0)
    X = X / x_scale
    Y = Y / y_scale
    n = problem.n_dmus
    x0 = X[dmu_index]
    y0 = Y[dmu_index]

    # variables: [phi, lambda_1 .. lambda_n]
    objective = [1.0] + [0.0] * n
    constraints = []
    for i in range(X.shape[1]):
        constraints.append(([0.0] + X[:, i].tolist(), "<=", float(x0[i])))
    for r in range(Y.shape[1]):
        constraints.append(([-float(y0[r])] + Y[:, r].tolist(), ">=", 0.0))
    if regime == VRS:
        constraints.append(([0.0] + [1.0] * n, "=", 1.0))
    elif regime == NIRS:
        constraints.append(([0.0] + [1.0] * n, "<=", 1.0))

    sol = solve_lp(LinearProgram("max", objective, constraints))
    if sol.status == "unbounded":
        raise DegenerateDmuError(
            f"{problem.dmus[dmu_index].dmu_id}: unbounded expansion "
            "(degenerate output vector)"
        )
    if sol.status != "optimal":
        # the DMU itself (lambda = e_dmu, phi = 1) is always feasible
        raise InvariantViolationError(
            f"{problem.dmus[dmu_index].dmu_id}: {regime} model reported "
            f"{sol.status}, which cannot happen for a well-posed problem"
        )
    return float(sol.x[0]), sol.x[1:].copy()


def efficiency_score(phi: float, tol: float = RTS_TOL) -> float:
    """Reciprocal-of-expansion score in (0, 1]."""
    if phi < 1.0 - tol:
        raise InvariantViolationError(
            f"expansion factor {phi} < 1; the DMU is feasible for its own "
            "constraints so this cannot happen"
        )
    return 1.0 / max(phi, 1.0)


def _snap_phi(phi: float, snap_tol: float = PHI_SNAP_TOL) -> float:
    """Collapse sub-tolerance wobble around 1 so that frontier units get
    exactly equal scores (rank ties at the frontier must be exact)."""
    if abs(phi - 1.0) <= snap_tol:
        return 1.0
    return phi


def scores(problem: DeaProblem, regime: str) -> dict[str, float]:
    """Efficiency score per dmu id under one regime."""
    out = {}
    for k, dmu in enumerate(problem.dmus):
        phi, _ = solve_output_oriented(problem, k, regime)
        out[dmu.dmu_id] = efficiency_score(_snap_phi(phi))
    return out


def decompose(
    problem: DeaProblem,
    rts_tol: float = RTS_TOL,
    intensity_tol: float = INTENSITY_TOL,
) -> list[EfficiencyResult]:
    """Full three-model decomposition for every DMU in the problem."""
    results = []
    for k, dmu in enumerate(problem.dmus):
        phi_c, _ = solve_output_oriented(problem, k, CRS)
        phi_n, _ = solve_output_oriented(problem, k, NIRS)
        phi_v, lambdas = solve_output_oriented(problem, k, VRS)

        # The feasible regions nest (VRS within NIRS within CRS), so each
        # later factor bounds the earlier one from below.  Snap sub-tolerance
        # solver wobble onto that ordering; larger gaps mean a solver bug.
        phi_v2 = max(_snap_phi(phi_v), 1.0)
        phi_n2 = max(_snap_phi(phi_n), phi_v2)
        phi_c2 = max(_snap_phi(phi_c), phi_n2)
        if phi_v2 - phi_v > rts_tol or phi_n2 - phi_n > rts_tol or phi_c2 - phi_c > rts_tol:
            raise InvariantViolationError(
                f"{dmu.dmu_id}: expansion factors out of order beyond tolerance "
                f"(crs={phi_c}, nirs={phi_n}, vrs={phi_v})"
            )

        te = efficiency_score(phi_c2)
        te_nirs = efficiency_score(phi_n2)
        pte = efficiency_score(phi_v2)
        se = te / pte
        rts = classify_rts(te, te_nirs, pte, tol=rts_tol)
        peers = tuple(
            (problem.dmus[j].dmu_id, float(lambdas[j]))
            for j in range(problem.n_dmus)
            if lambdas[j] > intensity_tol
        )
        results.append(
            EfficiencyResult(
                dmu_id=dmu.dmu_id,
                phi_crs=phi_c2,
                phi_vrs=phi_v2,
                phi_nirs=phi_n2,
                te=te,
                pte=pte,
                se=se,
                rts=rts,
                peers=peers,
            )
        )
    return results


def classify_rts(
    te_crs: float, te_nirs: float, te_vrs: float, tol: float = RTS_TOL
) -> str:
    """Returns-to-scale class from the three per-regime scores.

    Scale-efficient units are constant; otherwise the non-increasing-returns
    score coincides with the constant-returns score in the increasing region
    and with the variable-returns score in the decreasing region.
    """
    for name, s in (("crs", te_crs), ("nirs", te_nirs), ("vrs", te_vrs)):
        if not 0.0 < s <= 1.0 + tol:
            raise InvariantViolationError(f"{name} score {s} outside (0, 1]")
    if te_crs > te_nirs + tol or te_nirs > te_vrs + tol:
        raise InvariantViolationError(
            f"score ordering violated: crs={te_crs}, nirs={te_nirs}, vrs={te_vrs}"
        )
    if abs(te_crs - te_vrs) <= tol:
        return RTS_CONSTANT
    if abs(te_nirs - te_crs) <= tol:
        return RTS_INCREASING
    if abs(te_nirs - te_vrs) <= tol:
        return RTS_DECREASING
    raise InvariantViolationError(
        "nirs score matches neither the crs nor the vrs score: "
        f"crs={te_crs}, nirs={te_nirs}, vrs={te_vrs}"
    )
