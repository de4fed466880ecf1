"""End-to-end orchestration.

Runs disambiguation, builds the per-area variables, solves the frontier
models, and assembles every report table.  Per-area failures (too few
units, degenerate data) are recorded in the report instead of aborting
the remaining areas; corpus-wide problems (a missing snapshot year)
still raise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .analysis import (
    compare_rankings,
    global_index,
    normalize_scores,
    rank,
    sensitivity_drop_input,
    tertile_summary,
)
from .bibliometrics import (
    MatchedCorpus,
    assemble_problem,
    build_input_vector,
    compute_output_vector,
)
from .config import REGIME_ALL, REGIME_CRS, REGIME_VRS, RunConfig
from .dea import CRS, VRS, decompose, scores
from .disambiguation import disambiguate_corpus
from .errors import (
    AreaNotAnalyzableError,
    DegenerateDmuError,
    InvariantViolationError,
)
from .ingest import Corpus

FAILURE_NOT_ANALYZABLE = "not_analyzable"
FAILURE_DEGENERATE = "degenerate_data"
FAILURE_INVARIANT = "internal_invariant"


@dataclass(frozen=True)
class AnalysisReport:
    """Every table the pipeline produces, in emission-ready row form.

    All rows are plain dicts with stable key order; table-level ordering
    is deterministic (areas, then universities, sorted by id).
    """

    config: Mapping[str, object]
    areas_analyzed: tuple[str, ...]
    descriptive_rows: tuple[dict, ...]
    efficiency_rows: tuple[dict, ...]
    tertile_rows: tuple[dict, ...]
    score_rows: tuple[dict, ...]
    global_rows: tuple[dict, ...]
    partial_rows: tuple[dict, ...]
    sensitivity_rows: tuple[dict, ...]
    disambiguation_row: dict
    exclusion_rows: tuple[dict, ...]
    area_failure_rows: tuple[dict, ...]
    warning_rows: tuple[str, ...]
    manual_review_rows: tuple[dict, ...]

    @property
    def fully_successful(self) -> bool:
        return not self.area_failure_rows


def _population_std(values) -> float:
    n = len(values)
    mean = sum(values) / n
    return math.sqrt(sum((v - mean) ** 2 for v in values) / n)


def descriptive_stats(problem, config: RunConfig) -> list[dict]:
    """Per-variable summary over the area's modeled universities."""
    rows = []
    labels = list(config.input_labels) + list(config.output_labels)
    for idx, label in enumerate(labels):
        is_input = idx < len(config.input_labels)
        if is_input:
            col = [d.inputs[idx] for d in problem.dmus]
        else:
            col = [d.outputs[idx - len(config.input_labels)] for d in problem.dmus]
        rows.append({
            "variable": label,
            "n": len(col),
            "mean": sum(col) / len(col),
            "min": min(col),
            "max": max(col),
            "std_dev": _population_std(col),
        })
    return rows


def run_pipeline(
    corpus: Corpus,
    config: RunConfig,
    overrides: Mapping[tuple[str, int], str | None] | None = None,
) -> AnalysisReport:
    """Execute the full study over one corpus and return the report."""
    warnings: list[str] = list(corpus.warnings)

    disamb = disambiguate_corpus(
        corpus.publications, corpus.staff, corpus.affiliations, overrides
    )
    warnings.extend(f"disambiguation: {msg}" for msg in disamb.errors)
    matched = MatchedCorpus(corpus.publications, disamb.assignments,
                            corpus.staff)

    descriptive_rows: list[dict] = []
    efficiency_rows: list[dict] = []
    tertile_rows: list[dict] = []
    score_rows_per_area: dict[str, list[dict]] = {}
    partial_rows: list[dict] = []
    sensitivity_rows: list[dict] = []
    exclusion_rows: list[dict] = []
    area_failure_rows: list[dict] = []
    areas_analyzed: list[str] = []

    pte_by_area: dict[str, dict[str, float]] = {}
    staff_weights: dict[tuple[str, str], float] = {}

    want_crs = config.regime in (REGIME_ALL, REGIME_CRS)
    want_vrs = config.regime in (REGIME_ALL, REGIME_VRS)
    full = config.regime == REGIME_ALL

    for area_id in corpus.staff.area_ids():
        universities = corpus.staff.universities_in_area(area_id)
        inputs = {}
        outputs = {}
        for university_id in universities:
            inputs[university_id] = build_input_vector(
                corpus.staff, corpus.funding, area_id, university_id,
                config.years, config.lag,
            )
            outputs[university_id] = compute_output_vector(
                matched, corpus.journals, area_id, university_id,
                config.years, warnings,
            )
        try:
            problem, excluded = assemble_problem(
                inputs, outputs, area_id,
                min_staff=config.min_staff,
                input_labels=config.input_labels,
                output_labels=config.output_labels,
            )
        except AreaNotAnalyzableError as exc:
            for e in exc.exclusions:
                exclusion_rows.append({
                    "area_id": e.area_id,
                    "university_id": e.university_id,
                    "reason": e.reason,
                    "detail": e.detail,
                })
            area_failure_rows.append({
                "area_id": area_id,
                "reason": FAILURE_NOT_ANALYZABLE,
                "detail": str(exc),
            })
            continue
        for e in excluded:
            exclusion_rows.append({
                "area_id": e.area_id,
                "university_id": e.university_id,
                "reason": e.reason,
                "detail": e.detail,
            })

        try:
            if full:
                results = decompose(problem)
                te = {r.dmu_id: r.te for r in results}
                pte = {r.dmu_id: r.pte for r in results}
                se = {r.dmu_id: r.se for r in results}
                rts = {r.dmu_id: r.rts for r in results}
            else:
                te = scores(problem, CRS) if want_crs else {}
                pte = scores(problem, VRS) if want_vrs else {}
                se = {}
                rts = {}
        except (DegenerateDmuError, InvariantViolationError) as exc:
            reason = (
                FAILURE_DEGENERATE
                if isinstance(exc, DegenerateDmuError)
                else FAILURE_INVARIANT
            )
            area_failure_rows.append({
                "area_id": area_id,
                "reason": reason,
                "detail": str(exc),
            })
            continue

        areas_analyzed.append(area_id)
        for row in descriptive_stats(problem, config):
            descriptive_rows.append({"area_id": area_id, **row})

        unit_ids = [d.dmu_id for d in problem.dmus]
        eps = config.efficiency_eps
        eff_row: dict = {"area_id": area_id, "n_universities": len(unit_ids)}
        if want_crs:
            eff_row["te_mean"] = sum(te.values()) / len(te)
            eff_row["te_efficient"] = sum(
                1 for v in te.values() if v >= 1.0 - eps
            )
        else:
            eff_row["te_mean"] = None
            eff_row["te_efficient"] = None
        if want_vrs:
            eff_row["pte_mean"] = sum(pte.values()) / len(pte)
            eff_row["pte_efficient"] = sum(
                1 for v in pte.values() if v >= 1.0 - eps
            )
        else:
            eff_row["pte_mean"] = None
            eff_row["pte_efficient"] = None
        if full:
            eff_row["se_mean"] = sum(se.values()) / len(se)
            for kind in ("constant", "increasing", "decreasing"):
                eff_row[f"rts_{kind}"] = sum(
                    1 for v in rts.values() if v == kind
                )
        else:
            eff_row["se_mean"] = None
            eff_row["rts_constant"] = None
            eff_row["rts_increasing"] = None
            eff_row["rts_decreasing"] = None
        efficiency_rows.append(eff_row)

        ranking_basis = pte if want_vrs else te
        area_ranks = rank(ranking_basis)
        rows = []
        for university_id in unit_ids:
            rows.append({
                "area_id": area_id,
                "university_id": university_id,
                "te": te.get(university_id),
                "pte": pte.get(university_id),
                "se": se.get(university_id),
                "rts": rts.get(university_id),
                "theta": None,  # filled after cross-area normalization
                "area_rank": area_ranks[university_id],
            })
        score_rows_per_area[area_id] = rows

        if want_vrs:
            summary = tertile_summary(pte, eps=eps)
            tertile_rows.append({
                "area_id": area_id,
                "efficient": summary.efficient_count,
                "inefficient": summary.inefficient_count,
                "t1_n": summary.tertile_sizes[0],
                "t1_mean": summary.tertile_means[0],
                "t2_n": summary.tertile_sizes[1],
                "t2_mean": summary.tertile_means[1],
                "t3_n": summary.tertile_sizes[2],
                "t3_mean": summary.tertile_means[2],
            })
            pte_by_area[area_id] = dict(pte)
            for university_id in unit_ids:
                staff_weights[(university_id, area_id)] = (
                    inputs[university_id].staff_total
                )

        if config.compare_partial and want_vrs:
            productivity = {
                u: outputs[u].pu / inputs[u].staff_total for u in unit_ids
            }
            cmp = compare_rankings(rank(pte), rank(productivity))
            partial_rows.append({
                "area_id": area_id,
                "n_universities": len(unit_ids),
                "changed": cmp.changed,
                "max_delta": cmp.max_delta,
                "mean_delta": cmp.mean_delta,
                "median_delta": cmp.median_delta,
                "cv_delta": cmp.cv_delta,
                "cv_defined": cmp.cv_defined,
            })

        if want_vrs:
            for label in config.drop_inputs:
                result = sensitivity_drop_input(problem, label, eps=eps)
                cmp = result.comparison
                sensitivity_rows.append({
                    "area_id": area_id,
                    "dropped_input": label,
                    "n_universities": len(unit_ids),
                    "changed": cmp.changed,
                    "max_delta": cmp.max_delta,
                    "mean_delta": cmp.mean_delta,
                    "median_delta": cmp.median_delta,
                    "cv_delta": cmp.cv_delta,
                    "cv_defined": cmp.cv_defined,
                    "no_longer_efficient": cmp.no_longer_efficient,
                })

    # Cross-area aggregation on normalized scores.
    global_rows: list[dict] = []
    if pte_by_area:
        thetas = normalize_scores(pte_by_area)
        theta_lookup = {
            (ns.university_id, ns.area_id): ns.theta for ns in thetas
        }
        for area_id, rows in score_rows_per_area.items():
            for row in rows:
                row["theta"] = theta_lookup.get(
                    (row["university_id"], area_id)
                )
        indices, notices = global_index(thetas, staff_weights)
        warnings.extend(notices)
        general_rank = rank({gi.university_id: gi.theta_tot for gi in indices})
        for gi in indices:
            global_rows.append({
                "university_id": gi.university_id,
                "theta_tot": gi.theta_tot,
                "rank": general_rank[gi.university_id],
                "areas_active": len(gi.detail),
                "staff_weight_total": sum(w for (_, _, w) in gi.detail),
            })
        global_rows.sort(key=lambda r: (r["rank"], r["university_id"]))

    score_rows = [
        row
        for area_id in sorted(score_rows_per_area)
        for row in score_rows_per_area[area_id]
    ]

    manual_review_rows = [
        {
            "pub_id": r.pub_id,
            "author_position": r.position,
            "token": r.token_text,
            "candidates": ";".join(r.candidate_ids),
        }
        for r in disamb.manual_review
    ]

    return AnalysisReport(
        config=config.snapshot(),
        areas_analyzed=tuple(areas_analyzed),
        descriptive_rows=tuple(descriptive_rows),
        efficiency_rows=tuple(efficiency_rows),
        tertile_rows=tuple(tertile_rows),
        score_rows=tuple(score_rows),
        global_rows=tuple(global_rows),
        partial_rows=tuple(partial_rows),
        sensitivity_rows=tuple(sensitivity_rows),
        disambiguation_row={
            "total": disamb.stats.total,
            "resolved": disamb.stats.resolved,
            "manual": disamb.stats.manual,
            "discarded": disamb.stats.discarded,
            "unresolvable": disamb.stats.unresolvable,
        },
        exclusion_rows=tuple(exclusion_rows),
        area_failure_rows=tuple(area_failure_rows),
        warning_rows=tuple(sorted(set(warnings))),
        manual_review_rows=tuple(manual_review_rows),
    )
