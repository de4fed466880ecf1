"""A small five-file dataset with fully hand-computed ground truths.

Layout (output years 2001-2003, lag 1, so staff/funding snapshots fall
in 2000-2002):

* Area A01: U1, U2, U3.  U2 additionally hosts two homonym "Esposito"
  members so one author token stays ambiguous without an override.
* Area A02: U1, U2 qualify; U3 has a single researcher and falls below
  the default staff threshold of 4.
* Journal J3 carries no impact weight (S S skips it with a warning),
  P017 is a non-counted document type, P030 lies outside the output
  years, and P028 has no staff author at all.

Every expected number below is derived by hand in the comments.
"""

from __future__ import annotations

from pathlib import Path

# ---------------------------------------------------------------- staff
# id, surname, first names, rank, university, area (active 1998-2006)
_STAFF = [
    # A01 / U1: 1 FP, 2 AP, 2 RF -> mean staff 5
    ("S001", "Rossi1", "Mario", "FP", "U1", "A01"),
    ("S002", "Bianchi1", "Luca", "AP", "U1", "A01"),
    ("S003", "Verdi1", "Anna", "RF", "U1", "A01"),
    ("S004", "Russo1", "Paolo", "AP", "U1", "A01"),
    ("S005", "Ferrari1", "Elena", "RF", "U1", "A01"),
    # A01 / U2: 1 FP, 2 AP, 2 RF plus the two Espositos below -> 7
    ("S006", "Rossi2", "Mario", "FP", "U2", "A01"),
    ("S007", "Bianchi2", "Luca", "AP", "U2", "A01"),
    ("S008", "Verdi2", "Anna", "RF", "U2", "A01"),
    ("S009", "Russo2", "Paolo", "AP", "U2", "A01"),
    ("S010", "Ferrari2", "Elena", "RF", "U2", "A01"),
    # A01 / U3: 1 FP, 2 AP, 2 RF -> 5
    ("S011", "Rossi3", "Mario", "FP", "U3", "A01"),
    ("S012", "Bianchi3", "Luca", "AP", "U3", "A01"),
    ("S013", "Verdi3", "Anna", "RF", "U3", "A01"),
    ("S014", "Russo3", "Paolo", "AP", "U3", "A01"),
    ("S015", "Ferrari3", "Elena", "RF", "U3", "A01"),
    # A02 / U1: 2 FP, 2 AP, 1 RF -> 5
    ("S016", "Conti1", "Giulia", "FP", "U1", "A02"),
    ("S017", "Greco1", "Marco", "AP", "U1", "A02"),
    ("S018", "Gallo1", "Sara", "RF", "U1", "A02"),
    ("S019", "Costa1", "Luigi", "FP", "U1", "A02"),
    ("S020", "Fontana1", "Carla", "AP", "U1", "A02"),
    # A02 / U2: 2 FP, 2 AP, 1 RF -> 5
    ("S021", "Conti2", "Giulia", "FP", "U2", "A02"),
    ("S022", "Greco2", "Marco", "AP", "U2", "A02"),
    ("S023", "Gallo2", "Sara", "RF", "U2", "A02"),
    ("S024", "Costa2", "Luigi", "FP", "U2", "A02"),
    ("S025", "Fontana2", "Carla", "AP", "U2", "A02"),
    # A02 / U3: a single researcher -> below the threshold of 4
    ("S026", "Moro", "Pia", "RF", "U3", "A02"),
    # The homonym pair: "ESPOSITO,F." matches both
    ("S027", "Esposito", "Franca", "RF", "U2", "A01"),
    ("S028", "Esposito", "Federico", "AP", "U2", "A01"),
]

_AFFILIATIONS = [
    ("Univ. of Alpha", "U1"),
    ("University of Alpha", "U1"),
    ("ALPHA UNIV", "U1"),
    ("Univ. of Beta", "U2"),
    ("University of Beta", "U2"),
    ("Univ. of Gamma", "U3"),
    ("GAMMA UNIVERSITY", "U3"),
]

# J1 weighs 1.5 and J2 0.8 in every output year; J3 is absent.
_JOURNALS = [
    (journal, year, weight)
    for journal, weight in (("J1", 1.5), ("J2", 0.8))
    for year in (2001, 2002, 2003)
]

# Lagged funding window is 2000-2002: U3/A01's 2003 grant lies outside
# it, so PR(U3, A01) = 0 even though funding exists.
_FUNDING = [
    ("U1", "A01", 2001, 120.0),
    ("U1", "A01", 2002, 80.0),
    ("U2", "A01", 2001, 60.0),
    ("U3", "A01", 2003, 40.0),
    ("U1", "A02", 2002, 200.0),
    ("U2", "A02", 2001, 90.0),
]

# pub id, year, doc type, journal, authors, affiliations
_PUBLICATIONS = [
    # A01/U1: 6 J1 articles by two members, 4 J2 solo articles, one
    # non-counted "other", one article in the weightless J3.
    ("P001", 2001, "article", "J1", "ROSSI1,M.;BIANCHI1,L.", "Univ. of Alpha"),
    ("P002", 2002, "article", "J1", "ROSSI1,M.;BIANCHI1,L.", "Univ. of Alpha"),
    ("P003", 2003, "article", "J1", "ROSSI1,M.;BIANCHI1,L.", "Univ. of Alpha"),
    ("P004", 2001, "article", "J1", "ROSSI1,M.;BIANCHI1,L.", "University of Alpha"),
    ("P005", 2002, "article", "J1", "ROSSI1,M.;BIANCHI1,L.", "Univ. of Alpha"),
    ("P006", 2003, "article", "J1", "ROSSI1,M.;BIANCHI1,L.", "Univ. of Alpha"),
    ("P007", 2001, "article", "J2", "VERDI1,A.", "Univ. of Alpha"),
    ("P008", 2002, "article", "J2", "VERDI1,A.", "Univ. of Alpha"),
    ("P009", 2003, "article", "J2", "VERDI1,A.", "University of Alpha"),
    ("P010", 2001, "article", "J2", "VERDI1,A.", "Univ. of Alpha"),
    # A01/U2: 4 J1 reviews with one outside co-author (half credit).
    ("P011", 2001, "review", "J1", "ROSSI2,M.;EXTERNAL,Q.", "Univ. of Beta;Somewhere Else"),
    ("P012", 2002, "review", "J1", "ROSSI2,M.;EXTERNAL,Q.", "Univ. of Beta;Somewhere Else"),
    ("P013", 2003, "review", "J1", "ROSSI2,M.;EXTERNAL,Q.", "Univ. of Beta"),
    ("P014", 2001, "review", "J1", "ROSSI2,M.;EXTERNAL,Q.", "Univ. of Beta"),
    # A01/U3: 2 J2 articles by two members each.
    ("P015", 2001, "article", "J2", "VERDI3,A.;FERRARI3,E.", "Univ. of Gamma"),
    ("P016", 2002, "article", "J2", "VERDI3,A.;FERRARI3,E.", "Univ. of Gamma"),
    # Not counted: wrong document type / weightless journal.
    ("P017", 2002, "other", "J1", "ROSSI1,M.", "Univ. of Alpha"),
    ("P018", 2002, "article", "J3", "BIANCHI1,L.", "ALPHA UNIV"),
    # A02/U1: 5 J1 articles by two members.
    ("P019", 2001, "article", "J1", "CONTI1,G.;GRECO1,M.", "Univ. of Alpha"),
    ("P020", 2002, "article", "J1", "CONTI1,G.;GRECO1,M.", "Univ. of Alpha"),
    ("P021", 2003, "article", "J1", "CONTI1,G.;GRECO1,M.", "Univ. of Alpha"),
    ("P022", 2001, "article", "J1", "CONTI1,G.;GRECO1,M.", "Univ. of Alpha"),
    ("P023", 2002, "article", "J1", "CONTI1,G.;GRECO1,M.", "ALPHA UNIV"),
    # A02/U2: 3 J2 solo articles.
    ("P024", 2001, "article", "J2", "GALLO2,S.", "Univ. of Beta"),
    ("P025", 2002, "article", "J2", "GALLO2,S.", "Univ. of Beta"),
    ("P026", 2003, "article", "J2", "GALLO2,S.", "Univ. of Beta"),
    # A02/U3 (excluded unit) still produces.
    ("P027", 2003, "review", "J2", "MORO,P.", "GAMMA UNIVERSITY"),
    # No staff author at all -> discarded.
    ("P028", 2002, "article", "J1", "NOBODY,X.", "Univ. of Beta"),
    # The ambiguous Esposito token plus a resolved co-author.
    ("P029", 2002, "article", "J1", "ESPOSITO,F.;ROSSI2,M.", "Univ. of Beta"),
    # Outside the output years: never counted.
    ("P030", 2000, "article", "J1", "ROSSI1,M.", "Univ. of Alpha"),
]


def write_demo_dataset(root: Path, skip_staff_ids: frozenset[str] = frozenset()) -> Path:
    """Write the five CSV files under ``root`` and return ``root``.

    ``skip_staff_ids`` omits staff rows, e.g. to starve an area of
    analyzable universities without touching the other files.
    """
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)

    lines = ["staff_id,surname,first_names,rank,university_id,area_id,year_from,year_to"]
    for staff_id, surname, first, rank, uni, area in _STAFF:
        if staff_id in skip_staff_ids:
            continue
        lines.append(f"{staff_id},{surname},{first},{rank},{uni},{area},1998,2006")
    (root / "staff.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    lines = ["raw_pattern,university_id"]
    lines += [f"{pattern},{uni}" for pattern, uni in _AFFILIATIONS]
    (root / "affiliations.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    lines = ["journal_id,year,impact_weight"]
    lines += [f"{j},{y},{w}" for j, y, w in _JOURNALS]
    (root / "journals.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    lines = ["university_id,area_id,year,prin_keur"]
    lines += [f"{u},{a},{y},{k:g}" for u, a, y, k in _FUNDING]
    (root / "funding.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")

    lines = ["pub_id,year,doc_type,journal_id,authors,raw_affiliations"]
    lines += [
        f'{p},{y},{d},{j},"{authors}","{affs}"'
        for p, y, d, j, authors, affs in _PUBLICATIONS
    ]
    (root / "publications.csv").write_text("\n".join(lines) + "\n", encoding="utf-8")
    return root


def write_override_file(path: Path) -> Path:
    """Resolve the ambiguous Esposito token to Franca (S027)."""
    path = Path(path)
    path.write_text("pub_id,author_position,staff_id\nP029,1,S027\n",
                    encoding="utf-8")
    return path


# ------------------------------------------------- expected ground truth
# Staff snapshots are identical across 2000-2002, so means equal the
# headcounts; funding means divide the in-window grants by 3 years.
EXPECTED_INPUTS = {
    ("A01", "U1"): (1.0, 2.0, 2.0, 200.0 / 3.0),   # (120+80+0)/3
    ("A01", "U2"): (1.0, 3.0, 3.0, 20.0),          # (60+0+0)/3; Espositos add AP+RF
    ("A01", "U3"): (1.0, 2.0, 2.0, 0.0),           # 2003 grant outside lag window
    ("A02", "U1"): (2.0, 2.0, 1.0, 200.0 / 3.0),
    ("A02", "U2"): (2.0, 2.0, 1.0, 30.0),
}

# PU / PC / SS without any override:
#   U1/A01: 6 two-author J1 + 4 solo J2 + 1 weightless J3
#           PU 11, PC 6*(2/2)+4+1 = 11, SS 6*1.5+4*0.8 = 12.2
#   U2/A01: 4 half-credit J1 reviews + P029 (only Rossi2 counts: 1/2)
#           PU 5, PC 4*0.5+0.5 = 2.5, SS 4*1.5+1.5 = 7.5
#   U3/A01: 2 two-author J2 articles -> PU 2, PC 2, SS 1.6
#   U1/A02: 5 two-author J1 articles -> PU 5, PC 5, SS 7.5
#   U2/A02: 3 solo J2 articles -> PU 3, PC 3, SS 2.4
EXPECTED_OUTPUTS = {
    ("A01", "U1"): (11.0, 11.0, 12.2),
    ("A01", "U2"): (5.0, 2.5, 7.5),
    ("A01", "U3"): (2.0, 2.0, 1.6),
    ("A02", "U1"): (5.0, 5.0, 7.5),
    ("A02", "U2"): (3.0, 3.0, 2.4),
}

#: With the P029 override applied, Rossi2 + Esposito both count: 2/2
EXPECTED_PC_A01_U2_WITH_OVERRIDE = 3.0

EXPECTED_STAFF_TOTALS = {
    ("A01", "U1"): 5.0, ("A01", "U2"): 7.0, ("A01", "U3"): 5.0,
    ("A02", "U1"): 5.0, ("A02", "U2"): 5.0,
}

#: (area, university) cell kept out of the frontier model
EXPECTED_EXCLUDED = ("A02", "U3")

EXPECTED_DISAMB = {"total": 30, "resolved": 28, "manual": 1,
                   "discarded": 1, "unresolvable": 0}
EXPECTED_DISAMB_WITH_OVERRIDE = {"total": 30, "resolved": 29, "manual": 0,
                                 "discarded": 1, "unresolvable": 0}

EXPECTED_MANUAL_ROW = {"pub_id": "P029", "author_position": 1,
                       "token": "ESPOSITO,F.", "candidates": "S027;S028"}

# Every analyzable unit sits on both frontiers (verified by hand: each
# unit either holds an input minimum, like U3's zero funding, or an
# output maximum per invested input), so all scores are exactly 1,
# thetas are 1, and every area rank is 1.
EXPECTED_EFFICIENT_UNITS = sorted(EXPECTED_INPUTS)

# Dropping PR leaves A01 inputs at (1,2,2)/(1,3,3)/(1,2,2), where U1
# dominates every output: the VRS expansion for U2 is min(11/5, 11/2.5,
# 12.2/7.5) = 12.2/7.5 and for U3 it is 11/2 = 5.5.
EXPECTED_PTE_AFTER_DROP_PR = {
    ("A01", "U1"): 1.0,
    ("A01", "U2"): 7.5 / 12.2,
    ("A01", "U3"): 2.0 / 11.0,
    ("A02", "U1"): 1.0,
    ("A02", "U2"): 0.6,            # min(5/3, 5/3, 7.5/2.4) = 5/3
}

# Before: all rank 1.  After: ranks follow the scores above, so the
# rank deltas are (0,1,2) in A01 and (0,1) in A02.
EXPECTED_SENSITIVITY = {
    "A01": {"changed": 2, "max_delta": 2, "mean_delta": 1.0,
            "median_delta": 1.0, "cv_delta": 0.816496580927726,
            "cv_defined": True, "no_longer_efficient": 2},
    "A02": {"changed": 1, "max_delta": 1, "mean_delta": 0.5,
            "median_delta": 0.5, "cv_delta": 1.0, "cv_defined": True,
            "no_longer_efficient": 1},
}

# Publications-per-staff rankings: A01 2.2 / (5/7) / 0.4 -> 1,2,3 and
# A02 1.0 / 0.6 -> 1,2, against all-1 frontier ranks.
EXPECTED_PARTIAL = {
    "A01": {"changed": 2, "max_delta": 2, "mean_delta": 1.0,
            "median_delta": 1.0, "cv_delta": 0.816496580927726,
            "cv_defined": True},
    "A02": {"changed": 1, "max_delta": 1, "mean_delta": 0.5,
            "median_delta": 0.5, "cv_delta": 1.0, "cv_defined": True},
}

#: university -> summed staff weight over its analyzed cells
EXPECTED_GLOBAL_WEIGHTS = {"U1": 10.0, "U2": 12.0, "U3": 5.0}
