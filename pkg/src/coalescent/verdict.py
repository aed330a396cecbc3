"""Contractibility evidence and the non-coalescence verdict.

A finite contractible complex in which every point has the star-disk property
admits no contraction with opening time 0, hence no coalescent contraction.
A collapsible complex has one (each collapse sequence yields it).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .collapse import CollapseSequence, Status, exhaustive_collapse, free_faces, greedy_collapse
from .complex import SimplicialComplex, census
from .errors import DimensionTooHigh
from .fundamental_group import Pi1Verdict, pi1_presentation, simplify_presentation
from .homology import HomologyProfile, homology
from .stardisk import StarDiskReport, star_disk_report


@dataclass(frozen=True)
class Budgets:
    collapse_nodes: int = 20_000
    random_restarts: int = 3
    pi1_steps: int = 10_000
    seed: int = 0


class Evidence(enum.Enum):
    COLLAPSIBLE = "collapsible"
    HOMOTOPY_TRIVIAL = "homotopy-trivial"
    INCONCLUSIVE = "inconclusive"


class Conclusion(enum.Enum):
    NO_COALESCENT_CONTRACTION = "no-coalescent-contraction"
    COALESCENT_CONTRACTION_EXISTS = "coalescent-contraction-exists"
    INCONCLUSIVE = "inconclusive"


@dataclass(frozen=True)
class EvidenceReport:
    evidence: Evidence
    collapse: str  # "yes", "no" or "unknown"
    sequence: CollapseSequence | None = None
    homology: HomologyProfile | None = None
    pi1: Pi1Verdict | None = None


@dataclass(frozen=True)
class Verdict:
    star_disk_all: bool
    free_face_count: int
    collapsible: str
    contractible_evidence: Evidence
    conclusion: Conclusion
    witness: CollapseSequence | None = None
    star_disk: StarDiskReport | None = None
    homology: HomologyProfile | None = None
    pi1: Pi1Verdict | None = None
    notes: tuple = field(default=())

    @property
    def opening_time_positive(self) -> bool:
        """Every contraction has opening time > 0 (so none is coalescent)."""
        return self.conclusion is Conclusion.NO_COALESCENT_CONTRACTION


def search_collapse(c: SimplicialComplex, budgets: Budgets) -> tuple:
    """Return ("yes", sequence), ("no", None) or ("unknown", None)."""
    if c.dim > 2:
        raise DimensionTooHigh("collapse evidence targets 2-complexes")
    attempts = [greedy_collapse(c, "lex")]
    attempts += [greedy_collapse(c, "random", budgets.seed + i) for i in range(budgets.random_restarts)]
    for out in attempts:
        if out.collapsible:
            return "yes", out.sequence
    out = exhaustive_collapse(c, budgets.collapse_nodes)
    if out.collapsible:
        return "yes", out.sequence
    if out.status is Status.NOT_COLLAPSIBLE:
        return "no", None
    return "unknown", None


def contractibility_evidence(c: SimplicialComplex, budgets: Budgets | None = None) -> EvidenceReport:
    budgets = budgets or Budgets()
    answer, seq = search_collapse(c, budgets)
    if answer == "yes":
        return EvidenceReport(Evidence.COLLAPSIBLE, answer, seq)
    h = homology(c)
    if not census(c).connected:
        return EvidenceReport(Evidence.INCONCLUSIVE, answer, None, h, None)
    _, pi1 = simplify_presentation(pi1_presentation(c), budgets.pi1_steps)
    if h.is_trivial() and pi1 is Pi1Verdict.TRIVIAL:
        return EvidenceReport(Evidence.HOMOTOPY_TRIVIAL, answer, None, h, pi1)
    return EvidenceReport(Evidence.INCONCLUSIVE, answer, None, h, pi1)


def coalescence_verdict(c: SimplicialComplex, budgets: Budgets | None = None) -> Verdict:
    budgets = budgets or Budgets()
    if c.dim > 2:
        raise DimensionTooHigh("verdicts target 2-complexes")
    report = star_disk_report(c)
    n_free = len(free_faces(c))
    ev = contractibility_evidence(c, budgets)
    notes = []
    if ev.collapse == "yes":
        conclusion = Conclusion.COALESCENT_CONTRACTION_EXISTS
        notes.append("a collapse sequence yields a coalescent contraction")
    elif report.all_hold and ev.evidence is not Evidence.INCONCLUSIVE:
        conclusion = Conclusion.NO_COALESCENT_CONTRACTION
        notes.append("opening time > 0 for every contraction")
    else:
        conclusion = Conclusion.INCONCLUSIVE
        if not report.all_hold:
            notes.append("star-disk property fails at: " + ", ".join(
                c.format_simplex(p) for p in report.failing_points()))
        if ev.evidence is Evidence.INCONCLUSIVE:
            notes.append("contractibility not established")
    return Verdict(report.all_hold, n_free, ev.collapse, ev.evidence, conclusion,
                   ev.sequence, report, ev.homology, ev.pi1, tuple(notes))
