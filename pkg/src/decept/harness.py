"""Evaluation protocol: detect, pick a worst-case target, deceive within a
budget, re-detect, score.

Every cell of the sweep draws its randomness from seeds derived with
sha256 from (master seed, detector, deceiver, run), so a sweep is
reproducible cell by cell. Detection, target selection and the deceiver
stream depend only on the run index, not the budget: within one run all
budgets (and both deceivers) start from the same partition and the same
hidden target, and a smaller budget applies a prefix of a larger budget's
updates, which makes budget curves paired comparisons.
"""

import hashlib
import random
import statistics
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .detection import detect, resolve_detector
from .errors import DeceptionError, EmptyInput, NoEligibleCommunity
from .graph import Graph
from .modularity import modularity, run_modmin
from .partition import Partition, TargetCommunity, build_partition
from .safeness import community_safeness, run_safgain
from .score import deception_score

DECEIVERS = ("modmin", "safgain")


def derive_seed(*parts) -> int:
    """Deterministic 63-bit seed from the given parts (process-independent)."""
    text = ":".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def select_worst_case_target(
    graph: Graph, partition: Partition, rng: random.Random
) -> TargetCommunity:
    """Pick a detected community (>= 2 members) uniformly as the set to hide.

    With the target equal to a detected community the initial deception
    score is exactly zero, the hardest starting point.
    """
    eligible = [i for i, c in enumerate(partition.communities) if len(c) >= 2]
    if not eligible:
        raise NoEligibleCommunity("no detected community has two or more members")
    choice = eligible[rng.randrange(len(eligible))]
    return TargetCommunity.from_graph(graph, partition.communities[choice])


@dataclass(frozen=True)
class DeceptionReport:
    """One evaluation cell."""

    dataset: str
    detector: str
    deceiver: str
    budget: int
    run: int
    seed: int                   # seed of this cell's deceiver rng stream
    mod_before: float | None
    mod_after: float | None    # modularity of the membership-frozen partition
    saf_before: float | None
    saf_after: float | None
    score_before: float | None
    score_after: float | None  # deception score after re-detection
    updates: tuple
    duration_s: float
    status: str                 # "ok", "truncated" or "failed: <reason>"


def _failed(dataset, detector, deceiver, budget, run, seed, exc, duration):
    return DeceptionReport(
        dataset, detector, deceiver, budget, run, seed,
        None, None, None, None, None, None, (), duration,
        f"failed: {exc}",
    )


def _run_cell(graph, dataset, detector, deceiver, budget, run, master_seed, prep):
    start = time.perf_counter()
    cell_seed = derive_seed(master_seed, detector, deceiver, run, "deceive")
    try:
        if isinstance(prep, Exception):
            raise prep
        partition, target = prep
        mod_before = modularity(partition)
        saf_before = community_safeness(graph, target)
        score_before = deception_score(graph, partition, target).score

        rng = random.Random(cell_seed)
        if deceiver == "modmin":
            result = run_modmin(graph, partition, target, budget, rng)
            frozen = result.partition
        else:
            result = run_safgain(graph, target, budget, rng)
            frozen = build_partition(result.graph, partition.communities)
        new_graph = result.graph
        final_target = TargetCommunity.from_graph(new_graph, target.members)

        # budget-independent: within a run, budgets differ only by the extra
        # updates, so budget curves are paired comparisons
        redetect_seed = derive_seed(master_seed, detector, deceiver, run, "redetect")
        new_partition = detect(new_graph, detector, seed=redetect_seed)
        report = DeceptionReport(
            dataset=dataset,
            detector=detector,
            deceiver=deceiver,
            budget=budget,
            run=run,
            seed=cell_seed,
            mod_before=mod_before,
            mod_after=modularity(frozen),
            saf_before=saf_before,
            saf_after=community_safeness(new_graph, final_target),
            score_before=score_before,
            score_after=deception_score(new_graph, new_partition, final_target).score,
            updates=result.updates,
            duration_s=time.perf_counter() - start,
            status="truncated" if result.truncated else "ok",
        )
        return report
    except DeceptionError as exc:
        return _failed(
            dataset, detector, deceiver, budget, run, cell_seed,
            exc, time.perf_counter() - start,
        )


def evaluate(
    graph: Graph,
    detector: str,
    deceiver: str,
    budgets,
    runs: int,
    seed: int,
    dataset: str = "graph",
    jobs: int = 1,
) -> list:
    """Run the full sweep and return reports in (budget, run) order.

    Per run: detect on the original graph, hide a random detected
    community, apply the deceiver's updates without re-detecting, then
    re-detect once on the rewired graph and score. Failing cells are
    recorded with a failed status instead of aborting the sweep.
    """
    detector = resolve_detector(detector)
    if deceiver not in DECEIVERS:
        raise ValueError(f"unknown deceiver {deceiver!r}; expected one of {DECEIVERS}")
    budgets = list(budgets)
    if runs < 1:
        raise ValueError(f"runs must be >= 1, got {runs}")
    if not budgets or any(b < 1 for b in budgets):
        raise ValueError(f"budgets must be non-empty and >= 1, got {budgets}")

    prep = {}
    for run in range(runs):
        try:
            partition = detect(graph, detector, seed=derive_seed(seed, detector, run, "detect"))
            rng = random.Random(derive_seed(seed, detector, run, "target"))
            target = select_worst_case_target(graph, partition, rng)
            prep[run] = (partition, target)
        except DeceptionError as exc:
            prep[run] = exc

    cells = [(budget, run) for budget in budgets for run in range(runs)]

    def work(cell):
        budget, run = cell
        return _run_cell(graph, dataset, detector, deceiver, budget, run, seed, prep[run])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(work, cells))
    else:
        reports = [work(cell) for cell in cells]
    return reports


@dataclass(frozen=True)
class SummaryRow:
    dataset: str
    detector: str
    deceiver: str
    budget: int
    cells: int
    failures: int
    score_after_mean: float | None
    score_after_std: float | None
    mod_after_mean: float | None
    mod_after_std: float | None
    saf_after_mean: float | None
    saf_after_std: float | None


def _mean_std(values):
    if not values:
        return None, None
    if len(values) == 1:
        return values[0], 0.0
    return statistics.mean(values), statistics.pstdev(values)


def aggregate_reports(reports) -> list:
    """Group means/population-std by (dataset, detector, deceiver, budget).

    Failed cells are excluded from the means and counted separately.
    """
    reports = list(reports)
    if not reports:
        raise EmptyInput("no reports to aggregate")
    groups = {}
    for rep in reports:
        groups.setdefault((rep.dataset, rep.detector, rep.deceiver, rep.budget), []).append(rep)
    rows = []
    for key in sorted(groups):
        members = groups[key]
        ok = [r for r in members if not r.status.startswith("failed")]
        score_mean, score_std = _mean_std([r.score_after for r in ok])
        mod_mean, mod_std = _mean_std([r.mod_after for r in ok])
        saf_mean, saf_std = _mean_std([r.saf_after for r in ok])
        rows.append(
            SummaryRow(
                *key,
                cells=len(members),
                failures=len(members) - len(ok),
                score_after_mean=score_mean,
                score_after_std=score_std,
                mod_after_mean=mod_mean,
                mod_after_std=mod_std,
                saf_after_mean=saf_mean,
                saf_after_std=saf_std,
            )
        )
    return rows
