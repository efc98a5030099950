"""Deception score: how well a target set is hidden in a detected partition."""

from dataclasses import dataclass

from .errors import TargetTooSmall
from .graph import Graph, connected_components
from .partition import Partition, TargetCommunity


@dataclass(frozen=True)
class ScoreBreakdown:
    """Score factors; score = reachability * (spread + hiding) / 2.

    components    number of connected components induced by the target
    reachability  1 - (components - 1) / (|H| - 1)
    spread        (touched communities - 1) / |H|
    hiding        1 - mean over touched communities of |C & H| / |C|
    """

    components: int
    reachability: float
    spread: float
    hiding: float
    score: float


def deception_score(
    graph: Graph, partition: Partition, target: TargetCommunity
) -> ScoreBreakdown:
    """Score the target against a detector's output.

    Zero whenever the target is detected exactly as one community, and
    zero whenever every member sits in its own induced component; at best
    the members stay mutually reachable while spread thinly over many
    large communities.
    """
    h = target.members
    if len(h) < 2:
        raise TargetTooSmall(f"target has {len(h)} member(s); need >= 2")
    comps = connected_components(graph, h)
    reachability = 1.0 - (len(comps) - 1) / (len(h) - 1)

    touched = [i for i, c in enumerate(partition.communities) if c & h]
    spread = (len(touched) - 1) / len(h)
    ratio_sum = 0.0
    for i in touched:
        c = partition.communities[i]
        ratio_sum += len(c & h) / len(c)
    hiding = 1.0 - ratio_sum / len(touched)

    score = reachability * 0.5 * (spread + hiding)
    return ScoreBreakdown(
        components=len(comps),
        reachability=reachability,
        spread=spread,
        hiding=hiding,
        score=score,
    )
