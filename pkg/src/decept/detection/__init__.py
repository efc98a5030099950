"""Community detection algorithms (the adversary side).

Detectors are pure functions of (graph, seed) returning a Partition; the
registry is a closed enumeration, unknown ids are rejected. New detectors
can be added by conforming to the same callable shape.
"""

from ..graph import Graph
from ..partition import Partition
from .backend import BACKEND
from .greedy import detect_greedy_agglomerative
from .labelprop import detect_label_propagation
from .louvain import detect_louvain

DETECTORS = {
    "louvain": detect_louvain,
    "label_propagation": detect_label_propagation,
    "greedy_agglomerative": lambda graph, seed=0: detect_greedy_agglomerative(graph),
}

# short spellings accepted on the command line
DETECTOR_ALIASES = {
    "louvain": "louvain",
    "labelprop": "label_propagation",
    "label_propagation": "label_propagation",
    "greedy": "greedy_agglomerative",
    "greedy_agglomerative": "greedy_agglomerative",
}


def resolve_detector(name: str) -> str:
    try:
        return DETECTOR_ALIASES[name]
    except KeyError:
        raise ValueError(
            f"unknown detector {name!r}; expected one of "
            f"{sorted(set(DETECTOR_ALIASES))}"
        ) from None


def detect(graph: Graph, detector: str, seed: int = 0) -> Partition:
    return DETECTORS[resolve_detector(detector)](graph, seed=seed)


__all__ = [
    "BACKEND",
    "DETECTORS",
    "DETECTOR_ALIASES",
    "detect",
    "detect_greedy_agglomerative",
    "detect_label_propagation",
    "detect_louvain",
    "resolve_detector",
]
