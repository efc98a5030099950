"""decept: hide a target community from community-detection algorithms.

The library rewires edges incident to a target node set H so that
detectors stop recovering H as a community, using two greedy strategies
(modularity loss and safeness gain), and measures success with a
deception score computed after re-detection.
"""

from .detection import (
    BACKEND,
    detect,
    detect_greedy_agglomerative,
    detect_label_propagation,
    detect_louvain,
)
from .graph import EdgeUpdate, Graph, apply_update, connected_components, reachable_within
from .graphio import (
    LabelTable,
    PlantedPartitionParams,
    generate_planted_partition,
    load_edge_list,
    load_gml,
    read_reports,
    write_reports,
)
from .harness import (
    DeceptionReport,
    aggregate_reports,
    evaluate,
    select_worst_case_target,
)
from .modularity import (
    LossKind,
    best_update_modularity,
    modularity,
    modularity_loss,
    run_modmin,
)
from .partition import Partition, TargetCommunity, build_partition, refresh_after_update
from .safeness import (
    SafenessBreakdown,
    best_update_safeness,
    community_safeness,
    node_safeness,
    run_safgain,
    safeness_breakdown,
    safeness_gain,
)
from .score import ScoreBreakdown, deception_score

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "DeceptionReport",
    "EdgeUpdate",
    "Graph",
    "LabelTable",
    "LossKind",
    "Partition",
    "PlantedPartitionParams",
    "SafenessBreakdown",
    "ScoreBreakdown",
    "TargetCommunity",
    "aggregate_reports",
    "apply_update",
    "best_update_modularity",
    "best_update_safeness",
    "build_partition",
    "community_safeness",
    "connected_components",
    "deception_score",
    "detect",
    "detect_greedy_agglomerative",
    "detect_label_propagation",
    "detect_louvain",
    "evaluate",
    "generate_planted_partition",
    "load_edge_list",
    "load_gml",
    "modularity",
    "modularity_loss",
    "node_safeness",
    "reachable_within",
    "read_reports",
    "refresh_after_update",
    "run_modmin",
    "run_safgain",
    "safeness_breakdown",
    "safeness_gain",
    "select_worst_case_target",
    "write_reports",
]
