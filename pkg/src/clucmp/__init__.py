"""Element-centric clustering similarity, classical baselines, and bias probes.

The element-centric measure compares clusterings through the affinity of
each element to all others under a cluster-induced random walk, which
makes it applicable to flat, overlapping, and hierarchical clusterings
alike and lets every disagreement be traced back to specific elements.
Classical pair-counting and information-theoretic measures are included
for comparison, together with seeded generators for the synthetic
scenarios that expose their biases.
"""

from .affinity import (
    AffiliationGraph,
    AffinityRow,
    ElementGraph,
    build_affiliation,
    hierarchy_weight,
    membership_classes,
    ppr_affinity_matrix,
    ppr_partition_analytic,
    ppr_solve,
    project_element_graph,
)
from .baselines import (
    NMI_NORMS,
    ContingencyTable,
    PairCounts,
    adjusted_rand,
    contingency,
    f_measure,
    jaccard,
    mutual_information,
    nmi,
    onmi,
    pair_counts,
    rand_index,
    vi,
)
from .bench import (
    SCENARIO_NAMES,
    ScenarioRow,
    ScenarioTable,
    ZoomRow,
    run_scenario,
    run_zoom,
    zoom_to_csv,
)
from .elementsim import (
    DEFAULT_ALPHA,
    DEFAULT_R,
    ComparisonReport,
    ElementScores,
    agreement,
    element_score_values,
    element_scores,
    frustration,
    rank_distribution,
    similarity,
)
from .errors import (
    ClucmpError,
    CyclicHierarchy,
    DegenerateARI,
    EmptyCluster,
    EmptyInput,
    EmptySet,
    IndivisibleSize,
    MeasureInputUnsupported,
    NoConvergence,
    NonStochasticGraph,
    NoSuchLevel,
    NotAPartition,
    ParseError,
    TooFewClusterings,
    UniverseMismatch,
    UnknownClusterInDAG,
    UnknownMeasure,
    UnknownScenario,
)
from .measures import MEASURE_NAMES, evaluate, evaluate_many
from .model import (
    Clustering,
    ElementUniverse,
    HierarchyDAG,
    build_clustering,
    cluster_size_entropy,
    clustering_from_obj,
    clustering_to_obj,
    load_clustering,
    partition_from_labels,
    rescale_levels,
    root_distances,
    save_clustering,
)
from .synthgen import (
    binary_hierarchy,
    equal_partition,
    level_slice,
    pa_skew,
    random_partition,
    shuffle_memberships,
)

__version__ = "0.1.0"
