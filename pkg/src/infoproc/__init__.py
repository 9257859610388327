"""Exact and estimated information-processing measures for discrete
dynamical systems and time-series panels.

The package quantifies memory, transfer, and integration (whole-minus-sum
synergy) — exactly for the 256 elementary cellular automata, via closed
forms in the Langton lambda parameters, over attractor ensembles on finite
rings, and empirically for real-valued panels through a k-nearest-neighbor
estimator — and uses the resulting features to predict Wolfram behavior
classes and to detect dynamical regime shifts.
"""

__version__ = "1.0.0"

from infoproc import kernels  # noqa: F401  (selects compiled or pure backend)
from infoproc.classify import (  # noqa: F401
    bundled_class_table,
    load_class_table,
    nonlocality,
    permutation_baseline,
    predictive_power,
    select_principal,
)
from infoproc.cluster import complete_linkage, export_dendrogram  # noqa: F401
from infoproc.eca import light_cone_map, rule_table, step_ring  # noqa: F401
from infoproc.errors import (  # noqa: F401
    DegenerateDistanceError,
    DomainError,
    FormatError,
    InfoprocError,
    InternalConsistencyError,
    ResourceError,
)
from infoproc.features import (  # noqa: F401
    FeatureDescriptor,
    enumerate_descriptors,
    feature_matrix,
    feature_vector,
    summary_triple,
)
from infoproc.ksg import jitter, ksg_mi  # noqa: F401
from infoproc.langton import (  # noqa: F401
    closed_form_features,
    lambda_predictive_power,
    lambda_profile,
)
from infoproc.measures import (  # noqa: F401
    JointDistribution,
    conditional_entropy,
    entropy,
    mutual_information,
    wms_synergy,
)
from infoproc.pipeline import (  # noqa: F401
    PipelineConfig,
    SeriesPanel,
    detrend,
    load_panel,
    synth_regime,
    trajectory,
    window_features,
)
from infoproc.stationary import (  # noqa: F401
    attractor_ensemble,
    stationary_features,
    transient_features,
)
