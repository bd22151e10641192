"""Queue layouts of posets: constructions, exact solvers and checks."""

from ._kernels import BACKEND
from .constructions import (
    ConstructionRecord,
    build_antichain_es,
    build_kww,
    build_P,
    build_planar_hp,
    build_R,
    lift_diagonal,
    lift_simple,
)
from .layout import (
    QueueAssignment,
    RainbowWitness,
    exact_queue_number,
    hp_queue_assignment,
    max_rainbow,
    min_queue_partition,
)
from .poset import (
    ChainPartition,
    LinearExtension,
    Poset,
    Realizer,
    compose_parallel,
    compose_series,
    cover_edges,
    dual,
    enumerate_linear_extensions,
    from_relations,
    is_isomorphic,
    is_linear_extension,
    sample_linear_extension,
    width,
)

__version__ = "0.1.0"
