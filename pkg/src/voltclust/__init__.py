"""Voltage-graph analysis and point-group cluster-consensus simulation.

The package splits along the natural seams of the problem:

* :mod:`voltclust.group`    -- finite orthogonal matrix groups with lookup tables
* :mod:`voltclust.graph`    -- simple digraphs, connectivity, cycle reduction
* :mod:`voltclust.voltage`  -- voltage graphs, local groups, balance, partitions
* :mod:`voltclust.derived`  -- covering graphs, components, root connectivity
* :mod:`voltclust.dynamics` -- the clustering ODE, lifted integration, limits
* :mod:`voltclust.oracle`   -- brute-force cross-checks for the test suite
* :mod:`voltclust.instance` -- JSON instance files
* :mod:`voltclust.cli`      -- the ``voltclust`` command
"""

from .derived import (
    DerivedGraph,
    RootConnectivityReport,
    build_derived,
    component_isomorphism,
    root_connectivity_report,
    to_dot,
)
from .dynamics import (
    LiftedResult,
    LimitReport,
    Trajectory,
    derivative,
    predicted_cluster_count,
    resolve_weights,
    simulate,
    simulate_lifted,
    verify_limit,
)
from .graph import (
    BACKWARD,
    FORWARD,
    ConnectivityReport,
    Digraph,
    Walk,
    classify_connectivity,
    cycle_reduction_chain,
    induced_subgraph,
    infer_walk,
    weak_components,
)
from .group import (
    FiniteGroup,
    GroupElement,
    Subgroup,
    canonical_key,
    generate_closure,
    reflection_matrix,
    rotation_matrix,
    standard_point_group,
)
from .instance import Instance, instance_from_dict, load_instance, save_instance
from .voltage import (
    AnalysisReport,
    NetSet,
    VoltageGraph,
    adapted_partition,
    analyze,
    construct_balanced_nondegenerate,
    count_balanced_nondegenerate,
    directed_local_group,
    is_nondegenerate,
    is_structurally_balanced,
    local_group,
    net_set,
    net_set_all,
    net_voltage,
    reachable_states,
    stirling,
    trivial_voltage_graph,
)

__version__ = "0.1.0"
