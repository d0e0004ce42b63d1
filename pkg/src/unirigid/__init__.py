"""Universally rigid bar frameworks for vertex-connected graphs."""

from .certificate import (
    RigidityCertificate,
    VerificationReport,
    deserialize,
    equilibrium_residual,
    serialize,
    verify_certificate,
)
from .falsifier import ReflectionWitness, equivalence_and_congruence, reflection_counterexample
from .gale import (
    Configuration,
    GaleData,
    configuration_from_gale,
    construct_universally_rigid_framework,
    gale_from_representation,
    nonzero_null_vector,
    stress_from_gale,
)
from .graph import (
    Graph,
    brute_force_connectivity,
    generate,
    min_separator,
    parse_graph,
    vertex_connectivity,
)
from .numeric import (
    ToleranceProfile,
    maximal_submatrix_regularity,
    null_space_basis,
    numeric_rank,
    symmetric_eigen_bounds,
)
from .ortho import OrthogonalRepresentation, build_orthogonal_representation, check_representation

__version__ = "0.1.0"
