"""critlab: critical metrics of quadratic curvature functionals on four-dimensional Lie groups."""

__version__ = "0.1.0"

from .algebra import (  # noqa: E402
    LinearMap,
    MetricLieAlgebra,
    abelian,
    change_basis,
    derivation_space,
    dump_metric_spec,
    from_structure_constants,
    is_unimodular,
    jacobi_defect,
    load_metric_spec,
    new_metric_lie_algebra,
    parse_metric_spec,
    scale_structure,
)
from .catalog import (  # noqa: E402
    alias_identifications,
    bach_flat_specials,
    build_instance,
    family_energy,
    family_t,
    get_family,
    list_families,
    sample_instances,
    verify_family,
)
from .criticality import (  # noqa: E402
    Kind,
    critical_tensor,
    energy,
    is_bach_flat,
    is_S_critical,
    is_zero_energy_critical,
    solve_critical_t,
    split_affine,
    zero_energy_t,
)
from .curvature import (  # noqa: E402
    complex_space_form_package,
    curvature_package,
    is_einstein,
    is_flat,
    line_times_spaceform_package,
    product_surfaces_package,
    sectional_curvature,
    space_form_package,
)
from .fingerprint import Fingerprint, distance, distinct, fingerprint  # noqa: E402
from .search import classify_fingerprint, search_critical  # noqa: E402
from .soliton import algebraic_soliton_check, soliton_expected_criticality  # noqa: E402
