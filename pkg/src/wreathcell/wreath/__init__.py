"""The wreath product A wr S_n of a cellular algebra with a symmetric group."""

from .algebra import WreathAlgebra, WreathBasisElement, pure_product_symbolic
from .build import CapExceeded, Caps, WreathDatum, build_wreath, wreath_inflation
from .diagrams import HalfDiagram, LayerTriple, half_diagram, half_diagrams, layer_decompose, recompose, theta_phi
from .theta import (
    AlgebraModule,
    GroupModule,
    ThetaModule,
    theta_action_symbolic,
    theta_cyclic_check,
    theta_generator,
    theta_module,
)
from .reports import (
    CellDecomposition,
    OracleMismatch,
    SemisimplicityReport,
    SimpleReport,
    cell_module_report,
    delta_equals_simple,
    dominance_order_report,
    order_violations,
    semisimplicity_report,
    simple_report,
)
from .reports import WreathReport, datum_digest, wreath_report
