"""Exact cellular data for wreath products A wr S_n of cellular algebras with symmetric groups."""

from .cellular import CellularDatum, NotCellular, cell_form, cell_module, is_semisimple, verify_cellularity
from .exactalg import QQ, Field, Matrix
from .wreath import WreathDatum, build_wreath

__version__ = "0.1.0"
