"""Exact certificates for faithfulness, strong faithfulness and monoidal
splitting in Deligne-type diagram categories and in tilting categories of
SL_2 in positive characteristic."""

from .category import Category, KaroubiCategory, restrict_end_unit
from .certificate import Certificate
from .scalars import FieldSpec, field_make

__version__ = "0.1.0"

__all__ = ["Category", "KaroubiCategory", "restrict_end_unit", "Certificate", "FieldSpec",
           "field_make", "__version__"]
