"""Two-term silting complexes, cotorsion pairs, thick and wide subcategories."""

from .algebra import BoundQuiverAlgebra, parse_algebra, serialize_algebra
from .linalg import QQ, Field

__all__ = ["BoundQuiverAlgebra", "Field", "QQ", "parse_algebra", "serialize_algebra"]
