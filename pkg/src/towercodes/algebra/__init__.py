from .field import GF, field_create, field_of_order, is_irreducible, primitive_element, element_order
from .linalg import (AffineSpace, CapExceeded, Empty, affine_solutions, matmul, nullspace, rank, rref,
                     span_basis)
from .series import Series, artin_schreier
from .tower import ExtField, extension_tower
