"""Finite fields and the classical block codes the set constructions are built from."""
from .cyclic import (BCHCode, BinaryBCH, DecodeFailure, bch_systematic, binary_bch,
                     field_code, rs_code, rs_decode)
from .fields import GF2m, GFp, default_modulus, gf2m, is_irreducible, solve_linear
from .greedy import (AddressCode, AddressFamily, constant_weight_greedy, gv_address_code,
                     gv_product_bound)

__all__ = [
    "AddressCode", "AddressFamily", "BCHCode", "BinaryBCH", "DecodeFailure", "GF2m", "GFp",
    "bch_systematic", "binary_bch", "constant_weight_greedy", "default_modulus", "field_code",
    "gf2m", "gv_address_code", "gv_product_bound", "is_irreducible", "rs_code", "rs_decode",
    "solve_linear",
]
