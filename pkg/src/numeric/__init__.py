from .modular import mod_inv, mod_sqrt, mod_sqrt_3mod4, cube_root_mod, is_prime, gen_prime
from .fp2 import Fp2, Fp2Element
from .fixed import Fraction64, frac_xor
from .rng import substream, array_stream, derive_seed

__all__ = [
    "mod_inv", "mod_sqrt", "mod_sqrt_3mod4", "cube_root_mod", "is_prime", "gen_prime",
    "Fp2", "Fp2Element", "Fraction64", "frac_xor",
    "substream", "array_stream", "derive_seed",
]
