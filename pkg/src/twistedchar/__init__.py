"""Exact characters of GL_mn at twisted elements t . c_n and their factorization."""
from .exactnum import CycloMatrix, CycloNumber, det_exact, lift_conductor, root_of_unity
from .schur import character_at, char_bialternant, char_jacobi_trudi
from .theorem import (
    FactorizationResult,
    VerificationReport,
    factorize,
    kostant_value,
    twisted_character,
    verify_identity,
)
from .weights import TwistedPoint, Weight

__version__ = "0.1.0"
