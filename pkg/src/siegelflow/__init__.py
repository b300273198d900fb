"""Numerics for the Siegel upper half-space: Iwasawa coordinates, the
invariant measure, corank-1 Eisenstein series, unipotent cell averages
and desk-scale equidistribution experiments."""

from ._errors import (
    AccuracyError,
    ConvergenceRegionError,
    DimensionMismatch,
    NotInParabolic,
    NumericalDegeneracy,
    PoleError,
    ScaleError,
    SiegelflowError,
    TailError,
    ValidationError,
)
from .symplectic import (
    BlockSplit,
    SiegelPoint,
    SymplecticMatrix,
    block_join,
    block_split,
    is_symplectic,
    mobius_act,
    random_integer_symplectic,
    random_siegel_point,
    symplectic_form,
)
from .iwasawa import (
    Corank1Fiber,
    IwasawaCoords,
    corank1_base,
    corank1_embed,
    decompose_symplectic,
    from_coords,
    jacobian,
    measure_density,
    to_coords,
)
from .parabolic import (
    ParabolicElement,
    act_g1,
    act_g2,
    act_g3,
    assemble,
    embed_gamma,
    factor,
)
from .zeta import gamma, siegel_volume, zeta, zeta_star, zeta_zero

__version__ = "0.1.0"
