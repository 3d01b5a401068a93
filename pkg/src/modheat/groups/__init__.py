"""Word arithmetic in PSL2(Z) and its finite quotients PSL2(F_p)."""

from .words import (
    IDENTITY,
    ReducedWord,
    ball,
    ball_size,
    fiber,
    fiber_size,
    inverse,
    multiply,
    orbit_partition,
    pi_project,
    sphere,
    sphere_size,
    swap_b,
    word,
)
from .psl import (
    PslElement,
    SurfaceComplex,
    enumerate_psl,
    generator_images,
    genus,
    is_prime,
    order_psl,
    psl_image,
    surface_complex,
)

__all__ = [
    "IDENTITY",
    "ReducedWord",
    "ball",
    "ball_size",
    "fiber",
    "fiber_size",
    "inverse",
    "multiply",
    "orbit_partition",
    "pi_project",
    "sphere",
    "sphere_size",
    "swap_b",
    "word",
    "PslElement",
    "SurfaceComplex",
    "enumerate_psl",
    "generator_images",
    "genus",
    "is_prime",
    "order_psl",
    "psl_image",
    "surface_complex",
]
