"""Modules over finite linear categories."""

from .module import Module, ModuleMap, direct_sum, zero_module
from .homs import HomSpace, hom_space, hom_dim
from .constructions import (representable, injective_representable, simple, dualize,
                            dualize_map, kernel, image, cokernel, pushout, submodule,
                            quiver_representation)
from .projective import (InducedProjective, Piece, Presentation, projective_cover, syzygy,
                         minimal_presentation, radical_submodule, top, is_fd, is_projective,
                         injective_envelope, FD_UNCLEAR, DEFAULT_MARGIN)
from .decompose import (decompose, end_algebra, find_isomorphism, is_isomorphic,
                        is_indecomposable, ProbablyIndecomposable, Decomposition)
from ..algebra import algebra_radical

__all__ = [
    "Module", "ModuleMap", "direct_sum", "zero_module", "HomSpace", "hom_space", "hom_dim",
    "representable", "injective_representable", "simple", "dualize", "dualize_map",
    "kernel", "image", "cokernel", "pushout", "submodule", "quiver_representation", "InducedProjective", "Piece",
    "Presentation", "projective_cover", "syzygy", "minimal_presentation",
    "radical_submodule", "top", "is_fd", "is_projective", "injective_envelope",
    "FD_UNCLEAR", "DEFAULT_MARGIN", "decompose", "end_algebra", "find_isomorphism",
    "is_isomorphic", "is_indecomposable", "ProbablyIndecomposable", "Decomposition",
    "algebra_radical",
]
