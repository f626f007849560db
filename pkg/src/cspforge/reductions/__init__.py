from .basic import fold_vertex_weighting, scale_to_integers, strip_unused
from .binarize import binarize_backward, binarize_build, binarize_forward
from .devertex import devertex_backward, devertex_forward
from .digraphs import DigraphProblem, count_homomorphisms, to_digraphs
from .pipeline import PipelineResult, StepRecord, pipeline, projected_sizes
from .product import build_product_function, product_backward, product_forward
from .result import Certificate, IdenticallyZero, ReductionResult, Transformed
from .unweight import build_gamma, unweight_backward, unweight_forward

FORWARD = {
    "strip": strip_unused,
    "scale": scale_to_integers,
    "fold": fold_vertex_weighting,
    "unweight": unweight_forward,
    "product": product_forward,
    "binarize": binarize_forward,
    "devertex": devertex_forward,
}

BACKWARD = {
    "unweight-back": ("unweight", unweight_backward),
    "product-back": ("product", product_backward),
    "binarize-back": ("binarize", binarize_backward),
    "devertex-back": ("devertex", devertex_backward),
}

__all__ = [
    "BACKWARD",
    "FORWARD",
    "Certificate",
    "DigraphProblem",
    "IdenticallyZero",
    "PipelineResult",
    "ReductionResult",
    "StepRecord",
    "Transformed",
    "binarize_backward",
    "binarize_build",
    "binarize_forward",
    "build_gamma",
    "build_product_function",
    "count_homomorphisms",
    "devertex_backward",
    "devertex_forward",
    "fold_vertex_weighting",
    "pipeline",
    "product_backward",
    "product_forward",
    "projected_sizes",
    "scale_to_integers",
    "strip_unused",
    "to_digraphs",
    "unweight_backward",
    "unweight_forward",
]
