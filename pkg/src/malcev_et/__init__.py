"""Exact arithmetic for Malcev algebras, their representations and embedding tensors."""

from .algebra import AlgebraData, check_jacobi, check_left_dialgebra, check_malcev, check_right_dialgebra, check_sagle
from .cohomology import OneCochain, TwoCochain, coboundary, h2, is_cocycle
from .deformations import NijenhuisPair, check_first_order, check_formal, is_nijenhuis
from .embedding import EmbeddingTensor, check_embedding_tensor
from .etrep import EtRepresentation, check_et_representation
from .linalg import GF, Q, Matrix
from .representations import Representation, check_representation

__all__ = [
    "AlgebraData", "EmbeddingTensor", "EtRepresentation", "GF", "Matrix", "NijenhuisPair", "OneCochain", "Q",
    "Representation", "TwoCochain", "check_embedding_tensor", "check_et_representation", "check_first_order",
    "check_formal", "check_jacobi", "check_left_dialgebra", "check_malcev", "check_representation",
    "check_right_dialgebra", "check_sagle", "coboundary", "h2", "is_cocycle", "is_nijenhuis",
]
