"""Exact q=0 Temperley-Lieb calculus, sl2 crystals and the functor between them."""

from .diagrams import Diagram, cap, cup, hom, identity, make_diagram
from .morphisms import Morphism, bar, compose, tensor
from .scalars import GENERIC, Q0, BarAt, Generic, Laurent, TildeAt

__version__ = "0.1.0"

__all__ = [
    "BarAt",
    "Diagram",
    "GENERIC",
    "Generic",
    "Laurent",
    "Morphism",
    "Q0",
    "TildeAt",
    "bar",
    "cap",
    "compose",
    "cup",
    "hom",
    "identity",
    "make_diagram",
    "tensor",
]
