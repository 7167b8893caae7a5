"""Khovanov homology, delta-width and Turaev genus of link diagrams and closed 3-braids."""

__version__ = "0.1.0"

from .diagram import BraidWord, DiagramError, LinkDiagram, closure, parse_diagram
from .homology import BigradedGroups, ThicknessInterval, homology, reduced_homology

__all__ = [
    "BigradedGroups", "BraidWord", "DiagramError", "LinkDiagram", "ThicknessInterval",
    "closure", "homology", "parse_diagram", "reduced_homology", "__version__",
]
