"""Khovanov homology of link diagrams, unreduced and reduced."""
from __future__ import annotations

from ..diagram import LinkDiagram
from ..rings import get_ring
from .complex import ChainComplex
from .cube import BudgetError, cube_complex, reduced_cube_complex
from .groups import BigradedGroups, ThicknessError, ThicknessInterval, parse_poincare
from .scanning import scan_complex
from .skein import SkeinReport, check_skein_bounds, skein_bounds
from .snf import smith_normal_form

DEFAULT_BUDGET = 22

_UNKNOT = {(0, 1): (1, ()), (0, -1): (1, ())}


def _with_free_loops(H: BigradedGroups, loops: int) -> BigradedGroups:
    for _ in range(loops):
        H = H.tensor(BigradedGroups(_UNKNOT, H.ring))
    return H


def homology(D: LinkDiagram, ring="Z", budget: int = DEFAULT_BUDGET, order=None,
             method: str = "scan") -> BigradedGroups:
    """Bigraded Khovanov homology Kh^{i,j}(D) over ``ring``.

    ``method`` is ``"scan"`` (local simplification, the default) or
    ``"cube"`` (the full cube of resolutions, for cross-checks).
    """
    ring = get_ring(ring)
    if D.num_crossings > budget:
        raise BudgetError(D.num_crossings, budget)
    if D.num_crossings == 0:
        if D.free_loops == 0:
            raise ValueError("empty diagram")
        return _with_free_loops(BigradedGroups({(0, 0): (1, ())}, ring.name), D.free_loops)
    if method == "cube":
        C = cube_complex(D, ring, budget)
        return C.simplify().homology()
    if method != "scan":
        raise ValueError(f"unknown method {method!r}")
    C = scan_complex(D, ring, reduced=False, order=order)
    return _with_free_loops(C.simplify().homology(), D.free_loops)


def reduced_homology(D: LinkDiagram, ring="Z", budget: int = DEFAULT_BUDGET, basepoint=None,
                     order=None, method: str = "scan") -> BigradedGroups:
    """Reduced Khovanov homology, based at ``basepoint`` (or ``D.basepoint``)."""
    ring = get_ring(ring)
    bp = basepoint if basepoint is not None else D.basepoint
    if D.num_crossings == 0:
        if D.free_loops == 0:
            raise ValueError("empty diagram")
        return _with_free_loops(BigradedGroups({(0, 0): (1, ())}, ring.name), D.free_loops - 1)
    if bp is None:
        raise ValueError("reduced homology needs a basepoint")
    if D.num_crossings > budget:
        raise BudgetError(D.num_crossings, budget)
    if method == "cube":
        C = reduced_cube_complex(D.with_basepoint(bp), ring, budget)
        return C.simplify().homology()
    C = scan_complex(D, ring, reduced=True, cut=bp, order=order)
    return _with_free_loops(C.simplify().homology(), D.free_loops)


def thickness(H: BigradedGroups) -> ThicknessInterval:
    return H.thickness()


def width(H: BigradedGroups) -> int:
    return H.thickness().width


__all__ = [
    "BigradedGroups", "BudgetError", "ChainComplex", "SkeinReport", "ThicknessError",
    "ThicknessInterval", "check_skein_bounds", "cube_complex", "homology", "parse_poincare",
    "reduced_cube_complex", "reduced_homology", "scan_complex", "skein_bounds",
    "smith_normal_form", "thickness", "width", "DEFAULT_BUDGET",
]
