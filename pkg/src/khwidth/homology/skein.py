"""Thickness bounds for an oriented skein triple, read off the long exact sequences.

In the two tie cases the answer depends on whether a connecting map is
surjective or injective, which the groups alone do not decide; both
outcomes are accepted and the report says so.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .groups import BigradedGroups, ThicknessInterval


@dataclass
class SkeinReport:
    sign: int
    e: int
    v: ThicknessInterval
    h: ThicknessInterval
    observed: ThicknessInterval
    allowed_min: tuple
    allowed_max: tuple
    cases: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return (self.observed.delta_min in self.allowed_min
                and self.observed.delta_max in self.allowed_max)

    def to_json(self) -> dict:
        return {
            "sign": self.sign, "e": self.e,
            "v": self.v.as_tuple(), "h": self.h.as_tuple(),
            "observed": self.observed.as_tuple(),
            "allowed_min": list(self.allowed_min), "allowed_max": list(self.allowed_max),
            "cases": self.cases, "passed": self.passed,
        }


def skein_bounds(v: ThicknessInterval, h: ThicknessInterval, e: int, sign: int):
    """Allowed (delta_min values, delta_max values, fired cases) for D_sign."""
    cases = []
    if sign > 0:
        if v.delta_min != h.delta_min + e + 1:
            lo = (min(v.delta_min + 1, h.delta_min + e),)
            cases.append("min:generic")
        else:
            lo = (v.delta_min + 1, v.delta_min - 1)
            cases.append("min:tie")
        if v.delta_max != h.delta_max + e + 1:
            hi = (max(v.delta_max + 1, h.delta_max + e),)
            cases.append("max:generic")
        else:
            hi = (v.delta_max - 1, v.delta_max + 1)
            cases.append("max:tie")
    else:
        if v.delta_min != h.delta_min + e - 1:
            lo = (min(v.delta_min - 1, h.delta_min + e),)
            cases.append("min:generic")
        else:
            lo = (v.delta_min + 1, v.delta_min - 1)
            cases.append("min:tie")
        if v.delta_max != h.delta_max + e - 1:
            hi = (max(v.delta_max - 1, h.delta_max + e),)
            cases.append("max:generic")
        else:
            hi = (v.delta_max - 1, v.delta_max + 1)
            cases.append("max:tie")
    return lo, hi, cases


def check_skein_bounds(kh_x: BigradedGroups, kh_v: BigradedGroups, kh_h: BigradedGroups,
                       e: int, sign: int) -> SkeinReport:
    """Compare the thickness of D_+ (sign +1) or D_- (sign -1) with the skein prediction."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    v, h, x = kh_v.thickness(), kh_h.thickness(), kh_x.thickness()
    if (x.delta_min - v.delta_min - 1) % 2 or (x.delta_min - h.delta_min - e) % 2:
        raise ValueError("delta parities of the skein triple are inconsistent")
    lo, hi, cases = skein_bounds(v, h, e, sign)
    return SkeinReport(sign, e, v, h, x, lo, hi, cases)
