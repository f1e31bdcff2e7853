"""Parameter bundles for the reference figures.

Shared point: ``beta1 = 3``, ``r = 0.8``, ``|gamma| = 0.1``,
``phi1 = phi2 = 0``, ``delta = pi/2``, with F in the standard convention.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .nonlinear import NonlinearSpec

BETA1 = 3.0
R = 0.8
GAMMA = 0.1
DELTA = math.pi / 2


def _f(n: int) -> NonlinearSpec:
    return NonlinearSpec.monomial(n, convention="standard")


@dataclass(frozen=True)
class FigurePreset:
    number: int
    kind: str                   # pnd | scan | wigner | section
    F: NonlinearSpec
    r: float = R
    gamma_abs: float = GAMMA
    beta1: float = BETA1
    over: str | None = None
    start: float = 0.0
    stop: float = 0.0
    step: float = 0.0
    levels: tuple = ()
    description: str = ""

    @property
    def stem(self) -> str:
        return f"fig{self.number:02d}_{self.kind}"


_SECTION_LEVELS = (0.02, 0.1, 0.25, 0.5, 0.75)

PRESETS = {
    1: FigurePreset(1, "pnd", _f(2), description="PND, F=x^2, against the gamma=0 reference"),
    2: FigurePreset(2, "pnd", _f(3), description="PND, F=x^3, against the gamma=0 reference"),
    3: FigurePreset(3, "scan", _f(2), gamma_abs=0.0, over="r", stop=3.0, step=0.05,
                    description="g2 versus r, gamma=0"),
    4: FigurePreset(4, "scan", _f(2), gamma_abs=0.05, over="r", stop=2.0, step=0.05,
                    description="g2 versus r, F=x^2, gamma=0.05"),
    5: FigurePreset(5, "scan", _f(2), gamma_abs=0.1, over="r", stop=2.0, step=0.05,
                    description="g2 versus r, F=x^2, gamma=0.1"),
    6: FigurePreset(6, "scan", _f(2), r=0.5, over="gamma", stop=0.2, step=0.005,
                    description="g2 versus gamma, F=x^2, r=0.5"),
    7: FigurePreset(7, "scan", _f(2), r=0.8, over="gamma", stop=0.2, step=0.005,
                    description="g2 versus gamma, F=x^2, r=0.8"),
    8: FigurePreset(8, "wigner", _f(2), gamma_abs=0.0, description="Wigner grid, gamma=0"),
    9: FigurePreset(9, "section", _f(2), gamma_abs=0.0, levels=_SECTION_LEVELS,
                    description="planar sections, gamma=0"),
    10: FigurePreset(10, "wigner", _f(2), description="Wigner grid, F=x^2"),
    11: FigurePreset(11, "section", _f(2), levels=_SECTION_LEVELS, description="planar sections, F=x^2"),
    12: FigurePreset(12, "wigner", _f(3), description="Wigner grid, F=x^3"),
    13: FigurePreset(13, "section", _f(3), levels=_SECTION_LEVELS, description="planar sections, F=x^3"),
    14: FigurePreset(14, "wigner", _f(4), description="Wigner grid, F=x^4"),
    15: FigurePreset(15, "section", _f(4), levels=_SECTION_LEVELS, description="planar sections, F=x^4"),
}


def preset(number: int) -> FigurePreset:
    try:
        return PRESETS[number]
    except KeyError:
        raise ValueError(f"no preset for figure {number}; choose 1..15") from None
