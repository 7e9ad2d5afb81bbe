from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Optional

MODES = ("uirfe", "urfe", "urfe-embedded", "ur", "rect")


@dataclass
class SolveRequest:
    mode: str
    graph: Any = None  # Graph or PlanarEmbeddedGraph
    outer: Any = None  # prescribed outer coordinates for uirfe

    def __post_init__(self):
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.graph is None:
            raise ValueError("a graph is required")
        if self.mode == "uirfe" and self.outer is None:
            raise ValueError("uirfe needs a prescribed outer drawing")


@dataclass
class SolveResponse:
    positive: bool
    drawing: Optional[list[tuple[int, int]]] = None
    witness: dict = field(default_factory=dict)
    embedding: Any = None  # PlanarEmbeddedGraph the drawing respects, when known

    def to_json(self) -> dict:
        out: dict = {"positive": self.positive}
        if self.drawing is not None:
            out["coords"] = [list(p) for p in self.drawing]
        if self.witness:
            out["witness"] = self.witness
        return out
