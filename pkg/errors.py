# errors.py
from __future__ import annotations
from typing import List, Optional


class Dist2Error(Exception):
    """Base class for everything this package raises on purpose."""


# ---------- graphs ----------
class GraphError(Dist2Error):
    pass


class CapExceeded(GraphError):
    pass


class LongRunRequired(CapExceeded):
    pass


class BadEdge(GraphError):
    pass


class EmptySet(GraphError):
    pass


class Disconnected(GraphError):
    pass


# ---------- transformations ----------
class SpindleError(Dist2Error):
    pass


class DiameterTooSmall(SpindleError):
    pass


class InvalidSpindle(SpindleError):
    pass


class HypothesisFailed(Dist2Error):
    pass


class IterationCapExceeded(Dist2Error):
    def __init__(self, msg: str, trace: Optional[List[int]] = None):
        super().__init__(msg)
        self.trace = list(trace or [])


# ---------- graph6 ----------
class Graph6Error(Dist2Error):
    pass


class BadChar(Graph6Error):
    pass


class BadLength(Graph6Error):
    pass


class BadPadding(Graph6Error):
    pass


class OrderMismatch(Graph6Error):
    pass


class UnsupportedSize(Graph6Error):
    """Size byte outside the single-byte form (n = 0 or a multi-byte size)."""


# ---------- reports ----------
class ReportError(Dist2Error):
    pass
