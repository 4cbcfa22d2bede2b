from .bound_agent import BoundAgent
from .lemma_agent import LemmaAgent
from .corollary_agent import CorollaryAgent

__all__ = ["BoundAgent", "LemmaAgent", "CorollaryAgent"]
