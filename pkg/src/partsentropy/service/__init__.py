"""HTTP service wrapping the analysis handlers (FastAPI + pydantic models)."""

from . import handlers, schemas

__all__ = ["handlers", "schemas"]
