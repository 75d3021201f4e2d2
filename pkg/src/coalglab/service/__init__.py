"""Service layer: pydantic schemas, command handlers, and the FastAPI app."""
from . import handlers, schemas

__all__ = ["handlers", "schemas"]
