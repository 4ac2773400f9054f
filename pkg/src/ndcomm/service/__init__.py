"""HTTP layer: pydantic request/response models and the FastAPI application."""

from .app import app, create_app  # noqa: F401
