"""HTTP service wrapping the simulator: synchronous runs plus experiment jobs."""

from .app import app, create_app

__all__ = ["app", "create_app"]
