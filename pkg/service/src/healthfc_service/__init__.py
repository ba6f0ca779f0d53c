"""Inference microservice hosting the model heads the pipeline consumes."""

from .app import create_app
from .registry import ModelRegistry, ServiceConfig

__version__ = "0.1.0"
