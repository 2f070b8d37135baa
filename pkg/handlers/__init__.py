"""
Command handlers for the workbench CLI.
Each handler takes parsed arguments and returns a ReportDocument.
"""

from .acceptance import AcceptanceSuite
from .algebra_handlers import AlgebraHandlers
from .geometry_handlers import GeometryHandlers

__all__ = ['AcceptanceSuite', 'AlgebraHandlers', 'GeometryHandlers']
