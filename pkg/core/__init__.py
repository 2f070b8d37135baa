"""
Core components of the workbench.
Contains the polygon model, the critical point catalog and the Morse data.
"""

from .config import Config
from .critical_class import CriticalClass
from .polygon import Configuration

# Make these classes available directly from the core package
__all__ = ['Config', 'CriticalClass', 'Configuration']
