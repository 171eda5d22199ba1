"""ESQPT structure of interacting s/d boson Hamiltonians (f = 2)."""

from .models import ModelParams

__all__ = ["ModelParams"]
__version__ = "0.1.0"
