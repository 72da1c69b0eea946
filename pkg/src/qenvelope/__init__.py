"""Exact computations with quantized enveloping algebras at odd roots of unity."""

from qenvelope.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "__version__"]
