"""
Main init.
"""

__all__ = ["analytic", "circuits", "cli", "graphs", "sampling", "statevector", "sweeps", "utils"]
