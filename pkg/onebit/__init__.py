# onebit/__init__.py

"""
One-bit massive MIMO simulation and EE/SE optimization toolkit.
"""

__version__ = "0.3.0"
