"""
mixodyn - mixotroph/autotroph/herbivore chemostat dynamics
"""

__version__ = "0.1.0"
