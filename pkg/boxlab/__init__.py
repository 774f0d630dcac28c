"""boxlab: desk scale experiments with box spaces of residually finite groups"""
import logging

__version__ = "0.1.0"

logging.getLogger(__name__).addHandler(logging.NullHandler())
