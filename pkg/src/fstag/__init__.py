"""French part-of-speech tagging with constraint rules and an ambiguity-class HMM."""

__version__ = "0.1.0"
