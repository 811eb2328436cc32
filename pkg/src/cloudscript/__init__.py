"""Low-code cloud simulation: YAML system model scripts in, simulation reports out."""

__version__ = "0.1.0"
