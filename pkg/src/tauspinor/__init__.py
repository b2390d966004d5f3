"""Relativistic kinematics as unit-vector rotations, their quantization to
Dirac matrices, and the Dirac equation with proper time as a coordinate."""

__version__ = "0.1.0"
