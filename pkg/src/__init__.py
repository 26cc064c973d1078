"""EQK Toolkit: embedding quantum kernels built from data re-uploading QNNs."""

__version__ = "0.1.0"
