"""Point counts on Dwork hypersurfaces via finite-field and p-adic hypergeometric functions."""

__version__ = "0.1.0"
