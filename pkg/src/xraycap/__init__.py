"""Antipodal spherical cap coverings and X-ray/illumination certificates."""

__version__ = "0.1.0"
