"""Rank one primitive and spherical diagrams over finite and affine root systems."""
from .classify import (PrimitiveDiagram, SphericalDiagram, Verdict, canonicalize, check_primitive,
                       check_spherical, enumerate_primitive, enumerate_spherical)
from .notation import format_diagram, parse_diagram
from .realize import realize_primitive, realize_spherical, verify_realization
from .rootsys import DynkinDiagram, colabels, labels, parse_host

__all__ = [
    "DynkinDiagram", "PrimitiveDiagram", "SphericalDiagram", "Verdict",
    "canonicalize", "check_primitive", "check_spherical", "colabels", "enumerate_primitive",
    "enumerate_spherical", "format_diagram", "labels", "parse_diagram", "parse_host",
    "realize_primitive", "realize_spherical", "verify_realization",
]
