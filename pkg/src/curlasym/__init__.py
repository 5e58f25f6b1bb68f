"""Exact symbol calculus for the spectral asymmetry of curl, plus numerics.

Subpackage layout:

- exactpoly, polymat: exact Gaussian-rational truncated polynomials and
  matrices of them.
- geometry: curvature-seeded metric jets, norm power jets, curl and
  d / delta symbols, parallel transport jets.
- calculus: graded symbol jets, composition, subprincipal symbol, Poisson
  bracket, adjoint, trace, transport corrections.
- configs: named unit curvature configurations and random ones.
- projections: the iterative spectral projection construction, its
  verification, and the asymmetry report.
- altderiv: independent route to the principal asymmetry value through the
  Hodge Laplacian symbol hierarchy.
- berger: Berger-sphere curl and Laplacian spectra, eta function numerics.
- kernel: modified Bessel kernel checks and the singular asymmetry
  coefficient on the sphere.
- cli: command-line entry point.
"""

from __future__ import annotations

__version__ = "0.1.0"
