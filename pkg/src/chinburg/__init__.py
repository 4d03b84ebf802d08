"""Permissible polynomials a(x)(y^2+1) + b(x)y and their Mahler measures."""

from chinburg.permissible import PermissibilityReport, check, check_brv_form
from chinburg.polyz import IntPoly

__all__ = ["IntPoly", "PermissibilityReport", "check", "check_brv_form"]
__version__ = "0.1.0"
