"""Shared tolerance defaults.

All comparisons in the package are relative: a residual r passes when
r <= tol * scale, where scale = 1 + (magnitudes of the quantities compared).
The baseline tolerance is 1e-9 and can be overridden globally through the
KFRAMES_TOL environment variable.
"""

import os

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    """Return the default tolerance, honouring the KFRAMES_TOL override."""
    raw = os.environ.get("KFRAMES_TOL", "").strip()
    if raw:
        value = float(raw)
        if value <= 0.0:
            raise ValueError(f"KFRAMES_TOL must be positive, got {raw!r}")
        return value
    return DEFAULT_TOL


def resolve_tol(tol):
    """Return `tol` itself when given, else the ambient default."""
    if tol is None:
        return default_tol()
    if tol <= 0.0:
        raise ValueError(f"tolerance must be positive, got {tol}")
    return float(tol)
