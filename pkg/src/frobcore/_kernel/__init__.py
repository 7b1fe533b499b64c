"""Arithmetic kernel with a compiled fast path and a pure-Python fallback.

The active backend is chosen at import time:

* ``FROBCORE_BACKEND=pure``      force the pure-Python implementation
* ``FROBCORE_BACKEND=speedups``  require the compiled extension (ImportError
  if it was not built)
* ``FROBCORE_BACKEND=auto``      (default) compiled if available, else pure

Both backends expose the same function surface over the same plain data
(tuples for monomials, dicts for polynomials); see ``pure`` for the
reference semantics.
"""

import os

from . import pure

_choice = os.environ.get("FROBCORE_BACKEND", "auto").strip().lower()

if _choice == "pure":
    _impl = pure
elif _choice == "speedups":
    from . import _speedups as _impl
elif _choice == "auto" or _choice == "":
    try:
        from . import _speedups as _impl
    except ImportError:
        _impl = pure
else:
    raise ValueError(f"FROBCORE_BACKEND must be pure, speedups, or auto, not {_choice!r}")

BACKEND = _impl.BACKEND_NAME

GREVLEX = _impl.GREVLEX
LEX = _impl.LEX
BLOCK = _impl.BLOCK

mono_mul = _impl.mono_mul
mono_divides = _impl.mono_divides
mono_div = _impl.mono_div
mono_lcm = _impl.mono_lcm
mono_deg = _impl.mono_deg
mono_cmp = _impl.mono_cmp
leading_term = _impl.leading_term
poly_add = _impl.poly_add
poly_sub = _impl.poly_sub
poly_scale = _impl.poly_scale
poly_term_mul = _impl.poly_term_mul
poly_mul = _impl.poly_mul
normal_form = _impl.normal_form
s_poly = _impl.s_poly
