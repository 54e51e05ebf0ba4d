"""Kernel selection: compiled echelon core when built, pure Python otherwise.

Set ``ARTIFACT_PURE=1`` to force the fallback.
"""

import os

from ._ext import echelon_py

BACKEND = "python"
echelon = echelon_py

if os.environ.get("ARTIFACT_PURE", "") not in ("1", "true", "yes"):
    try:
        from ._ext import echelon_c as _compiled
    except ImportError:
        pass
    else:
        echelon = _compiled
        BACKEND = "cython"

reduce_row = echelon.reduce_row
normalize = echelon.normalize
rank_of = echelon.rank_of
