"""Hot kernels: a compiled Cython module with a pure-Python twin of identical semantics."""
