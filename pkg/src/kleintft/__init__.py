"""Open-closed topological field theories built from finite groups.

Structure algebras of Klein topological field theories, their correlators on
surfaces with boundary and crosscaps, and a covering-count oracle.
"""

__version__ = "0.1.0"
