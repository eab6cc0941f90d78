"""
Shared infrastructure for modkernel.

Modules:
    tensors: Complex tensors, axis permutations and nested mixed norms
    exceptions: Mathematical precondition failures
    conf: Access to tunables defined in Django settings
"""

__version__ = "0.1.0"
