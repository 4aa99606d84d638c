"""
adaregret - projected online sub-gradient descent with adaptive
dynamic-regret learning rates.

Bound calculators, adversarial loss streams and a verification suite that
checks every regret guarantee on seeded runs.
"""

__version__ = "0.1.0"
