"""
phconnect

Persistent-homology-based connectivity control of learned representations:
Vietoris-Rips 0-dimensional persistence, a differentiable connectivity loss,
densification/separation bounds with brute-force checks, a small branched
autoencoder trainer and a count-based one-class scorer.
"""

__version__ = "0.1.0"
__author__ = "phconnect developers"
