"""
Time-frequency analysis on Z_N: Gabor frames, mixed modulation norms and
operator-norm certificates for integral kernels.
"""
