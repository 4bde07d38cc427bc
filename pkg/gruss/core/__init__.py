"""Core numerics for Gruss: sequences, bounds, transforms, polynomials and sharpness search."""
