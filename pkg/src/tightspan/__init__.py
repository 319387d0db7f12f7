"""Tight spans of path-connected sets in the taxicab plane by double hatching."""
