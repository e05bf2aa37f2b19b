"""HTTP service wrapping the ellop library."""
