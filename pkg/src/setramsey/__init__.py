"""Random set-colourings of K_n avoiding monochromatic cliques, with exact verification."""

__version__ = "0.1.0"
