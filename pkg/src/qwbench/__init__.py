"""Exact computer-algebra workbench for Weyl-element realizations of quantum groups."""
