"""Gerechte - Realizations of Gerechte Frameworks

This package builds latin squares in which every region of a given
partition of the grid holds each symbol once. It covers frameworks of
s x t and t x s rectangles, frameworks arranged in columns and tree
structures, plus a brute-force oracle and an exhaustive census of small
rectangular frameworks.
"""

__version__ = "0.1.0"
