# Ring *-homomorphism checker for finite-dimensional C*-algebras

__version__ = "1.0.0"
