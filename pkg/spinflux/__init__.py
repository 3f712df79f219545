"""Exact verification of Killing spinors with 3-form torsion and 4-form
flux on special geometries."""
