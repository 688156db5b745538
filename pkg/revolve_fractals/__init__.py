"""Revolving digit sequences, their IFS attractors, and checks.

The package realizes generalized, signed and alternating revolving
digit sequences as point sets in the complex plane, builds the
matching iterated function systems, and verifies the set identities
between the two at bounded depth.
"""
