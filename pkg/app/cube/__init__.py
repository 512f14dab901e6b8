"""Hypercube combinatorics: chains, matchings, necklaces, cycle factors and tree rotations."""
