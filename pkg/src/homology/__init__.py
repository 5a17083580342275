"""Exact homology of bigraded diagram complexes"""
