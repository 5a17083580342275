"""Diagram algebra: free super Lie algebras, bracket diagrams, Hopf and operad structures"""
