"""
Occlusion Risk - Risk of Tracking Loss analytics and V2X deployment simulator

Computes the Risk of Tracking Loss (RTL) occlusion metric over recorded multi-agent
traffic scenes and evaluates cooperative-perception deployment strategies
(penetration sweeps, symmetric vs. asymmetric communication paradigms).
"""

__version__ = "0.1.0"
