"""Explainable dispatch workbench for paratransit fleets.

Plans vehicle assignments with Monte Carlo tree search and answers
free-form dispatcher questions about those plans: queries are compiled
to a small evidence logic, scored against the search tree (including
CTL comparisons between branches), optionally grounded in a bundled
knowledge base, and rendered as natural-language explanations.
"""

__version__ = "0.1.0"
