"""Local pooling on random graphs: exact oracles, randomized cycle
detectors, closed-form thresholds, and Monte Carlo experiments."""

__version__ = "0.1.0"
