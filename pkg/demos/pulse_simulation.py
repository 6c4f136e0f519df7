"""Simulate a seeded pulse stream, summarize its ledger and train a threshold unit."""
from biovi.ledger import serialize
from biovi.neuromatrix import AND_TABLE, GaussianParams, ThresholdUnit
from biovi.regression import simulate_stream

params = [GaussianParams(1.0, 0.5), GaussianParams(2.0, 0.3), GaussianParams(3.0, 0.7)]
sim = simulate_stream(12, seed=7, params=params, thresholds=(0.5, 1.5, 2.5))
print(serialize(sim.ledger, "csv").decode())
print(serialize(sim.summary, "structured-text").decode())
print("ranking by yield:", sim.ranking)

unit = ThresholdUnit(2)
epochs = unit.train([x for x, _ in AND_TABLE], [d for _, d in AND_TABLE])
print(f"AND learned in {epochs} epochs, weights {[float(w) for w in unit.weights]}")
