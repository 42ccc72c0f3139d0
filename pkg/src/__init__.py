"""Sensorec: sensory-aware point-of-interest recommendation and evaluation."""
