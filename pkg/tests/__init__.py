"""Test suite for the sensorec recommender and evaluation harness."""
