"""Seed codecs."""
