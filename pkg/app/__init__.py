"""Exact arithmetic for Rudin-Shapiro-like polynomial stems."""
