"""Exact immanants, symmetric-group characters and matching-to-immanant reductions."""
