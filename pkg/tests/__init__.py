"""Unit test package for nfold."""
