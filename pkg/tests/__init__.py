"""Tests for patchsurvival."""
