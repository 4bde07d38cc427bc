"""Shared utilities for Gruss: configuration, logging and exceptions."""
