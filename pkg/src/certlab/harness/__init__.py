"""Operational surface: config files, corpora, experiment commands, CLI."""
