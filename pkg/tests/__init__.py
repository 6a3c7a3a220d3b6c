"""Test suite for limitroots."""
