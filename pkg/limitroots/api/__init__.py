"""HTTP surface of the pipelines."""
