"""One router per pipeline."""
