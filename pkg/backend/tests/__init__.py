"""Backend tests package."""
