"""Entry point for revolve-fractals when run as a module."""

from revolve_fractals.cli import app

if __name__ == "__main__":
    app()
