# tests/test_constants.py

from revolve_fractals.config import Config


def test_constants():
    config = Config()
    assert isinstance(config.DEFAULT_DEPTH, int)
    assert isinstance(config.VERIFY_DEPTH, int)
    assert isinstance(config.DEDUP_GRID, float)
    assert isinstance(config.RADIX_MAX_STEPS, int)
    assert isinstance(config.RENDER_SIZE, int)
    assert isinstance(config.RENDER_PADDING, float)
    assert isinstance(config.RENDER_INVERT, bool)
    assert isinstance(config.EXACT_TOLERANCE, float)
    assert isinstance(config.KIKO_SAMPLES, int)
    assert isinstance(config.KIKO_DEPTH, int)
    assert isinstance(config.THREADS, int)
    assert isinstance(config.LOG_LEVEL, str)
    assert isinstance(config.LOG_FILE, str)
