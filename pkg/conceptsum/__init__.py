try:
    from importlib.metadata import version
except ImportError:
    # Python < 3.8
    from importlib_metadata import version

PROJECT_NAME = "conceptsum"

try:
    __version__ = version(__name__)
except Exception:
    __version__ = "0.0.0"
