import importlib.metadata
from pathlib import Path

DISTRIBUTION = 'frobenius-lab'
# Same scheme as [tool.setuptools_scm] in pyproject.toml:
SCM_SCHEME = {'version_scheme': 'release-branch-semver', 'local_scheme': 'no-local-version'}


def _scm_version(root):
    """Version of a git checkout at `root`, or None outside one"""
    if not (root / '.git').is_dir():
        return None
    try:
        from setuptools_scm import get_version
    except ImportError:
        return None
    try:
        return get_version(root, **SCM_SCHEME)
    except LookupError:
        return None


def _installed_version():
    try:
        return importlib.metadata.version(DISTRIBUTION)
    except importlib.metadata.PackageNotFoundError:
        return None


__version__ = _scm_version(Path(__file__).resolve().parent.parent) or _installed_version()
