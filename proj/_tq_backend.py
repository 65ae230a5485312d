"""Build backend: scikit-build-core when available, else setuptools + cmake."""

try:
    from scikit_build_core.build import (  # noqa: F401
        build_editable,
        build_sdist,
        build_wheel,
        get_requires_for_build_editable,
        get_requires_for_build_sdist,
        get_requires_for_build_wheel,
        prepare_metadata_for_build_editable,
        prepare_metadata_for_build_wheel,
    )
except ModuleNotFoundError:
    from setuptools.build_meta import *  # noqa: F401,F403
