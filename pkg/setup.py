import setuptools
import os


def get_description():
    if os.path.isfile("README.md"):
        with open("README.md", "r") as fh:
            desc = fh.read()
    else:
        desc = ""
    return desc


setuptools.setup(
    name="l00p3r",
    version="0.1.0",
    description="Last-erased-loop fractions of self-avoiding polygons on the square lattice.",
    long_description=get_description(),
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        # numerics
        "numpy>=1.14",
        "scipy>=1.4",
        "mpmath>=1.1",
        # data handling
        "pandas>=1.1.4",
        # utilities
        "dill",
        "rich",
        "tqdm",
        "wrappy",
    ],
    extras_require={
        "dev": ["pytest>=6", "flake8"],
    },
    entry_points={
        "console_scripts": ["l00p3r=l00p3r.cli:entrypoint"],
    },
    python_requires=">=3.8",
    classifiers=[
        "Programming Language :: Python :: 3",
        "Development Status :: 2 - Pre-Alpha",
        "License :: OSI Approved :: MIT License",
        "Operating System :: OS Independent",
    ],
)
