"""
Setup script for adhesive-egg.
"""

from pathlib import Path

from setuptools import find_packages, setup

HERE = Path(__file__).parent

# Everything listed under "Development and testing" in requirements.txt is a dev extra
DEV_TOOLS = {"pytest", "pytest-cov", "hypothesis", "black", "flake8", "mypy"}


def read_requirements():
    text = (HERE / "requirements.txt").read_text(encoding="utf-8")
    pins = [line.split("#")[0].strip() for line in text.splitlines()]
    return [pin for pin in pins if pin]


def package_name(pin):
    for sep in ("<", ">", "=", "~", "!", "["):
        pin = pin.split(sep)[0]
    return pin.strip().lower()


requirements = read_requirements()

setup(
    name="adhesive-egg",
    version="0.3.0",
    description="E-graphs as term graphs with equivalence: DPO equality saturation and adhesivity checks",
    long_description=(HERE / "README.md").read_text(encoding="utf-8"),
    long_description_content_type="text/markdown",
    packages=find_packages(exclude=["tests", "tests.*", "examples", "examples.*"]),
    install_requires=[pin for pin in requirements if package_name(pin) not in DEV_TOOLS],
    extras_require={"dev": [pin for pin in requirements if package_name(pin) in DEV_TOOLS]},
    python_requires=">=3.8",
    entry_points={
        "console_scripts": [
            "adhesive-egg=src.cli.commands:main",
        ],
    },
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Mathematics",
        "Topic :: Software Development :: Compilers",
    ],
    keywords="e-graphs, equality saturation, term graphs, adhesive categories, graph rewriting",
)
