import os
import setuptools

_HERE = os.path.abspath(os.path.dirname(__file__))

with open(os.path.join(_HERE, "README.md"), "r", encoding="utf-8") as fh:
    long_description = fh.read()

setuptools.setup(
    name="monoid-completion",
    version="0.1.0",
    description="Exact group completion, nerve homology and Tor computations for finite monoids",
    long_description=long_description,
    long_description_content_type="text/markdown",
    package_dir={"": "src"},
    packages=setuptools.find_packages(where="src"),
    include_package_data=True,
    package_data={"monoidcompletion": ["data/*.monoid", "data/*.json"]},
    python_requires=">=3.9",
    install_requires=["numpy", "scipy", "click"],
    extras_require={"test": ["pytest", "hypothesis", "sympy"]},
    entry_points={"console_scripts": ["monoid-completion=monoidcompletion.cli:main"]},
)
