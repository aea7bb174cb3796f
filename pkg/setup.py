from setuptools import setup, find_packages
from qftbell.constants import VERSION

setup(
    name="qftbell",
    version=VERSION,
    author="qftbell contributors",
    description="Bell-CHSH correlators of Weyl-built observables in the 1+1-d free scalar vacuum",
    packages=find_packages(exclude=["tests"]),
    package_data={"qftbell.data": ["initialise.sql"]},
    python_requires=">=3.9",
    install_requires=[
        "click>=8",
        "dpath>=2.1",
        "numpy>=1.22",
        "scipy>=1.10",
        "PyYAML>=6",
    ],
    extras_require={
        "dev": [
            "mpmath>=1.3",
            "pytest>=7",
        ],
    },
    entry_points={
        "console_scripts": ["qftbell=qftbell.cli:main"],
    },
)
