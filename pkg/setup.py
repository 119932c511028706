#!/usr/bin/env python3
from setuptools import setup, find_packages

setup(
    name="strmerge",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "tests.*"]),
    install_requires=[
        "click>=8.0.0,<9",
        "dataclasses-json",
        "numpy",
        "rich",
        "typer>=0.9.0,<0.13",
    ],
    entry_points={"console_scripts": ["strmerge=src.main:run"]},
    python_requires=">=3.8",
)
