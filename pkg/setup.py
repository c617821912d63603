from setuptools import setup, find_packages

setup(
    name="asd_deployment",
    version="0.1",
    packages=find_packages(exclude=["tests", "tests.*"]),
    package_data={"src.config": ["*.json", "plans/*.json"]},
    install_requires=[
        "numpy",
        "pandas",
        "pydantic",
        "pydantic-settings",
        "python-dotenv",
        "loguru",
    ],
    entry_points={"console_scripts": ["asd=src.cli.app:main"]},
)
