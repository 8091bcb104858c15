from setuptools import setup

setup(
    name="apollonite",
    version="1.0.0",
    packages=[
        "apollonite",
    ],
    install_requires=[
        "matplotlib",
        "numpy",
        "Pillow",
        "tqdm",
    ],
    scripts=[
        "bin/apollonite.py",
    ],
    include_package_data=True,
)
