import setuptools

with open("README.md", "r") as fh:
    long_description = fh.read()

setuptools.setup(
    name="hyperball",
    version="0.1.0",
    license="GPL v3",
    description="Isometries of the complex unit ball as a matrix group preserving an indefinite form",
    long_description=long_description,
    long_description_content_type="text/markdown",
    packages=setuptools.find_packages(exclude=['contrib', 'docs', 'tests']),
    include_package_data=True,
    python_requires='>=3.8',
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Programming Language :: Python :: 3.8",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
    install_requires=[
        'numpy>=1.17',
        'retrying>=1.3.3',
        'schematics>=2.1.0',
        'inflection>=0.3.1',
    ],
    tests_require=['pytest>=5.1.2', 'hypothesis>=4.0'],
    entry_points={
        'console_scripts': ['hyperball=hyperball.cli:run'],
    },
)
