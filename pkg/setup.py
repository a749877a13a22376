from setuptools import setup, find_packages

setup(
    name='pdgait',
    version='0.1.0',
    packages=find_packages(where='src'),
    package_dir={"": "src"},
    package_data={"pdgait.skeleton": ["data/*.json"]},
    python_requires='>=3.9',
    install_requires=[
        'numpy',
        'pandas',
        'scipy',
        'scikit-learn',
        'joblib',
        'torch',
        'pytorch-ignite',
        'omegaconf>=2.1',
        'loguru',
        'pyaml',
        'tqdm',
        'matplotlib',
    ],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['pdgait=pdgait.cli:run']},
    license='MIT',
    long_description=open('README.md').read(),
)
