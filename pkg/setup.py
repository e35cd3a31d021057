#!/usr/bin/env python

from setuptools import setup, find_packages


# Current paraprod version
with open('VERSION') as version_file:
    VERSION = version_file.read().strip()

with open('README.md', encoding='utf8') as fh:
    long_description = fh.read()

python_requires = '>=3.9'

install_requires = [
        'numpy',
        'progressbar2',
        'pydantic',
        'pydantic-settings',
        'scipy',
        'termcolor'
    ]

setup(
    name='paraprod',
    version=VERSION,
    description='Analytic paraproducts on weighted Bergman spaces: exact word algebra and norm estimation',
    long_description=long_description,
    long_description_content_type='text/markdown',
    license='MIT',
    keywords=['Bergman spaces', 'paraproducts', 'Volterra operators', 'operator theory', 'complex analysis'],
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Programming Language :: Python :: 3',
        'Operating System :: OS Independent',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics'
    ],
    python_requires=python_requires,
    packages=find_packages(include=['paraprod', 'paraprod.*']),
    install_requires=install_requires,
    extras_require={
        'dev': [
            'pytest',
            'hypothesis',
            'Sphinx',
            'sphinx_rtd_theme',
            'ruff',
            'black'
        ]
    },
    entry_points='''
        [console_scripts]
        paraprod=paraprod.__main__:main
    '''
)
