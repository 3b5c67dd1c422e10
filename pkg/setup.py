from setuptools import setup, find_packages

setup(
    name='ergodic_rl',
    packages=find_packages(exclude=['tests', 'tests.*']),
    version='0.1.0',
    license='MIT',
    description='Ergodicity analysis of Markov decision processes and '
                'ergodicity-aware reinforcement learners.',
    keywords=['reinforcement learning', 'ergodicity', 'markov chains'],
    package_data={
        'ergodic_rl': ['configs/*.yaml', 'configs/fixtures/*.yaml'],
    },
    install_requires=[
        'matplotlib',
        'numpy',
        'pandas',
        'PyYAML',
        'scipy',
        'seaborn',
        'typing_extensions',
    ],
    entry_points={
        'console_scripts': ['ergodic-rl=ergodic_rl.cli.main:main'],
    },
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3'
    ],
)
