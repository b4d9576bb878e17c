from setuptools import setup

def readme():
    with open('README.md') as f:
        return f.read()

setup(name='nilzeta',
      version='0.1',
      description='Exact local normal zeta functions of the free class-two '
                  'nilpotent groups F_{2,2}, F_{2,3} and F_{2,4}.',
      long_description=readme(),
      classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: MIT License',
        'Programming Language :: Python :: 3',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Mathematics'
      ],
      keywords='zeta functions nilpotent groups lattices p-adic counting',
      license='MIT',
      packages=['nilzeta', 'nilzeta.utils'],
      package_data={'nilzeta': ['schemas/*.json']},
      python_requires='>=3.8',
      install_requires=[
          'numpy',
          'scipy >= 0.15.0',
          'sympy >= 1.9',
          'jsonschema >= 3.0'
      ],
      extras_require={
          'fast': ['numba'],
          'test': ['pytest', 'hypothesis']
      },
      entry_points={
          'console_scripts': ['nilzeta = nilzeta.cli:main']
      },
      include_package_data=True,
      zip_safe=False)
