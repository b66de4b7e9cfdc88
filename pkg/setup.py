from distutils.core import setup

setup(
    name='PyLieClass',
    version='0.1.dev0',
    packages=['lieclass','lieclass.utils'],
    install_requires=['sympy>=1.12','numpy','pandas','pyyaml'],
    long_description=open('README.md').read(),
)
