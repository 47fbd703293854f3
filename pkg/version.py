import re
from os.path import join

from setuptools import find_packages


def get():
    pkgnames = [p for p in find_packages(exclude=["examples*"]) if "." not in p]
    if len(pkgnames) == 0:
        return "unknown"
    content = open(join(pkgnames[0], "__init__.py")).read()
    m = re.search(r"__version__ *= *('[^']+'|\"[^\"]+\")", content)
    if m is None:
        return "unknown"
    return m.groups()[0][1:-1]
