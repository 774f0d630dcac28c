"""boxlab Type Definitions"""
from fractions import Fraction
from typing import List, Tuple, Union

import numpy.typing as npt

# canonical group elements are fixed-width integer tuples
Element = Tuple[int, ...]
Elements = List[Element]

# 2x2 integer matrices acting on Z^2 are stored row-major as nested tuples
IntMatrix2 = Tuple[Tuple[int, int], Tuple[int, int]]

Rational = Union[int, Fraction]

NDArray = npt.NDArray
