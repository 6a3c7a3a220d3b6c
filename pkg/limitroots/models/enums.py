"""Shared enums for the domain models."""

import enum as py_enum


class StrEnum(str, py_enum.Enum):
    """Enum that stringifies to its value for CSV/JSON output."""

    def __str__(self) -> str:  # pragma: no cover - trivial
        return self.value


class BondKind(StrEnum):
    """Trichotomy of an off-diagonal Gram entry."""

    finite = "finite"
    affine = "affine"
    hyperbolic = "hyperbolic"


class DihedralKind(StrEnum):
    hyperbolic = "hyperbolic"
    affine = "affine"


class Side(StrEnum):
    """Which of the two root sequences a_i / b_i of a dihedral pair."""

    A = "A"
    B = "B"


class Direction(StrEnum):
    x_dom_y = "XdomY"
    y_dom_x = "YdomX"
    equal = "Equal"
    none = "None"


class VerdictMethod(StrEnum):
    gram = "gram"
    separation = "separation"
    oracle = "oracle"


class ProvenanceKind(StrEnum):
    deep_root = "deep_root"
    dihedral_pair = "dihedral_pair"
    orbit = "orbit"


class Projection(StrEnum):
    barycentric2 = "barycentric2"
    barycentric3 = "barycentric3"
    polygon = "polygon"


class Layer(StrEnum):
    roots = "roots"
    conic = "conic"
    limits = "limits"
    labels = "labels"
