"""Discrete spectral domains: graded cochain spaces with a symmetric Dirac matrix.

Three families are built here:

* the unit circle with a real trigonometric band-limited basis,
* flat unit tori in dimension 2 or 3 with band-limited trigonometric
  k-form components,
* finite abstract simplicial complexes with signed incidence matrices.

Every domain carries the exterior-derivative blocks d_k, the assembled
symmetric Dirac matrix D = d + d^T and its full eigendecomposition.  The
basis is orthonormal, so adjoints are plain transposes and one dense
symmetric eigensolver covers everything.
"""

from __future__ import annotations

import json
import math
from collections import namedtuple
from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

__all__ = [
    "DomainSizeError",
    "ComplexClosureError",
    "Cochain",
    "SpectralDomain",
    "SimplicialComplex",
    "build_circle_domain",
    "build_torus_domain",
    "build_simplicial_domain",
    "spectrum_by_degree",
    "domain_spectra_json",
]

EIGEN_RESIDUAL_BOUND = 1e-10
DEFAULT_DIMENSION_CAP = 6000

# phase is "const", "cos" or "sin"; mode is a frequency vector (empty for
# simplicial domains); subset is the ordered axis tuple of the form component.
BasisLabel = namedtuple("BasisLabel", "degree subset phase mode")


class DomainSizeError(ValueError):
    """Requested domain exceeds the configured dense-matrix cap."""


class ComplexClosureError(ValueError):
    """Simplicial input is not closed under taking faces."""


@dataclass(frozen=True)
class Cochain:
    """Coefficient vector of a form in a domain basis, tagged with degree.

    degree None marks a mixed-degree vector over the whole graded space
    (produced e.g. by odd functions of the Dirac operator).
    """

    degree: int | None
    coefficients: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coefficients", np.asarray(self.coefficients, dtype=float))

    @property
    def is_mixed(self) -> bool:
        return self.degree is None

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))


@dataclass(frozen=True)
class SpectralDomain:
    """Graded complex with Dirac eigendecomposition.

    grading[k] is the dimension of the degree-k cochain space,
    d_blocks[k] maps degree k to k+1, eigenvalues/eigenvectors decompose
    the stacked symmetric Dirac matrix.
    """

    name: str
    q: int
    grading: tuple[int, ...]
    d_blocks: tuple[np.ndarray, ...]
    dirac: np.ndarray
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    labels: tuple[BasisLabel, ...] | None = None
    offsets: tuple[int, ...] = field(default=())

    @property
    def total_dim(self) -> int:
        return int(sum(self.grading))

    @property
    def top_degree(self) -> int:
        return len(self.grading) - 1

    def degree_slice(self, k: int) -> slice:
        if not (0 <= k <= self.top_degree):
            raise ValueError(f"degree {k} out of range for {self.name}")
        return slice(self.offsets[k], self.offsets[k] + self.grading[k])

    def cochain(self, degree: int, coefficients) -> Cochain:
        coefficients = np.asarray(coefficients, dtype=float)
        if coefficients.shape != (self.grading[degree],):
            raise ValueError(
                f"degree-{degree} cochain needs {self.grading[degree]} coefficients, "
                f"got shape {coefficients.shape}"
            )
        return Cochain(degree, coefficients)

    def zero_cochain(self, degree: int) -> Cochain:
        return Cochain(degree, np.zeros(self.grading[degree]))

    def embed(self, c: Cochain) -> np.ndarray:
        if c.is_mixed:
            return np.array(c.coefficients, dtype=float)
        vec = np.zeros(self.total_dim)
        vec[self.degree_slice(c.degree)] = c.coefficients
        return vec

    def extract(self, degree: int, vec: np.ndarray) -> Cochain:
        return Cochain(degree, np.array(vec[self.degree_slice(degree)]))

    def d_full(self) -> np.ndarray:
        """The stacked exterior derivative (strictly lower block structure)."""
        n = self.total_dim
        out = np.zeros((n, n))
        for k, blk in enumerate(self.d_blocks):
            out[self.degree_slice(k + 1), self.degree_slice(k)] = blk
        return out

    def laplacian(self) -> np.ndarray:
        return self.dirac @ self.dirac


def _assemble(name, q, grading, d_blocks, labels=None) -> SpectralDomain:
    offsets = tuple(int(x) for x in np.concatenate([[0], np.cumsum(grading)[:-1]]))
    n = int(sum(grading))
    dirac = np.zeros((n, n))
    for k, blk in enumerate(d_blocks):
        r = slice(offsets[k + 1], offsets[k + 1] + grading[k + 1])
        c = slice(offsets[k], offsets[k] + grading[k])
        dirac[r, c] = blk
        dirac[c, r] = blk.T
    # d_{k+1} d_k must vanish; exact for integer incidence, ~1e-13 for trig.
    for k in range(len(d_blocks) - 1):
        comp = d_blocks[k + 1] @ d_blocks[k]
        worst = float(np.max(np.abs(comp))) if comp.size else 0.0
        if worst > 1e-12 * max(1.0, float(np.max(np.abs(d_blocks[k])))):
            raise AssertionError(f"d o d = {worst} on degree {k} of {name}")
    eigenvalues, eigenvectors = np.linalg.eigh(dirac)
    residual = np.linalg.norm(dirac @ eigenvectors - eigenvectors * eigenvalues, axis=0)
    worst = float(residual.max()) if residual.size else 0.0
    scale = max(1.0, float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 1.0)
    if worst > EIGEN_RESIDUAL_BOUND * scale:
        raise AssertionError(f"eigendecomposition residual {worst} on {name}")
    return SpectralDomain(
        name=name,
        q=q,
        grading=tuple(int(g) for g in grading),
        d_blocks=tuple(np.asarray(b, dtype=float) for b in d_blocks),
        dirac=dirac,
        eigenvalues=eigenvalues,
        eigenvectors=eigenvectors,
        labels=tuple(labels) if labels is not None else None,
        offsets=offsets,
    )


# ---------------------------------------------------------------------------
# circle
# ---------------------------------------------------------------------------


def _scalar_modes_1d(max_freq: int):
    labels = [("const", (0,))]
    for k in range(1, max_freq + 1):
        labels.append(("cos", (k,)))
        labels.append(("sin", (k,)))
    return labels


def build_circle_domain(max_freq: int) -> SpectralDomain:
    """Unit circle: 0- and 1-forms over {1, sqrt2 cos 2 pi k x, sqrt2 sin 2 pi k x}.

    Dirac eigenvalues are {0, 0} plus +-2 pi k, each twice.
    """
    if max_freq < 1:
        raise ValueError("max_freq must be >= 1")
    scalars = _scalar_modes_1d(max_freq)
    n = len(scalars)
    d0 = np.zeros((n, n))
    for idx, (phase, mode) in enumerate(scalars):
        k = mode[0]
        if phase == "cos":
            d0[idx + 1, idx] = -2.0 * math.pi * k  # cos -> -w sin, sin row follows cos
        elif phase == "sin":
            d0[idx - 1, idx] = 2.0 * math.pi * k
    labels = [BasisLabel(0, (), p, m) for p, m in scalars]
    labels += [BasisLabel(1, (0,), p, m) for p, m in scalars]
    return _assemble("circle", 1, (n, n), (d0,), labels)


# ---------------------------------------------------------------------------
# flat torus form spaces
# ---------------------------------------------------------------------------


def _canonical_modes(q: int, max_freq: int):
    """Zero mode plus one representative per +-m pair (first nonzero > 0)."""
    modes = [(0,) * q]
    for m in iter_modes(q, max_freq):
        lead = next((c for c in m if c), 0)
        if lead > 0:
            modes.append(m)
    return modes


def iter_modes(q: int, max_freq: int):
    ranges = [range(-max_freq, max_freq + 1)] * q
    out = [()]
    for r in ranges:
        out = [m + (c,) for m in out for c in r]
    return [m for m in out if any(m)]


def _scalar_basis(q: int, max_freq: int):
    basis = []
    for m in _canonical_modes(q, max_freq):
        if not any(m):
            basis.append(("const", m))
        else:
            basis.append(("cos", m))
            basis.append(("sin", m))
    return basis


def _partial_matrix(scalars, axis: int) -> np.ndarray:
    """d/dx_axis in the orthonormal trig scalar basis."""
    index = {lbl: i for i, lbl in enumerate(scalars)}
    n = len(scalars)
    mat = np.zeros((n, n))
    for i, (phase, mode) in enumerate(scalars):
        w = 2.0 * math.pi * mode[axis]
        if phase == "cos" and w:
            mat[index[("sin", mode)], i] = -w
        elif phase == "sin" and w:
            mat[index[("cos", mode)], i] = w
    return mat


def build_torus_domain(q: int, max_freq: int, dimension_cap: int = DEFAULT_DIMENSION_CAP) -> SpectralDomain:
    """Full graded complex of band-limited trig forms on the flat unit q-torus."""
    if q not in (2, 3):
        raise ValueError("torus domains support q in {2, 3}")
    if max_freq < 1:
        raise ValueError("max_freq must be >= 1")
    scalars = _scalar_basis(q, max_freq)
    n_scalar = len(scalars)
    total = n_scalar * 2**q
    if total > dimension_cap:
        raise DomainSizeError(
            f"torus q={q}, max_freq={max_freq} needs total dimension {total} "
            f"above the cap {dimension_cap}"
        )
    partials = [_partial_matrix(scalars, axis) for axis in range(q)]
    subsets = [list(combinations(range(q), k)) for k in range(q + 1)]
    grading = [len(subsets[k]) * n_scalar for k in range(q + 1)]

    d_blocks = []
    for k in range(q):
        rows, cols = grading[k + 1], grading[k]
        blk = np.zeros((rows, cols))
        col_of = {s: i for i, s in enumerate(subsets[k])}
        row_of = {s: i for i, s in enumerate(subsets[k + 1])}
        for subset in subsets[k]:
            c0 = col_of[subset] * n_scalar
            for axis in range(q):
                if axis in subset:
                    continue
                pos = sum(1 for a in subset if a < axis)
                sign = -1.0 if pos % 2 else 1.0
                target = tuple(sorted(subset + (axis,)))
                r0 = row_of[target] * n_scalar
                blk[r0 : r0 + n_scalar, c0 : c0 + n_scalar] += sign * partials[axis]
        d_blocks.append(blk)

    labels = []
    for k in range(q + 1):
        for subset in subsets[k]:
            labels += [BasisLabel(k, subset, p, m) for p, m in scalars]
    return _assemble(f"torus{q}", q, tuple(grading), tuple(d_blocks), labels)


# ---------------------------------------------------------------------------
# simplicial complexes
# ---------------------------------------------------------------------------


class SimplicialComplex:
    """Finite abstract simplicial complex with sorted-vertex orientation."""

    def __init__(self, simplices):
        seen = set()
        for s in simplices:
            s = tuple(sorted(int(v) for v in s))
            if not s or len(set(s)) != len(s):
                raise ValueError(f"bad simplex {s}")
            seen.add(s)
        if not seen:
            raise ValueError("empty complex")
        for s in sorted(seen, key=len, reverse=True):
            if len(s) == 1:
                continue
            for face in combinations(s, len(s) - 1):
                if face not in seen:
                    raise ComplexClosureError(
                        f"complex is not downward closed: face {face} of {s} is missing"
                    )
        self.by_dim: list[list[tuple[int, ...]]] = []
        top = max(len(s) for s in seen) - 1
        for k in range(top + 1):
            self.by_dim.append(sorted(s for s in seen if len(s) == k + 1))

    @classmethod
    def from_maximal(cls, faces) -> "SimplicialComplex":
        closed = set()
        for f in faces:
            f = tuple(sorted(int(v) for v in f))
            for size in range(1, len(f) + 1):
                closed.update(combinations(f, size))
        return cls(closed)

    @classmethod
    def from_json(cls, source) -> "SimplicialComplex":
        """Accepts a dict, a JSON string, or a path to a JSON file."""
        if isinstance(source, dict):
            payload = source
        else:
            text = str(source)
            if text.lstrip().startswith("{"):
                payload = json.loads(text)
            else:
                with open(text, "r", encoding="utf-8") as fh:
                    payload = json.load(fh)
        if "simplices" not in payload:
            raise ValueError('JSON complex must have a "simplices" key')
        return cls(payload["simplices"])

    def to_json(self) -> dict:
        return {"simplices": [list(s) for layer in self.by_dim for s in layer]}

    @property
    def top_dimension(self) -> int:
        return len(self.by_dim) - 1

    def counts(self) -> tuple[int, ...]:
        return tuple(len(layer) for layer in self.by_dim)

    def incidence(self, k: int) -> np.ndarray:
        """Signed coboundary from k-simplices to (k+1)-simplices.

        Entry is (-1)^i when deleting the i-th vertex of the larger simplex
        gives the smaller one; exact integers, so d o d = 0 exactly.
        """
        rows = {s: i for i, s in enumerate(self.by_dim[k + 1])}
        cols = {s: i for i, s in enumerate(self.by_dim[k])}
        mat = np.zeros((len(rows), len(cols)))
        for s, r in rows.items():
            for i in range(len(s)):
                face = s[:i] + s[i + 1 :]
                mat[r, cols[face]] = -1.0 if i % 2 else 1.0
        return mat


def build_simplicial_domain(complex_: SimplicialComplex) -> SpectralDomain:
    """Dirac domain of a finite simplicial complex (q = top dimension)."""
    top = complex_.top_dimension
    grading = complex_.counts()
    d_blocks = tuple(complex_.incidence(k) for k in range(top))
    return _assemble("simplicial", max(top, 1), grading, d_blocks, labels=None)


# ---------------------------------------------------------------------------
# spectra export
# ---------------------------------------------------------------------------


def spectrum_by_degree(domain: SpectralDomain, degree: int) -> np.ndarray:
    """Eigenvalues of the Hodge Laplacian restricted to one degree."""
    block = domain.laplacian()[domain.degree_slice(degree), domain.degree_slice(degree)]
    block = 0.5 * (block + block.T)
    return np.linalg.eigvalsh(block)


def domain_spectra_json(domain: SpectralDomain) -> list[dict]:
    """Laplacian spectra per degree in the documented JSON shape."""
    return [
        {"degree": k, "eigenvalues": [float(v) for v in spectrum_by_degree(domain, k)]}
        for k in range(domain.top_degree + 1)
    ]
