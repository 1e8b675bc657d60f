"""Graph specifications, couplings, and Hamiltonian assembly.

Builds dense real matrices for three discrete lattice families:

* ``chain`` : an n-point path with Dirichlet ends, tridiag(-1, 2, -1).
* ``star``  : q equal arms of length ``arm_len`` glued at a hub.
* ``loop``  : two outer wedges of K points each, joined through two hub
  vertices by an upper and a lower loop branch of L points each
  (dimension N = 2K + 2L).

Site ordering for the loop family is fixed once and for all: left wedge
from the free end inward (positions 1..K, hub at position K), upper loop
branch (K+1..K+L), lower loop branch (K+L+1..K+2L), then the right wedge
from the hub outward (K+2L+1..2K+2L, hub at position K+2L+1).  The
closed-form metric formulas in :mod:`quasiherm.metric` assume exactly
this ordering.

Couplings enter antisymmetrically on selected bonds: a bond carrying
coupling ``c`` contributes the entry pair (-1-c, -1+c) instead of
(-1, -1), with the -1-c entry always in the row of the vertex farther
from the loop (the free-end side for ``z``, the hub side for ``g``/``h``).
``z`` sits on the two outermost wedge bonds.  ``g`` and ``h`` sit on the
four hub-to-loop bonds with a left/right swap: the left hub couples to
the upper branch with ``g`` and to the lower branch with ``h``, the right
hub couples to the upper branch with ``h`` and to the lower branch with
``g``.  For L > 1 the interior loop bonds stay plain (-1, -1); only the
four hub bonds carry ``g``/``h``.  That placement is the natural
extension of the explicit L = 1 pattern and is the convention used
throughout this package.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

import numpy as np

# |1 + value| below this counts as a singular denominator in the
# closed-form metric expressions.
SINGULAR_TOL = 1e-12


class GraphKind(Enum):
    CHAIN = "chain"
    STAR = "star"
    LOOP = "loop"


@dataclass(frozen=True)
class GraphSpec:
    """Declarative description of one lattice: kind plus its size fields.

    Only the fields relevant to ``kind`` may be set; use the ``chain``,
    ``star`` and ``loop`` constructors rather than filling fields by hand.
    """

    kind: GraphKind
    n_points: int | None = None
    q: int | None = None
    arm_len: int | None = None
    K: int | None = None
    L: int | None = None

    def __post_init__(self):
        if self.kind is GraphKind.CHAIN:
            if self.n_points is None or self.n_points < 1:
                raise ValueError(f"chain needs n_points >= 1, got {self.n_points}")
        elif self.kind is GraphKind.STAR:
            if self.q is None or self.q < 2:
                raise ValueError(f"star needs q >= 2 arms, got {self.q}")
            if self.arm_len is None or self.arm_len < 1:
                raise ValueError(f"star needs arm_len >= 1, got {self.arm_len}")
        elif self.kind is GraphKind.LOOP:
            # K = 1 would merge the hub with the wedge endpoint and leave no
            # unambiguous bond for z; rejected rather than guessed.
            if self.K is None or self.K < 2:
                raise ValueError(f"loop needs K >= 2, got {self.K}")
            if self.L is None or self.L < 1:
                raise ValueError(f"loop needs L >= 1, got {self.L}")

    @classmethod
    def chain(cls, n_points: int) -> "GraphSpec":
        return cls(GraphKind.CHAIN, n_points=n_points)

    @classmethod
    def star(cls, q: int, arm_len: int) -> "GraphSpec":
        return cls(GraphKind.STAR, q=q, arm_len=arm_len)

    @classmethod
    def loop(cls, K: int, L: int = 1) -> "GraphSpec":
        return cls(GraphKind.LOOP, K=K, L=L)

    @property
    def dimension(self) -> int:
        if self.kind is GraphKind.CHAIN:
            return self.n_points
        if self.kind is GraphKind.STAR:
            return self.q * self.arm_len + 1
        return 2 * self.K + 2 * self.L

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value}
        for name in ("n_points", "q", "arm_len", "K", "L"):
            value = getattr(self, name)
            if value is not None:
                d[name] = value
        return d


@dataclass(frozen=True)
class Couplings:
    """The three real bond couplings (g, h, z).

    ``gamma`` and ``delta`` are the symmetric / antisymmetric combinations
    (g+h)/2 and (g-h)/2, so g = gamma + delta and h = gamma - delta.
    """

    g: float = 0.0
    h: float = 0.0
    z: float = 0.0

    @property
    def gamma(self) -> float:
        return 0.5 * (self.g + self.h)

    @property
    def delta(self) -> float:
        return 0.5 * (self.g - self.h)

    @classmethod
    def from_gamma_delta(cls, gamma: float, delta: float, z: float = 0.0) -> "Couplings":
        return cls(g=gamma + delta, h=gamma - delta, z=z)

    def to_dict(self) -> dict:
        return {"g": self.g, "h": self.h, "z": self.z}


@dataclass(frozen=True)
class ValidationReport:
    errors: tuple[str, ...]
    warnings: tuple[str, ...]

    @property
    def valid(self) -> bool:
        return not self.errors


def validate_couplings(c: Couplings) -> ValidationReport:
    """Check couplings against the closed-form formulas' domain.

    Values at -1 make a 1+coupling denominator singular and are reported
    as errors.  Magnitudes >= 1 leave the box where the diagonal metric
    is guaranteed positive definite and are reported as warnings.
    """
    errors = []
    warnings = []
    for name in ("g", "h", "z"):
        value = getattr(c, name)
        if abs(1.0 + value) < SINGULAR_TOL:
            errors.append(f"singular denominator 1+{name} (got {name}={value})")
        elif abs(value) >= 1.0:
            warnings.append(
                f"|{name}|>=1: outside the |{name}|<1 guaranteed-positivity box"
            )
    return ValidationReport(errors=tuple(errors), warnings=tuple(warnings))


def _add_bond(m: np.ndarray, i: int, j: int) -> None:
    m[i, j] = -1.0
    m[j, i] = -1.0


def build_free_chain(n_points: int) -> np.ndarray:
    """Dirichlet discrete Laplacian on n points: 2 on the diagonal, -1 off."""
    if n_points < 1:
        raise ValueError(f"chain needs n_points >= 1, got {n_points}")
    m = 2.0 * np.eye(n_points)
    idx = np.arange(n_points - 1)
    m[idx, idx + 1] = -1.0
    m[idx + 1, idx] = -1.0
    return m


def build_star_lattice(q: int, arm_len: int) -> np.ndarray:
    """Free Laplacian on a q-armed star with ``arm_len`` points per arm.

    Sites are ordered so that q = 2 reproduces ``build_free_chain``
    entry for entry: arm 1 runs from its free end in to the hub
    (positions 0..arm_len-1), the hub sits at position arm_len, arm 2
    continues outward, and arms 3..q are appended hub-first.  The hub
    diagonal is its degree max(q, 2); every other site keeps the
    Dirichlet value 2 regardless of degree.
    """
    if q < 2:
        raise ValueError(f"star needs q >= 2 arms, got {q}")
    if arm_len < 1:
        raise ValueError(f"star needs arm_len >= 1, got {arm_len}")
    n = q * arm_len + 1
    hub = arm_len
    m = 2.0 * np.eye(n)
    m[hub, hub] = float(max(q, 2))
    for i in range(arm_len):  # arm 1 chain, ending in the hub bond
        _add_bond(m, i, i + 1)
    for a in range(1, q):  # arms 2..q, each ordered hub-adjacent first
        start = 1 + a * arm_len
        _add_bond(m, hub, start)
        for i in range(arm_len - 1):
            _add_bond(m, start + i, start + i + 1)
    return m


def loop_coupling_matrices(K: int, L: int) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Affine decomposition of the loop Hamiltonian.

    Returns (base, bg, bh, bz) with H(g, h; z) = base + g*bg + h*bh + z*bz.
    The base matrix is the symmetric free Laplacian of the loop graph; the
    other three carry the antisymmetric +-1 placement of each coupling.
    Useful for assembling whole parameter grids in one vectorized sweep.
    """
    if K < 2:
        raise ValueError(f"loop needs K >= 2, got {K}")
    if L < 1:
        raise ValueError(f"loop needs L >= 1, got {L}")
    n = 2 * K + 2 * L
    left_hub = K - 1
    right_hub = K + 2 * L
    up_first, up_last = K, K + L - 1
    down_first, down_last = K + L, K + 2 * L - 1

    base = 2.0 * np.eye(n)
    base[left_hub, left_hub] = 3.0
    base[right_hub, right_hub] = 3.0
    for i in range(K - 1):  # left wedge
        _add_bond(base, i, i + 1)
    for i in range(K - 1):  # right wedge
        _add_bond(base, right_hub + i, right_hub + i + 1)
    for i in range(L - 1):  # loop branches, interior bonds only
        _add_bond(base, up_first + i, up_first + i + 1)
        _add_bond(base, down_first + i, down_first + i + 1)
    _add_bond(base, left_hub, up_first)
    _add_bond(base, left_hub, down_first)
    _add_bond(base, right_hub, up_last)
    _add_bond(base, right_hub, down_last)

    def antisym(i, j):
        # row i is the side carrying -1-c
        b = np.zeros((n, n))
        b[i, j] = -1.0
        b[j, i] = +1.0
        return b

    bz = antisym(0, 1) + antisym(n - 1, n - 2)
    bg = antisym(left_hub, up_first) + antisym(right_hub, down_last)
    bh = antisym(left_hub, down_first) + antisym(right_hub, up_last)
    return base, bg, bh, bz


def build_loop_hamiltonian(spec: GraphSpec, c: Couplings) -> np.ndarray:
    """Assemble the real N x N loop Hamiltonian, N = 2K + 2L.

    Raises on singular couplings (any of g, h, z equal to -1); magnitudes
    outside the unit box are allowed and merely warned about by
    :func:`validate_couplings`.
    """
    if spec.kind is not GraphKind.LOOP:
        raise ValueError(f"expected a loop spec, got {spec.kind.value}")
    report = validate_couplings(c)
    if not report.valid:
        raise ValueError("; ".join(report.errors))
    base, bg, bh, bz = loop_coupling_matrices(spec.K, spec.L)
    return base + c.g * bg + c.h * bh + c.z * bz


def build_hamiltonian(spec: GraphSpec, c: Couplings | None = None) -> np.ndarray:
    """Dispatch on the graph kind; couplings are required for loops only."""
    if spec.kind is GraphKind.CHAIN:
        return build_free_chain(spec.n_points)
    if spec.kind is GraphKind.STAR:
        return build_star_lattice(spec.q, spec.arm_len)
    return build_loop_hamiltonian(spec, c if c is not None else Couplings())


# ---------------------------------------------------------------------------
# matrix wire format
# ---------------------------------------------------------------------------
# {"n": int, "complex": bool, "data": [row-major numbers; complex entries as
#  flat re, im pairs], "meta": {"graph": ..., "couplings": {...} | null}}
# Numbers serialize at full precision (shortest round-trip decimal), so a
# JSON round trip is lossless for binary64 data.


def matrix_to_dict(
    m: np.ndarray,
    graph: GraphSpec | None = None,
    couplings: Couplings | None = None,
) -> dict:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    is_complex = np.iscomplexobj(m)
    if is_complex:
        flat = np.column_stack([m.real.ravel(), m.imag.ravel()]).ravel()
    else:
        flat = m.astype(float).ravel()
    return {
        "n": int(m.shape[0]),
        "complex": bool(is_complex),
        "data": [float(x) for x in flat],
        "meta": {
            "graph": graph.to_dict() if graph is not None else None,
            "couplings": couplings.to_dict() if couplings is not None else None,
        },
    }


def matrix_from_dict(d: dict) -> np.ndarray:
    n = int(d["n"])
    data = np.asarray(d["data"], dtype=float)
    if d.get("complex", False):
        if data.size != 2 * n * n:
            raise ValueError(f"expected {2 * n * n} numbers for a complex {n}x{n} matrix")
        pairs = data.reshape(n * n, 2)
        return (pairs[:, 0] + 1j * pairs[:, 1]).reshape(n, n)
    if data.size != n * n:
        raise ValueError(f"expected {n * n} numbers for a real {n}x{n} matrix")
    return data.reshape(n, n)


def matrix_to_json(
    m: np.ndarray,
    graph: GraphSpec | None = None,
    couplings: Couplings | None = None,
) -> str:
    return json.dumps(matrix_to_dict(m, graph, couplings), indent=2)


def matrix_from_json(text: str) -> np.ndarray:
    return matrix_from_dict(json.loads(text))
