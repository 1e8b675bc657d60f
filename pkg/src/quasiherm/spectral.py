"""Eigenvalue computation, reality classification, and the K=2 closed form.

Eigenvalues are always reported sorted by (real part, imaginary part).
A spectrum counts as all-real when max |Im| <= tol * max(1, max |eigenvalue|);
the same scaled tolerance drives the clustering used for multiplicities.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Couplings

REALITY_TOL = 1e-9


class EigensolverError(RuntimeError):
    """Dense eigensolver failed to converge."""


@dataclass(frozen=True)
class SpectrumReport:
    """Sorted eigenvalues with a reality verdict and multiplicity clusters."""

    eigenvalues: np.ndarray
    all_real: bool
    tol: float
    multiplicities: tuple[tuple[complex, int], ...]

    @property
    def n(self) -> int:
        return self.eigenvalues.size

    @property
    def max_abs_imag(self) -> float:
        return float(np.max(np.abs(self.eigenvalues.imag))) if self.n else 0.0

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [[float(v.real), float(v.imag)] for v in self.eigenvalues],
            "all_real": bool(self.all_real),
            "tol": float(self.tol),
            "clusters": [
                [float(v.real), float(v.imag), int(count)]
                for v, count in self.multiplicities
            ],
        }


@dataclass(frozen=True)
class MatchReport:
    distance: float
    tol: float
    passed: bool


def sort_eigenvalues(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values, dtype=complex)
    order = np.lexsort((values.imag, values.real))
    return values[order]


def _cluster(sorted_values: np.ndarray, tol: float) -> tuple[tuple[complex, int], ...]:
    groups: list[list[complex]] = []
    for v in sorted_values:
        if groups and abs(v - groups[-1][-1]) <= tol * max(1.0, abs(v)):
            groups[-1].append(v)
        else:
            groups.append([v])
    return tuple((complex(np.mean(g)), len(g)) for g in groups)


def _report(values: np.ndarray, tol: float) -> SpectrumReport:
    values = sort_eigenvalues(values)
    scale = max(1.0, float(np.max(np.abs(values)))) if values.size else 1.0
    all_real = bool(np.max(np.abs(values.imag), initial=0.0) <= tol * scale)
    return SpectrumReport(
        eigenvalues=values,
        all_real=all_real,
        tol=tol,
        multiplicities=_cluster(values, tol),
    )


def eigenvalues(m: np.ndarray, tol: float = REALITY_TOL) -> SpectrumReport:
    """Full spectrum of a dense square matrix, sorted by (Re, Im)."""
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    if not np.all(np.isfinite(m.real)) or (np.iscomplexobj(m) and not np.all(np.isfinite(m.imag))):
        raise ValueError("matrix has non-finite entries")
    try:
        values = np.linalg.eigvals(m)
    except np.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"eigensolver did not converge on a {m.shape[0]}x{m.shape[0]} matrix"
        ) from exc
    return _report(values, tol)


def closed_form_spectrum_k2(c: Couplings, tol: float = REALITY_TOL) -> SpectrumReport:
    """Explicit spectrum of the K=2, L=1 loop Hamiltonian.

    The six levels are the constant doublet {2, 2} plus
    5/2 +- sqrt(21 - 16*gamma^2 - 4*z^2)/2 and
    5/2 +- sqrt(5 - 16*delta^2 - 4*z^2)/2,
    with complex square roots outside the reality domain.
    """
    r_gamma = 21.0 - 16.0 * c.gamma**2 - 4.0 * c.z**2
    r_delta = 5.0 - 16.0 * c.delta**2 - 4.0 * c.z**2
    s_gamma = np.sqrt(complex(r_gamma))
    s_delta = np.sqrt(complex(r_delta))
    values = np.array(
        [
            2.0,
            2.0,
            2.5 - 0.5 * s_gamma,
            2.5 + 0.5 * s_gamma,
            2.5 - 0.5 * s_delta,
            2.5 + 0.5 * s_delta,
        ],
        dtype=complex,
    )
    return _report(values, tol)


def spectra_match(a: SpectrumReport, b: SpectrumReport, tol: float = 1e-10) -> MatchReport:
    """Compare two spectra after sorting both by (Re, Im).

    The distance is the largest modulus of the elementwise differences of
    the sorted lists.
    """
    if a.n != b.n:
        raise ValueError(f"spectra have different sizes: {a.n} vs {b.n}")
    if a.n == 0:
        return MatchReport(distance=0.0, tol=tol, passed=True)
    distance = float(np.max(np.abs(a.eigenvalues - b.eigenvalues)))
    return MatchReport(distance=distance, tol=tol, passed=distance <= tol)
