"""JSON document formats and CSV trace output.

Hamiltonian document:   {"d": int, "matrix": [[[re, im], ...], ...]}
                        or {"preset": "<name>"}
Sequence document:      {"d": int, "period_T": float,
                         "frames": [{"weight": w, "matrix": ...,
                                     "recipe": ["pi/2:X1:+", ...]}, ...]}
Synthesis report:       {"status", "beta_star", "residual",
                         "frames_used", "composite_set_size", ...}
Trace CSV:              header "t,F", 12 significant digits.

Complex numbers are serialized as [re, im] pairs.  Floats go through
Python's shortest-round-trip repr, so write-then-read reproduces
in-memory values bit-exactly.
"""

from __future__ import annotations

import csv
import json
from pathlib import Path

import numpy as np

from .basis import build_basis
from .cmatrix import TwoQuditInteraction, to_interaction, validate_interaction
from .errors import DocumentError
from .linalg import is_unitary
from .presets import preset
from .pulses import PulseSequence, recipe_unitary
from .synthesis import SynthesisResult


def matrix_to_json(a: np.ndarray) -> list:
    return [[[float(x.real), float(x.imag)] for x in row] for row in np.asarray(a, complex)]


def _matrix_from_json(rows, what: str) -> np.ndarray:
    try:
        arr = np.array([[complex(re, im) for re, im in row] for row in rows])
    except (TypeError, ValueError) as exc:
        raise DocumentError(f"{what}: entries must be [re, im] pairs ({exc})") from None
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise DocumentError(f"{what}: expected a square matrix, got shape {arr.shape}")
    return arr


def load_json(path: str | Path) -> dict:
    try:
        text = Path(path).read_text()
    except OSError:
        raise
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(
            f"{path}: JSON parse error at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from None


def dump_json(doc: dict, path: str | Path) -> None:
    Path(path).write_text(json.dumps(doc, indent=1, sort_keys=True) + "\n")


# -- Hamiltonian documents ---------------------------------------------------

def interaction_to_doc(h: TwoQuditInteraction) -> dict:
    return {"d": h.d, "matrix": matrix_to_json(h.h)}


def doc_to_interaction(doc: dict) -> TwoQuditInteraction:
    if "preset" in doc:
        c = preset(doc["preset"])
        return to_interaction(c, build_basis(c.d))
    if "d" not in doc or "matrix" not in doc:
        raise DocumentError("Hamiltonian document needs either 'preset' or 'd' + 'matrix'")
    d = int(doc["d"])
    mat = _matrix_from_json(doc["matrix"], "Hamiltonian matrix")
    if mat.shape != (d * d, d * d):
        raise DocumentError(f"Hamiltonian matrix must be {d * d} x {d * d}, got {mat.shape}")
    return TwoQuditInteraction(d=d, h=mat)


def read_interaction(path: str | Path) -> TwoQuditInteraction:
    return doc_to_interaction(load_json(path))


# -- Sequence documents ------------------------------------------------------

def sequence_to_doc(seq: PulseSequence,
                    recipes: tuple[tuple[str, ...], ...] | None = None) -> dict:
    frames = []
    for i in range(len(seq)):
        entry: dict = {"weight": float(seq.weights[i]),
                       "matrix": matrix_to_json(seq.frames[i])}
        if recipes is not None and i < len(recipes):
            entry["recipe"] = list(recipes[i])
        frames.append(entry)
    return {"d": seq.d, "period_T": float(seq.period_T), "frames": frames}


def doc_to_sequence(doc: dict) -> PulseSequence:
    for key in ("d", "period_T", "frames"):
        if key not in doc:
            raise DocumentError(f"sequence document is missing {key!r}")
    d = int(doc["d"])
    basis = build_basis(d)
    frames, weights = [], []
    for i, entry in enumerate(doc["frames"]):
        if "weight" not in entry:
            raise DocumentError(f"frame {i} has no weight")
        weights.append(float(entry["weight"]))
        if "matrix" in entry:
            u = _matrix_from_json(entry["matrix"], f"frame {i}")
        elif "recipe" in entry:
            u = recipe_unitary(entry["recipe"], basis)
        else:
            raise DocumentError(f"frame {i} needs either 'matrix' or 'recipe'")
        frames.append(u)
    return PulseSequence(d=d, frames=np.array(frames), weights=np.array(weights),
                         period_T=float(doc["period_T"]))


def read_sequence(path: str | Path) -> PulseSequence:
    return doc_to_sequence(load_json(path))


def write_sequence(seq: PulseSequence, path: str | Path,
                   recipes: tuple[tuple[str, ...], ...] | None = None) -> None:
    dump_json(sequence_to_doc(seq, recipes), path)


# -- Synthesis reports -------------------------------------------------------

def report_to_doc(result: SynthesisResult) -> dict:
    doc = {
        "status": result.status,
        "beta_star": result.beta_star,
        "residual": None if np.isnan(result.residual) else result.residual,
        "frames_used": result.frames_used,
        "composite_set_size": result.composite_set_size,
    }
    if result.message:
        doc["message"] = result.message
    if result.aniso_beta_max is not None:
        doc["aniso_beta_max"] = result.aniso_beta_max
    return doc


def write_report(result: SynthesisResult, path: str | Path) -> None:
    dump_json(report_to_doc(result), path)


# -- Fidelity traces ---------------------------------------------------------

def write_trace_csv(times: np.ndarray, values: np.ndarray, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["t", "F"])
        for t, f in zip(times, values):
            writer.writerow([f"{t:.12g}", f"{f:.12g}"])


# -- Validation --------------------------------------------------------------

def validate_documents(path: str | Path, tol: float = 1e-9) -> list[str]:
    """Check a Hamiltonian or sequence document against its invariants.

    Returns one diagnostic string per violation; an empty list means the
    document is valid.
    """
    doc = load_json(path)
    issues: list[str] = []
    if "preset" in doc:
        try:
            preset(doc["preset"])
        except Exception as exc:  # noqa: BLE001
            issues.append(str(exc))
        return issues
    if "matrix" in doc:
        try:
            d = int(doc.get("d", 0))
            mat = _matrix_from_json(doc["matrix"], "Hamiltonian matrix")
            if d < 2:
                issues.append(f"invalid dimension d = {d}")
            elif mat.shape != (d * d, d * d):
                issues.append(f"matrix shape {mat.shape} does not match d = {d}")
            else:
                validate_interaction(mat, d, tol=tol)
        except DocumentError as exc:
            issues.append(str(exc))
        except Exception as exc:  # noqa: BLE001 - each invariant violation is a diagnostic
            issues.append(str(exc))
        return issues
    if "frames" in doc:
        weights = []
        d = int(doc.get("d", 0))
        if d < 2:
            issues.append(f"invalid dimension d = {d}")
            return issues
        basis = build_basis(d)
        if float(doc.get("period_T", 0.0)) <= 0:
            issues.append(f"period_T must be positive, got {doc.get('period_T')!r}")
        for i, entry in enumerate(doc["frames"]):
            if "weight" not in entry:
                issues.append(f"frame {i}: missing weight")
                continue
            w = float(entry["weight"])
            weights.append(w)
            if w < 0:
                issues.append(f"frame {i}: negative weight {w!r}")
            try:
                if "matrix" in entry:
                    u = _matrix_from_json(entry["matrix"], f"frame {i}")
                elif "recipe" in entry:
                    u = recipe_unitary(entry["recipe"], basis)
                else:
                    issues.append(f"frame {i}: needs 'matrix' or 'recipe'")
                    continue
                if u.shape != (d, d):
                    issues.append(f"frame {i}: expected {d} x {d}, got {u.shape}")
                elif not is_unitary(u, tol):
                    dev = np.abs(u.conj().T @ u - np.eye(d)).max()
                    issues.append(f"frame {i}: not unitary, max |u^+ u - I| = {dev:.3e} "
                                  f"(tolerance {tol:g})")
            except Exception as exc:  # noqa: BLE001
                issues.append(f"frame {i}: {exc}")
        if weights and abs(sum(weights) - 1.0) > tol:
            issues.append(f"frame weights sum to {sum(weights)!r}, expected 1 "
                          f"(tolerance {tol:g})")
        return issues
    issues.append("unrecognized document: expected a Hamiltonian or sequence")
    return issues
