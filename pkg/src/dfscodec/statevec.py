"""Dense state vectors over n qudits of local dimension d.

Addressing is big-endian: qudit 0 is the most significant digit, so the basis
index of |i_0 i_1 ... i_{n-1}> is sum_k i_k * d**(n-1-k).  One convention is
used everywhere in the package; conversions never happen at module borders.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    BadTarget,
    DimensionMismatch,
    NonOrthogonalProjectors,
    ResourceLimit,
)

MAX_AMPLITUDES = 2**24
NORM_TOL = 1e-10
UNITARY_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class StateVector:
    """Normalized amplitudes over (C_d)^(x n)."""

    d: int
    n: int
    amps: np.ndarray

    def __post_init__(self) -> None:
        self.amps.setflags(write=False)

    @classmethod
    def from_amplitudes(cls, d: int, n: int, amps, *, normalize: bool = False) -> "StateVector":
        if d < 2 or n < 1:
            raise DimensionMismatch(f"need d >= 2 and n >= 1, got d={d}, n={n}")
        size = d**n
        if size > MAX_AMPLITUDES:
            raise ResourceLimit(f"d**n = {size} exceeds the dense guard {MAX_AMPLITUDES}")
        arr = np.array(amps, dtype=np.complex128).reshape(-1)
        if arr.size != size:
            raise DimensionMismatch(f"expected {size} amplitudes, got {arr.size}")
        norm = np.linalg.norm(arr)
        if normalize:
            if norm == 0:
                raise DimensionMismatch("cannot normalize the zero vector")
            arr = arr / norm
        elif abs(norm - 1.0) > NORM_TOL:
            raise DimensionMismatch(f"state norm {norm} deviates from 1 beyond {NORM_TOL}")
        return cls(d=d, n=n, amps=arr)

    def tensor(self) -> np.ndarray:
        return self.amps.reshape([self.d] * self.n)

    def digit_index(self, digits) -> int:
        return int(np.ravel_multi_index(tuple(digits), (self.d,) * self.n))


def basis_state(d: int, n: int, index: int = 0) -> StateVector:
    amps = np.zeros(d**n, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector.from_amplitudes(d, n, amps)


def product_state(a: StateVector, b: StateVector) -> StateVector:
    if a.d != b.d:
        raise DimensionMismatch(f"local dimensions differ: {a.d} vs {b.d}")
    return StateVector.from_amplitudes(a.d, a.n + b.n, np.kron(a.amps, b.amps))


def random_state(d: int, n: int, rng: np.random.Generator) -> StateVector:
    amps = rng.normal(size=d**n) + 1j * rng.normal(size=d**n)
    return StateVector.from_amplitudes(d, n, amps, normalize=True)


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def _check_unitary(u: np.ndarray, dim: int, tol: float = UNITARY_TOL) -> None:
    if u.shape != (dim, dim):
        raise DimensionMismatch(f"operator must be {dim}x{dim}, got {u.shape}")
    if np.max(np.abs(u.conj().T @ u - np.eye(dim))) > tol:
        raise DimensionMismatch("operator is not unitary within tolerance")


def apply_local(state: StateVector, u: np.ndarray, target: int) -> StateVector:
    """Apply a d x d unitary to one qudit."""
    u = np.asarray(u, dtype=np.complex128)
    _check_unitary(u, state.d)
    if not 0 <= target < state.n:
        raise BadTarget(f"target {target} out of range for {state.n} qudits")
    tensor = state.tensor()
    moved = np.moveaxis(tensor, target, -1)
    out = np.moveaxis(moved @ u.T, -1, target)
    return StateVector(d=state.d, n=state.n, amps=out.reshape(-1))


def apply_collective(state: StateVector, u: np.ndarray, targets=None) -> StateVector:
    """Apply the same single-qudit unitary to every listed qudit (default: all)."""
    if targets is None:
        targets = range(state.n)
    targets = list(targets)
    if len(set(targets)) != len(targets):
        raise BadTarget(f"duplicate targets in {targets}")
    for t in targets:
        state = apply_local(state, u, t)
    return state


def apply_controlled(state: StateVector, controls, u: np.ndarray, targets) -> StateVector:
    """Apply a unitary on a target block when every control qudit holds its value.

    ``controls`` is a sequence of ``(qudit, required_value)`` pairs; amplitudes
    whose control digits do not match are left bit-exact.
    """
    controls = [(int(w), int(v)) for w, v in controls]
    targets = [int(t) for t in targets]
    control_wires = [w for w, _ in controls]
    if len(set(control_wires)) != len(control_wires) or len(set(targets)) != len(targets):
        raise BadTarget("repeated control or target qudit")
    if set(control_wires) & set(targets):
        raise BadTarget("control and target sets overlap")
    for w, v in controls:
        if not (0 <= w < state.n) or not (0 <= v < state.d):
            raise BadTarget(f"control ({w},{v}) out of range")
    for t in targets:
        if not 0 <= t < state.n:
            raise BadTarget(f"target {t} out of range")
    k = len(targets)
    u = np.asarray(u, dtype=np.complex128)
    _check_unitary(u, state.d**k)

    tensor = state.tensor().copy()
    index: list = [slice(None)] * state.n
    for w, v in controls:
        index[w] = v
    sub = tensor[tuple(index)]
    # axis rank of each target among the non-control wires, in the sliced view
    remaining = [w for w in range(state.n) if w not in control_wires]
    axes = [remaining.index(t) for t in targets]
    moved = np.moveaxis(sub, axes, range(k))
    shape = moved.shape
    flat = moved.reshape(state.d**k, -1)
    flat = u @ flat
    moved = flat.reshape(shape)
    tensor[tuple(index)] = np.moveaxis(moved, range(k), axes)
    return StateVector(d=state.d, n=state.n, amps=tensor.reshape(-1))


@dataclass(frozen=True, eq=False)
class MeasurementRecord:
    """Outcome of a projective measurement on a qudit subset.

    ``outcome`` indexes the offered projectors; ``outcome == len(probabilities) - 1``
    together with ``is_remainder`` marks the leftover projector.
    """

    outcome: int
    probability: float
    probabilities: tuple[float, ...]
    post_state: StateVector
    seed: int
    is_remainder: bool


def _projector_amplitudes(state: StateVector, subset, projectors):
    """Amplitude rows <v_i| B for rank-one projectors |v_i><v_i| on the subset."""
    subset = [int(q) for q in subset]
    if len(set(subset)) != len(subset):
        raise BadTarget("measurement subset has repeats")
    for q in subset:
        if not 0 <= q < state.n:
            raise BadTarget(f"measured qudit {q} out of range")
    k = len(subset)
    dim = state.d**k
    rest = [q for q in range(state.n) if q not in subset]
    tensor = state.tensor().transpose(subset + rest)
    block = tensor.reshape(dim, -1)
    vectors = []
    for p in projectors:
        v = np.asarray(p, dtype=np.complex128).reshape(-1)
        if v.size != dim:
            raise DimensionMismatch(f"projector size {v.size} != {dim}")
        norm = np.linalg.norm(v)
        if abs(norm - 1.0) > 1e-9:
            raise NonOrthogonalProjectors(f"projector vector has norm {norm}")
        vectors.append(v)
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            if abs(np.vdot(vectors[i], vectors[j])) > 1e-9:
                raise NonOrthogonalProjectors(f"projectors {i} and {j} overlap")
    rows = np.array([v.conj() @ block for v in vectors])
    return vectors, rows, block, subset, rest


def outcome_probabilities(state: StateVector, subset, projectors) -> np.ndarray:
    """Exact probabilities of the offered outcomes plus the remainder, in order."""
    _, rows, _, _, _ = _projector_amplitudes(state, subset, projectors)
    probs = np.sum(np.abs(rows) ** 2, axis=1)
    perp = max(0.0, 1.0 - float(np.sum(probs)))
    return np.append(probs, perp)


def project_measure(state: StateVector, subset, projectors, seed: int) -> MeasurementRecord:
    """Sample one outcome of {|v_i><v_i|} plus the remainder on a qudit subset.

    Same seed, same state: same outcome and a bit-identical post state.
    """
    vectors, rows, block, subset, rest = _projector_amplitudes(state, subset, projectors)
    probs = np.sum(np.abs(rows) ** 2, axis=1)
    total = float(np.sum(probs))
    if total > 1.0 + 1e-9:
        raise NonOrthogonalProjectors(f"offered probabilities sum to {total} > 1")
    perp = max(0.0, 1.0 - total)
    all_probs = np.append(probs, perp)

    rng = np.random.default_rng(seed)
    draw = float(rng.random())
    cumulative = np.cumsum(all_probs)
    outcome = int(np.searchsorted(cumulative, draw, side="right"))
    outcome = min(outcome, len(all_probs) - 1)
    is_remainder = outcome == len(vectors)

    if is_remainder:
        kept = block.copy()
        for v, row in zip(vectors, rows):
            kept -= np.outer(v, row)
    else:
        kept = np.outer(vectors[outcome], rows[outcome])
    norm = np.linalg.norm(kept)
    if norm == 0:
        raise NonOrthogonalProjectors("post-measurement state vanished")
    kept = kept / norm
    k = len(subset)
    tensor = kept.reshape([state.d] * state.n)
    inverse = np.argsort(subset + rest)
    post = StateVector(
        d=state.d, n=state.n, amps=tensor.transpose(inverse).reshape(-1)
    )
    return MeasurementRecord(
        outcome=outcome,
        probability=float(all_probs[outcome]),
        probabilities=tuple(float(p) for p in all_probs),
        post_state=post,
        seed=seed,
        is_remainder=is_remainder,
    )


def inner(a: StateVector, b: StateVector) -> complex:
    if a.d != b.d or a.n != b.n:
        raise DimensionMismatch("states live on different registers")
    return complex(np.vdot(a.amps, b.amps))


def fidelity(a: StateVector, b: StateVector) -> float:
    """|<a|b>|^2; symmetric and clipped to [0, 1]."""
    return float(min(1.0, abs(inner(a, b)) ** 2))


def extract_prefix_register(state: StateVector, prefix: np.ndarray, k: int) -> StateVector:
    """Contract the leading k qudits against a known vector and renormalize."""
    dim = state.d**k
    vec = np.asarray(prefix, dtype=np.complex128).reshape(-1)
    if vec.size != dim:
        raise DimensionMismatch(f"prefix vector size {vec.size} != {dim}")
    block = state.amps.reshape(dim, -1)
    rest = vec.conj() @ block
    return StateVector.from_amplitudes(state.d, state.n - k, rest, normalize=True)


def apply_prefix_operator(state: StateVector, op: np.ndarray, k: int) -> StateVector:
    """Apply a dense unitary acting on the leading k qudits."""
    dim = state.d**k
    op = np.asarray(op, dtype=np.complex128)
    _check_unitary(op, dim)
    block = state.amps.reshape(dim, -1)
    return StateVector(d=state.d, n=state.n, amps=(op @ block).reshape(-1))
