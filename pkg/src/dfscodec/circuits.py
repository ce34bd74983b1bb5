"""Gate-level synthesis of the encoding network, with cost accounting.

Three routes build the controlled-rotation stage W = sum_g |g><g| (x) U_g^(x m):

* general: one block per group element, each block an X conjugation on the
  control wires plus m multi-controlled U_g gates;
* abelian: one block per generator power, controls read generator exponents;
* cyclic: one plain controlled gate per control wire and message qudit.

Costs follow the standard multi-control accounting: a gate with c >= 3 all-one
controls spends 40(c-2) elementary gates on the two Toffoli chains plus one
per controlled target.  Chains are emitted as costed marker gates; simulation
applies the full control pattern on the target gates instead of expanding the
chain, which keeps equivalence checks exact while preserving the counts.

The basis change from group labels to token states is either a dense unitary
completion of the token columns (any group) or, for cyclic groups on qubits,
a Fourier stage followed by a CNOT fan-out/fold network whose CNOT count is
exactly (token wires + control wires).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .codec import TokenSet
from .errors import (
    DfsCodecError,
    DimensionMismatch,
    NotAbelian,
    UnsupportedDimension,
)
from .groups import FiniteGroup, generator_decomposition, word_elements
from .reps import UnitaryRep
from .statevec import (
    StateVector,
    apply_controlled,
    apply_local,
    apply_prefix_operator,
    basis_state,
    product_state,
)

_X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
_H = np.array([[1, 1], [1, -1]], dtype=np.complex128) / np.sqrt(2)


@dataclass(frozen=True, eq=False)
class Gate:
    """One entry of a gate list.

    ``kind`` is one of single / controlled / cnot / chain / prep.  Chain
    markers carry the Toffoli-chain cost of a multi-control collapse and act
    as identity in simulation; the controlled gates between a marker pair
    carry the full control pattern themselves.
    """

    kind: str
    targets: tuple[int, ...]
    controls: tuple[tuple[int, int], ...] = ()
    matrix: np.ndarray | None = None
    cost: int = 1
    stage: str = ""
    note: str = ""

    def remapped(self, wire_map: dict[int, int]) -> "Gate":
        return Gate(
            kind=self.kind,
            targets=tuple(wire_map[t] for t in self.targets),
            controls=tuple((wire_map[w], v) for w, v in self.controls),
            matrix=self.matrix,
            cost=self.cost,
            stage=self.stage,
            note=self.note,
        )


@dataclass(frozen=True)
class RegisterLayout:
    """Wire roles: control labels, token qudits, message qudits."""

    d: int
    control: tuple[int, ...]
    token: tuple[int, ...]
    message: tuple[int, ...]

    @property
    def n_wires(self) -> int:
        wires = set(self.control) | set(self.token) | set(self.message)
        return max(wires) + 1


@dataclass(eq=False)
class CircuitPlan:
    """Ordered gate list plus count and depth bookkeeping."""

    gates: list[Gate]
    layout: RegisterLayout
    metadata: dict = field(default_factory=dict)

    @property
    def total_count(self) -> int:
        return sum(g.cost for g in self.gates)

    def stage_count(self, stage: str) -> int:
        return sum(g.cost for g in self.gates if g.stage == stage)

    def count_by_kind(self, kind: str) -> int:
        return sum(g.cost for g in self.gates if g.kind == kind)

    def stage_gates(self, stage: str) -> list[Gate]:
        return [g for g in self.gates if g.stage == stage]


def apply_gate(state: StateVector, gate: Gate) -> StateVector:
    if gate.kind == "chain":
        return state
    if gate.kind == "prep":
        return apply_prefix_operator_at(state, gate.matrix, gate.targets)
    if gate.kind == "single":
        return apply_local(state, gate.matrix, gate.targets[0])
    if gate.kind in ("controlled", "cnot"):
        matrix = gate.matrix if gate.matrix is not None else _X
        return apply_controlled(state, gate.controls, matrix, gate.targets)
    raise DfsCodecError(f"unknown gate kind {gate.kind!r}")


def apply_prefix_operator_at(state: StateVector, op: np.ndarray, wires) -> StateVector:
    """Apply a dense unitary on an arbitrary contiguous-or-not wire tuple."""
    wires = list(wires)
    rest = [w for w in range(state.n) if w not in wires]
    tensor = state.tensor().transpose(wires + rest)
    flat = tensor.reshape(state.d ** len(wires), -1)
    flat = np.asarray(op, dtype=np.complex128) @ flat
    tensor = flat.reshape([state.d] * state.n)
    inverse = np.argsort(wires + rest)
    return StateVector(d=state.d, n=state.n, amps=tensor.transpose(inverse).reshape(-1))


def run_plan(plan: CircuitPlan, state: StateVector) -> StateVector:
    for gate in plan.gates:
        state = apply_gate(state, gate)
    return state


def control_wire_count(order: int) -> int:
    return max(1, int(np.ceil(np.log2(order))))


def _control_pattern(control_wires, value: int) -> tuple[tuple[int, int], ...]:
    """Big-endian bit pattern of ``value`` across the given wires."""
    width = len(control_wires)
    bits = [(value >> (width - 1 - pos)) & 1 for pos in range(width)]
    return tuple((w, b) for w, b in zip(control_wires, bits))


def prep_gates(group: FiniteGroup, control_wires) -> list[Gate]:
    """Uniform superposition over the first |G| control labels.

    For |G| = 2^(wires) this is one Hadamard per wire; otherwise a single
    costed preparation unitary (cost: one gate per control wire) whose first
    column is the desired superposition.
    """
    control_wires = list(control_wires)
    r_prime = len(control_wires)
    if group.order == 2**r_prime:
        return [
            Gate(kind="single", targets=(w,), matrix=_H, cost=1, stage="prep")
            for w in control_wires
        ]
    dim = 2**r_prime
    first = np.zeros(dim, dtype=np.complex128)
    first[: group.order] = 1.0 / np.sqrt(group.order)
    basis = [first]
    for j in range(dim):
        e = np.zeros(dim, dtype=np.complex128)
        e[j] = 1.0
        for b in basis:
            e = e - b * np.vdot(b, e)
        norm = np.linalg.norm(e)
        if norm > 1e-9:
            basis.append(e / norm)
        if len(basis) == dim:
            break
    matrix = np.column_stack(basis)
    return [
        Gate(
            kind="prep",
            targets=tuple(control_wires),
            matrix=matrix,
            cost=r_prime,
            stage="prep",
            note=f"uniform over first {group.order} labels",
        )
    ]


def _chain_cost(num_controls: int) -> int:
    return 20 * max(num_controls - 2, 0)


def _block_gates(
    pattern: tuple[tuple[int, int], ...],
    unitary: np.ndarray,
    message_wires,
    stage: str,
    note: str,
    conjugate_x: bool,
) -> list[Gate]:
    """One controlled block: optional X conjugation, chain markers, m target gates."""
    gates: list[Gate] = []
    all_ones = tuple((w, 1) for w, _ in pattern)
    flip = [w for w, v in pattern if v == 0] if conjugate_x else []
    for w in flip:
        gates.append(Gate(kind="single", targets=(w,), matrix=_X, cost=1, stage=stage))
    effective = all_ones if conjugate_x else pattern
    chain = _chain_cost(len(pattern))
    if chain:
        gates.append(
            Gate(kind="chain", targets=(), controls=effective, cost=chain, stage=stage)
        )
    for t in message_wires:
        gates.append(
            Gate(
                kind="controlled",
                targets=(t,),
                controls=effective,
                matrix=unitary,
                cost=1,
                stage=stage,
                note=note,
            )
        )
    if chain:
        gates.append(
            Gate(kind="chain", targets=(), controls=effective, cost=chain, stage=stage)
        )
    for w in flip:
        gates.append(Gate(kind="single", targets=(w,), matrix=_X, cost=1, stage=stage))
    return gates


def synth_w_general(group: FiniteGroup, rep: UnitaryRep, m: int) -> CircuitPlan:
    """Block-per-element controlled network on ceil(log2 |G|) control wires.

    Emits the X conjugation of every block explicitly; over a full power-of-two
    enumeration the emitted gates sum to |G| * (41 r' - 80 + m), matching the
    closed-form count.
    """
    if rep.dim != 2:
        raise UnsupportedDimension("gate-level synthesis is defined for qubits only")
    if m < 1:
        raise DimensionMismatch("need at least one message qubit")
    r_prime = control_wire_count(group.order)
    control_wires = tuple(range(r_prime))
    message_wires = tuple(range(r_prime, r_prime + m))
    gates: list[Gate] = []
    for i in range(group.order):
        pattern = _control_pattern(control_wires, i)
        gates.extend(
            _block_gates(
                pattern,
                rep.matrices[i],
                message_wires,
                stage="w",
                note=f"element {group.labels[i]}",
                conjugate_x=True,
            )
        )
    formula = None
    if group.order == 2**r_prime:
        formula = group.order * (41 * r_prime - 80 + m)
    layout = RegisterLayout(d=2, control=control_wires, token=(), message=message_wires)
    plan = CircuitPlan(
        gates=gates,
        layout=layout,
        metadata={
            "path": "general",
            "m": m,
            "r_prime": r_prime,
            "count_formula": formula,
            "depth_formula": group.order * (41 * r_prime - 80 + 1)
            if group.order == 2**r_prime
            else None,
            "control_labeling": "element_index",
        },
    )
    return plan


def synth_w_abelian(
    group: FiniteGroup,
    rep: UnitaryRep,
    m: int,
    generators: list[int] | None = None,
    orders: list[int] | None = None,
) -> CircuitPlan:
    """Generator-power controlled network for abelian groups.

    Control labels are generator words (first generator most significant); the
    identity power of each generator needs no gates, so the emitted count sits
    below the per-generator bound L_i * (40 max(log2 L_i - 2, 0) + m).
    """
    if not group.is_abelian:
        raise NotAbelian("the generator-power network needs an abelian group")
    if rep.dim != 2:
        raise UnsupportedDimension("gate-level synthesis is defined for qubits only")
    if generators is None or orders is None:
        generators, orders = generator_decomposition(group)
    for bound in orders:
        if bound & (bound - 1):
            raise DfsCodecError(
                f"generator order {bound} is not a power of two; control wires are qubits"
            )
    widths = [max(1, int(np.log2(bound))) for bound in orders]
    r_prime = sum(widths)
    control_wires = tuple(range(r_prime))
    message_wires = tuple(range(r_prime, r_prime + m))
    elements = word_elements(group, generators, orders)
    if sorted(set(elements)) != list(range(group.order)):
        raise DfsCodecError("generator words do not enumerate the group bijectively")

    gates: list[Gate] = []
    offset = 0
    bound_total = 0
    for gen, bound, width in zip(generators, orders, widths):
        block_wires = tuple(control_wires[offset : offset + width])
        offset += width
        bound_total += bound * (40 * max(width - 2, 0) + m)
        power = 0
        for exponent in range(1, bound):
            power = group.mul(power, gen)
            pattern = _control_pattern(block_wires, exponent)
            gates.extend(
                _block_gates(
                    pattern,
                    rep.matrices[power],
                    message_wires,
                    stage="w",
                    note=f"{group.labels[gen]}^{exponent}",
                    conjugate_x=False,
                )
            )
    layout = RegisterLayout(d=2, control=control_wires, token=(), message=message_wires)
    return CircuitPlan(
        gates=gates,
        layout=layout,
        metadata={
            "path": "abelian",
            "m": m,
            "r_prime": r_prime,
            "generators": list(generators),
            "generator_orders": list(orders),
            "count_bound": bound_total,
            "control_labeling": "generator_words",
            "word_elements": elements,
        },
    )


def _cyclic_generator(group: FiniteGroup) -> int:
    for i in range(group.order):
        if group.element_order(i) == group.order:
            return i
    raise NotAbelian("group has no generator; the cyclic path needs a cyclic group")


def synth_w_cyclic(group: FiniteGroup, rep: UnitaryRep, m: int) -> CircuitPlan:
    """One controlled power of the generator per control wire: m log2 N gates."""
    if rep.dim != 2:
        raise UnsupportedDimension("gate-level synthesis is defined for qubits only")
    n = group.order
    if n & (n - 1):
        raise DfsCodecError(
            f"cyclic path needs a power-of-two order, got {n}; use the general path"
        )
    gen = _cyclic_generator(group)
    r_prime = control_wire_count(n)
    control_wires = tuple(range(r_prime))
    message_wires = tuple(range(r_prime, r_prime + m))
    gates: list[Gate] = []
    # bit i (1-indexed from the least significant) lives on wire r_prime - i
    for i in range(1, r_prime + 1):
        power_index = 0
        for _ in range(2 ** (i - 1)):
            power_index = group.mul(power_index, gen)
        wire = r_prime - i
        for t in message_wires:
            gates.append(
                Gate(
                    kind="controlled",
                    targets=(t,),
                    controls=((wire, 1),),
                    matrix=rep.matrices[power_index],
                    cost=1,
                    stage="w",
                    note=f"U^{2 ** (i - 1)}",
                )
            )
    layout = RegisterLayout(d=2, control=control_wires, token=(), message=message_wires)
    return CircuitPlan(
        gates=gates,
        layout=layout,
        metadata={
            "path": "cyclic",
            "m": m,
            "r_prime": r_prime,
            "controlled_count": m * r_prime,
            "control_labeling": "element_index",
        },
    )


# --- basis change to token states --------------------------------------------


@dataclass(frozen=True, eq=False)
class TokenBasisChange:
    """Dense unitary completing {|0...0, g_i> -> token_i}; cost bound O(d^r).

    ``element_order[column]`` names the group element encoded by each label
    column, so generator-word control registers can reuse the same oracle.
    """

    matrix: np.ndarray
    r: int
    d: int
    bound: int
    element_order: tuple[int, ...]

    def apply(self, state: StateVector) -> StateVector:
        return apply_prefix_operator(state, self.matrix, self.r)


def apply_t_direct(tokens: TokenSet, element_order=None) -> TokenBasisChange:
    """Complete the token columns to a unitary by deterministic Gram-Schmidt."""
    d, r = tokens.rep.dim, tokens.r
    order = tokens.group.order
    dim = d**r
    if element_order is None:
        element_order = tuple(range(order))
    else:
        element_order = tuple(int(x) for x in element_order)
        if sorted(element_order) != list(range(order)):
            raise DfsCodecError("element_order must enumerate the group")
    matrix = np.zeros((dim, dim), dtype=np.complex128)
    taken = []
    for label, element in enumerate(element_order):
        col = tokens.tokens[element].amps
        matrix[:, label] = col
        taken.append(col)
    free = order
    for j in range(dim):
        if free == dim:
            break
        e = np.zeros(dim, dtype=np.complex128)
        e[j] = 1.0
        for k in range(free):
            e = e - matrix[:, k] * np.vdot(matrix[:, k], e)
        for k in range(free):
            e = e - matrix[:, k] * np.vdot(matrix[:, k], e)
        norm = np.linalg.norm(e)
        if norm > 1e-7:
            matrix[:, free] = e / norm
            free += 1
    if free != dim:
        raise DfsCodecError("failed to complete the token basis to a unitary")
    return TokenBasisChange(
        matrix=matrix, r=r, d=d, bound=dim, element_order=element_order
    )


def qft_gates(control_wires, stage: str = "t_qft") -> list[Gate]:
    """Standard Fourier circuit without final swaps: r'(r'+1)/2 gates.

    Input read big-endian over the wires; output bits come out reversed, with
    the least significant output bit on the first wire.
    """
    wires = list(control_wires)
    r_prime = len(wires)
    gates: list[Gate] = []
    for k in range(r_prime):
        gates.append(Gate(kind="single", targets=(wires[k],), matrix=_H, cost=1, stage=stage))
        for l in range(k + 1, r_prime):
            angle = np.pi / 2 ** (l - k)
            phase = np.diag([1.0, np.exp(1j * angle)])
            gates.append(
                Gate(
                    kind="controlled",
                    targets=(wires[k],),
                    controls=((wires[l], 1),),
                    matrix=phase,
                    cost=1,
                    stage=stage,
                )
            )
    return gates


def token_group_slices(r_prime: int) -> list[tuple[int, int]]:
    """Token-wire span of each bit group, most significant group first.

    Group m (1-indexed, least significant last) holds 2^(m-1) wires; the list
    is indexed by m-1.
    """
    spans = []
    for m in range(1, r_prime + 1):
        offset = 2**r_prime - 2**m
        spans.append((offset, offset + 2 ** (m - 1)))
    return spans


def register_network_gates(
    r_prime: int,
    control_wires,
    token_wires,
    bit_to_control_wire,
) -> list[Gate]:
    """CNOT fan-out then fold: copies bit m onto its 2^(m-1)-wire group, clears controls.

    Exactly len(token_wires) + r_prime CNOTs.
    """
    control_wires = list(control_wires)
    token_wires = list(token_wires)
    spans = token_group_slices(r_prime)
    gates: list[Gate] = []
    for m in range(r_prime, 0, -1):
        ctl = bit_to_control_wire[m]
        lo, hi = spans[m - 1]
        for t in token_wires[lo:hi]:
            gates.append(
                Gate(kind="cnot", targets=(t,), controls=((ctl, 1),), matrix=_X,
                     cost=1, stage="t_fanout")
            )
    for m in range(r_prime, 0, -1):
        ctl = bit_to_control_wire[m]
        lo, _ = spans[m - 1]
        gates.append(
            Gate(kind="cnot", targets=(ctl,), controls=((token_wires[lo], 1),),
                 matrix=_X, cost=1, stage="t_fold")
        )
    return gates


def synth_t_cyclic(n: int, d: int = 2) -> CircuitPlan:
    """Fourier stage plus CNOT network mapping group labels to token states.

    Uses r' control wires and r = N - 1 token wires; after the fold the control
    register returns to |0...0> and the token register carries the state.  The
    fan-out reads the Fourier output in its natural reversed bit order, so no
    swap gates are needed.
    """
    if d != 2:
        raise UnsupportedDimension("the register network is defined for qubits")
    if n < 2 or n & (n - 1):
        raise DfsCodecError(f"register network needs a power-of-two order, got {n}")
    r_prime = control_wire_count(n)
    r = n - 1
    control_wires = tuple(range(r_prime))
    token_wires = tuple(range(r_prime, r_prime + r))
    gates = qft_gates(control_wires)
    # after the swap-free Fourier stage, output bit m sits on control wire m-1
    bit_to_wire = {m: control_wires[m - 1] for m in range(1, r_prime + 1)}
    gates.extend(register_network_gates(r_prime, control_wires, token_wires, bit_to_wire))
    layout = RegisterLayout(d=2, control=control_wires, token=token_wires, message=())
    cnots = sum(1 for g in gates if g.kind == "cnot")
    return CircuitPlan(
        gates=gates,
        layout=layout,
        metadata={
            "path": "cyclic",
            "n": n,
            "r": r,
            "r_prime": r_prime,
            "qft_gate_count": r_prime * (r_prime + 1) // 2,
            "cnot_count": cnots,
            "cnot_formula": r + r_prime,
            "bit_to_control_wire": bit_to_wire,
        },
    )


def network_basis_index(n: int, value: int) -> np.ndarray:
    """Token-wire bit pattern the network produces for a group label value."""
    r_prime = control_wire_count(n)
    pattern = np.zeros(n - 1, dtype=np.int64)
    for m in range(1, r_prime + 1):
        if (value >> (m - 1)) & 1:
            lo, hi = token_group_slices(r_prime)[m - 1]
            pattern[lo:hi] = 1
    return pattern


def network_token_set(rep: UnitaryRep) -> TokenSet:
    """Token set whose per-label basis states match the register network output.

    Same protocol guarantees as the canonical tokens (each label state has the
    right phase character), but the label-to-pattern map is the one the CNOT
    network realizes, so network-built circuits reproduce these tokens exactly.
    """
    from .codec import build_tokens

    n = rep.group.order
    if rep.dim != 2 or n & (n - 1):
        raise DfsCodecError("network tokens are defined for qubit cyclic groups of power-of-two order")
    r = n - 1
    amps = np.zeros(2**r, dtype=np.complex128)
    for value in range(n):
        digits = network_basis_index(n, value)
        index = int(np.ravel_multi_index(tuple(digits), (2,) * r)) if r > 0 else 0
        amps[index] += 1.0
    amps /= np.sqrt(n)
    fiducial = StateVector.from_amplitudes(2, r, amps)
    return build_tokens(rep, r, fiducial)


def logical_depth(plan: CircuitPlan) -> int:
    """Sequential layers of the plan; controlled gates sharing the same control
    pattern with distinct targets commute and sit in one layer, everything else
    contributes its full cost."""
    depth = 0
    previous: Gate | None = None
    for gate in plan.gates:
        if (
            gate.kind == "controlled"
            and previous is not None
            and previous.kind == "controlled"
            and previous.controls == gate.controls
            and previous.targets != gate.targets
        ):
            previous = gate
            continue
        depth += gate.cost
        previous = gate
    return depth


# --- full encoding pipelines --------------------------------------------------


@dataclass(eq=False)
class EncodingPipeline:
    """Composed prep + W + basis-change circuit producing the protected state."""

    group: FiniteGroup
    rep: UnitaryRep
    tokens: TokenSet
    m: int
    path: str
    w_plan: CircuitPlan
    prep: list[Gate]
    t_plan: CircuitPlan | None
    t_direct: TokenBasisChange | None
    layout: RegisterLayout

    def run(self, message: StateVector) -> StateVector:
        """Encode a message, returning the state on token + message wires only."""
        if message.d != 2 or message.n != self.m:
            raise DimensionMismatch(f"expected an {self.m}-qubit message")
        n_work = self.layout.n_wires - self.m
        state = product_state(basis_state(2, n_work, 0), message)
        for gate in self.prep:
            state = apply_gate(state, gate)
        state = run_plan(self.w_plan, state)
        if self.t_direct is not None:
            state = apply_prefix_operator_at(
                state, self.t_direct.matrix, list(self.layout.token)
            )
            return state
        state = run_plan(self.t_plan, state)
        # the control register must disentangle back to |0...0>
        r_prime = len(self.layout.control)
        block = state.amps.reshape(2**r_prime, -1)
        leak = float(np.linalg.norm(block[1:]))
        if leak > 1e-9:
            raise DfsCodecError(f"control register failed to clear (leak {leak:.3e})")
        return StateVector.from_amplitudes(
            2, state.n - r_prime, block[0], normalize=True
        )


def build_encoding_pipeline(
    tokens: TokenSet,
    m: int,
    path: str = "general",
    *,
    generators: list[int] | None = None,
    generator_orders: list[int] | None = None,
    cyclic_network: bool = False,
) -> EncodingPipeline:
    """Wire a W plan and a basis change into one simulable encoder.

    ``cyclic_network=True`` uses the Fourier + CNOT network (cyclic groups on
    qubits, power-of-two order, with the register-pattern token basis);
    otherwise the token basis change is the dense completion oracle.
    """
    group = tokens.group
    rep = tokens.rep
    r = tokens.r
    if path == "general":
        w = synth_w_general(group, rep, m)
    elif path == "abelian":
        w = synth_w_abelian(group, rep, m, generators, generator_orders)
    elif path == "cyclic":
        w = synth_w_cyclic(group, rep, m)
    else:
        raise DfsCodecError(f"unknown synthesis path {path!r}")
    r_prime = w.metadata["r_prime"]

    if cyclic_network:
        if path != "cyclic":
            raise DfsCodecError("the register network pairs with the cyclic W path")
        t_plan = synth_t_cyclic(group.order)
        # wires: control 0..r'-1, token r'..r'+r-1, message after
        control = tuple(range(r_prime))
        token = tuple(range(r_prime, r_prime + r))
        message = tuple(range(r_prime + r, r_prime + r + m))
        w_map = {w_old: w_new for w_old, w_new in zip(w.layout.control, control)}
        w_map.update({w_old: w_new for w_old, w_new in zip(w.layout.message, message)})
        w_remapped = CircuitPlan(
            gates=[g.remapped(w_map) for g in w.gates],
            layout=RegisterLayout(d=2, control=control, token=token, message=message),
            metadata=dict(w.metadata),
        )
        t_map = {w_old: w_new for w_old, w_new in zip(t_plan.layout.control, control)}
        t_map.update({w_old: w_new for w_old, w_new in zip(t_plan.layout.token, token)})
        t_remapped = CircuitPlan(
            gates=[g.remapped(t_map) for g in t_plan.gates],
            layout=w_remapped.layout,
            metadata=dict(t_plan.metadata),
        )
        layout = w_remapped.layout
        return EncodingPipeline(
            group=group,
            rep=rep,
            tokens=tokens,
            m=m,
            path=path,
            w_plan=w_remapped,
            prep=prep_gates(group, control),
            t_plan=t_remapped,
            t_direct=None,
            layout=layout,
        )

    # label register doubles as the trailing r' token wires
    token = tuple(range(r))
    control = tuple(range(r - r_prime, r))
    message = tuple(range(r, r + m))
    w_map = {w_old: w_new for w_old, w_new in zip(w.layout.control, control)}
    w_map.update({w_old: w_new for w_old, w_new in zip(w.layout.message, message)})
    w_remapped = CircuitPlan(
        gates=[g.remapped(w_map) for g in w.gates],
        layout=RegisterLayout(d=2, control=control, token=token, message=message),
        metadata=dict(w.metadata),
    )
    element_order = w.metadata.get("word_elements")
    t_direct = apply_t_direct(tokens, element_order)
    return EncodingPipeline(
        group=group,
        rep=rep,
        tokens=tokens,
        m=m,
        path=path,
        w_plan=w_remapped,
        prep=prep_gates(group, control),
        t_plan=None,
        t_direct=t_direct,
        layout=w_remapped.layout,
    )


def gate_count_report(
    group: FiniteGroup,
    rep: UnitaryRep,
    m: int,
    r: int,
    *,
    paths: tuple[str, ...] = ("general", "abelian", "cyclic"),
) -> dict:
    """Counts per synthesis route, the basis-change bound, and the rate."""
    r_prime = control_wire_count(group.order)
    rate = Fraction(m, m + r)
    report: dict = {
        "group": group.name or f"order-{group.order}",
        "order": group.order,
        "m": m,
        "r": r,
        "r_prime": r_prime,
        "rate": [rate.numerator, rate.denominator],
        "rate_float": float(rate),
        "scaling": "O(m, |G| log |G|, d^r)",
        "t_direct_bound": rep.dim**r,
        "paths": {},
    }
    if "general" in paths and rep.dim == 2:
        plan = synth_w_general(group, rep, m)
        entry = {
            "emitted_count": plan.total_count,
            "count_formula": plan.metadata["count_formula"],
            "logical_depth": logical_depth(plan),
            "depth_formula": plan.metadata["depth_formula"],
        }
        report["paths"]["general"] = entry
    if "abelian" in paths and group.is_abelian and rep.dim == 2:
        try:
            plan = synth_w_abelian(group, rep, m)
            report["paths"]["abelian"] = {
                "emitted_count": plan.total_count,
                "count_bound": plan.metadata["count_bound"],
            }
        except DfsCodecError:
            pass
    if "cyclic" in paths and rep.dim == 2 and not group.order & (group.order - 1):
        if any(group.element_order(i) == group.order for i in range(group.order)):
            plan = synth_w_cyclic(group, rep, m)
            t_plan = synth_t_cyclic(group.order) if group.order >= 2 else None
            report["paths"]["cyclic"] = {
                "controlled_count": plan.total_count,
                "controlled_formula": m * plan.metadata["r_prime"],
                "t_cnot_count": t_plan.metadata["cnot_count"] if t_plan else 0,
                "t_cnot_formula": t_plan.metadata["cnot_formula"] if t_plan else 0,
                "t_qft_count": t_plan.metadata["qft_gate_count"] if t_plan else 0,
            }
    return report


def inverse_plan(plan: CircuitPlan) -> CircuitPlan:
    """Reverse the gate list with every matrix conjugate-transposed."""
    gates = []
    for gate in reversed(plan.gates):
        matrix = None if gate.matrix is None else gate.matrix.conj().T
        gates.append(
            Gate(
                kind=gate.kind,
                targets=gate.targets,
                controls=gate.controls,
                matrix=matrix,
                cost=gate.cost,
                stage=gate.stage,
                note=gate.note,
            )
        )
    return CircuitPlan(gates=gates, layout=plan.layout, metadata=dict(plan.metadata))
