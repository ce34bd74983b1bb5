from functools import reduce

import numpy as np
import pytest

from dfscodec.circuits import (
    apply_t_direct,
    build_encoding_pipeline,
    gate_count_report,
    inverse_plan,
    logical_depth,
    network_basis_index,
    network_token_set,
    prep_gates,
    register_network_gates,
    run_plan,
    synth_t_cyclic,
    synth_w_abelian,
    synth_w_cyclic,
    synth_w_general,
    token_group_slices,
)
from dfscodec.codec import decode, encode
from dfscodec.errors import DfsCodecError, NotAbelian, UnsupportedDimension
from dfscodec.groups import builtin_group
from dfscodec.reps import pauli_rep, zn_phase_rep
from dfscodec.statevec import (
    StateVector,
    basis_state,
    fidelity,
    product_state,
    project_measure,
    random_state,
)


def w_operator(group, rep, m):
    """Dense oracle for the controlled-rotation stage, built independently."""
    r_prime = max(1, int(np.ceil(np.log2(group.order))))
    dim_c = 2**r_prime
    out = np.zeros((dim_c * 2**m, dim_c * 2**m), dtype=complex)
    for label in range(dim_c):
        proj = np.zeros((dim_c, dim_c))
        proj[label, label] = 1.0
        if label < group.order:
            block = reduce(np.kron, [rep.matrices[label]] * m)
        else:
            block = np.eye(2**m)
        out += np.kron(proj, block)
    return out


def plan_unitary(plan, n_wires):
    dim = 2**n_wires
    columns = []
    for index in range(dim):
        state = basis_state(2, n_wires, index)
        columns.append(run_plan(plan, state).amps)
    return np.column_stack(columns)


# --- counts against the closed forms -------------------------------------------


def test_k4_general_counts():
    group = builtin_group("k4")
    rep = pauli_rep(group)
    for m, expected in ((3, 20), (1, 12)):
        plan = synth_w_general(group, rep, m)
        assert plan.total_count == expected
        assert plan.metadata["count_formula"] == expected
        assert plan.total_count == sum(g.cost for g in plan.gates)


def test_z8_general_count_and_depth():
    group = builtin_group("z8")
    rep = zn_phase_rep(group, 2)
    plan = synth_w_general(group, rep, 2)
    assert plan.metadata["count_formula"] == 8 * (41 * 3 - 80 + 2) == 360
    assert plan.total_count == 360
    assert logical_depth(plan) == 8 * (41 * 3 - 80 + 1) == 352


def test_k4_depth_independent_of_m():
    group = builtin_group("k4")
    rep = pauli_rep(group)
    depths = {logical_depth(synth_w_general(group, rep, m)) for m in (1, 2, 5, 64)}
    assert depths == {12}


def test_cyclic_counts():
    group = builtin_group("z8")
    rep = zn_phase_rep(group, 2)
    plan = synth_w_cyclic(group, rep, 4)
    assert plan.total_count == 12  # m log2 N
    assert all(g.kind == "controlled" for g in plan.gates)
    z2 = builtin_group("z2")
    assert synth_w_cyclic(z2, zn_phase_rep(z2, 2), 1).total_count == 1


def test_t_cyclic_cnot_counts():
    for n, expected in ((8, 10), (2, 2), (16, 19)):
        plan = synth_t_cyclic(n)
        cnots = [g for g in plan.gates if g.kind == "cnot"]
        assert len(cnots) == expected
        assert plan.metadata["cnot_formula"] == expected
        assert plan.metadata["qft_gate_count"] == sum(
            1 for g in plan.gates if g.stage == "t_qft"
        )


def test_gate_count_report_pinned_values():
    k4 = builtin_group("k4")
    report = gate_count_report(k4, pauli_rep(k4), 3, r=2)
    assert report["paths"]["general"]["emitted_count"] == 20
    z8 = builtin_group("z8")
    report = gate_count_report(z8, zn_phase_rep(z8, 2), 4, r=7)
    assert report["paths"]["cyclic"]["controlled_count"] == 12
    assert report["paths"]["cyclic"]["t_cnot_count"] == 10
    z16 = builtin_group("z16")
    report = gate_count_report(z16, zn_phase_rep(z16, 2), 1, r=15)
    assert report["paths"]["cyclic"]["controlled_count"] == 4
    assert report["paths"]["cyclic"]["t_cnot_count"] == 19
    assert report["rate"] == [1, 16]


def test_abelian_counts_within_bound():
    k4 = builtin_group("k4")
    plan = synth_w_abelian(k4, pauli_rep(k4), 2, generators=[1, 3], orders=[2, 2])
    assert plan.total_count <= plan.metadata["count_bound"]
    z4xz2 = builtin_group("z4xz2")
    plan = synth_w_abelian(z4xz2, zn_phase_rep_product(z4xz2), 2)
    assert plan.total_count <= plan.metadata["count_bound"]


def zn_phase_rep_product(group):
    """Faithful diagonal rep of z4xz2 on qubits: phases i^a * (-1)^b."""
    mats = []
    for g in range(group.order):
        a, b = divmod(g, 2)
        mats.append(np.diag([1.0, (1j**a) * ((-1.0) ** b)]))
    from dfscodec.reps import UnitaryRep

    return UnitaryRep.build(group, np.array(mats))


def test_z2_abelian_single_controlled_gate():
    z2 = builtin_group("z2")
    plan = synth_w_abelian(z2, zn_phase_rep(z2, 2), 1)
    assert plan.total_count == 1
    assert plan.gates[0].kind == "controlled"


# --- operator-level equivalences -------------------------------------------------


def test_general_w_matches_dense_oracle():
    group = builtin_group("k4")
    rep = pauli_rep(group)
    plan = synth_w_general(group, rep, 1)
    got = plan_unitary(plan, 3)
    np.testing.assert_allclose(got, w_operator(group, rep, 1), atol=1e-10)


def test_cyclic_w_equals_general_w(rng):
    group = builtin_group("z8")
    rep = zn_phase_rep(group, 2)
    general = synth_w_general(group, rep, 2)
    cyclic = synth_w_cyclic(group, rep, 2)
    for _ in range(10):
        state = random_state(2, 5, rng)
        a = run_plan(general, state)
        b = run_plan(cyclic, state)
        assert fidelity(a, b) >= 1 - 1e-12


def test_cyclic_exponent_identity():
    group = builtin_group("z8")
    rep = zn_phase_rep(group, 2)
    u = rep.matrices[1]
    for j in range(8):
        powers = np.eye(2, dtype=complex)
        for i in range(1, 4):
            if (j >> (i - 1)) & 1:
                powers = powers @ np.linalg.matrix_power(u, 2 ** (i - 1))
        np.testing.assert_allclose(powers, rep.matrices[j], atol=1e-12)


def test_abelian_word_control_matches_word_operator(rng):
    # oracle: explicit sum over words with generator powers
    group = builtin_group("k4")
    rep = pauli_rep(group)
    plan = synth_w_abelian(group, rep, 1, generators=[1, 3], orders=[2, 2])
    got = plan_unitary(plan, 3)
    expected = np.zeros((8, 8), dtype=complex)
    for l1 in range(2):
        for l2 in range(2):
            word = (l1 << 1) | l2
            proj = np.zeros((4, 4))
            proj[word, word] = 1.0
            element = group.mul(
                reduce(group.mul, [1] * l1, 0), reduce(group.mul, [3] * l2, 0)
            )
            expected += np.kron(proj, rep.matrices[element])
    np.testing.assert_allclose(got, expected, atol=1e-10)


# --- the register network --------------------------------------------------------


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_register_network_fanout_and_fold_all_patterns(n):
    r_prime = max(1, int(np.ceil(np.log2(n))))
    r = n - 1
    control = tuple(range(r_prime))
    token = tuple(range(r_prime, r_prime + r))
    bit_to_wire = {m: r_prime - m for m in range(1, r_prime + 1)}  # big-endian register
    gates = register_network_gates(r_prime, control, token, bit_to_wire)
    fanout = [g for g in gates if g.stage == "t_fanout"]
    fold = [g for g in gates if g.stage == "t_fold"]
    assert len(fanout) == r and len(fold) == r_prime
    spans = token_group_slices(r_prime)
    for value in range(n):
        state = product_state(
            basis_state(2, r_prime, value), basis_state(2, r, 0)
        )
        mid = state
        for g in fanout:
            from dfscodec.circuits import apply_gate

            mid = apply_gate(mid, g)
        # after fan-out: control keeps its value, group m holds bit m everywhere
        digits = np.unravel_index(int(np.argmax(np.abs(mid.amps))), (2,) * (r_prime + r))
        assert int("".join(map(str, digits[:r_prime])), 2) == value
        for m in range(1, r_prime + 1):
            bit = (value >> (m - 1)) & 1
            lo, hi = spans[m - 1]
            assert all(digits[r_prime + w] == bit for w in range(lo, hi))
        out = mid
        for g in fold:
            from dfscodec.circuits import apply_gate

            out = apply_gate(out, g)
        digits = np.unravel_index(int(np.argmax(np.abs(out.amps))), (2,) * (r_prime + r))
        assert all(digit == 0 for digit in digits[:r_prime])
        np.testing.assert_array_equal(
            np.array(digits[r_prime:]), network_basis_index(n, value)
        )


def test_register_network_z4_worked_example():
    # value 2, two-bit register: fan-out sets the two-wire group, fold clears
    r_prime, r = 2, 3
    control, token = (0, 1), (2, 3, 4)
    bit_to_wire = {1: 1, 2: 0}
    gates = register_network_gates(r_prime, control, token, bit_to_wire)
    from dfscodec.circuits import apply_gate

    state = product_state(basis_state(2, 2, 2), basis_state(2, 3, 0))  # |10>|000>
    for g in [g for g in gates if g.stage == "t_fanout"]:
        state = apply_gate(state, g)
    np.testing.assert_allclose(
        state.amps, product_state(basis_state(2, 2, 2), basis_state(2, 3, 6)).amps
    )  # |10> (x) |110>
    for g in [g for g in gates if g.stage == "t_fold"]:
        state = apply_gate(state, g)
    np.testing.assert_allclose(
        state.amps, product_state(basis_state(2, 2, 0), basis_state(2, 3, 6)).amps
    )  # |00> (x) |110>


@pytest.mark.parametrize("n", [2, 4, 8])
def test_full_t_stage_maps_labels_to_network_tokens(n):
    rep = zn_phase_rep(builtin_group(f"z{n}"), 2)
    tokens = network_token_set(rep)
    plan = synth_t_cyclic(n)
    r_prime = plan.metadata["r_prime"]
    for j in range(n):
        state = product_state(basis_state(2, r_prime, j), basis_state(2, n - 1, 0))
        out = run_plan(plan, state)
        block = out.amps.reshape(2**r_prime, -1)
        assert np.linalg.norm(block[1:]) < 1e-12  # control cleared
        got = StateVector.from_amplitudes(2, n - 1, block[0], normalize=True)
        assert fidelity(got, tokens.tokens[j]) >= 1 - 1e-12
        # phase-exact, not only up to phase
        assert abs(np.vdot(tokens.tokens[j].amps, block[0]) - 1.0) < 1e-9


# --- token basis change -----------------------------------------------------------


def test_apply_t_direct_k4_mapping(context_for):
    ctx = context_for("k4")
    change = apply_t_direct(ctx.tokens)
    for label in range(4):
        col = change.matrix[:, label]
        np.testing.assert_allclose(col, ctx.tokens.tokens[label].amps, atol=1e-12)
    assert np.max(np.abs(change.matrix.conj().T @ change.matrix - np.eye(4))) < 1e-10
    assert change.bound == 4


def test_apply_t_direct_trivial_group(context_for):
    ctx = context_for("z1")
    change = apply_t_direct(ctx.tokens)
    assert change.matrix.shape == (2, 2)
    np.testing.assert_allclose(change.matrix[:, 0], ctx.tokens.fiducial.amps)


# --- end-to-end circuit vs direct encoding ----------------------------------------


@pytest.mark.parametrize("spec,path", [("k4", "general"), ("k4", "abelian"),
                                        ("z4", "general"), ("z4", "cyclic"),
                                        ("z8", "cyclic"), ("z3", "general"),
                                        ("z5", "general")])
def test_pipeline_matches_direct_encoding(spec, path, context_for, rng):
    ctx = context_for(spec)
    m = 2
    pipeline = build_encoding_pipeline(ctx.tokens, m, path)
    for _ in range(3):
        message = random_state(2, m, rng)
        assert fidelity(pipeline.run(message), encode(ctx.tokens, message)) >= 1 - 1e-9


@pytest.mark.parametrize("n", [2, 4, 8])
def test_network_pipeline_matches_direct_encoding(n, rng):
    rep = zn_phase_rep(builtin_group(f"z{n}"), 2)
    tokens = network_token_set(rep)
    pipeline = build_encoding_pipeline(tokens, 2, "cyclic", cyclic_network=True)
    for _ in range(3):
        message = random_state(2, 2, rng)
        assert fidelity(pipeline.run(message), encode(tokens, message)) >= 1 - 1e-9


def test_z4_direct_t_reproduces_encoding_from_w_stage(context_for, rng):
    # uniform label superposition -> W -> token basis change == direct encode
    ctx = context_for("z4")
    message = random_state(2, 1, rng)
    pipeline = build_encoding_pipeline(ctx.tokens, 1, "general")
    got = pipeline.run(message)
    assert fidelity(got, encode(ctx.tokens, message)) >= 1 - 1e-9


def test_decode_side_inverse_network_matches_projective_decode(rng):
    # running the basis change backwards and reading the label register samples
    # the same distribution with the same seeds as the direct token measurement
    n = 4
    rep = zn_phase_rep(builtin_group(f"z{n}"), 2)
    tokens = network_token_set(rep)
    pipeline = build_encoding_pipeline(tokens, 1, "cyclic", cyclic_network=True)
    message = random_state(2, 1, rng)
    received = encode(tokens, message)
    inverse = inverse_plan(pipeline.t_plan)
    r_prime = len(pipeline.layout.control)
    labels = np.eye(2**r_prime)
    for seed in (0, 1, 7, 40):
        _, direct_report = decode(tokens, received, seed)
        attached = product_state(basis_state(2, r_prime, 0), received)
        unwound = run_plan(inverse, attached)
        record = project_measure(
            unwound, range(r_prime), [labels[j] for j in range(n)], seed
        )
        assert record.outcome == direct_report.outcome_index


# --- guards ------------------------------------------------------------------------


def test_qutrit_synthesis_rejected():
    z3 = builtin_group("z3")
    rep = zn_phase_rep(z3, 3)
    with pytest.raises(UnsupportedDimension):
        synth_w_general(z3, rep, 1)


def test_cyclic_path_rejects_non_power_orders():
    z3 = builtin_group("z3")
    with pytest.raises(DfsCodecError):
        synth_w_cyclic(z3, zn_phase_rep(z3, 2), 1)


def test_abelian_path_rejects_s3():
    s3 = builtin_group("s3")
    from dfscodec.reps import s3_two_dim_rep

    with pytest.raises(NotAbelian):
        synth_w_abelian(s3, s3_two_dim_rep(s3), 1)


def test_prep_gates_non_power_order(context_for):
    ctx = context_for("z3")
    gates = prep_gates(ctx.group, (0, 1))
    assert len(gates) == 1 and gates[0].kind == "prep"
    state = run_plan_like(gates, basis_state(2, 2, 0))
    np.testing.assert_allclose(
        np.abs(state.amps) ** 2, [1 / 3, 1 / 3, 1 / 3, 0], atol=1e-12
    )


def run_plan_like(gates, state):
    from dfscodec.circuits import apply_gate

    for g in gates:
        state = apply_gate(state, g)
    return state
