"""Circuit synthesis against the dense Pauli-exponential oracle."""

import numpy as np
import pytest

from fermiqc.circuits import (CNOT, CZ, RZ, YB, YBD, Circuit, Gate, GateCounts, H, X,
                              SYNTHESIS_MODES, count_gates, format_circuit,
                              parse_circuit, synthesize_plan, synthesize_term,
                              synthesize_term_ancilla, synthesize_term_basis_shift,
                              term_gate_counts)
from fermiqc.pauli import PauliString, QubitOperator
from fermiqc.simulator import circuit_unitary, pauli_exponential
from fermiqc.trotter import OrderingStrategy, plan_for

from conftest import assert_same_up_to_phase, random_pauli_string

_SYNTH = {
    "canonical": synthesize_term,
    "basis_shift": synthesize_term_basis_shift,
    "ancilla": synthesize_term_ancilla,
}


def realized_unitary(circ: Circuit) -> np.ndarray:
    """Data-register unitary; for ancilla circuits the |0> input block."""
    u = circuit_unitary(circ)
    if circ.ancilla:
        dim = 1 << circ.n_qubits
        return u[:dim, :dim]
    return u


class TestGate:
    def test_validation(self):
        with pytest.raises(ValueError):
            Gate("CNOT", (1, 1))
        with pytest.raises(ValueError):
            Gate("H", (0, 1))
        with pytest.raises(ValueError):
            Gate("SWAP", (0, 1))
        with pytest.raises(ValueError):
            Gate("H", (0,), angle=0.5)
        with pytest.raises(ValueError):
            Gate("RZ", (0,))

    def test_cz_symmetric(self):
        assert CZ(3, 1) == CZ(1, 3)

    def test_inverse_partner(self):
        assert H(0).inverse_partner() == H(0)
        assert YB(2).inverse_partner() == YBD(2)
        assert YBD(2).inverse_partner() == YB(2)
        assert CNOT(0, 1).inverse_partner() == CNOT(0, 1)
        assert RZ(0, 0.3).inverse_partner() is None


class TestCircuit:
    def test_width_and_ancilla(self):
        c = Circuit(3, ancilla=True)
        assert c.width == 4
        assert c.ancilla_index == 3
        with pytest.raises(ValueError):
            Circuit(3).ancilla_index

    def test_append_bounds(self):
        c = Circuit(2)
        with pytest.raises(ValueError):
            c.append(H(2))


class TestGateCounts:
    def test_add_and_scale(self):
        a = GateCounts(4, 2, 1, 1)
        b = GateCounts(3, 1, 2, 0)
        assert a + b == GateCounts(7, 3, 3, 1)
        assert a.scale(3) == GateCounts(12, 6, 3, 3)

    def test_count_gates(self):
        c = Circuit(3)
        c.extend([H(0), CNOT(0, 1), RZ(1, 0.2), CZ(1, 2), YB(2)])
        assert count_gates(c) == GateCounts(5, 2, 2, 1)


class TestSynthesis:
    @pytest.mark.parametrize("mode", SYNTHESIS_MODES)
    def test_single_qubit_terms(self, mode):
        for label, theta in [("Z", 0.7), ("X", -1.2), ("Y", 2.3)]:
            s = PauliString.from_label(label)
            circ = _SYNTH[mode](s, theta)
            assert_same_up_to_phase(realized_unitary(circ), pauli_exponential(s, theta))

    @pytest.mark.parametrize("mode", SYNTHESIS_MODES)
    def test_random_terms(self, mode, rng):
        for _ in range(30):
            n = int(rng.integers(1, 6))
            s = random_pauli_string(rng, n)
            theta = float(rng.uniform(-np.pi, np.pi))
            circ = _SYNTH[mode](s, theta)
            assert_same_up_to_phase(realized_unitary(circ), pauli_exponential(s, theta))

    @pytest.mark.parametrize("mode", SYNTHESIS_MODES)
    def test_identity_rejected(self, mode):
        with pytest.raises(ValueError):
            _SYNTH[mode](PauliString(3), 0.5)

    def test_canonical_structure(self):
        s = PauliString.from_label("YZIZX")
        circ = synthesize_term(s, 0.4)
        kinds = [g.kind for g in circ.gates]
        # basis changes bracket a symmetric CNOT ladder around one rotation
        assert kinds == ["YB", "H", "CNOT", "CNOT", "CNOT", "RZ",
                         "CNOT", "CNOT", "CNOT", "H", "YBD"]
        assert circ.gates[5] == RZ(4, 0.4)

    def test_ancilla_returns_to_zero(self):
        s = PauliString.from_label("XYZ")
        u = circuit_unitary(synthesize_term_ancilla(s, 0.9))
        dim = 1 << 3
        # no amplitude may leak from the |0>-ancilla block
        np.testing.assert_allclose(u[dim:, :dim], 0.0, atol=1e-12)

    def test_basis_shift_rotation_adjacent_to_basis_change(self):
        s = PauliString.from_label("ZZZZX")
        gates = synthesize_term_basis_shift(s, 0.3).gates
        i = next(k for k, g in enumerate(gates) if g.kind == "RZ")
        assert gates[i - 1] == H(4) and gates[i + 1] == H(4)


class TestTermGateCounts:
    @pytest.mark.parametrize("mode", SYNTHESIS_MODES)
    def test_matches_synthesized_circuit(self, mode, rng):
        for _ in range(40):
            n = int(rng.integers(1, 9))
            s = random_pauli_string(rng, n)
            assert term_gate_counts(s, mode) == count_gates(_SYNTH[mode](s, 0.1)), s

    def test_identity_is_free(self):
        assert term_gate_counts(PauliString(4)) == GateCounts(0, 0, 0, 0)

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            term_gate_counts(PauliString.from_label("X"), "magic")


class TestSynthesizePlan:
    def make_plan(self, n_steps=1):
        op = QubitOperator(3)
        op.add_term(0.5, PauliString.from_label("XZI"))
        op.add_term(-0.25, PauliString.from_label("IYZ"))
        return plan_for(op, OrderingStrategy("lex"), n_steps, 1.0)

    def test_matches_term_product(self):
        plan = self.make_plan()
        u = circuit_unitary(synthesize_plan(plan, "canonical"))
        want = np.eye(8, dtype=complex)
        for (s, _), theta in zip(plan.ordered_terms, plan.angles()):
            want = pauli_exponential(s, theta) @ want
        assert_same_up_to_phase(u, want)

    def test_barriers_at_step_seams(self):
        plan = self.make_plan(n_steps=3)
        circ = synthesize_plan(plan, "canonical")
        per_step = len(circ.gates) // 3
        assert circ.barriers == [per_step, 2 * per_step]

    def test_ancilla_mode_flags_circuit(self):
        circ = synthesize_plan(self.make_plan(), "ancilla")
        assert circ.ancilla and circ.width == 4

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            synthesize_plan(self.make_plan(), "fancy")


class TestSerialization:
    def test_roundtrip(self):
        circ = Circuit(3, ancilla=True)
        circ.extend([H(0), YB(1), CNOT(0, 3), CZ(1, 2), RZ(3, -0.125), X(2), YBD(1)])
        back = parse_circuit(format_circuit(circ))
        assert back.n_qubits == 3 and back.ancilla
        assert back.gates == circ.gates

    def test_rz_angle_exact(self):
        circ = Circuit(1)
        circ.append(RZ(0, 0.1 + 1e-17))
        assert parse_circuit(format_circuit(circ)).gates[0].angle == circ.gates[0].angle

    def test_bad_header(self):
        with pytest.raises(ValueError):
            parse_circuit("GATES 3\nH 0\n")
        with pytest.raises(ValueError):
            parse_circuit("")
