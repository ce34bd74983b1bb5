"""File formats: group and representation JSON, state dumps, canonical reports.

Reports are serialized with sorted keys and a fixed layout so identical runs
produce byte-identical files; every report embeds a digest of its inputs.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import NotAGroup
from .groups import FiniteGroup, validate_group
from .reps import CharacterTable, UnitaryRep
from .statevec import StateVector


def canonical_json(payload) -> str:
    return json.dumps(payload, sort_keys=True, indent=2, ensure_ascii=True) + "\n"


def digest(payload) -> str:
    return hashlib.sha256(canonical_json(payload).encode()).hexdigest()


def complex_pairs(array: np.ndarray) -> list:
    """Nested [re, im] pairs with the same shape as the input."""
    arr = np.asarray(array, dtype=np.complex128)
    stacked = np.stack([arr.real, arr.imag], axis=-1)
    return stacked.tolist()


def pairs_to_complex(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1] != 2:
        raise ValueError("expected trailing [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def group_to_dict(group: FiniteGroup) -> dict:
    return {
        "order": group.order,
        "cayley": group.cayley.tolist(),
        "labels": list(group.labels),
    }


def group_from_dict(data: dict, name: str | None = None) -> FiniteGroup:
    if "cayley" not in data:
        raise NotAGroup("group file must contain a 'cayley' table")
    labels = data.get("labels")
    group = validate_group(data["cayley"], labels=labels, name=name)
    if "order" in data and data["order"] != group.order:
        raise NotAGroup(f"declared order {data['order']} != table size {group.order}")
    return group


def load_group_file(path: str | Path) -> FiniteGroup:
    data = json.loads(Path(path).read_text())
    return group_from_dict(data, name=Path(path).stem)


def rep_to_dict(rep: UnitaryRep) -> dict:
    return {
        "dim": rep.dim,
        "projective": rep.projective,
        "matrices": complex_pairs(rep.matrices),
    }


def rep_from_dict(group: FiniteGroup, data: dict) -> UnitaryRep:
    matrices = pairs_to_complex(data["matrices"])
    return UnitaryRep.build(
        group, matrices, projective=bool(data.get("projective", False))
    )


def load_rep_file(group: FiniteGroup, path: str | Path) -> UnitaryRep:
    return rep_from_dict(group, json.loads(Path(path).read_text()))


def character_table_to_dict(table: CharacterTable) -> dict:
    payload = {
        "dims": table.dims.tolist(),
        "chars": complex_pairs(table.chars),
    }
    if table.irrep_matrices is not None:
        payload["irrep_matrices"] = [complex_pairs(m) for m in table.irrep_matrices]
    return payload


def character_table_from_dict(group: FiniteGroup, data: dict) -> CharacterTable:
    irreps = None
    if "irrep_matrices" in data:
        irreps = tuple(pairs_to_complex(m) for m in data["irrep_matrices"])
    return CharacterTable.build(
        group, data["dims"], pairs_to_complex(data["chars"]), irreps
    )


def state_to_dict(state: StateVector) -> dict:
    return {"d": state.d, "n": state.n, "amps": complex_pairs(state.amps)}


def state_from_dict(data: dict) -> StateVector:
    return StateVector.from_amplitudes(
        int(data["d"]), int(data["n"]), pairs_to_complex(data["amps"])
    )


def load_character_table_file(group: FiniteGroup, path: str | Path) -> CharacterTable:
    return character_table_from_dict(group, json.loads(Path(path).read_text()))


def gate_to_dict(gate) -> dict:
    payload = {
        "kind": gate.kind,
        "controls": [[w, v] for w, v in gate.controls],
        "targets": list(gate.targets),
        "cost": gate.cost,
        "stage": gate.stage,
    }
    if gate.matrix is not None:
        payload["matrix"] = complex_pairs(gate.matrix)
    if gate.note:
        payload["note"] = gate.note
    return payload


def plan_to_dict(plan) -> dict:
    return {
        "layout": {
            "d": plan.layout.d,
            "control": list(plan.layout.control),
            "token": list(plan.layout.token),
            "message": list(plan.layout.message),
        },
        "total_count": plan.total_count,
        "metadata": {
            k: v for k, v in plan.metadata.items() if isinstance(v, (int, str, list, float, type(None)))
        },
        "gates": [gate_to_dict(g) for g in plan.gates],
    }


def write_report(path: str | Path, payload: dict) -> None:
    Path(path).write_text(canonical_json(payload))
