"""Named reference instances shipped with the package.

The JSON files under ``instances/`` in the repository are generated from
these definitions by ``write_all`` and checked against them in the tests.
"""

from __future__ import annotations

from pathlib import Path

from .io import InstanceFile, instance_from_dict, serialize_instance

_DATA = {
    "four_point_pure": {
        "description": "Pure planar polytope with four generators and ten pseudovertices.",
        "generators": [["0", "1", "3"], ["0", "3", "1"], ["0", "6", "2"], ["0", "2", "5"]],
    },
    "diagonal_nonpure": {
        "description": "Planar polytope in general position that is not pure.",
        "generators": [["0", "-1", "1"], ["0", "0", "0"], ["0", "1", "-1"]],
    },
    "unit_simplex": {
        "description": "Pure planar triangle whose generators are not in general position.",
        "generators": [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        "seed": 1,
    },
    "counterexample_lift": {
        "description": "Lift of unit_simplex whose facets do not cut out the polytope.",
        "generators": [["0", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]],
        "lift": [["1", "1", "1"], ["1", "t^(-1)", "1/2"], ["1", "1/2", "t^(-1)"]],
    },
    "eleven_point_tp4": {
        "description": "Eleven generators in TP^4 in general position; 26 vs 27 half-spaces.",
        "generators": [
            row.split() for row in """\
0 2.5176 10.5161 -0.484 2.5151
0 3.5149 11.0142 0.0149 3.0115
0 3.0217 11.5012 0.0101 3.0009
0 3.0154 11.0145 0.0056 3.5239
0 2.0238 14.5216 13.0094 13.0252
0 2.0131 14.0181 13.5023 13.0153
0 2.0005 14.0202 13.0097 13.5148
0 0.5033 2.5111 10.5037 6.5084
0 1.5245 3.001 11.0068 7.0053
0 1.0232 3.0155 11.511 7.0175
0 1.0083 3.0047 11.0005 7.5248""".splitlines()
        ],
    },
}

NAMES = tuple(_DATA)


def builtin(name: str) -> InstanceFile:
    if name not in _DATA:
        raise KeyError("unknown instance %r; choose from %s" % (name, ", ".join(NAMES)))
    data = dict(_DATA[name], name=name, schema=1)
    return instance_from_dict(data, name)


def write_all(directory) -> list[Path]:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    paths = []
    for name in NAMES:
        path = directory / (name + ".json")
        path.write_text(serialize_instance(builtin(name)))
        paths.append(path)
    return paths
