"""Self-validation: exact solver versus the exhaustive oracle.

Instances are drawn small enough for brute-force enumeration, with weights
on a dyadic grid so that float sums are exact; totals from the two solvers
must then agree bit for bit, ties included.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import SagsimError
from .matching import (
    VisibilityGraph,
    brute_force_assignment,
    greedy_assignment,
    optimal_assignment,
    random_assignment,
    verify_assignment,
)
from .scenario import mix_seed

DEFAULT_INSTANCES = 1000
DEFAULT_SEED = 1414


def random_small_instance(rng: np.random.Generator) -> tuple[VisibilityGraph, int]:
    """A random instance inside the brute-force enumeration guard."""
    num_sats = int(rng.integers(1, 5))
    num_haps = int(rng.integers(1, 7))
    beam_cap = int(rng.integers(1, 3))
    # a coarse weight grid now and then provokes exact ties between optima
    denom = 8 if rng.random() < 0.3 else (1 << 20)
    edges = []
    for h in range(num_haps):
        for s in range(num_sats):
            if rng.random() < 0.6:
                edges.append((s, h, int(rng.integers(1, denom + 1)) / denom))
    return VisibilityGraph.from_edges(num_sats, num_haps, edges), beam_cap


@dataclass
class ValidationReport:
    num_instances: int
    num_passed: int
    failures: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.num_passed == self.num_instances


def validate_solver(num_instances: int = DEFAULT_INSTANCES,
                    seed: int = DEFAULT_SEED) -> ValidationReport:
    """Check optimal == oracle totals exactly plus feasibility, per instance.

    Instance i is reproducible standalone from mix_seed(seed, i).
    """
    failures = []
    for i in range(num_instances):
        inst_seed = mix_seed(seed, i)
        rng = np.random.default_rng(inst_seed)
        graph, beam_cap = random_small_instance(rng)
        label = (f"instance {i} (seed {inst_seed}, {graph.num_sats} sats x "
                 f"{graph.num_haps} haps, cap {beam_cap})")
        try:
            opt = optimal_assignment(graph, beam_cap)
            oracle = brute_force_assignment(graph, beam_cap)
            verify_assignment(opt, graph)
            verify_assignment(oracle, graph)
            verify_assignment(greedy_assignment(graph, beam_cap), graph)
            verify_assignment(random_assignment(graph, beam_cap, inst_seed), graph)
        except SagsimError as exc:
            failures.append(f"{label}: {exc}")
            continue
        if opt.total_weight != oracle.total_weight:
            failures.append(
                f"{label}: optimal total {opt.total_weight!r} != "
                f"oracle total {oracle.total_weight!r}"
            )
    return ValidationReport(
        num_instances=num_instances,
        num_passed=num_instances - len(failures),
        failures=failures,
    )
