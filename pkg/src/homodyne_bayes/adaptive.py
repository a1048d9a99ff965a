"""Two-step adaptive estimation: spend a sqrt-sized slice of the measurement
budget on a rough phase estimate, retune the apparatus, then estimate from
the remaining data in the retuned frame.

Two retuning schemes are implemented.  SQUEEZE_RETUNE prepares a fresh probe
whose squeezing makes the rough phase the optimal operating point (reflecting
phases above pi/4 into the first octant, which a quadrature relabeling makes
physical).  PHASE_RETUNE keeps the probe and shifts the interferometer frame
so the unknown phase sits at the optimal point; estimates are translated back
afterwards.  The baseline NONE runs a single stage on the whole budget.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from enum import Enum

from .bayes import DEFAULT_GRID_SIZE, posterior_from_batch
from .fisher import NonIdentifiableError, optimal_phase, optimal_squeezing
from .measurement import HomodyneBatch, sample_homodyne
from .probe import HALF_PI, require_phase_range
from .rng import child_seed

QUARTER_PI = math.pi / 4

# labels for the two independent sampling streams of one run
_STAGE_ROUGH = "stage1"
_STAGE_FINAL = "stage2"


class Scheme(str, Enum):
    NONE = "none"
    SQUEEZE_RETUNE = "squeeze"
    PHASE_RETUNE = "phase"


@dataclass(frozen=True)
class TwoStepPlan:
    """Frozen description of one run's second stage.

    ``retuned_r`` is the stage-2 squeezing (equals the probe r for
    PHASE_RETUNE and NONE).  ``phase_offset`` is the frame shift added to the
    unknown phase in stage 2 (zero except for PHASE_RETUNE).  ``reflected``
    marks the phi -> pi/2 - phi relabeling of SQUEEZE_RETUNE plans built from
    a rough estimate above pi/4.  ``clamped`` marks offsets that had to be
    clipped to keep the second stage inside the prior support.
    """

    scheme: Scheme
    n_rough: int
    rough_estimate: float
    retuned_r: float
    phase_offset: float
    reflected: bool = False
    clamped: bool = False
    degenerate_rough: bool = False

    def __post_init__(self) -> None:
        if self.n_rough < 0:
            raise ValueError(f"n_rough must be >= 0, got {self.n_rough!r}")
        if not math.isfinite(self.retuned_r) or self.retuned_r < 0.0:
            raise ValueError(f"retuned_r must be finite and >= 0, got {self.retuned_r!r}")
        if not math.isfinite(self.phase_offset):
            raise ValueError("phase_offset must be finite")


def default_rough_count(m: int) -> int:
    """Budget slice used for the rough estimate: floor(3 sqrt(M))."""
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m!r}")
    return int(math.floor(3.0 * math.sqrt(m)))


def rough_estimate(
    batch_prefix: HomodyneBatch, r: float, grid_size: int = DEFAULT_GRID_SIZE
) -> float:
    """Posterior mode of the rough-stage prefix (the caller slices the prefix)."""
    return posterior_from_batch(batch_prefix, r, grid_size).mode


def _require_interior_rough(rough: float) -> float:
    rough = require_phase_range(rough, "rough estimate")
    if rough <= 0.0 or rough >= HALF_PI:
        raise NonIdentifiableError(
            f"rough estimate {rough!r} sits on the prior boundary; "
            "no retuning target is identifiable there"
        )
    return rough


def plan_squeeze_retune(rough: float, n_rough: int = 0) -> TwoStepPlan:
    """Plan a fresh probe with squeezing optimal for the rough phase.

    Rough estimates above pi/4 are reflected (phi -> pi/2 - phi with
    quadrature relabeling) so the squeezing stays nonnegative.
    """
    rough = _require_interior_rough(rough)
    reflected = rough > QUARTER_PI
    target = HALF_PI - rough if reflected else rough
    return TwoStepPlan(
        scheme=Scheme.SQUEEZE_RETUNE,
        n_rough=n_rough,
        rough_estimate=rough,
        retuned_r=optimal_squeezing(target),
        phase_offset=0.0,
        reflected=reflected,
    )


def plan_phase_retune(rough: float, r: float, n_rough: int = 0) -> TwoStepPlan:
    """Plan a frame shift moving the rough phase onto the optimal point.

    The applied offset is optimal_phase(r) - rough (the pi/2 of the retuning
    rule is absorbed by the canonical working frame), so a perfect rough
    estimate puts the second stage exactly at the optimal operating point.
    """
    rough = _require_interior_rough(rough)
    if not math.isfinite(r) or r <= 0.0:
        raise ValueError(f"phase retuning needs squeezing r > 0, got {r!r}")
    return TwoStepPlan(
        scheme=Scheme.PHASE_RETUNE,
        n_rough=n_rough,
        rough_estimate=rough,
        retuned_r=r,
        phase_offset=optimal_phase(r) - rough,
    )


def run_two_step(
    scheme: Scheme | str,
    r: float,
    phi_star: float,
    m: int,
    seed: int,
    grid_size: int = DEFAULT_GRID_SIZE,
    n_rough: int | None = None,
    rough_override: float | None = None,
) -> tuple[float, float, TwoStepPlan]:
    """Simulate one full run at true phase phi_star with total budget m.

    Stage 1 samples n_rough outcomes (default floor(3 sqrt(m))) in the bare
    frame and takes the posterior mode as the rough estimate; its data are
    then discarded.  Stage 2 samples the remaining m - n_rough outcomes in
    the retuned frame and returns the back-translated posterior mean and the
    posterior variance, together with the executed plan.

    The two stages draw from independent seed-derived streams, so injecting
    ``rough_override`` (which skips stage-1 sampling) leaves the stage-2 data
    unchanged.  For PHASE_RETUNE, an offset that would push the true phase
    outside [0, pi/2] is clipped to the boundary and flagged on the plan; the
    stage-2 posterior support is the translated prior window in either case.

    Budgets: adaptive schemes need m >= 16 (so the sqrt rule leaves data for
    stage 2); the NONE baseline accepts any m >= 0.
    """
    scheme = Scheme(scheme)
    phi_star = require_phase_range(phi_star, "phi_star")

    if scheme is Scheme.NONE:
        if m < 0:
            raise ValueError(f"m must be >= 0, got {m!r}")
        batch = sample_homodyne(r, phi_star, m, child_seed(seed, _STAGE_FINAL))
        grid = posterior_from_batch(batch, r, grid_size)
        plan = TwoStepPlan(
            scheme=Scheme.NONE,
            n_rough=0,
            rough_estimate=math.nan,
            retuned_r=r,
            phase_offset=0.0,
            degenerate_rough=grid.degenerate,
        )
        return grid.mean, grid.variance, plan

    if m < 16:
        raise ValueError(f"adaptive schemes need m >= 16, got {m!r}")
    n_r = default_rough_count(m) if n_rough is None else int(n_rough)
    if not 1 <= n_r < m:
        raise ValueError(f"n_rough must lie in [1, m), got {n_r!r} for m = {m!r}")

    degenerate = False
    if rough_override is not None:
        rough = float(rough_override)
    else:
        stage1 = sample_homodyne(r, phi_star, n_r, child_seed(seed, _STAGE_ROUGH))
        grid1 = posterior_from_batch(stage1, r, grid_size)
        rough = grid1.mode
        degenerate = grid1.degenerate

    if scheme is Scheme.SQUEEZE_RETUNE:
        plan = plan_squeeze_retune(rough, n_rough=n_r)
        plan = replace(plan, degenerate_rough=degenerate)
        eff_phi = HALF_PI - phi_star if plan.reflected else phi_star
        batch2 = sample_homodyne(
            plan.retuned_r, eff_phi, m - n_r, child_seed(seed, _STAGE_FINAL)
        )
        grid2 = posterior_from_batch(batch2, plan.retuned_r, grid_size)
        mean = HALF_PI - grid2.mean if plan.reflected else grid2.mean
        return mean, grid2.variance, plan

    # PHASE_RETUNE
    plan = plan_phase_retune(rough, r, n_rough=n_r)
    plan = replace(plan, degenerate_rough=degenerate)
    offset = plan.phase_offset
    eff_phi = phi_star + offset
    if not 0.0 <= eff_phi <= HALF_PI:
        eff_phi = min(max(eff_phi, 0.0), HALF_PI)
        offset = eff_phi - phi_star
        plan = replace(plan, phase_offset=offset, clamped=True)
    window = (max(0.0, offset), min(HALF_PI, HALF_PI + offset))
    batch2 = sample_homodyne(r, eff_phi, m - n_r, child_seed(seed, _STAGE_FINAL))
    grid2 = posterior_from_batch(batch2, r, grid_size, support=window)
    return grid2.mean - offset, grid2.variance, plan


__all__ = [
    "Scheme",
    "TwoStepPlan",
    "default_rough_count",
    "rough_estimate",
    "plan_squeeze_retune",
    "plan_phase_retune",
    "run_two_step",
]
