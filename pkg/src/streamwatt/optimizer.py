"""What-if decision tools for encoder and CDN sizing.

Everything here rests on one observation: for a single video, total
energy is affine in the request count N. The fixed part is encoding
(plus optional storage and copy traffic), the slope is the per-request
delivery energy (server send, network transfer, playback device). The
tools solve the resulting line-crossing and argmin problems.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

from .catalog import ParameterCatalog, builtin_catalog
from .model import (
    DevicePowerProfile,
    NetworkProfile,
    ServerProfile,
    StreamRequest,
    nw_request_energy,
    ut_request_energy,
)
from .scenario import Scenario
from .units import DATA_SIZE, POWER, Quantity, quantity

__all__ = [
    "EncoderOption",
    "VideoCostModel",
    "CrossoverResult",
    "AssignmentResult",
    "sweep_requests",
    "crossover",
    "crossover_lines",
    "assign_optimal_encoders",
    "ladder_impact",
    "surrogate_scaling",
    "reencode_break_even",
    "video_cost_model",
    "case_options",
    "reference_options",
    "reference_ladder",
    "reference_video_set",
]


@dataclass(frozen=True)
class EncoderOption:
    """One encoder working point: effort per video-second and the size
    it produces for the reference video."""

    label: str
    p_enc: Quantity
    output_size: Quantity

    def __post_init__(self):
        if self.p_enc.dimension != POWER:
            raise ValueError("p_enc must be a power")
        if self.output_size.dimension != DATA_SIZE or self.output_size.si <= 0:
            raise ValueError("output_size must be a positive data size")

    def bitrate(self, duration: Quantity) -> Quantity:
        return self.output_size / duration


@dataclass(frozen=True)
class VideoCostModel:
    """Affine energy model of one video: total(o, N) = fixed(o) + N * req(o).

    The fixed part covers the transcode (decode once, encode once) plus,
    when surrogates are configured, copy traffic and optionally a year
    of storage per surrogate. The per-request part covers server send,
    network transfer and playback on the viewer device.
    """

    duration: Quantity
    viewer: DevicePowerProfile
    network: NetworkProfile
    server: ServerProfile
    surrogates: int = 0
    include_storage: bool = False

    def _request(self, option: EncoderOption) -> StreamRequest:
        return StreamRequest(self.duration, option.bitrate(self.duration))

    def decode_cost_kwh(self) -> float:
        return self.server.pue * (self.server.p_dec * self.duration).kwh

    def encode_cost_kwh(self, option: EncoderOption) -> float:
        return self.server.pue * (option.p_enc * self.duration).kwh

    def copy_cost_kwh(self, option: EncoderOption, surrogates: int) -> float:
        """Pushing one variant to each surrogate: server send plus CDN
        network transfer."""
        if surrogates == 0:
            return 0.0
        send = self.server.pue * (option.output_size * self.server.e_send_per_bit).kwh
        transfer = nw_request_energy(self.network, self._request(option)).kwh
        return surrogates * (send + transfer)

    def storage_cost_kwh(self, option: EncoderOption, surrogates: int) -> float:
        """One year of storage for one variant on each surrogate."""
        year = quantity(1.0, "year")
        per_copy = self.server.pue * (
            option.output_size * self.server.e_store_per_bit_year * year
        ).kwh
        return surrogates * per_copy

    def fixed_cost(self, option: EncoderOption) -> float:
        """Request-independent energy in kWh."""
        total = self.decode_cost_kwh() + self.encode_cost_kwh(option)
        total += self.copy_cost_kwh(option, self.surrogates)
        if self.include_storage:
            total += self.storage_cost_kwh(option, self.surrogates)
        return total

    def per_request_cost(self, option: EncoderOption) -> float:
        """Energy per delivered request in kWh: server Tx, network, playback."""
        request = self._request(option)
        tx = self.server.pue * (option.output_size * self.server.e_send_per_bit).kwh
        nw = nw_request_energy(self.network, request).kwh
        ut = ut_request_energy(self.viewer, request).kwh
        return tx + nw + ut

    def total(self, option: EncoderOption, requests: float) -> float:
        return self.fixed_cost(option) + requests * self.per_request_cost(option)


# ---------------------------------------------------------------------------
# Sweeps and crossover
# ---------------------------------------------------------------------------


def sweep_requests(
    model: VideoCostModel, options: list[EncoderOption], grid: list[float]
) -> list[tuple[float, str, float]]:
    """Total energy per (request count, option) over a grid of counts.

    The grid must be non-negative and strictly increasing; rows come out
    grid-major in option order, values in kWh.
    """
    previous = None
    for count in grid:
        if count < 0:
            raise ValueError("request counts must be >= 0")
        if previous is not None and count <= previous:
            raise ValueError("request grid must be strictly increasing")
        previous = count
    return [
        (count, option.label, model.total(option, count))
        for count in grid
        for option in options
    ]


@dataclass(frozen=True)
class CrossoverResult:
    """Where two option cost lines meet.

    kind is "crossover" (requests and requests_ceil set), "always-equal"
    (identical lines) or "none" (parallel or meeting at negative N).
    """

    kind: str
    requests: float | None = None
    requests_ceil: int | None = None


def crossover_lines(fixed_a: float, req_a: float, fixed_b: float, req_b: float) -> CrossoverResult:
    """Solve fixed_a + N*req_a = fixed_b + N*req_b for N >= 0."""
    if req_a == req_b:
        if fixed_a == fixed_b:
            return CrossoverResult("always-equal")
        return CrossoverResult("none")
    n = (fixed_b - fixed_a) / (req_a - req_b)
    if n < 0:
        return CrossoverResult("none")
    return CrossoverResult("crossover", requests=n, requests_ceil=math.ceil(n))


def crossover(model: VideoCostModel, a: EncoderOption, b: EncoderOption) -> CrossoverResult:
    return crossover_lines(
        model.fixed_cost(a),
        model.per_request_cost(a),
        model.fixed_cost(b),
        model.per_request_cost(b),
    )


# ---------------------------------------------------------------------------
# Optimal assignment
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AssignmentResult:
    """Per-video optimal encoder choice plus single-policy totals (kWh)."""

    assignment: tuple[str, ...]
    optimal_total: float
    policy_totals: dict[str, float]


def assign_optimal_encoders(
    videos: list[tuple[VideoCostModel, float]], options: list[EncoderOption]
) -> AssignmentResult:
    """Pick the cheapest option per video given its request forecast.

    Also reports the total under every uniform policy (all videos on one
    option). Ties break toward the lower encoder effort.
    """
    if not options:
        raise ValueError("need at least one encoder option")
    assignment = []
    optimal_total = 0.0
    policy_totals = {option.label: 0.0 for option in options}
    for model, forecast in videos:
        if forecast < 0:
            raise ValueError("request forecasts must be >= 0")
        best = None
        best_cost = None
        for option in options:
            cost = model.total(option, forecast)
            policy_totals[option.label] += cost
            if (
                best is None
                or cost < best_cost
                or (cost == best_cost and option.p_enc.si < best.p_enc.si)
            ):
                best, best_cost = option, cost
        assignment.append(best.label)
        optimal_total += best_cost
    return AssignmentResult(tuple(assignment), optimal_total, policy_totals)


# ---------------------------------------------------------------------------
# Ladder impact and surrogate scaling
# ---------------------------------------------------------------------------


def ladder_impact(
    base: VideoCostModel,
    ladder: list[EncoderOption],
    forecast: float,
    surrogates: int,
) -> float:
    """Relative extra energy of offering a whole bitrate ladder.

    The single-stream baseline is the first ladder entry. The ladder
    encodes every variant, stores each on the given surrogates for a
    year and pushes the copies; requests are spread uniformly over the
    variants. Returns (E_ladder - E_single) / E_single.
    """
    if not ladder:
        raise ValueError("ladder must not be empty")
    reference = ladder[0]

    def total(variants: list[EncoderOption]) -> float:
        fixed = base.decode_cost_kwh()
        per_request = 0.0
        for option in variants:
            fixed += base.encode_cost_kwh(option)
            fixed += base.copy_cost_kwh(option, surrogates)
            fixed += base.storage_cost_kwh(option, surrogates)
            per_request += base.per_request_cost(option) / len(variants)
        return fixed + forecast * per_request

    e_single = total([reference])
    e_ladder = total(list(ladder))
    return (e_ladder - e_single) / e_single


def surrogate_scaling(
    scenario: Scenario,
    server_counts: list[int],
    catalog: ParameterCatalog | None = None,
) -> list[tuple[int, float]]:
    """Total energy (kWh) as the CDN surrogate count grows.

    For a scenario carrying a video_case the per-surrogate maintenance
    terms (storage and copy traffic) scale with the count while the
    request-driven terms stay fixed. For service scenarios the server
    fleet size is scaled instead, so the offset term grows linearly.
    """
    from .report import evaluate

    catalog = catalog or builtin_catalog()
    for count in server_counts:
        if count < 1:
            raise ValueError("server counts must be >= 1")
    rows = []
    if scenario.video_case is not None:
        case = scenario.video_case
        options = [
            EncoderOption(o.label, o.p_enc, o.output_size) for o in case.options
        ]
        for count in server_counts:
            model = video_cost_model(
                scenario, catalog, surrogates=count, include_storage=True
            )
            rows.append((count, model.total(options[0], case.requests)))
        return rows
    for count in server_counts:
        scaled = replace(
            scenario,
            server_fleet=replace(scenario.server_fleet, count=float(count))
            if scenario.server_fleet
            else None,
        )
        rows.append((count, evaluate(scaled, catalog).total))
    return rows


def reencode_break_even(
    model: VideoCostModel, current: EncoderOption, candidate: EncoderOption
) -> float | None:
    """Remaining requests after which re-encoding to ``candidate`` pays.

    The decode and encode cost of producing the new variant must be
    amortized by its lower per-request cost; returns None when the
    candidate does not deliver cheaper requests.
    """
    savings = model.per_request_cost(current) - model.per_request_cost(candidate)
    if savings <= 0:
        return None
    extra = model.decode_cost_kwh() + model.encode_cost_kwh(candidate)
    extra += model.copy_cost_kwh(candidate, model.surrogates)
    if model.include_storage:
        extra += model.storage_cost_kwh(candidate, model.surrogates)
    return extra / savings


# ---------------------------------------------------------------------------
# Builtin parametrizations
# ---------------------------------------------------------------------------


def video_cost_model(
    scenario: Scenario,
    catalog: ParameterCatalog | None = None,
    surrogates: int | None = None,
    include_storage: bool = False,
) -> VideoCostModel:
    """Build the cost model from a scenario's video_case section."""
    catalog = catalog or builtin_catalog()
    case = scenario.video_case
    if case is None:
        raise ValueError(f"scenario {scenario.name!r} has no video_case")
    return VideoCostModel(
        duration=case.duration,
        viewer=scenario.device(case.viewer_profile, catalog),
        network=scenario.network(case.network, catalog),
        server=scenario.server(case.server, catalog),
        surrogates=case.surrogates if surrogates is None else surrogates,
        include_storage=include_storage,
    )


def case_options(scenario: Scenario) -> list[EncoderOption]:
    """The encoder options declared in a scenario's video_case."""
    if scenario.video_case is None:
        raise ValueError(f"scenario {scenario.name!r} has no video_case")
    return [
        EncoderOption(o.label, o.p_enc, o.output_size)
        for o in scenario.video_case.options
    ]


def reference_options() -> list[EncoderOption]:
    """The H/L encoder pair for the two-hour reference video."""
    return [
        EncoderOption("high-effort", quantity(90, "kJ/s"), quantity(32, "GByte")),
        EncoderOption("low-effort", quantity(0.2, "J/s"), quantity(80, "GByte")),
    ]


def reference_ladder() -> list[EncoderOption]:
    """A 16-variant delivery ladder for the reference video.

    Eight variants keep the full 32 GByte size (codec/container splits),
    eight are reduced-resolution renditions at 18.7 GByte; all encoded
    at the high working point.
    """
    p = quantity(90, "kJ/s")
    ladder = [
        EncoderOption(f"full-{i}", p, quantity(32, "GByte")) for i in range(8)
    ]
    ladder += [
        EncoderOption(f"reduced-{i}", p, quantity(18.7, "GByte")) for i in range(8)
    ]
    return ladder


def reference_video_set(
    model: VideoCostModel,
    popular: int = 10,
    popular_forecast: float = 1e7,
    long_tail: int = 49_990,
    tail_forecast: float = 1.0,
) -> list[tuple[VideoCostModel, float]]:
    """A 50,000-video catalog: a few heavy hitters, a long tail of
    one-request videos. All videos share the same cost model."""
    videos = [(model, popular_forecast)] * popular
    videos += [(model, tail_forecast)] * long_tail
    return videos
