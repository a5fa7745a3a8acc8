"""Assemble and execute one simulation from a RunConfig."""

from __future__ import annotations

from .config import RunConfig
from .controller import BatchPolicy, make_controller
from .metrics import MetricsLog
from .simulator import Engine, RandomStreams, to_ticks
from .workload import build_substrate, generate_workload


def run_simulation(config: RunConfig):
    """Build substrate, workload, controller, and engine; run to completion.

    Returns (engine, log); the controller is reachable as engine.controller.
    The same config always produces the same trace, byte for byte.
    """
    config.validate()
    streams = RandomStreams(config.seed)
    spec = config.generator_spec()
    substrate = build_substrate(config.substrate, streams.topology, spec)
    requests = generate_workload(
        streams, spec, config.requests,
        interarrival_mean=config.interarrival_mean,
        lifetime_mean=config.lifetime_mean,
    )
    policy = BatchPolicy(
        size=config.batch_size,
        window=to_ticks(config.effective_window()),
        mode=config.mode,
    )
    controller = make_controller(config.strategy, substrate, policy, log=None,
                                 split_paths=config.split_paths)
    log = MetricsLog(controller.view, hop_delay=config.hop_delay,
                     wait_delay=config.wait_delay)
    controller.log = log
    engine = Engine(
        controller, requests,
        horizon=to_ticks(config.horizon) if config.horizon is not None else None,
        check_invariants=config.check_invariants,
    )
    engine.run()
    return engine, log
