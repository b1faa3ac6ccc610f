"""
Async entry points: both high-order verifiers side by side, and randomized
cross-checking. Verification is CPU-bound and pure, so each job runs in a
worker thread and a semaphore caps how many are in flight.
"""
import asyncio
import logging
import random
from typing import List, Optional, Tuple

from hoopacity.automaton import Automaton
from hoopacity.double import verify_hoo_double
from hoopacity.exceptions import MethodDisagreement
from hoopacity.generate import random_automaton, random_secrets, random_task
from hoopacity.knowledge import DisambiguationTask, SecretStates, cso_as_high_order, verify_cso
from hoopacity.model_file import ParsedModel, render_model
from hoopacity.pair import verify_hoo_pair
from hoopacity.serializers import BaseModel, Field
from hoopacity.settings import settings
from hoopacity.verdict import Verdict

logger = logging.getLogger(__name__)


class Mismatch(BaseModel):
    index: int
    check: str
    detail: str
    model: str


class CrosscheckReport(BaseModel):
    seed: int
    instances: int = 0
    mismatches: List[Mismatch] = Field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


async def verify_both(
    a: Automaton, t: DisambiguationTask, max_states: Optional[int] = None
) -> Tuple[Verdict, Verdict]:
    """Run both verifiers concurrently; raise MethodDisagreement if their verdicts differ."""
    double, pair = await asyncio.gather(
        asyncio.to_thread(verify_hoo_double, a, t, max_states),
        asyncio.to_thread(verify_hoo_pair, a, t, max_states),
    )
    if double.opaque != pair.opaque:
        raise MethodDisagreement(
            f"double observer says '{double.describe()}' but state-pair observer says '{pair.describe()}'"
        )
    return double, pair


def _check_instance(
    index: int, a: Automaton, t: DisambiguationTask, xs: SecretStates
) -> List[Mismatch]:
    found = []

    def mismatch(check: str, detail: str) -> None:
        model = render_model(ParsedModel(automaton=a, task=t, secrets=xs, name=f"crosscheck-{index}"))
        found.append(Mismatch(index=index, check=check, detail=detail, model=model))

    double = verify_hoo_double(a, t)
    pair = verify_hoo_pair(a, t)
    if (double.opaque, double.witness) != (pair.opaque, pair.witness):
        mismatch("double/pair", f"double: {double.describe()}; pair: {pair.describe()}")

    cso = verify_cso(a, xs)
    reduced = verify_hoo_pair(*cso_as_high_order(a, xs))
    if (cso.opaque, cso.witness) != (reduced.opaque, reduced.witness):
        mismatch("cso reduction", f"cso: {cso.describe()}; reduced: {reduced.describe()}")
    return found


async def crosscheck(
    count: int,
    seed: int = 0,
    max_states: int = 6,
    max_events: int = 4,
    limit: Optional[int] = None,
) -> CrosscheckReport:
    """
    Generate ``count`` random live instances and check that the two high-order
    verifiers agree, and that current-state opacity matches its high-order
    reduction.
    """
    rng = random.Random(seed)
    instances = []
    for index in range(count):
        a = random_automaton(rng, rng.randint(1, max_states), rng.randint(1, max_events))
        instances.append((index, a, random_task(rng, a), random_secrets(rng, a)))

    semaphore = asyncio.Semaphore(limit or settings.CONCURRENCY_LIMIT)

    async def check(index, a, t, xs) -> List[Mismatch]:
        async with semaphore:
            return await asyncio.to_thread(_check_instance, index, a, t, xs)

    results = await asyncio.gather(*(check(*instance) for instance in instances))
    report = CrosscheckReport(
        seed=seed, instances=count, mismatches=[m for found in results for m in found]
    )
    if report.ok:
        logger.info("crosscheck: %d instances, no mismatches", count)
    else:
        logger.warning("crosscheck: %d of %d instances disagree", len(report.mismatches), count)
    return report
