"""Worker fan-out and checkpoint/resume for sharded sweeps.

Only the command line uses this; the library functions stay single-process
and accept any callable with the ``runner(task, total)`` signature.
"""

from __future__ import annotations

import json
import logging
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from functools import reduce
from typing import Optional

from .errors import CarrylabError
from .extremal import SweepPartial, SweepTask, sweep_shard

log = logging.getLogger(__name__)

CHECKPOINT_SCHEMA = "carrylab-checkpoint/1"


class CheckpointMismatch(CarrylabError):
    pass


class ShardRunner:
    """Run shards on ``workers`` processes, recording each finished shard in ``checkpoint``."""

    def __init__(self, workers: int = 1, checkpoint: Optional[str] = None):
        if workers < 1:
            raise ValueError("workers must be positive")
        self.workers = workers
        self.checkpoint = checkpoint

    def _load(self, task: SweepTask, total: int) -> dict:
        if not self.checkpoint or not os.path.exists(self.checkpoint):
            return {}
        with open(self.checkpoint) as fh:
            state = json.load(fh)
        if state.get("schema") != CHECKPOINT_SCHEMA or state["task"] != task.to_json() or state["total"] != total:
            raise CheckpointMismatch(f"checkpoint {self.checkpoint} belongs to a different sweep")
        done = {int(i): SweepPartial.from_json(p) for i, p in state["partials"].items()}
        log.info("resuming from %s: %d/%d shards done", self.checkpoint, len(done), total)
        return done

    def _save(self, task: SweepTask, total: int, done: dict) -> None:
        if not self.checkpoint:
            return
        last = -1
        while last + 1 in done:
            last += 1
        state = {
            "schema": CHECKPOINT_SCHEMA,
            "task": task.to_json(),
            "total": total,
            "last_completed": last,
            "partials": {str(i): done[i].to_json() for i in sorted(done)},
        }
        tmp = self.checkpoint + ".tmp"
        with open(tmp, "w") as fh:
            json.dump(state, fh, sort_keys=True)
        os.replace(tmp, self.checkpoint)

    def __call__(self, task: SweepTask, total: int) -> SweepPartial:
        done = self._load(task, total)
        todo = [i for i in range(total) if i not in done]
        if self.workers == 1 or len(todo) <= 1:
            for i in todo:
                done[i] = sweep_shard(task, i, total)
                self._save(task, total, done)
        else:
            with ProcessPoolExecutor(max_workers=self.workers) as pool:
                futures = {pool.submit(sweep_shard, task, i, total): i for i in todo}
                for fut in as_completed(futures):
                    done[futures[fut]] = fut.result()
                    self._save(task, total, done)
        # merge in shard order so the result never depends on completion order
        return reduce(SweepPartial.merge, (done[i] for i in range(total)), SweepPartial())
