"""In-memory experiment job registry backed by worker threads."""

from __future__ import annotations

import tempfile
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional

from ..config import ExperimentConfig
from ..experiment import run_experiment

QUEUED = "queued"
RUNNING = "running"
DONE = "done"
FAILED = "failed"


@dataclass
class JobRecord:
    job_id: str
    status: str = QUEUED
    error: Optional[str] = None
    output_dir: Optional[str] = None
    cells: list = field(default_factory=list)
    replicates: list = field(default_factory=list)


class JobStore:
    """Tracks experiment jobs; each runs on its own daemon thread."""

    def __init__(self, root_dir=None):
        self.root_dir = Path(root_dir) if root_dir else Path(tempfile.mkdtemp(prefix="woacluster-"))
        self._jobs: dict[str, JobRecord] = {}
        self._lock = threading.Lock()

    def submit(self, config: ExperimentConfig, make_plots: bool = False) -> JobRecord:
        job_id = uuid.uuid4().hex[:12]
        record = JobRecord(job_id=job_id)
        with self._lock:
            self._jobs[job_id] = record

        def work():
            out_dir = self.root_dir / job_id
            with self._lock:
                record.status = RUNNING
                record.output_dir = str(out_dir)
            try:
                result = run_experiment(config, out_dir, make_plots=make_plots)
            except Exception as exc:
                with self._lock:
                    record.status = FAILED
                    record.error = str(exc)
                return
            with self._lock:
                record.status = DONE
                record.cells = result.cell_rows
                record.replicates = result.replicate_rows

        threading.Thread(target=work, daemon=True).start()
        return record

    def get(self, job_id: str) -> Optional[JobRecord]:
        with self._lock:
            return self._jobs.get(job_id)
