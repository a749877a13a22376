from __future__ import annotations

from ignite.engine import Engine, Events


class FullBatchTrainer(Engine):
    """Ignite engine running one full-batch optimization step per epoch.
    ``state.samples`` counts the training samples seen so far."""

    def __init__(self, process_function, n_samples: int):
        super(FullBatchTrainer, self).__init__(process_function)
        self.n_samples = n_samples
        self.add_event_handler(Events.STARTED, FullBatchTrainer._patch_state)
        self.add_event_handler(Events.ITERATION_COMPLETED, FullBatchTrainer._count_samples)

    def run(self, max_epochs: int):
        old_level = self.logger.level
        # Disable messages "INFO: Engine run starting with max_epochs=..."
        self.logger.setLevel("WARNING")
        try:
            return super(FullBatchTrainer, self).run([None], max_epochs=max_epochs)
        finally:
            self.logger.setLevel(old_level)

    @staticmethod
    def _patch_state(trainer: FullBatchTrainer):
        trainer.state.samples = getattr(trainer.state, "samples", 0)

    @staticmethod
    def _count_samples(trainer: FullBatchTrainer):
        trainer.state.samples += trainer.n_samples
