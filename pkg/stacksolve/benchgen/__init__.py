"""Seeded generation of the progressively constrained stacking benchmark."""

from .dataset import (
    DATASET_RECORD_SCHEMA,
    fact_triple,
    item_to_record,
    read_dataset,
    record_to_item,
    write_dataset,
)
from .generator import build_family, generate_dataset
from .models import CONDITIONS, GEN_CONFIG_SCHEMA, BenchmarkItem, Condition, GenConfig, item_id
from .sampling import (
    family_rng,
    ood_swap,
    rename_fact,
    sample_configuration,
    sample_initial_configuration,
    sample_target_specification,
)

__all__ = [
    "CONDITIONS",
    "DATASET_RECORD_SCHEMA",
    "GEN_CONFIG_SCHEMA",
    "BenchmarkItem",
    "Condition",
    "GenConfig",
    "build_family",
    "fact_triple",
    "family_rng",
    "generate_dataset",
    "item_id",
    "item_to_record",
    "ood_swap",
    "read_dataset",
    "record_to_item",
    "rename_fact",
    "sample_configuration",
    "sample_initial_configuration",
    "sample_target_specification",
    "write_dataset",
]
