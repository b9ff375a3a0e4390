"""Constants for the stacksolve toolkit."""

from typing import Final

PACKAGE: Final = "stacksolve"

# PDDL interlingua
DOMAIN_NAME: Final = "stacking"
PRED_ON: Final = "on"
PRED_ON_TABLE: Final = "on-table"
PRED_CLEAR: Final = "clear"
ACTION_UNSTACK: Final = "unstack"
ACTION_STACK_FROM_TABLE: Final = "stackfromtable"
ACTION_STACK: Final = "stack"

# Core guards
MAX_ENUMERATED_OBJECTS: Final = 6
MAX_UNIFORM_SAMPLED_OBJECTS: Final = 5

# Planner defaults
STRATEGY_BFS: Final = "bfs"
STRATEGY_ASTAR: Final = "astar"
STRATEGIES: Final = [STRATEGY_BFS, STRATEGY_ASTAR]
DEFAULT_MAX_EXPANSIONS: Final = 1_000_000
DEFAULT_ITEM_TIME_BUDGET: Final = 10.0  # seconds
BUDGET_CHECK_INTERVAL: Final = 1024  # expansions between clock reads

# solve CLI exit codes
EXIT_SOLVED: Final = 0
EXIT_UNSOLVABLE: Final = 10
EXIT_RESOURCE_EXHAUSTED: Final = 11

# Benchmark generation
DEFAULT_SEED: Final = 0
DEFAULT_COUNT: Final = 100
DEFAULT_OBJECTS: Final = 4
DEFAULT_MANY: Final = 4
RNG_NAME: Final = "PCG64"
FAMILY_ATTEMPTS: Final = 100

# Few-shot prompting
FEW_SHOT_SIZE: Final = 3
HEADER_INITIALLY: Final = "Initially:"
HEADER_GOAL: Final = "Goal:"
HEADER_ACTIONS: Final = "Actions:"
HEADER_GOAL_PREDICATE: Final = "Goal predicate:"
HEADER_PDDL_PROBLEM: Final = "PDDL problem:"
PARSER_STOP: Final = ";"

PLANNER_TEMPERATURE: Final = 0.05
PARSER_TEMPERATURE: Final = 0.0
PLANNER_MAX_TOKENS: Final = 256
PARSER_MAX_TOKENS: Final = 128
FULL_PROBLEM_MAX_TOKENS: Final = 512

# LLM transport
ENV_LLM_ENDPOINT: Final = "LLM_ENDPOINT"
ENV_LLM_API_KEY: Final = "LLM_API_KEY"
ENV_LLM_MODEL: Final = "LLM_MODEL"
REQUEST_TIMEOUT: Final = 60  # seconds
DEFAULT_MAX_IN_FLIGHT: Final = 4
TRANSPORT_LIVE: Final = "live"
TRANSPORT_REPLAY: Final = "replay"
TRANSPORT_RECORD: Final = "record"
TRANSPORTS: Final = [TRANSPORT_LIVE, TRANSPORT_REPLAY, TRANSPORT_RECORD]

# Reports
REPORT_CSV: Final = "results.csv"
REPORT_MARKDOWN: Final = "report.md"
