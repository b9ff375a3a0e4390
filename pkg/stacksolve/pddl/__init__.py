"""PDDL interlingua: the fixed stacking domain, problem files and plans."""

from .domain import (
    STACKING_DOMAIN,
    ActionSchema,
    Atom,
    DomainSchema,
    GroundOperator,
    StripsInterpreter,
    format_domain,
    parse_pddl_domain,
)
from .problem import (
    DocumentKind,
    PddlDocument,
    action_to_sexpr,
    dehyphenate,
    emit_domain,
    emit_plan,
    emit_problem,
    fact_to_sexpr,
    format_plan,
    format_problem,
    hyphenate,
    parse_pddl_goal,
    parse_pddl_plan,
    parse_pddl_problem,
    strip_fragment,
)
from .sexpr import format_sexpr, parse_sexpr, parse_sexprs

__all__ = [
    "STACKING_DOMAIN",
    "ActionSchema",
    "Atom",
    "DocumentKind",
    "DomainSchema",
    "GroundOperator",
    "PddlDocument",
    "StripsInterpreter",
    "action_to_sexpr",
    "dehyphenate",
    "emit_domain",
    "emit_plan",
    "emit_problem",
    "fact_to_sexpr",
    "format_domain",
    "format_plan",
    "format_problem",
    "format_sexpr",
    "hyphenate",
    "parse_pddl_domain",
    "parse_pddl_goal",
    "parse_pddl_plan",
    "parse_pddl_problem",
    "parse_sexpr",
    "parse_sexprs",
    "strip_fragment",
]
