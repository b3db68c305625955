"""MDS self-dual codes over odd-characteristic finite fields."""
from .codes import EvalSet, LinearCode, TwistVector, egrs_generator, grs_generator
from .config import Settings, load_settings
from .constructions import Recipe, RecipeKind, build, enumerate_recipes, make_recipe
from .gf import Field, field_for_order, make_field
from .verify import Certificate, certify, check_mds, check_self_dual

__all__ = [
    "Certificate",
    "EvalSet",
    "Field",
    "LinearCode",
    "Recipe",
    "RecipeKind",
    "Settings",
    "TwistVector",
    "build",
    "certify",
    "check_mds",
    "check_self_dual",
    "egrs_generator",
    "enumerate_recipes",
    "field_for_order",
    "grs_generator",
    "load_settings",
    "make_field",
    "make_recipe",
]
