"""congruence_lab: exact experiments on multiplicative congruences.

Product-set coverage of residue rings, Dirichlet character sums and their
exact identities, large-value censuses, and prime-variable congruence
solution counts compared against the equidistribution main term.
"""

from .characters import Character, CharacterGroup, UnityValue, all_characters, build_group
from .charsums import (
    LevelCensus,
    MomentCheck,
    SumRecord,
    burgess_report,
    dyadic_intervals,
    interval_sum,
    large_value_census,
    moment_identity,
    parseval_identity,
    shifted_prime_sum,
    vinogradov_report,
)
from .coverage import (
    CoverageReport,
    ResidueSet,
    collision_count,
    coverage_report,
    coverage_sweep,
    missing_by_gcd,
    product_set,
    set_product,
    verify_missing_multiples,
)
from .errors import (
    BudgetExceededError,
    ConfigError,
    CongruenceLabError,
    DomainError,
    GroupMismatchError,
    ModulusMismatchError,
    NonInvertibleError,
    PreconditionFailedError,
)
from .prime_congruence import (
    CongruenceInstance,
    SolutionReport,
    character_sum_count,
    count_solutions,
    exponent_threshold,
    principal_character_term,
    solution_report,
    solution_sweep,
)
from .primes import PrimeTable, prime_count, sieve
from .residue import Modulus, build_modulus, divisor_count, divisors, mod_inverse

__version__ = "0.1.0"

__all__ = [
    "Modulus",
    "build_modulus",
    "mod_inverse",
    "divisors",
    "divisor_count",
    "PrimeTable",
    "sieve",
    "prime_count",
    "UnityValue",
    "Character",
    "CharacterGroup",
    "build_group",
    "all_characters",
    "ResidueSet",
    "CoverageReport",
    "product_set",
    "set_product",
    "missing_by_gcd",
    "verify_missing_multiples",
    "collision_count",
    "coverage_report",
    "coverage_sweep",
    "SumRecord",
    "LevelCensus",
    "MomentCheck",
    "interval_sum",
    "shifted_prime_sum",
    "moment_identity",
    "parseval_identity",
    "large_value_census",
    "dyadic_intervals",
    "burgess_report",
    "vinogradov_report",
    "CongruenceInstance",
    "SolutionReport",
    "count_solutions",
    "character_sum_count",
    "principal_character_term",
    "solution_report",
    "solution_sweep",
    "exponent_threshold",
    "CongruenceLabError",
    "NonInvertibleError",
    "GroupMismatchError",
    "ModulusMismatchError",
    "PreconditionFailedError",
    "BudgetExceededError",
    "DomainError",
    "ConfigError",
]
