"""
Error hierarchy for xalg.

Every error carries a ``witness`` dictionary (basis indices, dimensions,
budgets) that reports copy verbatim, so a failing hand-entered catalog can be
traced to the exact basis pair or triple that broke an axiom.
"""

from typing import Dict, Optional


class XAlgError(Exception):
    """Base class for all xalg errors."""

    def __init__(self, message: str, witness: Optional[Dict] = None):
        super().__init__(message)
        self.message = message
        self.witness = dict(witness or {})

    def to_dict(self) -> Dict:
        return {'error': type(self).__name__, 'message': self.message, 'witness': self.witness}


# Validation ------------------------------------------------------------------

class ValidationError(XAlgError):
    """An object failed one of its structural invariants."""


class NotPrime(ValidationError):
    def __init__(self, modulus: int):
        super().__init__(f"modulus {modulus} is not a prime in [2, 97]", {'modulus': modulus})


class NotCommutative(ValidationError):
    def __init__(self, i: int, j: int, label: str = ''):
        super().__init__(f"{label or 'algebra'}: e_{i}*e_{j} != e_{j}*e_{i}", {'i': i, 'j': j})


class NotAssociative(ValidationError):
    def __init__(self, i: int, j: int, l: int, label: str = ''):
        super().__init__(f"{label or 'algebra'}: (e_{i}e_{j})e_{l} != e_{i}(e_{j}e_{l})",
                         {'i': i, 'j': j, 'l': l})


class BadUnit(ValidationError):
    def __init__(self, i: int, label: str = ''):
        super().__init__(f"{label or 'algebra'}: u*e_{i} != e_{i}", {'i': i})


class NotAnIdeal(ValidationError):
    def __init__(self, i: int, b: int, label: str = ''):
        super().__init__(f"{label or 'subspace'}: e_{i} * basis[{b}] leaves the subspace",
                         {'i': i, 'basis_row': b})


class NotMultiplicative(ValidationError):
    def __init__(self, i: int, j: int, label: str = ''):
        super().__init__(f"{label or 'morphism'}: f(e_{i}e_{j}) != f(e_{i})f(e_{j})", {'i': i, 'j': j})


class BadAction(ValidationError):
    def __init__(self, kind: str, indices: Dict, label: str = ''):
        super().__init__(f"{label or 'action'}: {kind} axiom fails at {indices}",
                         dict(indices, axiom=kind))


class NotEquivariant(ValidationError):
    def __init__(self, i: int, p: int, label: str = ''):
        super().__init__(f"{label or 'crossed module'}: d(e_{i}.c_{p}) != e_{i}*d(c_{p})",
                         {'i': i, 'p': p})


class PeifferFails(ValidationError):
    def __init__(self, p: int, q: int, label: str = ''):
        super().__init__(f"{label or 'crossed module'}: d(c_{p}).c_{q} != c_{p}*c_{q}",
                         {'p': p, 'q': q})


class NotXModMorphism(ValidationError):
    def __init__(self, kind: str, indices: Dict, label: str = ''):
        super().__init__(f"{label or 'crossed module morphism'}: {kind} fails at {indices}",
                         dict(indices, condition=kind))


class StructureClaimFails(ValidationError):
    """A structural statement expected of every crossed module did not hold."""

    def __init__(self, claim: str, witness: Dict):
        super().__init__(f"structure claim '{claim}' fails", dict(witness, claim=claim))


class HypothesisViolated(ValidationError):
    def __init__(self, label: str, ann_dim: int, square_dim: int, dim: int):
        super().__init__(
            f"{label or 'algebra'}: multipliers need Ann(R) = 0 or R^2 = R "
            f"(dim Ann = {ann_dim}, dim R^2 = {square_dim}, dim R = {dim})",
            {'ann_dim': ann_dim, 'square_dim': square_dim, 'dim': dim})


class NotCommutativeMultipliers(ValidationError):
    def __init__(self, i: int, j: int):
        super().__init__(f"multiplier composition is not commutative at ({i}, {j})", {'i': i, 'j': j})


class NotSurjective(ValidationError):
    def __init__(self, rank: int, dim: int):
        super().__init__(f"morphism has rank {rank} < target dimension {dim}",
                         {'rank': rank, 'target_dim': dim})


class RNotUnital(ValidationError):
    def __init__(self, label: str = ''):
        super().__init__(f"{label or 'base algebra'} has no unit; d -> d(x)1 is undefined",
                         {'algebra': label})


class WNotCompatible(ValidationError):
    def __init__(self, index: int):
        super().__init__(f"delta(w(y_{index})) != f(y_{index})", {'generator': index})


class AugmentationUndefined(ValidationError):
    def __init__(self, quotient_dim: int, q_dim: int):
        super().__init__(
            "designated ideal is neither the whole quotient nor an augmentation ideal "
            f"(dim R/S = {quotient_dim}, dim Q = {q_dim})",
            {'quotient_dim': quotient_dim, 'q_dim': q_dim})


class ModulusMismatch(ValidationError):
    def __init__(self, a: int, b: int):
        super().__init__(f"objects live over different fields F_{a} and F_{b}", {'a': a, 'b': b})


class DimensionMismatch(ValidationError):
    def __init__(self, what: str, expected, got):
        super().__init__(f"{what}: expected {expected}, got {got}",
                         {'what': what, 'expected': expected, 'got': got})


# Search ----------------------------------------------------------------------

class SearchTooLarge(XAlgError):
    def __init__(self, required: int, budget: int, what: str = 'search'):
        super().__init__(f"{what} needs {required} candidates, budget is {budget}",
                         {'required': required, 'budget': budget, 'what': what})
        self.required = required
        self.budget = budget


BudgetExceeded = SearchTooLarge


# Definition files ------------------------------------------------------------

class DefinitionError(XAlgError):
    """Problems loading a definition file."""


class DefinitionSyntaxError(DefinitionError):
    pass


class DanglingReference(DefinitionError):
    def __init__(self, kind: str, name: str, where: str):
        super().__init__(f"{where}: unknown {kind} '{name}'", {'kind': kind, 'name': name, 'where': where})


class DefinitionValidationError(DefinitionError):
    def __init__(self, where: str, cause: XAlgError):
        super().__init__(f"{where}: {cause.message}", dict(cause.witness, where=where,
                                                             cause=type(cause).__name__))
        self.cause = cause


class UnknownCommand(XAlgError):
    def __init__(self, command: str, known):
        super().__init__(f"unknown command '{command}'", {'command': command, 'known': sorted(known)})


class UsageError(XAlgError):
    """Wrong arguments for a command."""

    def __init__(self, command: str, message: str):
        super().__init__(f"{command}: {message}", {'command': command})
