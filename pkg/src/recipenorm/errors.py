"""Exception hierarchy shared by the pipeline stages."""


class RecipeNormError(Exception):
    """Base class for every error raised by this package."""


class LexiconError(RecipeNormError):
    pass


class MissingFile(LexiconError):
    def __init__(self, path):
        super().__init__(f"file not found: {path}")
        self.path = path


class MalformedRow(LexiconError):
    def __init__(self, path, line, reason=""):
        msg = f"{path}:{line}: malformed row"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)
        self.path = path
        self.line = line


class EmptyLexicon(MalformedRow):
    def __init__(self, path):
        super().__init__(path, 0, "lexicon is empty")


class DuplicateAbbreviation(LexiconError):
    def __init__(self, abbreviation, first, second):
        super().__init__(
            f"abbreviation {abbreviation!r} maps to both {first!r} and {second!r}")
        self.abbreviation = abbreviation


class NonPositiveFactor(LexiconError):
    def __init__(self, path, line, factor):
        super().__init__(f"{path}:{line}: grams_per_unit must be > 0, got {factor}")
        self.line = line


class MissingConversion(LexiconError):
    def __init__(self, unit):
        super().__init__(f"unit {unit!r} has no row in the conversion table")
        self.unit = unit


class NegativeNutrient(LexiconError):
    def __init__(self, record_id, nutrient, value):
        super().__init__(f"record {record_id}: {nutrient} = {value} < 0")
        self.record_id = record_id


class EmptyFoodItem(RecipeNormError):
    """Nothing edible was left after quantity, unit and redundant-word removal."""


class AmbiguousQuantities(RecipeNormError):
    """More than two quantity patterns survived conjunction splitting."""


class ConversionError(RecipeNormError):
    pass


class UnknownUnit(ConversionError):
    def __init__(self, unit):
        super().__init__(f"no conversion row for unit {unit!r}")
        self.unit = unit


class NoPortionWeight(ConversionError):
    def __init__(self, food):
        super().__init__(f"no unit and no portion weight available for {food!r}")
        self.food = food


class NegativeQuantity(ConversionError):
    def __init__(self, qty):
        super().__init__(f"quantity must be >= 0, got {qty}")


class NoMatch(RecipeNormError):
    def __init__(self, food):
        super().__init__(f"no FCDB record satisfies any tier for {food!r}")
        self.food = food


class EmptyRecipe(RecipeNormError):
    pass


class NonPositiveGrams(RecipeNormError):
    def __init__(self, index, grams):
        super().__init__(f"ingredient {index}: grams must be > 0, got {grams}")
        self.index = index


class AllTokensOOV(RecipeNormError):
    def __init__(self, food):
        super().__init__(f"no token of {food!r} is in the embedding vocabulary")
        self.food = food


class DimensionMismatch(RecipeNormError):
    pass


class ZeroTotalMass(RecipeNormError):
    pass


class SingularDesign(RecipeNormError):
    pass


class TooFewSamples(RecipeNormError):
    pass


class ConfigError(RecipeNormError):
    pass
