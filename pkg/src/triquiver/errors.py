"""Exception types shared across the package."""


class ParseError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class OrientedCycleError(ValueError):
    pass


class DisconnectedError(ValueError):
    pass


class TermCapExceeded(ValueError):
    pass


class NotInIdeal(ValueError):
    pass


class NonMinimalGenerator(ValueError):
    def __init__(self, index, element_text):
        self.index = index
        super().__init__(f"ideal generator #{index} is not a minimal relation: {element_text}")


class EmptyPresentation(ValueError):
    pass


class IndexMismatch(ValueError):
    pass


class CoverageGap(ValueError):
    pass
