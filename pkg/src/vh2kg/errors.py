"""Exception hierarchy shared across the toolkit."""


class VH2KGError(Exception):
    """Base class for all domain errors."""


# --- script parsing ---

class MalformedStep(VH2KGError):
    def __init__(self, line_no, text, detail=""):
        self.line_no = line_no
        self.text = text
        super().__init__(f"line {line_no}: malformed step {text!r}" + (f" ({detail})" if detail else ""))


class MissingHeader(VH2KGError):
    pass


class UnknownVerb(VH2KGError):
    def __init__(self, token, line_no=None):
        self.token = token
        self.line_no = line_no
        where = f" at line {line_no}" if line_no is not None else ""
        super().__init__(f"unknown action verb {token!r}{where}")


# --- environment loading ---

class DuplicateId(VH2KGError):
    pass


class DanglingEdge(VH2KGError):
    pass


class NoAgent(VH2KGError):
    pass


class Orphan(VH2KGError):
    pass


class ScoreOutOfRange(VH2KGError):
    pass


class UnknownProperty(VH2KGError):
    pass


# --- simulation ---

class Unexecutable(VH2KGError):
    def __init__(self, report):
        self.report = report
        super().__init__(
            f"script not executable at step {report.failing_step_index}: {report.reason}"
        )


# --- kg synthesis ---

class InvalidTrace(VH2KGError):
    pass


class NTriplesSyntaxError(VH2KGError):
    pass


# --- risk rules ---

class MissingGeometry(VH2KGError):
    pass


# --- embeddings / clustering ---

class NoRoots(VH2KGError):
    pass


class EmptyCorpus(VH2KGError):
    pass


class IndexOutOfRange(VH2KGError):
    pass


class TooFewPoints(VH2KGError):
    pass


class UnknownToken(VH2KGError):
    pass


# --- analytics ---

class MissingDurations(VH2KGError):
    pass


class EventNotInCorpus(VH2KGError):
    pass
