class ResourceLimitError(ValueError):
    """Raised when a request exceeds a configured size guard."""

    def __init__(self, what: str, value: int, limit: int):
        self.what = what
        self.value = value
        self.limit = limit
        super().__init__(f"{what}={value} exceeds the configured limit {limit}")
