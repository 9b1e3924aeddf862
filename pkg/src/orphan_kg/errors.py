"""Exception hierarchy. Everything raised on bad input files derives from DataError."""


class DataError(Exception):
    """Invalid or unreadable input data."""


class MalformedRow(DataError):
    def __init__(self, line_no, detail=""):
        self.line_no = line_no
        msg = f"malformed row at line {line_no}"
        super().__init__(f"{msg}: {detail}" if detail else msg)
