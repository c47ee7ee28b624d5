# src/util.py
import os


def read_file_text(file_path: str, encoding: str = "utf-8") -> str:
    with open(file_path, "r", encoding=encoding) as f:
        return f.read()


def ensure_parent_dir(file_path: str):
    parent = os.path.dirname(os.path.abspath(file_path))
    os.makedirs(parent, exist_ok=True)


def write_file_text(file_path: str, text: str, encoding: str = "utf-8"):
    ensure_parent_dir(file_path)
    with open(file_path, "w", encoding=encoding, newline="") as f:
        f.write(text)


def format_float(value) -> str:
    """Shortest text that parses back to the same double."""
    return repr(float(value))
