"""Shared helpers for the experiment scripts."""

import argparse
import csv
import dataclasses
import sys


def parse_config(cls, description):
    """Build an argparse parser from a dataclass with defaults and return an instance."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        parser.add_argument(flag, type=f.type, default=f.default)
    return cls(**vars(parser.parse_args()))


def write_csv(path, header, rows):
    out = sys.stdout if path == "-" else open(path, "w", newline="")
    try:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([format(v, ".17g") if isinstance(v, float) else v for v in row])
    finally:
        if out is not sys.stdout:
            out.close()
