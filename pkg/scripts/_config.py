"""Turn a dataclass config into command-line flags with the dataclass defaults."""
import argparse
import dataclasses


def parse_config(cls, description: str):
    p = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        p.add_argument(f"--{f.name.replace('_', '-')}", type=type(f.default), default=f.default)
    return cls(**vars(p.parse_args()))
