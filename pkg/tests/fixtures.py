import json
from json import JSONDecodeError
from pathlib import Path

GOLDEN = Path(__file__).resolve().parent.joinpath('golden')


def golden_path(name: str) -> Path:
    return GOLDEN.joinpath(name)


def load_golden(name: str):
    with open(golden_path(name), 'r') as f:
        return json.load(f)


normal_classification = None
involutory_classification = None
try:
    normal_classification = load_golden('normal_classification.json')
    involutory_classification = load_golden('involutory_classification.json')
except (EnvironmentError, JSONDecodeError):
    print('Golden classification reports do not exist or are malformed')
