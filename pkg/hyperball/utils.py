import hashlib
import itertools
import json
import typing as t

DIGEST_LENGTH = 12


def flatten(list_of_lists: t.Iterable[t.Iterable]) -> t.List:
    """Chain together a list of lists
    >>> flatten([[1, 2], [3, 4, 5], ['a']])
    [1, 2, 3, 4, 5, 'a']
    """
    return list(itertools.chain(*list_of_lists))


def dumps(document: t.Any) -> str:
    """Canonical JSON text used for every file the package writes."""
    return json.dumps(document, indent=2, sort_keys=True) + '\n'


def digest(document: t.Any) -> str:
    """Short content hash identifying a test case in reports
    >>> len(digest({'theta': 0.0}))
    12
    """
    raw = json.dumps(document, sort_keys=True, separators=(',', ':'))
    return hashlib.sha256(raw.encode('utf-8')).hexdigest()[:DIGEST_LENGTH]


def format_distance(value: float) -> str:
    """
    Distances print with 12 decimals.
    >>> format_distance(0.0)
    '0.000000000000'
    """
    return '{:.12f}'.format(value + 0.0)


def element_filename(family: str, index: int) -> str:
    """
    >>> element_filename('normal', 7)
    'normal-0007.gel.json'
    """
    return f"{family}-{index:04d}.gel.json"
