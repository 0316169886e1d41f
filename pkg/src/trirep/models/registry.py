"""Lookup table from case id to handler instance."""

from .base import CaseId

_HANDLERS = {}


def _load():
    from .coulomb import CoulombCase1, CoulombCase2
    from .hulthen import HulthenCase1, HulthenCase2, HulthenCase3
    from .morse import MorseCase1, MorseCase2
    from .oscillator import OscillatorCase1, OscillatorCase2
    from .powerlaw import PowerLawCase1, PowerLawCase2
    from .rosen_morse import RosenMorseCase1

    for cls in (CoulombCase1, CoulombCase2, OscillatorCase1, OscillatorCase2, PowerLawCase1,
                PowerLawCase2, MorseCase1, MorseCase2, HulthenCase1, HulthenCase2, HulthenCase3,
                RosenMorseCase1):
        _HANDLERS[cls.id] = cls()


def handler(case_id):
    if not _HANDLERS:
        _load()
    return _HANDLERS[CaseId(case_id)]


def schema(case_id):
    """Required and optional parameter names of a case."""
    h = handler(case_id)
    return tuple(h.required), tuple(h.optional)
