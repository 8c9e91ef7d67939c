"""Periodic 0/1 grids, their products and the series between units."""

from .bounds import BoundReport, CorpusSpec, bound_corpus_check, main_bound_complete, main_bound_two_sided
from .degree import DegreeSpec, degree_trace, msr_degree
from .grid import INFINITE, Filling, Grid, PeriodProfile, is_filling, period, profile
from .primes import PrimeSystemSpec, SystemKind, figure_data
from .series import Certification, SearchOutcome, SeriesRecord, enumerate_series, msr_search

__all__ = [
    "BoundReport", "Certification", "CorpusSpec", "DegreeSpec", "Filling", "Grid", "INFINITE",
    "PeriodProfile", "PrimeSystemSpec", "SearchOutcome", "SeriesRecord", "SystemKind",
    "bound_corpus_check", "degree_trace", "enumerate_series", "figure_data", "is_filling",
    "main_bound_complete", "main_bound_two_sided", "msr_degree", "msr_search", "period", "profile",
]
