from paraprod.series.exact import ExactComplex
from paraprod.series.taylor import Backend, Exactness, TaylorSeries
from paraprod.series.functions import (binomial_series, compose, disc_automorphism, doubling_kernel,
                                       kernel_power_series, log_series)
from paraprod.series.literals import complex_to_json, parse_complex, parse_series, series_to_json


__all__ = [
    'Backend',
    'ExactComplex',
    'Exactness',
    'TaylorSeries',
    'binomial_series',
    'complex_to_json',
    'compose',
    'disc_automorphism',
    'doubling_kernel',
    'kernel_power_series',
    'log_series',
    'parse_complex',
    'parse_series',
    'series_to_json'
]
