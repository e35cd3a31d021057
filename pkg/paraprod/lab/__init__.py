from paraprod.lab.families import TestFamily
from paraprod.lab.estimator import OpNormEstimate, delta0_norm, norm_ratio, opnorm_lower, trivial_operator_norm
from paraprod.lab.identities import IdentityCase, identity_kinds, run_identity
from paraprod.lab.experiments import (CommutatorCheck, Experiment, IdentitySuite, PowerLemmaCheck,
                                      RadicalityExperiment, TwoLetterSurvey)


__all__ = [
    'CommutatorCheck',
    'Experiment',
    'IdentityCase',
    'IdentitySuite',
    'OpNormEstimate',
    'PowerLemmaCheck',
    'RadicalityExperiment',
    'TestFamily',
    'TwoLetterSurvey',
    'delta0_norm',
    'identity_kinds',
    'norm_ratio',
    'opnorm_lower',
    'run_identity',
    'trivial_operator_norm'
]
