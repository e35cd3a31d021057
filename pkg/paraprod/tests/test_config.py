import os
import tempfile
import unittest
from unittest import mock

from paraprod.algebra.canonical import canonicalize
from paraprod.algebra.expr import parse_expr
from paraprod.colored import colored_expr, colored_form, colored_word
from paraprod.config import ParaprodConfig, get_config, set_config
from paraprod.exceptions import (DegreeOverflowError, DomainError, GuardError, LiteralError, ParaprodError,
                                 UnknownWeightKindError, WeightError)
from paraprod.manifest import RunManifest
from paraprod.norms.quadrature import QuadratureConfig
from paraprod.utils.parallel import parallel_map, thread_count


class TestConfig(unittest.TestCase):
    def tearDown(self):
        set_config(None)

    def test_defaults(self):
        config = ParaprodConfig()
        self.assertEqual(config.max_degree, 4096)
        self.assertEqual(config.default_cap, 256)

    def test_environment(self):
        with mock.patch.dict(os.environ, {'PARAPROD_MAX_DEGREE': '128', 'PARAPROD_THREADS': '3'}):
            config = get_config(reload=True)
        self.assertEqual(config.max_degree, 128)
        self.assertEqual(config.threads, 3)

    def test_digest(self):
        a = ParaprodConfig()
        self.assertEqual(a.digest(), ParaprodConfig().digest())
        self.assertEqual(a.digest(), ParaprodConfig(log_level='DEBUG').digest())
        self.assertNotEqual(a.digest(), ParaprodConfig(max_degree=100).digest())

    def test_set_config(self):
        config = ParaprodConfig(n_theta=255)
        set_config(config)
        self.assertIs(get_config(), config)
        self.assertEqual(QuadratureConfig.from_config().n_theta, 256)


class TestParallel(unittest.TestCase):
    def tearDown(self):
        set_config(None)

    def test_order(self):
        set_config(ParaprodConfig(threads=4))
        self.assertEqual(parallel_map(lambda x: x * x, range(20)), [x * x for x in range(20)])

    def test_thread_count(self):
        set_config(ParaprodConfig(threads=4))
        self.assertEqual(thread_count(), 4)
        self.assertEqual(thread_count(8), 4)
        self.assertEqual(thread_count(0), 1)


class TestManifest(unittest.TestCase):
    def test_round_trip(self):
        manifest = RunManifest.create('norm', {'series': '[[1,0]]'}, seed=3, outputs=['out.json'])
        self.assertEqual(set(manifest.versions), {'paraprod', 'config'})
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, 'manifest.json')
            manifest.write(path)
            self.assertEqual(RunManifest.read(path), manifest)


class TestColored(unittest.TestCase):
    def test_word(self):
        self.assertIn('I', colored_word(''))
        text = colored_word('MS')
        self.assertIn('M', text)
        self.assertIn('S', text)

    def test_expr(self):
        self.assertEqual(colored_expr(parse_expr('S - S')), '0')
        self.assertIn('delta0', colored_expr(parse_expr('T + delta0')))

    def test_form(self):
        self.assertIn('trivial', colored_form(canonicalize(parse_expr('M - S - T'))))


class TestExceptions(unittest.TestCase):
    def test_hierarchy(self):
        self.assertTrue(issubclass(DomainError, ValueError))
        self.assertTrue(issubclass(LiteralError, ParaprodError))
        self.assertTrue(issubclass(DegreeOverflowError, GuardError))
        self.assertTrue(issubclass(UnknownWeightKindError, WeightError))
        self.assertFalse(issubclass(GuardError, ValueError))


if __name__ == '__main__':
    unittest.main()
