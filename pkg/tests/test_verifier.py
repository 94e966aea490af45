"""
Verification harness tests
Runs the suites through the Verifier on a small corpus and small random
instances, and exercises the counterexample dump and replay round trip.
"""

import json
import random
from pathlib import Path

import pytest

from algebra.correspondence import validate
from algebra.exceptions import LiftError, ValidationReport
from algebra.groupoid import cyclic_group, is_subgroupoid, pair_groupoid, product_groupoid
from core.corpus import (
    CORRESPONDENCE_KINDS,
    Corpus,
    CorpusEntry,
    RecipeError,
    correspondence_from,
    cyclic_subgroup,
    explicit_from,
    random_correspondence,
    random_explicit,
    random_subgroupoid,
)
from core.settings import SUITE_NAMES, load_settings
from core.verifier import Verifier
from core.workspace import Workspace
from suites.base_suite import Case
from suites.functoriality_suite import FunctorialitySuite
from suites.kappa_suite import KappaSuite
from suites.shapiro_suite import ShapiroSuite

# ==================== FIXTURES ====================


@pytest.fixture
def small_corpus():
    return Corpus(entries=[
        CorpusEntry("Z2", "groupoid", {'family': 'cyclic', 'params': {'order': 2}}, ("Z", "Z/2", "0")),
        CorpusEntry("P2", "groupoid", {'family': 'pair', 'params': {'k': 2}}, ("Z", "0", "0")),
        CorpusEntry("I1", "semigroup", {'family': 'symmetric_inverse', 'params': {'n': 1}}, ("Z", "0", "0")),
    ])


@pytest.fixture
def settings(tmp_path):
    """Two random instances per suite, degree 1, dumps under tmp_path"""
    return load_settings(
        dump_dir=str(tmp_path / "counterexamples"),
        size_bound=8,
        seed=7,
        suites={name: {'instances': 2, 'max_degree': 1} for name in SUITE_NAMES},
    )


@pytest.fixture
def verifier(settings, small_corpus):
    return Verifier(settings, corpus=small_corpus)


def broken_homotopy(G, n):
    return ValidationReport.violation("homotopy", "forced failure", degree=n)


# ==================== ORCHESTRATION ====================


class TestSuiteSelection:
    """Test suite name resolution"""

    def test_all_selects_every_suite(self, verifier):
        assert verifier.resolve_names(['all']) == SUITE_NAMES
        assert verifier.resolve_names([]) == SUITE_NAMES

    def test_duplicates_collapse(self, verifier):
        assert verifier.resolve_names(['kappa', 'homotopy', 'kappa']) == ['kappa', 'homotopy']

    def test_unknown_suite(self, verifier):
        with pytest.raises(ValueError):
            verifier.resolve_names(['kappa', 'nope'])

    def test_status(self, verifier):
        status = verifier.get_suite_status()
        assert set(status) == set(SUITE_NAMES)
        assert status['kappa'] == {'active': True, 'instances': 2, 'max_degree': 1}


class TestRuns:
    """Test concurrent suite runs"""

    @pytest.mark.asyncio
    async def test_corpus_suites_pass(self, verifier, tmp_path):
        reports = await verifier.run(['homotopy', 'invsemi'])
        assert [r.suite for r in reports] == ['homotopy', 'invsemi']
        assert [r.checked for r in reports] == [2, 1]
        assert all(r.passed for r in reports)
        assert not (tmp_path / "counterexamples").exists()

    @pytest.mark.asyncio
    async def test_random_suites_pass(self, verifier):
        reports = await verifier.run(['adjunction', 'kappa', 'shapiro', 'functoriality'])
        for report in reports:
            assert report.checked == 2
            assert report.passed, report.failures

    def test_instances_are_reproducible(self, settings):
        first = [case.params for case in FunctorialitySuite(settings).instances()]
        second = [case.params for case in FunctorialitySuite(settings).instances()]
        assert first == second
        assert len(first) == 2

    def test_report_dict(self, verifier):
        report = verifier.suites['kappa'].run(dump=False)
        data = report.to_dict()
        assert data['suite'] == 'kappa'
        assert data['passed'] is True
        assert data['checked'] == 2


class TestRandomInstances:
    """Test the random subgroupoids and correspondences the suites draw"""

    def test_cyclic_subgroup(self):
        G = cyclic_group(4)
        assert cyclic_subgroup(G, "2") == ["0", "2"]
        assert cyclic_subgroup(G, "1") == ["0", "1", "2", "3"]
        assert cyclic_subgroup(G, "0") == ["0"]

    def test_subgroupoids_reach_proper_isotropy(self):
        G = product_groupoid(cyclic_group(4), pair_groupoid(2))
        rng = random.Random(0)
        subs = [random_subgroupoid(rng, G) for _ in range(200)]
        assert all(is_subgroupoid(H, G) for H in subs)
        assert any(1 < len(H.isotropy(x)) < len(G.isotropy(x)) for H in subs for x in H.objects)

    @pytest.mark.parametrize("seed", range(12))
    def test_random_correspondences_are_valid(self, seed):
        workspace = Workspace()
        kind = random_correspondence(random.Random(seed), 12, workspace)
        omega = correspondence_from(kind, workspace)
        assert validate(omega).passed
        assert omega.source == workspace.groupoids['G']
        assert omega.target == workspace.groupoids['H']

    def test_every_kind_is_drawn(self):
        rng = random.Random(1)
        assert {random_correspondence(rng, 12, Workspace()) for _ in range(40)} == set(CORRESPONDENCE_KINDS)
        drawn = set()
        for _ in range(40):
            workspace = Workspace()
            kind = random_explicit(rng, workspace)
            assert validate(explicit_from(kind, workspace).correspondence).passed
            drawn.add(kind)
        assert drawn == {'quotient', 'collapse', 'regular'}

    def test_unknown_kind(self):
        workspace = Workspace()
        workspace.register('groupoids', 'G', cyclic_group(2))
        workspace.register('groupoids', 'H', cyclic_group(2))
        with pytest.raises(RecipeError):
            correspondence_from('nope', workspace)
        with pytest.raises(RecipeError):
            explicit_from('nope', workspace)

    def test_suite_params(self, settings):
        for case in FunctorialitySuite(settings).instances():
            assert case.params['omega'] in CORRESPONDENCE_KINDS
            assert case.params['lambda'] in ('subgroupoid', 'action', 'projection')
            assert case.params['explicit'] in ('quotient', 'collapse', 'regular')
        for case in KappaSuite(settings).instances():
            assert case.params['omega'] in CORRESPONDENCE_KINDS

    def test_suite_size_bound_is_capped(self, tmp_path):
        suites = {name: {'instances': 1, 'max_degree': 1} for name in SUITE_NAMES}
        suites['functoriality']['size_bound'] = 6
        suites['shapiro']['size_bound'] = 40
        settings = load_settings(dump_dir=str(tmp_path), size_bound=16, suites=suites)
        assert FunctorialitySuite(settings).size_bound == 6
        assert ShapiroSuite(settings).size_bound == 16
        assert KappaSuite(settings).size_bound == 16

    def test_workspaces_survive_bundles(self, settings):
        for case in FunctorialitySuite(settings).instances():
            reloaded = Workspace().load_bundle(case.workspace.to_bundle())
            kind = case.params['omega']
            assert correspondence_from(kind, reloaded).points == correspondence_from(kind, case.workspace).points
            explicit = case.params['explicit']
            assert explicit_from(explicit, reloaded).correspondence.points == explicit_from(explicit, case.workspace).correspondence.points


# ==================== FAILURES ====================


class TestFailures:
    """Test failure reporting, counterexample dumps and replay"""

    @pytest.mark.asyncio
    async def test_mutation_is_caught_and_dumped(self, verifier, monkeypatch, tmp_path):
        monkeypatch.setattr("suites.homotopy_suite.homotopy_check", broken_homotopy)
        [report] = await verifier.run(['homotopy'])
        assert not report.passed
        assert [f['instance'] for f in report.failures] == ["Z2", "P2"]
        assert all(f['check'] == 'homotopy' for f in report.failures)
        assert len(report.counterexamples) == 2

        record = json.loads(Path(report.counterexamples[0]).read_text())
        assert record['suite'] == 'homotopy'
        assert record['params']['instance'] == "Z2"
        assert record['witness']['fault_code'] == 'homotopy'
        assert "Z2" in record['instance']['groupoids']

    @pytest.mark.asyncio
    async def test_replay_round_trip(self, verifier, settings, small_corpus, monkeypatch):
        monkeypatch.setattr("suites.homotopy_suite.homotopy_check", broken_homotopy)
        [report] = await verifier.run(['homotopy'])
        path = Path(report.counterexamples[1])

        assert verifier.replay(path)['passed'] is False
        monkeypatch.undo()
        result = Verifier(settings, corpus=small_corpus).replay(path)
        assert result['passed'] is True
        assert result['check'] == 'homology'

    def test_replay_unknown_suite(self, verifier, tmp_path):
        path = tmp_path / "bogus.json"
        path.write_text(json.dumps({'suite': 'nope', 'check': 'x', 'params': {}, 'instance': {}}))
        with pytest.raises(ValueError):
            verifier.replay(path)

    def test_engine_error_becomes_failure(self, verifier, monkeypatch):
        def explode(G, n):
            raise LiftError("no integral solution")

        monkeypatch.setattr("suites.homotopy_suite.homotopy_check", explode)
        suite = verifier.suites['homotopy']
        case = next(iter(suite.instances()))
        result = suite.process(case)
        assert result['check'] == 'engine'
        assert result['witness'] == {'error': 'LiftError', 'message': "no integral solution"}

    def test_inactive_suite_refuses(self, verifier):
        suite = verifier.suites['kappa']
        suite.active = False
        with pytest.raises(RuntimeError):
            suite.process(Case(name="x", workspace=None))

    def test_result_contract_enforced(self, verifier, monkeypatch):
        suite = verifier.suites['homotopy']
        monkeypatch.setattr(suite, "_process_input", lambda case: {'check': 'homology', 'passed': False})
        with pytest.raises(ValueError):
            suite.process(next(iter(suite.instances())))

    @pytest.mark.asyncio
    async def test_kappa_replay_round_trip(self, verifier, settings, small_corpus, monkeypatch):
        monkeypatch.setattr(
            "suites.kappa_suite.kappa_rank_check",
            lambda omega, Z: ValidationReport.violation("kappa_rank", "forced failure"),
        )
        [report] = await verifier.run(['kappa'])
        assert [f['check'] for f in report.failures] == ['kappa_rank', 'kappa_rank']

        monkeypatch.undo()
        result = Verifier(settings, corpus=small_corpus).replay(Path(report.counterexamples[0]))
        assert result['passed'] is True
        assert result['check'] == 'kappa_rank'
