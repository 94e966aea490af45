"""
Command-line tests
Drives core.cli.main with JSON inputs written to a temporary directory and
checks the printed results and exit codes.
"""

import json

import pytest

from algebra.groupoid import cyclic_group, pair_groupoid, trivial_group
from algebra.invsemi import chain_semilattice, symmetric_inverse_monoid
from core.cli import EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, build_parser, main


def write(path, document):
    path.write_text(json.dumps(document))
    return str(path)


@pytest.fixture
def p2_file(tmp_path):
    return write(tmp_path / "P2.json", pair_groupoid(2).to_dict())


@pytest.fixture
def z2_file(tmp_path):
    return write(tmp_path / "Z2.json", cyclic_group(2).to_dict())


@pytest.fixture
def bundle_file(tmp_path):
    p2 = pair_groupoid(2)
    return write(tmp_path / "bundle.json", {
        'groupoids': {
            'P2': p2.to_dict(),
            'T': trivial_group().to_dict(),
            'Z2': cyclic_group(2).to_dict(),
        },
        'homomorphisms': {
            'collapse': {
                'source': 'P2',
                'target': 'T',
                'objects': {"0": "*", "1": "*"},
                'arrows': {g: "0" for g in p2.arrows},
            },
        },
        'gsets': {
            'swap': {
                'groupoid': 'Z2',
                'points': ["a", "b"],
                'anchor': {"a": "*", "b": "*"},
                'action': [["0", "a", "a"], ["0", "b", "b"], ["1", "a", "b"], ["1", "b", "a"]],
            },
        },
    })


class TestHomologyCommand:
    """Test ample homology"""

    def test_pair_groupoid(self, p2_file, capsys):
        assert main(["homology", p2_file, "--max-degree", "2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "H0: Z; H1: 0; H2: 0"

    def test_json_output(self, z2_file, capsys):
        assert main(["homology", z2_file, "--max-degree", "3", "--format", "json"]) == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload['groupoid'] == "Z2"
        assert payload['coefficients'] == "Z"
        assert [h['group'] for h in payload['homology']] == ["Z", "Z/2", "0", "Z/2"]
        assert payload['homology'][1]['torsion'] == [2]

    def test_sign_coefficients(self, z2_file, tmp_path, capsys):
        sign = write(tmp_path / "sign.json", {'groupoid': "Z2", 'fibers': {"*": 1}, 'action': {"1": [[-1]]}})
        assert main(["homology", z2_file, "--coefficients", sign, "--max-degree", "2"]) == EXIT_OK
        assert capsys.readouterr().out.strip() == "H0: Z/2; H1: 0; H2: Z/2"

    def test_malformed_json(self, tmp_path, capsys):
        path = tmp_path / "broken.json"
        path.write_text('{"objects": [')
        assert main(["homology", str(path)]) == EXIT_PARSE
        assert "Parse error" in capsys.readouterr().err

    def test_missing_file(self, tmp_path):
        assert main(["homology", str(tmp_path / "absent.json")]) == EXIT_PARSE

    def test_schema_violation(self, tmp_path):
        path = write(tmp_path / "G.json", {'objects': ["x"], 'arrows': [], 'mul': [], 'inv': {}, 'extra': 1})
        assert main(["homology", path]) == EXIT_PARSE

    def test_invalid_groupoid(self, tmp_path, capsys):
        document = pair_groupoid(2).to_dict()
        document['mul'] = document['mul'][1:]
        path = write(tmp_path / "P2.json", document)
        assert main(["homology", path]) == EXIT_VALIDATION
        assert "Validation failed" in capsys.readouterr().err


class TestInducedMapCommand:
    """Test ample induced-map"""

    def test_from_homomorphism(self, bundle_file, capsys):
        code = main(["induced-map", bundle_file, "--from-homomorphism", "collapse", "--max-degree", "1"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        assert lines[0] == "H0: Z -> Z"
        assert lines[1].strip() in ("[1]", "[-1]")
        assert lines[2] == "H1: 0 -> 0"

    def test_from_action_json(self, bundle_file, capsys):
        code = main(["induced-map", bundle_file, "--from-action", "swap", "--max-degree", "1", "--format", "json"])
        assert code == EXIT_OK
        maps = json.loads(capsys.readouterr().out)
        assert [m['degree'] for m in maps] == [0, 1]
        assert maps[1]['source'] == "Z/2"
        assert maps[1]['target'] == "0"

    def test_min_degree(self, bundle_file, capsys):
        code = main(["induced-map", bundle_file, "--from-action", "swap", "--max-degree", "1", "--min-degree", "1"])
        assert code == EXIT_OK
        assert capsys.readouterr().out.startswith("H1: Z/2 -> 0")

    def test_ambiguous_selection(self, bundle_file, capsys):
        assert main(["induced-map", bundle_file]) == EXIT_PARSE
        assert "select one by name" in capsys.readouterr().err

    def test_unknown_name(self, bundle_file):
        assert main(["induced-map", bundle_file, "--from-homomorphism", "nope"]) == EXIT_PARSE

    def test_omega_s(self, tmp_path, capsys):
        path = write(tmp_path / "I1.json", symmetric_inverse_monoid(1).to_dict())
        assert main(["induced-map", "--omega-s", path, "--max-degree", "1"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "H0: Z -> Z"

    def test_omega_s_explicit_null_zero_keeps_absorbing_element(self, tmp_path, capsys):
        document = chain_semilattice(["1", "e"]).to_dict()
        assert document["zero"] is None
        path = write(tmp_path / "chain.json", document)
        assert main(["induced-map", "--omega-s", path, "--max-degree", "0"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "H0: Z^2 -> Z^2"

    def test_omega_s_absent_zero_detects_absorbing_element(self, tmp_path, capsys):
        document = chain_semilattice(["1", "e"]).to_dict()
        del document["zero"]
        path = write(tmp_path / "chain.json", document)
        assert main(["induced-map", "--omega-s", path, "--max-degree", "0"]) == EXIT_OK
        assert capsys.readouterr().out.splitlines()[0] == "H0: Z -> Z"

    def test_omega_s_help_describes_zero(self):
        [commands] = [a for a in build_parser()._actions if a.dest == "command"]
        [omega_s] = [a for a in commands.choices["induced-map"]._actions if a.dest == "omega_s"]
        assert '"zero": null' in omega_s.help

    def test_needs_input(self):
        assert main(["induced-map"]) == EXIT_PARSE


class TestVerifyAndCorpus:
    """Test ample verify and ample corpus"""

    def test_corpus_listing(self, capsys):
        assert main(["corpus", "--format", "json"]) == EXIT_OK
        entries = {e['name']: e for e in json.loads(capsys.readouterr().out)}
        assert entries['P2']['expected'][:3] == ["Z", "0", "0"]
        assert entries['I2']['kind'] == "semigroup"

    def test_verify_kappa(self, tmp_path, monkeypatch, capsys):
        monkeypatch.setenv("AMPLE_DUMP_DIR", str(tmp_path))
        code = main(["verify", "--suite", "kappa", "--seed", "3", "--size-bound", "6", "--format", "json"])
        assert code == EXIT_OK
        [report] = json.loads(capsys.readouterr().out)
        assert report['suite'] == "kappa"
        assert report['passed'] is True

    @pytest.mark.slow
    def test_verify_homotopy_corpus(self, tmp_path, monkeypatch):
        monkeypatch.setenv("AMPLE_DUMP_DIR", str(tmp_path))
        assert main(["verify", "--suite", "homotopy"]) == EXIT_OK

    def test_replay_missing_file(self, tmp_path):
        assert main(["verify", "--replay", str(tmp_path / "absent.json")]) == EXIT_PARSE

    def test_unknown_suite_rejected_by_parser(self):
        with pytest.raises(SystemExit) as exc:
            main(["verify", "--suite", "nope"])
        assert exc.value.code == 2
