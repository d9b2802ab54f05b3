#!/usr/bin/env python
"""Tests for the SQLAlchemy journal of runs and counterexamples."""
import json

from conftest import C
from src.cli import main
from src.database import Database, document_digest
from src.formats import map_to_document, write_document
from src.homomorphisms import IdentityOn


def test_record_and_read_back_a_run(tmp_journal):
    db = Database(tmp_journal)
    run_id = db.record_run('verify', {'passed': True}, True, seed=3, tolerance=1e-8,
                           map_document={'kind': 'matrix'})
    runs = db.recent_runs()
    assert len(runs) == 1
    assert runs[0]['id'] == run_id
    assert runs[0]['report'] == {'passed': True}
    assert runs[0]['map_digest'] == document_digest({'kind': 'matrix'})


def test_counterexamples_are_kept_in_trial_order(tmp_journal):
    db = Database(tmp_journal)
    run_id = db.record_run('fuzz', {}, False)
    db.record_counterexamples(run_id, [
        {'trial': 4, 'trial_seed': 10, 'description': 'id[1]', 'invariant': 'contractivity', 'residual': -0.5},
        {'trial': 1, 'trial_seed': 11, 'description': 'conj[1]', 'invariant': 'decompose', 'residual': None},
    ])
    stored = db.counterexamples_for(run_id)
    assert [c['trial'] for c in stored] == [1, 4]
    assert stored[0]['residual'] is None


def test_digest_ignores_key_order():
    assert document_digest({'a': 1, 'b': [1, 2]}) == document_digest({'b': [1, 2], 'a': 1})


def test_cli_writes_to_the_journal(tmp_path, tmp_journal, capsys, monkeypatch):
    monkeypatch.delenv('HOMCHECK_SEED', raising=False)
    monkeypatch.delenv('HOMCHECK_JOURNAL', raising=False)
    path = tmp_path / "id.json"
    write_document(map_to_document(IdentityOn(C)), path)
    assert main(['--log-level', 'ERROR', '--journal', tmp_journal, 'verify', str(path), '--trials', '5']) == 0
    assert main(['--log-level', 'ERROR', '--journal', tmp_journal, 'fuzz', '--trials', '1', '--samples', '10']) == 0
    capsys.readouterr()

    runs = Database(tmp_journal).recent_runs()
    assert [r['command'] for r in runs] == ['fuzz', 'verify']
    assert all(r['passed'] for r in runs)
    assert runs[1]['map_digest'] == document_digest(json.loads(path.read_text()))
