#!/usr/bin/env python
"""Tests for the command-line surface and the document formats."""
import json

import numpy as np
import pytest

from conftest import C, scalar_element
from src.algebra import AlgebraSignature, Element, identity, random_element
from src.cli import main
from src.errors import DocumentError
from src.formats import (
    dumps, element_to_document, map_to_document, parse_element, parse_map, parse_report,
    write_document,
)
from src.fuzzing.generator import plain_and_conjugate, random_hom
from src.homomorphisms import EntrywiseConjugation, IdentityOn, RealLinearMap, verify

M2 = AlgebraSignature.of(2)


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for name in ('HOMCHECK_SEED', 'HOMCHECK_TOL', 'HOMCHECK_LOG_LEVEL', 'HOMCHECK_JOURNAL', 'HOMCHECK_WORKERS'):
        monkeypatch.delenv(name, raising=False)


def write(tmp_path, name, document):
    path = tmp_path / name
    write_document(document, path)
    return str(path)


def run(capsys, *argv):
    code = main(['--log-level', 'ERROR', *argv])
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_element_document_round_trip():
    a = random_element(AlgebraSignature.of(2, 1), 4)
    document = json.loads(dumps(element_to_document(a)))
    back = parse_element(document)
    assert all(np.array_equal(x, y) for x, y in zip(a.blocks, back.blocks))


def test_map_documents_round_trip():
    h = random_hom(AlgebraSignature.of(2, 1), 6)
    tree = parse_map(json.loads(dumps(map_to_document(h))))
    assert tree.describe() == h.describe()
    assert np.array_equal(tree.compile().matrix, h.compile().matrix)
    m = h.compile()
    matrix = parse_map(json.loads(dumps(map_to_document(m))))
    assert np.array_equal(matrix.matrix, m.matrix)


@pytest.mark.parametrize("document", [
    {},
    {"algebra": {"blocks": [2]}, "blocks": [[[1, 0], [0, 1]]]},
    {"algebra": {"blocks": [1]}, "blocks": [[[[1, 0, 0]]]]},
    {"algebra": {"blocks": ["x"]}, "blocks": []},
    {"algebra": {"blocks": [1]}, "blocks": [[[["a", 0]]]]},
])
def test_malformed_elements(document):
    with pytest.raises(DocumentError):
        parse_element(document)


@pytest.mark.parametrize("document", [
    {"kind": "tensor"},
    {"kind": "matrix", "domain": {"blocks": [1]}, "codomain": {"blocks": [1]}, "rows": [[1.0]]},
    {"kind": "structured", "tree": {"node": "teleport"}},
    {"kind": "structured", "tree": {"node": "embedding", "source": {"blocks": [1]}, "multiplicities": [[0]]}},
])
def test_malformed_maps(document):
    with pytest.raises(DocumentError):
        parse_map(document)


def test_report_round_trip(identity_c):
    report = verify(identity_c, trials=10)
    parsed = parse_report(json.loads(dumps(report.to_dict())))
    assert parsed == report


def test_norm_of_identity(tmp_path, capsys):
    path = write(tmp_path, "one.json", element_to_document(identity(AlgebraSignature.of(2, 1))))
    for method in ('eig', 'order'):
        code, out, _ = run(capsys, 'norm', path, '--method', method)
        assert code == 0
        assert out.strip() == "1.000000000000"
    code, out, _ = run(capsys, 'norm', path, '--method', 'bisect', '--precision', '1e-9')
    assert code == 0
    assert abs(float(out) - 1.0) <= 1e-9


def test_norm_methods_agree_on_a_nilpotent(tmp_path, capsys):
    a = Element(M2, [np.array([[0.0, 2.0], [0.0, 0.0]])])
    path = write(tmp_path, "nil.json", element_to_document(a))
    _, eig, _ = run(capsys, 'norm', path)
    _, bisect, _ = run(capsys, 'norm', path, '--method', 'bisect', '--precision', '1e-6')
    assert abs(float(eig) - float(bisect)) <= 1e-6


def test_norm_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _, err = run(capsys, 'norm', str(bad))
    assert code == 2
    assert err
    nil = write(tmp_path, "nil.json", element_to_document(Element(M2, [np.array([[0, 1], [0, 0]])])))
    code, _, _ = run(capsys, 'norm', nil, '--method', 'order')
    assert code == 2
    code, _, _ = run(capsys, 'norm', str(tmp_path / "missing.json"))
    assert code == 2
    code, _, _ = run(capsys, 'norm', nil, '--method', 'bisect', '--precision', 'nan')
    assert code == 2


def test_bisect_with_precision_below_float_spacing(tmp_path, capsys):
    path = write(tmp_path, "one.json", element_to_document(identity(C)))
    code, out, _ = run(capsys, 'norm', path, '--method', 'bisect', '--precision', '1e-20')
    assert code == 0
    assert abs(float(out) - 1.0) <= 1e-9


def test_verify_command(tmp_path, capsys, doubling_c):
    conj = write(tmp_path, "conj.json", map_to_document(EntrywiseConjugation(C)))
    code, out, _ = run(capsys, 'verify', conj, '--trials', '20')
    assert code == 0
    assert json.loads(out)['contractivity_margin'] == pytest.approx(0.0, abs=1e-12)

    double = write(tmp_path, "double.json", map_to_document(doubling_c))
    code, out, _ = run(capsys, 'verify', double)
    assert code == 1
    assert json.loads(out)['residual_multiplicative'] >= 1.0 - 1e-12

    mixed = write(tmp_path, "mixed.json", map_to_document(plain_and_conjugate(C)))
    code, _, _ = run(capsys, 'verify', mixed)
    assert code == 0


def test_seed_from_environment_and_flag(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "id.json", map_to_document(IdentityOn(C)))
    monkeypatch.setenv('HOMCHECK_SEED', '13')
    _, out, _ = run(capsys, 'verify', path, '--trials', '5')
    assert json.loads(out)['seed'] == 13
    _, out, _ = run(capsys, 'verify', path, '--trials', '5', '--seed', '4')
    assert json.loads(out)['seed'] == 4


def test_decompose_command(tmp_path, capsys):
    conj = write(tmp_path, "conj.json", map_to_document(EntrywiseConjugation(C)))
    code, out, _ = run(capsys, 'decompose', conj)
    assert code == 0
    assert json.loads(out)['classification'] == 'ConjugateLinear'

    ident = write(tmp_path, "id.json", map_to_document(IdentityOn(C)))
    code, out, _ = run(capsys, 'decompose', ident, '--no-restrict')
    assert code == 0
    assert json.loads(out)['classification'] == 'Linear'

    mixed = write(tmp_path, "mixed.json", map_to_document(plain_and_conjugate(C)))
    parts = tmp_path / "parts"
    code, out, _ = run(capsys, 'decompose', mixed, '--emit-parts', str(parts))
    assert code == 0
    summary = parse_report(json.loads(out))
    assert summary['classification'] == 'Mixed'
    assert summary['center_dimension'] == 2
    phi1 = parse_map(json.loads((parts / "phi1.json").read_text()))
    phi2 = parse_map(json.loads((parts / "phi2.json").read_text()))
    a = scalar_element(1.5 - 0.5j)
    both = phi1(a) + phi2(a)
    assert both.allclose(plain_and_conjugate(C).evaluate(a), atol=1e-10)


def test_decompose_refuses_unverified_maps(tmp_path, capsys, doubling_c):
    path = write(tmp_path, "double.json", map_to_document(doubling_c))
    code, _, _ = run(capsys, 'decompose', path)
    assert code == 1


def test_fuzz_command(capsys):
    code, first, _ = run(capsys, 'fuzz', '--trials', '1', '--seed', '7', '--samples', '20')
    assert code == 0
    _, second, _ = run(capsys, 'fuzz', '--trials', '1', '--seed', '7', '--samples', '20')
    assert first == second
    report = parse_report(json.loads(first))
    assert report.pass_count == 1


@pytest.mark.parametrize("argv", [
    ['fuzz', '--max-dim', '0'],
    ['fuzz', '--trials', 'many'],
    ['frobnicate'],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, _ = run(capsys, *argv)
    assert code == 2


def test_missing_config_file(capsys, tmp_path):
    code = main(['--config', str(tmp_path / "nope.yaml"), 'fuzz', '--trials', '1'])
    assert code == 2


def test_matrix_map_file(tmp_path, capsys):
    m = RealLinearMap(C, C, np.array([[1.0, 0.0], [0.0, -1.0]]))
    path = write(tmp_path, "matrix.json", map_to_document(m))
    code, _, _ = run(capsys, 'verify', path)
    assert code == 0


def test_order_norm_uses_configured_eigensolver(tmp_path, capsys, monkeypatch):
    import src.spectral.norms as norms_module
    calls = []
    solver = norms_module.jacobi_eigenvalues

    def recording(matrix, tol, max_sweeps):
        calls.append((tol, max_sweeps))
        return solver(matrix, tol=tol, max_sweeps=max_sweeps)

    monkeypatch.setattr(norms_module, 'jacobi_eigenvalues', recording)
    config = tmp_path / "config.yaml"
    config.write_text('eigensolver: "jacobi"\njacobi_tolerance: 1.0e-12\njacobi_max_sweeps: 7\n')
    path = write(tmp_path, "x.json", element_to_document(Element(M2, [np.diag([-3.0, 2.0])])))
    code = main(['--config', str(config), '--log-level', 'ERROR', 'norm', path, '--method', 'order'])
    out = capsys.readouterr().out
    assert code == 0
    assert float(out) == pytest.approx(3.0)
    assert calls == [(1e-12, 7)]
