import io
import shutil
import subprocess
import sys

import numpy as np
import pytest

from brace_forge import serialize_document
from brace_forge.cli import main
from brace_forge.docio import parse_document, parse_documents
from brace_forge.groups import direct_product_table


@pytest.fixture
def r4_file(tmp_path, R4):
    path = tmp_path / "r4.doc"
    path.write_text(serialize_document(R4))
    return str(path)


@pytest.fixture
def pair_file(tmp_path, R4, T2):
    path = tmp_path / "pair.doc"
    path.write_text(serialize_document(R4) + serialize_document(T2))
    return str(path)


def test_validate_ok(r4_file, capsys):
    assert main(["validate", r4_file]) == 0
    out = capsys.readouterr().out
    assert out == "OK order=4\n"


def test_validate_invalid_table(tmp_path, capsys):
    bad = "brace x\norder 2\nadd\n0 1\n1 0\ncirc\n0 1\n1 1\nend\n"
    path = tmp_path / "bad.doc"
    path.write_text(bad)
    assert main(["validate", str(path)]) == 1
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0].startswith("INVALID order=2 violations=")
    assert any(line.startswith("violation circ-") for line in lines[1:])


def test_validate_mixed_documents(tmp_path, R4, capsys):
    bad = "brace x\norder 2\nadd\n0 1\n1 0\ncirc\n0 1\n1 1\nend\n"
    path = tmp_path / "mix.doc"
    path.write_text(serialize_document(R4) + bad)
    assert main(["validate", str(path)]) == 1
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "OK order=4"
    assert lines[1].startswith("INVALID")


def test_validate_syntax_error(tmp_path, capsys):
    path = tmp_path / "syn.doc"
    path.write_text("brace x\norder nope\n")
    assert main(["validate", str(path)]) == 2
    assert "error:" in capsys.readouterr().err


def test_validate_stdin(monkeypatch, R4, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(serialize_document(R4)))
    assert main(["validate"]) == 0
    assert capsys.readouterr().out == "OK order=4\n"


def test_missing_file(capsys):
    assert main(["validate", "/nonexistent/path.doc"]) == 2
    assert "error:" in capsys.readouterr().err


def test_empty_input(tmp_path, capsys):
    path = tmp_path / "empty.doc"
    path.write_text("# nothing here\n")
    assert main(["validate", str(path)]) == 2
    assert "no documents" in capsys.readouterr().err


def test_ideals(r4_file, capsys):
    assert main(["ideals", r4_file]) == 0
    out = capsys.readouterr().out
    assert out == "ideals R4 order=4 count=3\n{0}\n{0,2}\n{0,1,2,3}\n"


def test_ideals_rejects_invalid_brace(tmp_path, capsys):
    bad = "brace x\norder 2\nadd\n0 1\n1 0\ncirc\n0 1\n1 1\nend\n"
    path = tmp_path / "bad.doc"
    path.write_text(bad)
    assert main(["ideals", str(path)]) == 2
    assert "invalid brace:" in capsys.readouterr().err


def test_semiprime_negative(r4_file, capsys):
    assert main(["semiprime", r4_file]) == 1
    assert capsys.readouterr().out == "NOT SEMIPRIME witness {0,2}\n"
    assert main(["semiprime", "--method", "exhaustive", r4_file]) == 1


def test_semiprime_positive(tmp_path, A5at, capsys):
    path = tmp_path / "a5.doc"
    path.write_text(serialize_document(A5at))
    assert main(["semiprime", str(path)]) == 0
    assert capsys.readouterr().out == "SEMIPRIME\n"


def test_quotient(r4_file, T2, capsys):
    assert main(["quotient", "--ideal", "0,2", r4_file]) == 0
    out = capsys.readouterr().out
    lines = out.splitlines()
    assert lines[0] == "# coset map 0 1 0 1"
    doc = parse_document("\n".join(lines[1:]) + "\n")
    assert doc.to_brace() == T2


def test_quotient_bad_ideal(r4_file, capsys):
    assert main(["quotient", "--ideal", "0,1", r4_file]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["quotient", "--ideal", "zero", r4_file]) == 2


def test_product_semidirect_trivial(pair_file, R4, T2, capsys):
    assert main(["product", "semidirect", pair_file]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc.order == 8
    assert np.array_equal(doc.add, direct_product_table(R4.add, T2.add))
    assert np.array_equal(doc.circ, direct_product_table(R4.circ, T2.circ))


def test_product_semidirect_sigma_file(pair_file, tmp_path, capsys):
    sig = tmp_path / "sigma.txt"
    sig.write_text("# nontrivial action\n0 1 2 3\n0 3 2 1\n")
    assert main(["product", "semidirect", pair_file, "--sigma", str(sig)]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc.order == 8
    # twisted circle: (1,0) o (1,1) = (1 o 1, 1) = (0,1) -> label 1
    assert doc.circ[2, 3] == 1


def test_product_sigma_rejects_bad_grid(pair_file, tmp_path, capsys):
    sig = tmp_path / "sigma.txt"
    sig.write_text("0 1 2 3\n")  # wrong row count
    assert main(["product", "semidirect", pair_file, "--sigma", str(sig)]) == 2
    sig.write_text("0 1 2 3\n1 0 2 3\n")  # valid grid, invalid action
    assert main(["product", "semidirect", pair_file, "--sigma", str(sig)]) == 2


def test_product_wreath(tmp_path, T2, capsys):
    path = tmp_path / "tt.doc"
    path.write_text(serialize_document(T2) + serialize_document(T2))
    assert main(["product", "wreath", str(path)]) == 0
    doc = parse_document(capsys.readouterr().out)
    assert doc.order == 8
    assert np.array_equal(doc.add,
                          direct_product_table(T2.add, T2.add, T2.add))
    assert sum(1 for a in range(1, 8) if doc.circ[a, a] == 0) == 5


def test_product_needs_two(r4_file, capsys):
    assert main(["product", "wreath", r4_file]) == 2
    assert "exactly 2 documents" in capsys.readouterr().err


def test_ybe_check(r4_file, capsys):
    assert main(["ybe", "--check", r4_file]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "solution R4"
    assert lines[1] == "order 4"
    assert lines[2] == "u"
    assert lines[3:7] == ["0 1 2 3", "0 3 2 1", "0 1 2 3", "0 3 2 1"]
    assert lines[7] == "v"
    assert lines[12] == "end"
    assert "BRAID OK" in lines
    assert "NONDEGENERATE OK" in lines


def test_corpus_group(capsys):
    assert main(["corpus", "enumerate", "--group", "c4"]) == 0
    captured = capsys.readouterr()
    docs = parse_documents(captured.out)
    assert [d.name for d in docs] == ["c4#0", "c4#1"]
    assert "# 2 braces" in captured.err


def test_corpus_standard(capsys):
    assert main(["corpus", "enumerate", "--max-order", "2"]) == 0
    captured = capsys.readouterr()
    docs = parse_documents(captured.out)
    assert [d.name for d in docs] == ["T2", "c1#0"]


def test_corpus_bad_group(capsys):
    assert main(["corpus", "enumerate", "--group", "q8"]) == 2
    assert "error:" in capsys.readouterr().err


def test_verify_lemma31_single_case(capsys):
    assert main(["verify", "lemma31", "--only", "lemma31:R4:T2"]) == 0
    captured = capsys.readouterr()
    assert captured.out == ("CASE lemma31:R4:T2 PASS ideals=13 positions=2\n"
                            "lemma31: 1 cases, 0 counterexamples\n")
    assert "# lemma31 elapsed" in captured.err


def test_verify_lemma31_max_order(capsys):
    assert main(["verify", "lemma31", "--max-order", "2"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("lemma31: 308 cases, 0 counterexamples\n")


def test_verify_cor28_small(capsys):
    assert main(["verify", "cor28", "--max-order", "2"]) == 0
    out = capsys.readouterr().out
    assert "NOTE only order-1 semiprime braces" in out
    assert out.endswith("cor28: 3 cases, 0 counterexamples\n")


def test_search_q34_small(capsys):
    assert main(["search", "q34", "--max-order", "2", "--max-h", "2"]) == 0
    out = capsys.readouterr().out
    assert out.endswith("q34: 2 cases, 0 counterexamples\n")


def test_usage_errors(capsys):
    assert main([]) == 2
    assert main(["bogus"]) == 2
    assert main(["verify", "q34"]) == 2  # q34 is under search, not verify
    capsys.readouterr()


def test_help_exits_zero(capsys):
    assert main(["--help"]) == 0
    assert "brace-forge" in capsys.readouterr().out


def test_installed_entry_point(r4_file):
    exe = shutil.which("brace-forge")
    assert exe is not None, "console script must be installed"
    proc = subprocess.run([exe, "semiprime", r4_file],
                          capture_output=True, text=True)
    assert proc.returncode == 1
    assert proc.stdout == "NOT SEMIPRIME witness {0,2}\n"
