import pytest

from qdalt import keyfile
from qdalt.cli import main
from qdalt.galois import make_field
from qdalt import qd_alternant as qa
from qdalt.params import PRESETS, get_preset


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize("name,value", [("DAGS_1", "70.1"), ("DAGS_3", "79.7"), ("DAGS_5", "58.1")])
def test_estimate(capsys, name, value):
    code, out, _ = run(capsys, "estimate", "--preset", name)
    assert code == 0 and out.strip() == f"log2_workfactor = {value}"


def test_estimate_custom_params(capsys):
    code, out, _ = run(capsys, "estimate", "--params", "3,3,8,2")
    assert code == 0 and out.startswith("log2_workfactor = 31")


def test_keygen_attack_verify(tmp_path, capsys):
    sk, pk, rep = tmp_path / "sk", tmp_path / "pk", tmp_path / "rep"
    code, out, _ = run(capsys, "keygen", "--preset", "TOY", "--seed", 1, "--out-sk", sk, "--out-pk", pk)
    assert code == 0 and out.strip() == "n=64 k=32 r=16 k0=4"
    code, _, _ = run(capsys, "attack", "--pk", pk, "--variant", "bruteforce", "--out-report", rep)
    assert code == 0
    text = rep.read_text()
    assert "verified=1" in text and "variant=bruteforce" in text
    code, out, _ = run(capsys, "verify", "--pk", pk, "--recovered", rep)
    assert (code, out.strip()) == (0, "verification: OK")
    code, out, _ = run(capsys, "verify", "--pk", pk, "--sk", sk)
    assert (code, out.strip()) == (0, "verification: OK")
    code, out, _ = run(capsys, "polysys", "--pk", pk, "--out", tmp_path / "sys")
    assert code == 0 and out.startswith("U=4 A=2 T=7")


def test_attack_report_to_stdout(tmp_path, capsys):
    pk = tmp_path / "pk"
    run(capsys, "keygen", "--preset", "TOY", "--seed", 1, "--out-sk", tmp_path / "sk", "--out-pk", pk)
    code, out, _ = run(capsys, "attack", "--pk", pk, "--variant", "shortened")
    assert code == 0 and "verified=1" in out


def test_verify_mismatch(tmp_path, capsys):
    for seed in (1, 2):
        run(capsys, "keygen", "--preset", "TOY", "--seed", seed,
            "--out-sk", tmp_path / f"sk{seed}", "--out-pk", tmp_path / f"pk{seed}")
    code, out, _ = run(capsys, "verify", "--pk", tmp_path / "pk1", "--sk", tmp_path / "sk2")
    assert (code, out.strip()) == (2, "verification: FAIL")


def test_exhausted_search_exits_2(tmp_path, capsys):
    pk = tmp_path / "pk"
    run(capsys, "keygen", "--preset", "TOY", "--seed", 1, "--out-sk", tmp_path / "sk", "--out-pk", pk)
    code, _, err = run(capsys, "attack", "--pk", pk, "--max-trials", 1)
    assert code == 2 and "exhausted" in err


def test_random_control_exhausts(tmp_path, capsys):
    f = make_field(3)
    code = qa.random_qd_code(f, 3, 8, 4, seed=0)
    path = tmp_path / "pk"
    keyfile.write_public(qa.QdPublicKey(f, 3, 8, code), path)
    rc, _, _ = run(capsys, "attack", "--pk", path, "--variant", "random", "--max-trials", 2000)
    assert rc == 2


def test_usage_and_io_errors(tmp_path, capsys):
    assert run(capsys)[0] == 1
    assert run(capsys, "estimate", "--preset", "NOPE")[0] == 1
    assert run(capsys, "estimate", "--params", "1,2")[0] == 1
    assert run(capsys, "attack", "--pk", tmp_path / "missing")[0] == 1
    bad = tmp_path / "bad"
    bad.write_text("QDALT1\npublic\n")
    code, _, err = run(capsys, "attack", "--pk", bad)
    assert code == 1 and "bad:3:" in err
    code, _, _ = run(capsys, "keygen", "--params", "3,4,4,1", "--out-sk", tmp_path / "a",
                     "--out-pk", tmp_path / "b")
    assert code == 1


def test_presets():
    assert [PRESETS[n].n for n in ("DAGS_0", "DAGS_1", "DAGS_3", "DAGS_5", "TOY")] == [240, 832, 1216, 2112, 64]
    assert [PRESETS[n].k for n in ("DAGS_0", "DAGS_1", "DAGS_3", "DAGS_5", "TOY")] == [80, 416, 512, 704, 32]
    assert get_preset("toy") is PRESETS["TOY"]
    assert PRESETS["DAGS_1"].a0 == 20
    with pytest.raises(ValueError):
        get_preset("DAGS_2")
