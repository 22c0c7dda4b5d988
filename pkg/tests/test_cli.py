import json

from mfring.cli import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_qexp_fixtures(capsys):
    code, out, _ = _run(capsys, "qexp", "E4", "--prec", "4")
    assert code == 0
    assert out.strip() == "1 + 240*q + 2160*q^2 + 6720*q^3 + O(q^4)"
    code, out, _ = _run(capsys, "qexp", "theta", "--prec", "5")
    assert code == 0
    assert out.strip() == "1 + 2*q + 2*q^4 + O(q^5)"
    code, out, _ = _run(capsys, "qexp", "f[1;rho3]", "--prec", "3")
    assert code == 0
    assert out.strip() == "1 + 6*q + O(q^3)"


def test_qexp_json_and_errors(capsys):
    code, out, _ = _run(capsys, "qexp", "alpha23", "--prec", "4", "--output", "json")
    assert code == 0
    data = json.loads(out)
    assert data["name"] == "alpha23" and data["prec"] == 4
    code, _, err = _run(capsys, "qexp", "nosuchthing")
    assert code == 2 and "unknown" in err
    code, _, err = _run(capsys, "qexp", "E4", "--prec", "0")
    assert code == 3


def test_dims(capsys):
    code, out, _ = _run(capsys, "dims", "--group", "gammaH:11:[3]", "--kmax", "5")
    assert code == 0
    assert out.splitlines() == [f"k={k}: {k}" for k in range(1, 6)]
    code, out, _ = _run(capsys, "dims", "--group", "gamma0:2", "--kmax", "8")
    assert code == 0
    assert out.splitlines() == ["k=0: 1", "k=2: 1", "k=4: 2", "k=6: 2", "k=8: 3"]
    code, out, _ = _run(capsys, "dims", "--group", "full", "--kmax", "12")
    assert code == 0
    assert out.splitlines()[-1] == "k=12: 2"
    code, _, err = _run(capsys, "dims", "--group", "gammaH:11:[2]")
    assert code == 2
    code, _, err = _run(capsys, "dims", "--group", "whatever")
    assert code == 3


def test_hilbert_command(capsys):
    code, out, _ = _run(capsys, "hilbert", "--case", "7", "--horizon", "6")
    assert code == 0
    assert "(1 - t^2)" in out
    code, _, err = _run(capsys, "hilbert", "--case", "zzz")
    assert code == 2
    code, _, err = _run(capsys, "hilbert", "--case", "8")
    assert code == 2  # no claimed Hilbert series for that case


def test_verify_identity_json_schema(capsys):
    code, out, _ = _run(capsys, "verify", "identity", "--case", "c3_sq",
                        "--output", "json")
    assert code == 0
    data = json.loads(out.strip())
    assert set(data) == {"case", "check", "k_range", "precision", "status",
                         "details", "elapsed_ms"}
    assert data["status"] == "pass"


def test_verify_exit_codes(capsys):
    code, out, _ = _run(capsys, "verify", "relations", "--case", "7")
    assert code == 0
    code, _, err = _run(capsys, "verify", "span", "--case", "doesnotexist")
    assert code == 2
    # precision override below the certified cutoff is refused
    code, _, err = _run(capsys, "verify", "span", "--case", "7", "--prec", "2")
    assert code == 3 and "cutoff" in err
    code, _, err = _run(capsys, "verify", "span", "--case", "7", "--kmax", "0")
    assert code == 3


def test_verify_small_batch_text(capsys):
    code, out, _ = _run(capsys, "verify", "presentation", "--case", "14h9")
    assert code == 0
    lines = out.splitlines()
    assert len(lines) == 3  # relation, kernel, hilbert
    assert all("PASS" in line for line in lines)


def test_catalog_list(capsys):
    code, out, _ = _run(capsys, "catalog", "list")
    assert code == 0
    assert "11h3" in out and "alpha23" in out and "theta_quad" in out


def test_custom_catalog_and_failure_exit_code(tmp_path, capsys):
    import json as _json
    from importlib import resources

    raw = _json.loads(resources.files("mfring").joinpath("data/catalog.json").read_text())
    for ident in raw["identities"]:
        if ident["name"] == "c3_sq":
            # doctored: a nonzero but weight-homogeneous combination
            ident["expr"] = "(sub C3 (scale 2 (pow f[1;rho3] 2)))"
    path = tmp_path / "broken.json"
    path.write_text(_json.dumps(raw))
    code, out, _ = _run(capsys, "--catalog", str(path),
                        "verify", "identity", "--case", "c3_sq")
    assert code == 1
    assert "FAIL" in out
