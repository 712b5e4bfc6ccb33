from __future__ import annotations

from sipkit.core.persistence import defaults_path, load_user_defaults, save_report, save_user_defaults


def test_environment_overrides_location(isolated_defaults):
    assert defaults_path() == isolated_defaults


def test_defaults_round_trip(isolated_defaults):
    assert load_user_defaults() == {}
    assert save_user_defaults({"alpha": 3, "format": "json"})
    assert load_user_defaults() == {"alpha": 3, "format": "json"}
    assert load_user_defaults(isolated_defaults) == {"alpha": 3, "format": "json"}


def test_unusable_defaults_are_ignored(isolated_defaults):
    isolated_defaults.write_text("{not json", encoding="utf-8")
    assert load_user_defaults() == {}
    isolated_defaults.write_text("[1, 2]", encoding="utf-8")
    assert load_user_defaults() == {}


def test_save_report_adds_newline(tmp_path):
    target = tmp_path / "nested" / "report.txt"
    assert save_report("pass", target)
    assert target.read_text(encoding="utf-8") == "pass\n"


def test_save_report_failure_is_logged(tmp_path, caplog):
    blocker = tmp_path / "file"
    blocker.write_text("x", encoding="utf-8")
    assert not save_report("pass", blocker / "report.txt")
    assert "could not write report" in caplog.text
