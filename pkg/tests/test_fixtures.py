import importlib.util
from pathlib import Path

from pathhom.corpus import FIXTURE_DIR

ROOT = Path(__file__).resolve().parents[1]


def load_generator():
    spec = importlib.util.spec_from_file_location("make_fixtures",
                                                  ROOT / "scripts" / "make_fixtures.py")
    mod = importlib.util.module_from_spec(spec)
    spec.loader.exec_module(mod)
    return mod


def test_committed_fixtures_match_generator(tmp_path):
    written = load_generator().write_all(tmp_path)
    assert written
    for fname in written:
        assert (FIXTURE_DIR / fname).read_text() == (tmp_path / fname).read_text(), fname
    shipped = {p.name for p in FIXTURE_DIR.iterdir() if p.is_file()}
    assert shipped == set(written)
