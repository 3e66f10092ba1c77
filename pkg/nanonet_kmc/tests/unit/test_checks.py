from nanonet_kmc.checks import check_nanonet_settings


def _ids(errors):
    return {error.id for error in errors}


def test_checks_pass_on_test_settings():
    assert check_nanonet_settings() == []


def test_non_boolean_flags_reported(settings):
    settings.NANONET_USE_CELERY = "yes"

    assert "nanonet_kmc.E001" in _ids(check_nanonet_settings())


def test_bad_store_and_paths_reported(settings):
    settings.NANONET_RUN_STORE = "LocalRunStore"
    settings.NANONET_RUN_STORE_CONFIG = ["root"]
    settings.NANONET_OUTPUT_DIR = 42

    assert _ids(check_nanonet_settings()) == {
        "nanonet_kmc.E002",
        "nanonet_kmc.E003",
        "nanonet_kmc.E004",
    }


def test_worker_count_must_be_positive(settings):
    for value in (0, True, "4"):
        settings.NANONET_WORKERS = value
        assert "nanonet_kmc.E005" in _ids(check_nanonet_settings())
