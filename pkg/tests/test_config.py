"""Config parsing, defaults, diagnostics, and overrides."""

from __future__ import annotations

import pytest

from swapmet.config import (
    ConfigError,
    EXPERIMENTS,
    ExperimentConfig,
    apply_overrides,
    default_config,
    parse_config,
)


class TestDefaults:
    def test_every_experiment_has_a_default_config(self):
        for name in EXPERIMENTS:
            config = default_config(name)
            assert config.experiment == name

    def test_fig_single_defaults(self):
        config = default_config("FigSingle")
        assert config.n == (3,)
        assert config.lambda1 == (1e-3,)
        assert config.p_z1 == (5e-4,)
        assert config.nu == 10**6
        assert config.reps == 10
        assert config.methods == ("naive", "vsp", "swap")
        assert config.noise == "dephasing"

    def test_fig_bias_defaults_use_infinite_shots(self):
        config = default_config("FigBiasIIDP")
        assert config.nu is None
        assert config.noise == "iidp"
        assert config.placement == "per-unit"

    def test_fig_multi_defaults_pin_time(self):
        config = default_config("FigMulti")
        assert config.lambda2 == 2e-3
        assert (config.t_start, config.t_stop, config.t_step) == (100, 100, 1)
        assert len(config.p1) == 10

    def test_supp_alpha_defaults_fit_jointly(self):
        config = default_config("FigSuppAlpha")
        assert config.t_list == (40, 70, 100)
        assert config.methods == ("swap", "swap-alpha")


class TestParsing:
    def test_comments_and_blank_lines_are_skipped(self):
        config = parse_config(
            "# leading comment\n\nexperiment = FigSingle\nreps = 4  # inline\n"
        )
        assert config.reps == 4

    def test_linspace_shorthand(self):
        config = parse_config("experiment = FigSingle\np_z1 = 1e-4:2.5e-3:10")
        assert len(config.p_z1) == 10
        assert config.p_z1[0] == pytest.approx(1e-4, abs=0.0)
        assert config.p_z1[-1] == pytest.approx(2.5e-3, abs=0.0)

    def test_comma_list(self):
        config = parse_config("experiment = FigSingle\nn = 3, 5, 10")
        assert config.n == (3, 5, 10)

    def test_nu_inf_means_exact_moments(self):
        config = parse_config("experiment = FigSingle\nnu = inf")
        assert config.nu is None

    def test_unknown_key_reports_line(self):
        with pytest.raises(ConfigError, match=r"line 2: unknown key 'bogus'"):
            parse_config("experiment = FigSingle\nbogus = 1")

    def test_duplicate_key_rejected(self):
        with pytest.raises(ConfigError, match=r"line 3: duplicate key 'reps'"):
            parse_config("experiment = FigSingle\nreps = 2\nreps = 3")

    def test_missing_equals_rejected(self):
        with pytest.raises(ConfigError, match=r"line 1.*key = value"):
            parse_config("experiment FigSingle")

    def test_empty_value_rejected(self):
        with pytest.raises(ConfigError, match=r"field 'lambda1'"):
            parse_config("experiment = FigSingle\nlambda1 =")

    def test_bad_number_names_the_field(self):
        with pytest.raises(ConfigError, match=r"field 'reps'"):
            parse_config("experiment = FigSingle\nreps = many")

    def test_unknown_experiment_rejected(self):
        with pytest.raises(ConfigError, match="experiment"):
            parse_config("experiment = FigNothing")

    def test_source_name_appears_in_message(self):
        with pytest.raises(ConfigError, match=r"my\.cfg, line 2"):
            parse_config("experiment = FigSingle\nbogus = 1", source="my.cfg")


class TestValidation:
    def test_reps_must_be_positive(self):
        with pytest.raises(ConfigError, match="reps"):
            parse_config("experiment = FigSingle\nreps = 0")

    def test_rates_must_be_probabilities(self):
        with pytest.raises(ConfigError, match="p_z1"):
            parse_config("experiment = FigSingle\np_z1 = 1.5")

    def test_coupling_must_be_positive(self):
        with pytest.raises(ConfigError, match="lambda1"):
            parse_config("experiment = FigSingle\nlambda1 = 0")

    def test_unknown_method_rejected(self):
        with pytest.raises(ConfigError, match="method"):
            parse_config("experiment = FigSingle\nmethods = swap,unknown")

    def test_unknown_noise_rejected(self):
        with pytest.raises(ConfigError, match="noise"):
            parse_config("experiment = FigSingle\nnoise = thermal")

    def test_negative_time_rejected(self):
        with pytest.raises(ConfigError, match="t_list"):
            parse_config("experiment = FigSingle\nt_list = 10,-1")

    def test_two_parameter_experiments_require_lambda2(self):
        with pytest.raises(ValueError, match="lambda2"):
            ExperimentConfig(experiment="FigMulti", lambda2=None)

    def test_nu_must_be_positive(self):
        with pytest.raises(ConfigError, match="nu"):
            parse_config("experiment = FigSingle\nnu = 0")


class TestOverrides:
    def test_override_changes_field(self):
        config = default_config("FigSingle")
        updated = apply_overrides(config, ("reps=3", "nu=inf"))
        assert updated.reps == 3
        assert updated.nu is None
        assert config.reps == 10

    def test_experiment_is_not_overridable(self):
        config = default_config("FigSingle")
        with pytest.raises(ConfigError, match="experiment"):
            apply_overrides(config, ("experiment=FigMulti",))

    def test_override_value_is_validated(self):
        config = default_config("FigSingle")
        with pytest.raises(ConfigError, match="reps"):
            apply_overrides(config, ("reps=-2",))

    def test_override_without_equals_rejected(self):
        config = default_config("FigSingle")
        with pytest.raises(ConfigError, match="KEY=VALUE|key=value"):
            apply_overrides(config, ("reps",))
