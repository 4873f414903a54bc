import sys

import pytest

from plotviz import EXPECTED_COLUMNS


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    mod = sys.modules.get("test_plot_acceptance")
    lines = getattr(mod, "VERDICTS", None) if mod else None
    if lines:
        terminalreporter.section("plot acceptance")
        for line in lines:
            terminalreporter.write_line(line)

# a plausible sweep row; tests override what they care about
DEFAULTS = {
    "config_id": "demo",
    "sweep_param": "psi",
    "sweep_value": "0.000000",
    "n": "120",
    "k": "6",
    "q": "0.500000",
    "psi": "0.000000",
    "rho_or_NA": "NA",
    "dist_mu": "0.500000",
    "dist_sigma": "0.020000",
    "pr": "0.200000",
    "fatigue_kind": "none",
    "compared_problem": "good_k",
    "compared_screener": "algorithmic",
    "runs_total": "100",
    "runs_feasible": "100",
    "mean_rtb": "0.700000",
    "sd_rtb": "0.050000",
    "mean_jds": "0.300000",
    "sd_jds": "0.040000",
    "mean_frac_protected": "0.500000",
    "mean_evaluated_count": "6.500000",
    "master_seed": "1",
}


@pytest.fixture
def write_sweep_csv(tmp_path):
    def _write(name, rows, header=EXPECTED_COLUMNS):
        path = tmp_path / name
        lines = [",".join(header)]
        for row in rows:
            merged = {**DEFAULTS, **row}
            lines.append(",".join(merged[c] for c in header))
        path.write_text("\n".join(lines) + "\n")
        return str(path)

    return _write
