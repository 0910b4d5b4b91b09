"""One-shot reproduction reports comparing model output with published values.

Each report returns ``(datasets, summary)``: ``datasets`` maps a file stem to
``(header, rows)``; ``summary`` is ``(header, rows)`` for the comparison table.
"""
from __future__ import annotations

import math

import numpy as np

from .hom import (
    HomParams,
    dip_curve,
    misalignment_penalty,
    noisy_visibility,
    visibility,
    visibility_budget,
)
from .optimize import maximize_conversion
from .oracle import residual_sideband_penalty
from .presets import SIGMA_STAR, experiment_preset, load_preset_data
from .sideband import (
    ModulatorConfig,
    conversion_efficiency,
    modulation_index,
    ossb_compose,
    rf_voltage,
    suppression_ratio_db,
)

COMPARE_HEADER = ["quantity", "computed", "paper", "tolerance", "pass"]
TARGETS = ("fig2", "fig4", "efficiency", "budget")


def _row(name, computed, paper, tol, ok=None):
    if ok is None:
        ok = abs(computed - paper) <= tol
    return [name, float(computed), float(paper), float(tol), bool(ok)]


def fig2(delays=None):
    raw = load_preset_data()["fig2"]
    if delays is None:
        delays = np.linspace(-100.0, 100.0, 201)
    rows, summary = [], []
    for delta, paper_v in zip(raw["detunings_ghz"], raw["visibilities"]):
        p = HomParams(SIGMA_STAR, SIGMA_STAR, delta)
        curve = dip_curve(p, delays)
        rows.extend([delta, d, c] for d, c in curve.rows())
        v = visibility(p)
        if paper_v == 0.0:
            summary.append(_row(f"visibility_delta_{delta:g}GHz", v, 0.0, 1e-4, v < 1e-4))
        else:
            summary.append(_row(f"visibility_delta_{delta:g}GHz", v, paper_v, 0.005))
    datasets = {"fig2_dips": (["delta_ghz", "delay_ps", "normalized_coincidence"], rows)}
    return datasets, (COMPARE_HEADER, summary)


def fig4():
    """Model predictions (residual detuning |separation - f_RF|) beside measured values.

    No pass/fail: the residual-detuning model is not expected to match every point.
    """
    preset = experiment_preset()
    header = ["rf_ghz", "residual_detuning_ghz", "predicted_ideal", "predicted_with_car",
              "measured", "measured_uncertainty", "deviation_in_uncertainties"]
    rows = []
    for rf, meas, unc in zip(preset.rf_ghz, preset.measured_visibilities,
                             preset.measured_uncertainties):
        det = abs(preset.separation - rf)
        v = visibility(HomParams(SIGMA_STAR, SIGMA_STAR, det))
        vn = noisy_visibility(v, preset.car)
        rows.append([rf, det, v, vn, meas, unc, (vn - meas) / unc])
    return {}, (header, rows)


def efficiency():
    raw = load_preset_data()
    m_work = raw["m_at_v_rf"]
    peak = ossb_compose(ModulatorConfig(1.8412, 25.0))
    work = ossb_compose(ModulatorConfig(m_work, 25.0))
    opt = maximize_conversion(-1, (0.5, 3.0), 1e-6)
    eff_work_db = 10.0 * math.log10(conversion_efficiency(work, -1))
    supp = suppression_ratio_db(work, -1)
    m_from_v = modulation_index(raw["v_rf_volts"])
    v_needed = rf_voltage(opt.x)
    summary = [
        _row("peak_efficiency_order_-1", conversion_efficiency(peak, -1), raw["peak_efficiency"], 7e-4),
        _row("efficiency_order_3_at_peak", conversion_efficiency(peak, 3), raw["third_order_efficiency"], 5e-4),
        _row("optimal_modulation_index", opt.x, raw["m_optimum"], 0.01),
        _row("conversion_db_at_m_0.54", eff_work_db, raw["measured_conversion_db"], 0.5),
        _row("suppression_db_at_m_0.54", supp, raw["suppression_floor_db"], 0.0, supp >= raw["suppression_floor_db"]),
        _row("modulation_index_at_0.46V", m_from_v, raw["m_at_v_rf"], 0.01),
        _row("rf_volts_for_optimum", v_needed, raw["v_rf_required_volts"], 0.05),
    ]
    m_grid = np.linspace(0.0, 3.0, 301)
    rows = [[m, conversion_efficiency(ossb_compose(ModulatorConfig(m, 25.0)), -1)] for m in m_grid]
    datasets = {"efficiency_vs_m": (["m", "efficiency_order_-1"], rows)}
    return datasets, (COMPARE_HEADER, summary)


def budget():
    raw = load_preset_data()["budget"]
    preset = experiment_preset()
    noisy = noisy_visibility(1.0, preset.car)
    mis_star = misalignment_penalty(raw["misalignment_ghz"], SIGMA_STAR, SIGMA_STAR)
    mis_raw = misalignment_penalty(raw["misalignment_ghz"], preset.fwhm_3db, preset.fwhm_3db)
    residual = residual_sideband_penalty(
        preset.modulator.m, preset.modulator.f_m, preset.signal_photon(), preset.idler_photon()
    )
    combined = visibility_budget([
        ("noise", raw["noise_penalty"]),
        ("misalignment", raw["misalignment_penalty"]),
        ("loss", raw["loss_penalty"]),
    ])
    modelled = visibility_budget([
        ("noise", 1.0 - noisy),
        ("misalignment", mis_raw),
        ("loss", raw["loss_penalty"]),
        ("residual_sidebands", residual),
    ])
    summary = [
        _row("noisy_visibility_car_70", noisy, raw["noisy_visibility"], 0.003),
        _row("misalignment_penalty_sigma_10GHz", mis_raw, raw["misalignment_penalty"], 0.002),
        _row("misalignment_penalty_sigma_star", mis_star, raw["misalignment_penalty"], 0.005),
        _row("residual_sideband_penalty", residual, 0.0, 0.01),
        _row("combined_from_paper_components", combined, raw["combined"], 0.01),
        _row("combined_from_model_components", modelled, raw["combined"], 0.01),
    ]
    return {}, (COMPARE_HEADER, summary)


def run(target):
    return {"fig2": fig2, "fig4": fig4, "efficiency": efficiency, "budget": budget}[target]()
