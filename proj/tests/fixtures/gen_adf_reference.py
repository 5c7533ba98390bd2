"""Regenerates adf_reference.csv / adf_series.csv from statsmodels.

Run once; outputs are committed. Not part of the build.
"""
import csv

import numpy as np
from statsmodels.tsa.stattools import adfuller

rng = np.random.default_rng(20240611)
series = {}
series["random_walk"] = np.cumsum(rng.standard_normal(200))
e = rng.standard_normal(160)
ar = np.zeros(160)
for t in range(1, 160):
    ar[t] = 0.5 * ar[t - 1] + e[t]
series["ar1_trend"] = ar + 0.05 * np.arange(160)
series["noise_drift"] = 0.3 + rng.standard_normal(120) * 0.7 + 0.01 * np.arange(120)

with open("adf_series.csv", "w", newline="") as f:
    w = csv.writer(f)
    w.writerow(["name", "index", "value"])
    for name, x in series.items():
        for i, v in enumerate(x):
            w.writerow([name, i, repr(float(v))])

cases = [
    ("random_walk", "c", 2, None),
    ("random_walk", "c", 8, "AIC"),
    ("ar1_trend", "ct", 3, None),
    ("ar1_trend", "c", 1, None),
    ("noise_drift", "n", 0, None),
    ("noise_drift", "ct", 6, "AIC"),
]
with open("adf_reference.csv", "w", newline="") as f:
    w = csv.writer(f)
    w.writerow(["name", "regression", "max_lag", "autolag", "statistic", "p_value",
                "used_lag", "n_obs", "crit_1", "crit_5", "crit_10"])
    for name, reg, lag, auto in cases:
        r = adfuller(series[name], maxlag=lag, regression=reg, autolag=auto)
        w.writerow([name, reg, lag, auto or "none", repr(float(r[0])), repr(float(r[1])), r[2], r[3],
                    repr(float(r[4]["1%"])), repr(float(r[4]["5%"])), repr(float(r[4]["10%"]))])
