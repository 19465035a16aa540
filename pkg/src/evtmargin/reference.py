"""Published BitMEX estimates (perpetual XBTUSD, Jan 2017 - Feb 2021).

GEV parameters are for price changes multiplied by 100; the lower-tail rows
were fitted on negated block minima. Margins are in percent of notional for
margin-call probabilities 0.1, 0.05, 0.01 and 0.001. Summary statistics are
for unscaled fractional changes.
"""

FREQUENCIES = ("5min", "30min", "1h", "8h", "1d")
KINDS = ("standard", "perpetual")
TAILS = ("right", "left", "common")
PROBABILITIES = (0.1, 0.05, 0.01, 0.001)


def _by_freq(rows):
    return dict(zip(FREQUENCIES, rows))


# (kind, tail) -> frequency -> (tau, sigma, mu, se_tau, se_sigma, se_mu)
GEV_PARAMS = {
    ("standard", "right"): _by_freq([
        (0.3939, 0.2967, 0.4281, 0.0147, 0.0046, 0.0051),
        (0.3643, 0.6119, 0.8947, 0.0268, 0.0163, 0.0185),
        (0.3163, 0.9078, 1.3809, 0.0362, 0.0330, 0.0387),
        (0.2386, 1.7176, 2.7411, 0.0517, 0.0929, 0.1141),
        (0.2097, 2.8115, 4.5184, 0.0731, 0.2127, 0.2648)]),
    ("perpetual", "right"): _by_freq([
        (0.3845, 0.2938, 0.4265, 0.0147, 0.0045, 0.0051),
        (0.3455, 0.6003, 0.8879, 0.0267, 0.0158, 0.0182),
        (0.2904, 0.8817, 1.3642, 0.0359, 0.0316, 0.0376),
        (0.1948, 1.6229, 2.6731, 0.0507, 0.0857, 0.1078),
        (0.1424, 2.5662, 4.3345, 0.0713, 0.1877, 0.2415)]),
    ("standard", "left"): _by_freq([
        (0.4389, 0.3057, 0.4276, 0.0156, 0.0049, 0.0053),
        (0.4112, 0.6173, 0.8704, 0.0278, 0.0170, 0.0188),
        (0.3326, 0.9149, 1.3417, 0.0391, 0.0342, 0.0396),
        (0.2641, 1.7020, 2.4324, 0.0568, 0.0954, 0.1149),
        (0.2261, 2.6053, 3.6979, 0.0785, 0.2027, 0.2491)]),
    ("perpetual", "left"): _by_freq([
        (0.4490, 0.3087, 0.4291, 0.0156, 0.0050, 0.0054),
        (0.4311, 0.6294, 0.8768, 0.0278, 0.0175, 0.0191),
        (0.3620, 0.9414, 1.3568, 0.0392, 0.0358, 0.0407),
        (0.3152, 1.7928, 2.4840, 0.0577, 0.1033, 0.1210),
        (0.3102, 2.8165, 3.8108, 0.0811, 0.2293, 0.2695)]),
    ("standard", "common"): _by_freq([
        (0.4165, 0.3012, 0.4278, 0.0107, 0.0033, 0.0037),
        (0.3876, 0.6149, 0.8825, 0.0193, 0.0118, 0.0132),
        (0.3237, 0.9121, 1.3616, 0.0266, 0.0238, 0.0277),
        (0.2447, 1.7242, 2.5891, 0.0380, 0.0668, 0.0816),
        (0.2096, 2.7480, 4.1036, 0.0528, 0.1480, 0.1840)]),
    ("perpetual", "common"): _by_freq([
        (0.4176, 0.3012, 0.4277, 0.0107, 0.0033, 0.0037),
        (0.3901, 0.6148, 0.8819, 0.0193, 0.0118, 0.0132),
        (0.3272, 0.9118, 1.3601, 0.0265, 0.0238, 0.0277),
        (0.2531, 1.7197, 2.5805, 0.0378, 0.0668, 0.0812),
        (0.2255, 2.7270, 4.0740, 0.0511, 0.1470, 0.1815)]),
}

# (kind, position) -> frequency -> margins at PROBABILITIES
GEV_MARGINS = {
    ("standard", "short"): _by_freq([
        (1.50, 2.10, 4.29, 11.12), (3.03, 4.17, 8.19, 20.01), (4.36, 5.85, 10.81, 24.02),
        (7.86, 10.17, 17.12, 32.95), (12.60, 16.11, 26.29, 48.19)]),
    ("perpetual", "short"): _by_freq([
        (1.48, 2.06, 4.14, 10.54), (2.93, 4.00, 7.67, 18.05), (4.16, 5.52, 9.88, 20.89),
        (7.26, 9.20, 14.76, 26.34), (11.14, 13.82, 21.01, 34.50)]),
    ("standard", "long"): _by_freq([
        (1.60, 2.30, 4.98, 14.17), (3.16, 4.46, 9.32, 25.07), (4.41, 5.98, 11.30, 25.96),
        (7.66, 10.11, 17.71, 35.93), (11.34, 14.73, 24.78, 47.11)]),
    ("perpetual", "long"): _by_freq([
        (1.63, 2.35, 5.17, 15.03), (3.27, 4.67, 10.03, 28.10), (4.63, 6.38, 12.50, 30.45),
        (8.36, 11.30, 21.05, 46.98), (12.98, 17.55, 32.56, 72.10)]),
    ("standard", "common"): _by_freq([
        (1.55, 2.20, 4.62, 12.55), (3.09, 4.31, 8.73, 22.37), (4.38, 5.91, 11.03, 24.90),
        (7.76, 10.12, 17.26, 33.74), (12.55, 15.88, 25.03, 42.91)]),
    ("perpetual", "common"): _by_freq([
        (1.55, 2.20, 4.63, 12.61), (3.10, 4.33, 8.79, 22.63), (4.39, 5.94, 11.13, 25.28),
        (7.80, 10.19, 17.55, 34.81), (12.07, 15.61, 26.10, 49.39)]),
}

# Normal-model margins printed alongside the GEV margins (short and long only).
NORMAL_MARGINS = {
    ("standard", "short"): _by_freq([
        (0.38, 0.49, 0.69, 0.92), (0.88, 1.13, 1.60, 2.13), (1.21, 1.56, 2.21, 2.94),
        (3.13, 4.05, 5.77, 7.70), (5.37, 6.99, 10.02, 13.43)]),
    ("perpetual", "short"): _by_freq([
        (0.38, 0.49, 0.69, 0.92), (0.89, 1.14, 1.61, 2.14), (1.23, 1.59, 2.24, 2.98),
        (3.24, 4.17, 5.92, 7.88), (5.96, 7.69, 10.94, 14.58)]),
    ("standard", "long"): _by_freq([
        (0.38, 0.49, 0.69, 0.92), (0.89, 1.14, 1.61, 2.14), (1.24, 1.59, 2.24, 2.97),
        (3.36, 4.28, 6.00, 7.93), (6.06, 7.68, 10.72, 14.12)]),
    ("perpetual", "long"): _by_freq([
        (0.38, 0.49, 0.69, 0.92), (0.89, 1.14, 1.61, 2.14), (1.25, 1.60, 2.26, 3.00),
        (3.34, 4.27, 6.02, 7.99), (6.24, 7.97, 11.22, 14.86)]),
}

# kind -> frequency -> (mean, sd) of fractional price changes.
CHANGE_MOMENTS = {
    "standard": _by_freq([(0.0000, 0.0030), (0.0001, 0.0069), (0.0002, 0.0096),
                          (0.0012, 0.0253), (0.0035, 0.0446)]),
    "perpetual": _by_freq([(0.0000, 0.0030), (0.0000, 0.0069), (0.0001, 0.0097),
                           (0.0005, 0.0257), (0.0014, 0.0476)]),
}

# Daily liquidation sample, 2020-01-29 to 2021-02-03 (372 days).
LIQUIDATION_SUMMARY = {
    "r_min": {"min": -0.46, "median": -0.02, "mean": -0.03, "max": 0.00},
    "r_max": {"min": 0.00, "median": 0.02, "mean": 0.03, "max": 0.35},
    "long liq.(M)": {"min": 0.00, "median": 6.93, "mean": 20.14, "max": 843.39},
    "short liq.(M)": {"min": 0.00, "median": 4.60, "mean": 10.17, "max": 132.70},
    "SI": {"min": 0.66, "median": 3.12, "mean": 3.75, "max": 18.42},
    "p_long(%)": {"min": 0.00, "median": 1.22, "mean": 3.51, "max": 169.39},
    "p_short(%)": {"min": 0.00, "median": 0.86, "mean": 1.89, "max": 24.32},
    "L_long": {"min": 1.16, "median": 55.97, "mean": 58.13, "max": 100.00},
    "L_short": {"min": 3.84, "median": 56.34, "mean": 59.94, "max": 100.00},
}


def gev_params(kind: str, frequency: str, tail: str):
    from .gev import GevParams
    tau, sigma, mu, se_tau, se_sigma, se_mu = GEV_PARAMS[(kind, tail)][frequency]
    return GevParams(tau, sigma, mu, se_tau, se_sigma, se_mu)


def all_gev_params() -> dict:
    return {(k, f, t): gev_params(k, f, t) for k in KINDS for t in TAILS for f in FREQUENCIES}
